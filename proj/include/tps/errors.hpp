#pragma once

#include <stdexcept>
#include <string>

namespace tps {

// Error taxonomy; the CLI maps each type to a stable exit code.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file / unreadable JSON.  CLI exit 2.
struct ParseError : Error {
  using Error::Error;
};

// Structurally invalid space: unknown point, family not a topology,
// non-total map, empty point set, size guard on ambient spaces.  CLI exit 3.
struct InvalidSpace : Error {
  using Error::Error;
};

// Operation preconditions violated (sets not closed/monotone, function not
// continuous/isotone, inconsistent pins, ...).  CLI exit 3.
struct InvalidInput : Error {
  using Error::Error;
};

// Derived-space construction exceeded the size guard.  CLI exit 3.
struct TooLarge : Error {
  using Error::Error;
};

// No separator / no exact-level-set function exists for the request.  CLI exit 4.
struct NotSeparable : Error {
  using Error::Error;
};

// The extension condition D(f^-1([0,xi])) ∩ I(f^-1([xi',1])) = ∅ failed.
// Carries the witnessing threshold pair and a point of the intersection.  CLI exit 5.
struct ConditionViolated : Error {
  std::string xi, xi_prime, witness_point;
  ConditionViolated(const std::string& msg, std::string xi_, std::string xi_prime_,
                    std::string witness)
      : Error(msg), xi(std::move(xi_)), xi_prime(std::move(xi_prime_)),
        witness_point(std::move(witness)) {}
};

// A guaranteed construction step failed: indicates a bug, not bad input.  CLI exit 6.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace tps
