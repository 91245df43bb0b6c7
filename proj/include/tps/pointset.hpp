#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tps/errors.hpp"

namespace tps {

// Subset of a point universe, encoded as a fixed-width bit vector.
// Universe sizes: ambient spaces <= 16 points, derived products / disjoint
// unions <= 256 points, so four 64-bit words always suffice.
class PointSet {
 public:
  static constexpr int kMaxPoints = 256;
  static constexpr int kWords = 4;

  PointSet() = default;

  static PointSet empty_set() { return PointSet{}; }

  static PointSet full_set(int n) {
    PointSet s;
    for (int i = 0; i < n; ++i) s.add(i);
    return s;
  }

  static PointSet single(int i) {
    PointSet s;
    s.add(i);
    return s;
  }

  static PointSet of(std::initializer_list<int> xs) {
    PointSet s;
    for (int x : xs) s.add(x);
    return s;
  }

  bool contains(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void add(int i) { w_[i >> 6] |= uint64_t{1} << (i & 63); }
  void remove(int i) { w_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }

  bool empty() const {
    for (auto x : w_)
      if (x) return false;
    return true;
  }

  int count() const {
    int c = 0;
    for (auto x : w_) c += __builtin_popcountll(x);
    return c;
  }

  friend PointSet operator|(PointSet a, const PointSet& b) {
    for (int i = 0; i < kWords; ++i) a.w_[i] |= b.w_[i];
    return a;
  }
  friend PointSet operator&(PointSet a, const PointSet& b) {
    for (int i = 0; i < kWords; ++i) a.w_[i] &= b.w_[i];
    return a;
  }
  // Set difference.
  friend PointSet operator-(PointSet a, const PointSet& b) {
    for (int i = 0; i < kWords; ++i) a.w_[i] &= ~b.w_[i];
    return a;
  }
  PointSet& operator|=(const PointSet& b) {
    for (int i = 0; i < kWords; ++i) w_[i] |= b.w_[i];
    return *this;
  }
  PointSet& operator&=(const PointSet& b) {
    for (int i = 0; i < kWords; ++i) w_[i] &= b.w_[i];
    return *this;
  }

  PointSet complement(int n) const { return full_set(n) - *this; }

  bool intersects(const PointSet& b) const {
    for (int i = 0; i < kWords; ++i)
      if (w_[i] & b.w_[i]) return true;
    return false;
  }

  bool subset_of(const PointSet& b) const {
    for (int i = 0; i < kWords; ++i)
      if (w_[i] & ~b.w_[i]) return false;
    return true;
  }

  bool operator==(const PointSet& b) const { return w_ == b.w_; }
  bool operator!=(const PointSet& b) const { return w_ != b.w_; }

  // Canonical total order: numeric value of the bit string, most significant
  // word first.  Used for deterministic family ordering and emission.
  bool operator<(const PointSet& b) const {
    for (int i = kWords - 1; i >= 0; --i)
      if (w_[i] != b.w_[i]) return w_[i] < b.w_[i];
    return false;
  }

  // Index of the lowest set bit at or above `from`, or -1.
  int next(int from = 0) const {
    for (int i = from; i < kMaxPoints;) {
      uint64_t word = w_[i >> 6] >> (i & 63);
      if (word) return i + __builtin_ctzll(word);
      i = ((i >> 6) + 1) << 6;
    }
    return -1;
  }

  std::vector<int> members() const {
    std::vector<int> out;
    for (int i = next(0); i >= 0; i = next(i + 1)) out.push_back(i);
    return out;
  }

  size_t hash() const {
    size_t h = 1469598103934665603ull;
    for (auto x : w_) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }

 private:
  std::array<uint64_t, kWords> w_{};
};

struct PointSetHash {
  size_t operator()(const PointSet& s) const { return s.hash(); }
};

}  // namespace tps
