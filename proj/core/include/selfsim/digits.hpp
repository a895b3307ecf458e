#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "selfsim/errors.hpp"

namespace selfsim {

inline constexpr int kMaxBase = 36;
inline constexpr int kMaxDim = 4;

// One symbol of the d-dimensional base-k digit alphabet: a d-tuple of digits
// in [0, k). Symbols are densely coded big-endian (first coordinate most
// significant), so code order equals lexicographic digit order.
class DigitTuple {
 public:
  DigitTuple() = default;
  DigitTuple(std::initializer_list<int> digits);
  explicit DigitTuple(const std::vector<int>& digits);

  int dim() const { return size_; }
  int operator[](int i) const { return digits_[static_cast<size_t>(i)]; }

  bool valid_for(int k, int d) const;
  int code(int k) const;
  static DigitTuple from_code(int code, int k, int d);

  std::vector<int> to_vector() const;

  friend bool operator==(const DigitTuple& a, const DigitTuple& b) {
    if (a.size_ != b.size_) return false;
    for (int i = 0; i < a.size_; ++i)
      if (a.digits_[static_cast<size_t>(i)] != b.digits_[static_cast<size_t>(i)]) return false;
    return true;
  }
  friend bool operator<(const DigitTuple& a, const DigitTuple& b) {
    if (a.size_ != b.size_) return a.size_ < b.size_;
    for (int i = 0; i < a.size_; ++i) {
      if (a.digits_[static_cast<size_t>(i)] != b.digits_[static_cast<size_t>(i)])
        return a.digits_[static_cast<size_t>(i)] < b.digits_[static_cast<size_t>(i)];
    }
    return false;
  }

 private:
  std::array<uint8_t, kMaxDim> digits_{};
  int8_t size_ = 0;
};

// k^d, the number of symbols; fits comfortably in 64 bits for k<=36, d<=4.
long long alphabet_size(int k, int d);

// Envelope check shared by every automaton constructor: 2<=k<=36, 1<=d<=4.
void check_envelope(int k, int d);

}  // namespace selfsim
