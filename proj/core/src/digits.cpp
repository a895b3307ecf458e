#include "selfsim/digits.hpp"

namespace selfsim {

DigitTuple::DigitTuple(std::initializer_list<int> digits) {
  if (digits.size() > kMaxDim)
    throw Error(ErrorCode::InvalidArgument, "digit tuple longer than the supported dimension");
  for (int v : digits) {
    if (v < 0 || v >= kMaxBase)
      throw Error(ErrorCode::DigitRange, "digit " + std::to_string(v) + " outside [0,36)");
    digits_[static_cast<size_t>(size_++)] = static_cast<uint8_t>(v);
  }
}

DigitTuple::DigitTuple(const std::vector<int>& digits) {
  if (digits.size() > kMaxDim)
    throw Error(ErrorCode::InvalidArgument, "digit tuple longer than the supported dimension");
  for (int v : digits) {
    if (v < 0 || v >= kMaxBase)
      throw Error(ErrorCode::DigitRange, "digit " + std::to_string(v) + " outside [0,36)");
    digits_[static_cast<size_t>(size_++)] = static_cast<uint8_t>(v);
  }
}

bool DigitTuple::valid_for(int k, int d) const {
  if (size_ != d) return false;
  for (int i = 0; i < size_; ++i)
    if (digits_[static_cast<size_t>(i)] >= k) return false;
  return true;
}

int DigitTuple::code(int k) const {
  int c = 0;
  for (int i = 0; i < size_; ++i) c = c * k + digits_[static_cast<size_t>(i)];
  return c;
}

DigitTuple DigitTuple::from_code(int code, int k, int d) {
  DigitTuple t;
  t.size_ = static_cast<int8_t>(d);
  for (int i = d - 1; i >= 0; --i) {
    t.digits_[static_cast<size_t>(i)] = static_cast<uint8_t>(code % k);
    code /= k;
  }
  return t;
}

std::vector<int> DigitTuple::to_vector() const {
  std::vector<int> v(static_cast<size_t>(size_));
  for (int i = 0; i < size_; ++i) v[static_cast<size_t>(i)] = digits_[static_cast<size_t>(i)];
  return v;
}

long long alphabet_size(int k, int d) {
  long long n = 1;
  for (int i = 0; i < d; ++i) n *= k;
  return n;
}

void check_envelope(int k, int d) {
  if (k < 2 || k > kMaxBase)
    throw Error(ErrorCode::InvalidAutomaton, "base " + std::to_string(k) + " outside [2,36]");
  if (d < 1 || d > kMaxDim)
    throw Error(ErrorCode::InvalidAutomaton, "dimension " + std::to_string(d) + " outside [1,4]");
}

}  // namespace selfsim
