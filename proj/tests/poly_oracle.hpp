#pragma once

// Test-only algebra oracle: exact integer characteristic polynomials via
// Faddeev-LeVerrier and real-root counting via Sturm chains, used to
// cross-check the certified spectral enclosures independently of the
// Collatz-Wielandt iteration.

#include <vector>

#include <selfsim/numeric.hpp>
#include <selfsim/spectral.hpp>

namespace polyoracle {

using selfsim::BigInt;
using selfsim::IntMatrix;
using selfsim::Rat;

// coefficients of det(xI - A), index = degree (monic: back() == 1)
inline std::vector<BigInt> charpoly(const IntMatrix& a) {
  size_t n = a.size();
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
  std::vector<std::vector<Rat>> acc(n, std::vector<Rat>(n, Rat(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m[i][j] = Rat(a[i][j], 1);

  std::vector<Rat> coeff(n + 1, Rat(0));
  coeff[n] = Rat(1);
  acc = m;
  for (size_t step = 1; step <= n; ++step) {
    if (step > 1) {
      // acc = m * (acc + c * I)
      std::vector<std::vector<Rat>> shifted = acc;
      for (size_t i = 0; i < n; ++i) shifted[i][i] += coeff[n - step + 1];
      std::vector<std::vector<Rat>> next(n, std::vector<Rat>(n, Rat(0)));
      for (size_t i = 0; i < n; ++i)
        for (size_t z = 0; z < n; ++z) {
          if (m[i][z] == Rat(0)) continue;
          for (size_t j = 0; j < n; ++j) next[i][j] += m[i][z] * shifted[z][j];
        }
      acc = std::move(next);
    }
    Rat trace(0);
    for (size_t i = 0; i < n; ++i) trace += acc[i][i];
    coeff[n - step] = -trace / Rat(BigInt(step), 1);
  }
  std::vector<BigInt> out(n + 1);
  for (size_t i = 0; i <= n; ++i) out[i] = coeff[i].numerator() / coeff[i].denominator();
  return out;
}

inline Rat eval(const std::vector<BigInt>& p, const Rat& x) {
  Rat r(0);
  for (size_t i = p.size(); i-- > 0;) r = r * x + Rat(p[i], 1);
  return r;
}

inline std::vector<BigInt> derivative(const std::vector<BigInt>& p) {
  std::vector<BigInt> d;
  for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * BigInt(i));
  if (d.empty()) d.push_back(0);
  return d;
}

// polynomial remainder with rational coefficients, returned over BigInt by
// clearing denominators (sign preserved)
inline std::vector<Rat> to_rat(const std::vector<BigInt>& p) {
  std::vector<Rat> r(p.size());
  for (size_t i = 0; i < p.size(); ++i) r[i] = Rat(p[i], 1);
  return r;
}

inline void strip(std::vector<Rat>& p) {
  while (p.size() > 1 && p.back() == Rat(0)) p.pop_back();
  if (p.empty()) p.push_back(Rat(0));
}

inline std::vector<Rat> rem(std::vector<Rat> a, const std::vector<Rat>& b) {
  strip(a);
  while (a.size() >= b.size() && !(a.size() == 1 && a[0] == Rat(0))) {
    Rat factor = a.back() / b.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= factor * b[i];
    a.pop_back();
    strip(a);
    if (a.size() < b.size()) break;
  }
  return a;
}

inline Rat eval(const std::vector<Rat>& p, const Rat& x) {
  Rat r(0);
  for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

// number of distinct real roots in (a, b] by Sturm's theorem
inline int sturm_count(const std::vector<BigInt>& poly, const Rat& a, const Rat& b) {
  std::vector<std::vector<Rat>> chain;
  chain.push_back(to_rat(poly));
  strip(chain[0]);
  chain.push_back(to_rat(derivative(poly)));
  strip(chain[1]);
  while (!(chain.back().size() == 1 && chain.back()[0] == Rat(0))) {
    std::vector<Rat> r = rem(chain[chain.size() - 2], chain.back());
    for (Rat& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  auto variations = [&](const Rat& x) {
    int v = 0;
    int prev = 0;
    for (const auto& p : chain) {
      Rat val = eval(p, x);
      int sign = val > Rat(0) ? 1 : (val < Rat(0) ? -1 : 0);
      if (sign != 0) {
        if (prev != 0 && sign != prev) ++v;
        prev = sign;
      }
    }
    return v;
  };
  return variations(a) - variations(b);
}

// upper bound on every real root: 1 + max |c_i| (monic)
inline Rat cauchy_bound(const std::vector<BigInt>& poly) {
  BigInt m = 0;
  for (const BigInt& c : poly) {
    BigInt v = c < 0 ? BigInt(-c) : c;
    if (v > m) m = v;
  }
  return Rat(m + 1, 1);
}

}  // namespace polyoracle
