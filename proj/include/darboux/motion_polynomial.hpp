#pragma once
#include <cstdint>
#include <random>
#include <vector>

#include "darboux/dual_quaternion.hpp"

namespace darboux {

// Polynomial in one real indeterminate t with dual quaternion coefficients.
// c[i] is the coefficient of t^i; the zero polynomial has no coefficients.
// t commutes with everything, the coefficients do not commute with each
// other.
struct MotionPolynomial {
  std::vector<DualQuaternion> c;

  MotionPolynomial() = default;
  explicit MotionPolynomial(std::vector<DualQuaternion> coeffs)
      : c(std::move(coeffs)) {}

  static MotionPolynomial constant(const DualQuaternion& h) {
    return MotionPolynomial{{h}};
  }
  // t - h
  static MotionPolynomial linear_factor(const DualQuaternion& h) {
    return MotionPolynomial{{-h, DualQuaternion::identity()}};
  }
  static MotionPolynomial from_real(const std::vector<double>& r) {
    std::vector<DualQuaternion> c;
    c.reserve(r.size());
    for (double v : r) c.push_back(DualQuaternion::identity() * v);
    return MotionPolynomial{std::move(c)};
  }

  int degree() const { return static_cast<int>(c.size()) - 1; }

  MotionPolynomial trimmed() const {
    MotionPolynomial r = *this;
    while (!r.c.empty() && max_abs_coeff(r.c.back()) == 0.0) r.c.pop_back();
    return r;
  }
};

inline MotionPolynomial poly_add(const MotionPolynomial& a,
                                 const MotionPolynomial& b) {
  MotionPolynomial r;
  r.c.resize(std::max(a.c.size(), b.c.size()));
  for (size_t i = 0; i < a.c.size(); ++i) r.c[i] = r.c[i] + a.c[i];
  for (size_t i = 0; i < b.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
  return r;
}

inline MotionPolynomial poly_scale(const MotionPolynomial& a, double s) {
  MotionPolynomial r = a;
  for (auto& ci : r.c) ci = ci * s;
  return r;
}

inline MotionPolynomial poly_sub(const MotionPolynomial& a,
                                 const MotionPolynomial& b) {
  return poly_add(a, poly_scale(b, -1.0));
}

inline MotionPolynomial poly_mul(const MotionPolynomial& a,
                                 const MotionPolynomial& b) {
  if (a.c.empty() || b.c.empty()) return {};
  MotionPolynomial r;
  r.c.resize(a.c.size() + b.c.size() - 1);
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j)
      r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
  return r;
}

// Horner evaluation.  The parameter lives on the extended real line:
// t = +-inf yields the leading coefficient (for a monic linear joint factor
// that is the identity displacement).
inline DualQuaternion poly_eval(const MotionPolynomial& a, double t) {
  if (a.c.empty()) return {};
  if (std::isinf(t)) return a.c.back();
  DualQuaternion r = a.c.back();
  for (size_t i = a.c.size() - 1; i-- > 0;) r = r * t + a.c[i];
  return r;
}

inline MotionPolynomial poly_conj(const MotionPolynomial& a) {
  MotionPolynomial r = a;
  for (auto& ci : r.c) ci = dq_conj(ci);
  return r;
}

inline MotionPolynomial poly_norm(const MotionPolynomial& a) {
  return poly_mul(a, poly_conj(a));
}

// A motion polynomial has a real norm polynomial.
inline bool is_motion_polynomial(const MotionPolynomial& a,
                                 double tol = default_tol) {
  for (const auto& ci : poly_norm(a).c) {
    auto co = ci.coeffs();
    for (int k = 1; k < 8; ++k)
      if (std::abs(co[k]) > tol) return false;
  }
  return true;
}

struct DivisionResult {
  MotionPolynomial quotient;
  DualQuaternion remainder;
};

// A = quotient * (t - h) + remainder, remainder constant.  The coefficient
// recursion keeps h on the right of every product.
inline DivisionResult poly_div_right(const MotionPolynomial& a,
                                     const DualQuaternion& h) {
  size_t n = a.c.size();
  if (n < 2) return {{}, n == 1 ? a.c[0] : DualQuaternion{}};
  MotionPolynomial q;
  q.c.resize(n - 1);
  q.c[n - 2] = a.c[n - 1];
  for (size_t i = n - 2; i-- > 0;) q.c[i] = a.c[i + 1] + q.c[i + 1] * h;
  return {q, a.c[0] + q.c[0] * h};
}

// A = (t - h) * quotient + remainder.
inline DivisionResult poly_div_left(const MotionPolynomial& a,
                                    const DualQuaternion& h) {
  size_t n = a.c.size();
  if (n < 2) return {{}, n == 1 ? a.c[0] : DualQuaternion{}};
  MotionPolynomial q;
  q.c.resize(n - 1);
  q.c[n - 2] = a.c[n - 1];
  for (size_t i = n - 2; i-- > 0;) q.c[i] = a.c[i + 1] + h * q.c[i + 1];
  return {q, a.c[0] + h * q.c[0]};
}

// Tests A = lambda(t) * B for a real rational lambda by comparing the two
// evaluations at random finite parameters.  Samples landing on a common
// zero are re-drawn.
inline bool poly_proportional(const MotionPolynomial& a,
                              const MotionPolynomial& b, int n_samples = 20,
                              double tol = default_tol,
                              std::uint64_t seed = 0x5eedu) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  int taken = 0, attempts = 0;
  while (taken < n_samples && attempts < 100 * n_samples) {
    ++attempts;
    double t = dist(rng);
    DualQuaternion va = poly_eval(a, t), vb = poly_eval(b, t);
    if (max_abs_coeff(va) < 1e-8 || max_abs_coeff(vb) < 1e-8) continue;
    if (!dq_equiv(va, vb, tol)) return false;
    ++taken;
  }
  return taken == n_samples;
}

}  // namespace darboux
