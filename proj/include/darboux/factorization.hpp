#pragma once
#include <string>

#include "darboux/motion_polynomial.hpp"

namespace darboux {

// Design parameters of the synthesized linkage.  b, c shape the vertical
// Darboux motion, q1, q2 place the repeated joint, and the remaining values
// pick one member of the factorization family.  The generic branch takes
// z1, z2 as free inputs and derives z3; the degenerate branch
// b^2 + c^2 - 4 q1^2 - 4 q2^2 = 0 takes z, z3 as free inputs and derives
// z1 = z (b q2 + c q1), z2 = z (-b q1 + c q2).
struct DesignParams {
  double b = 0.0, c = 0.0;
  double q1 = 0.0, q2 = 0.0;
  double z1 = 0.0, z2 = 0.0;
  double z = 0.0, z3 = 0.0;
  bool degenerate = false;
  double tol = default_tol;
};

inline bool degenerate_condition(double b, double c, double q1, double q2,
                                 double tol = default_tol) {
  double u = b * b + c * c;
  double w = 4.0 * (q1 * q1 + q2 * q2);
  return std::abs(u - w) < tol * u;
}

namespace detail {

inline void check_common(double b, double c, double q1, double q2) {
  if (b == 0.0 && c == 0.0)
    throw std::invalid_argument("design: (b, c) must not both vanish");
  if (q1 == 0.0 && q2 == 0.0)
    throw std::invalid_argument("design: (q1, q2) must not both vanish");
}

}  // namespace detail

inline DesignParams generic_params(double b, double c, double q1, double q2,
                                   double z1, double z2,
                                   double tol = default_tol) {
  detail::check_common(b, c, q1, q2);
  if (degenerate_condition(b, c, q1, q2, tol))
    throw std::invalid_argument(
        "design: b^2+c^2-4q1^2-4q2^2 = 0, use the degenerate branch (z, z3)");
  DesignParams dp;
  dp.b = b;
  dp.c = c;
  dp.q1 = q1;
  dp.q2 = q2;
  dp.z1 = z1;
  dp.z2 = z2;
  double u = b * b + c * c;
  double w = 4.0 * (q1 * q1 + q2 * q2);
  double n1 = 4.0 * (b * q1 - c * q2);
  double n2 = 4.0 * (b * q2 + c * q1);
  // Orthogonality of the P2 moment against its direction fixes z3.
  dp.z3 = (n1 * z1 + n2 * z2) / (u - w);
  dp.degenerate = false;
  dp.tol = tol;
  return dp;
}

inline DesignParams degenerate_params(double b, double c, double q1, double q2,
                                      double z, double z3,
                                      double tol = default_tol) {
  detail::check_common(b, c, q1, q2);
  if (!degenerate_condition(b, c, q1, q2, tol))
    throw std::invalid_argument(
        "design: b^2+c^2-4q1^2-4q2^2 != 0, use the generic branch (z1, z2)");
  DesignParams dp;
  dp.b = b;
  dp.c = c;
  dp.q1 = q1;
  dp.q2 = q2;
  dp.z = z;
  dp.z3 = z3;
  dp.z1 = z * (b * q2 + c * q1);
  dp.z2 = z * (-b * q1 + c * q2);
  dp.degenerate = true;
  dp.tol = tol;
  return dp;
}

// M = (t^2+1)(t-k) + eps(-b k t + c k)(t-k), the vertical Darboux motion
// about the third coordinate axis.
inline MotionPolynomial make_vertical_darboux(double b, double c) {
  if (b == 0.0 && c == 0.0)
    throw std::invalid_argument("vertical Darboux: (b, c) must not vanish");
  MotionPolynomial m;
  m.c.resize(4);
  m.c[0] = DualQuaternion{{0, 0, 0, -1}, {c, 0, 0, 0}};
  m.c[1] = DualQuaternion{{1, 0, 0, 0}, {-b, 0, 0, c}};
  m.c[2] = DualQuaternion{{0, 0, 0, -1}, {0, 0, 0, -b}};
  m.c[3] = DualQuaternion::identity();
  return m;
}

inline MotionPolynomial make_P4(double q1, double q2) {
  return MotionPolynomial::linear_factor(
      DualQuaternion{{0, 0, 0, 1}, {0, q1, q2, 0}});
}

inline double make_y1(const DesignParams& dp) {
  double b = dp.b, c = dp.c, q1 = dp.q1, q2 = dp.q2;
  return (b * b * q1 - 2 * b * c * q2 - c * c * q1 + 4 * q1 * q1 * q1 +
          4 * q1 * q2 * q2) /
         (4 * (q1 * q1 + q2 * q2));
}

inline double make_y2(const DesignParams& dp) {
  double b = dp.b, c = dp.c, q1 = dp.q1, q2 = dp.q2;
  return (b * b * q2 + 2 * b * c * q1 - c * c * q2 + 4 * q1 * q1 * q2 +
          4 * q2 * q2 * q2) /
         (4 * (q1 * q1 + q2 * q2));
}

inline MotionPolynomial make_P3(const DesignParams& dp) {
  if (dp.q1 == 0.0 && dp.q2 == 0.0)
    throw std::invalid_argument("P3: (q1, q2) must not both vanish");
  return MotionPolynomial::linear_factor(
      DualQuaternion{{0, 0, 0, -1}, {0, -make_y1(dp), -make_y2(dp), 0}});
}

// P2 = t + (n1 i + n2 j + n3 k)/(u + w) - eps(z1 i + z2 j + z3 k) with the
// unit direction n of the circle axis of the translation between P3 and P1.
inline MotionPolynomial make_P2(const DesignParams& dp) {
  double u = dp.b * dp.b + dp.c * dp.c;
  double w = 4.0 * (dp.q1 * dp.q1 + dp.q2 * dp.q2);
  double n1 = 4.0 * (dp.b * dp.q1 - dp.c * dp.q2);
  double n2 = 4.0 * (dp.b * dp.q2 + dp.c * dp.q1);
  // u = w holds identically on the degenerate branch
  double n3 = dp.degenerate ? 0.0 : -(u - w);
  double den = u + w;
  return MotionPolynomial::linear_factor(
      DualQuaternion{{0, -n1 / den, -n2 / den, -n3 / den},
                     {0, dp.z1, dp.z2, dp.z3}});
}

struct VerificationFailure : std::runtime_error {
  double residual;
  explicit VerificationFailure(const std::string& what, double r)
      : std::runtime_error(what), residual(r) {}
};

// Quotient ((t^2+1) M) / P4^2, obtained by two right divisions.
inline MotionPolynomial make_Q(const DesignParams& dp) {
  MotionPolynomial t2m = poly_mul(MotionPolynomial::from_real({1, 0, 1}),
                                  make_vertical_darboux(dp.b, dp.c));
  DualQuaternion h4{{0, 0, 0, 1}, {0, dp.q1, dp.q2, 0}};
  for (int pass = 0; pass < 2; ++pass) {
    DivisionResult div = poly_div_right(t2m, h4);
    double r = max_abs_coeff(div.remainder);
    if (r > dp.tol)
      throw VerificationFailure("Q: P4 does not divide (t^2+1)M", r);
    t2m = div.quotient;
  }
  return t2m;
}

// The last factor is the quotient of (t^2+1) M by P2 P3 P4^2, peeled off by
// successive right divisions.  See p1_closed_form for the explicit formula.
inline MotionPolynomial make_P1(const DesignParams& dp) {
  MotionPolynomial rest = make_Q(dp);
  for (const MotionPolynomial& f : {make_P3(dp), make_P2(dp)}) {
    DivisionResult div = poly_div_right(rest, -f.c[0]);
    double r = max_abs_coeff(div.remainder);
    if (r > dp.tol)
      throw VerificationFailure("P1: division remainder above tolerance", r);
    rest = div.quotient;
  }
  return rest;
}

// Closed-form expression for the last factor.  The division result is
// authoritative; on the degenerate branch with z != 0 this expression's
// eps i / eps j terms deviate from the true cofactor, which
// p1_closed_form_deviation exposes.
inline MotionPolynomial p1_closed_form(const DesignParams& dp) {
  double b = dp.b, c = dp.c, q1 = dp.q1, q2 = dp.q2;
  double u = b * b + c * c;
  if (dp.degenerate) {
    double a1 = b * q1 - c * q2;
    double a2 = b * q2 + c * q1;
    double g = (u * dp.z - 2 * c) / u;
    DualQuaternion h{{0, 2 * a1 / u, 2 * a2 / u, 0},
                     {0, g * a2, -g * a1, -(dp.z3 - b)}};
    return MotionPolynomial::linear_factor(h);
  }
  double w = 4.0 * (q1 * q1 + q2 * q2);
  double n1 = 4.0 * (b * q1 - c * q2);
  double n2 = 4.0 * (b * q2 + c * q1);
  double n3 = -(u - w);
  double e1 = (2 * q2 * (b * c + 2 * q1 * q2 + 2 * dp.z1 * q2) -
               q1 * (b * b - c * c - 4 * q1 * q1 - 4 * q1 * dp.z1)) /
              w;
  double e2 = (2 * q1 * (b * c - 2 * q1 * q2 - 2 * q1 * dp.z2) +
               q2 * (b * b - c * c - 4 * q2 * q2 - 4 * q2 * dp.z2)) /
              w;
  double e3 = (n1 * dp.z1 + n2 * dp.z2 - b * (u - w)) / (u - w);
  DualQuaternion h{{0, n1 / (u + w), n2 / (u + w), n3 / (u + w)},
                   {0, -e1, e2, -e3}};
  return MotionPolynomial::linear_factor(h);
}

struct Factorization {
  DesignParams params;
  MotionPolynomial M;
  MotionPolynomial P1, P2, P3, P4;
  double y1 = 0.0, y2 = 0.0, z3 = 0.0;
};

// Coefficientwise residual of P1 P2 P3 P4^2 - (t^2+1) M; both sides are
// monic of degree five.
inline double factorization_residual(const Factorization& f) {
  MotionPolynomial prod = poly_mul(
      poly_mul(poly_mul(f.P1, f.P2), f.P3), poly_mul(f.P4, f.P4));
  MotionPolynomial t2m =
      poly_mul(MotionPolynomial::from_real({1, 0, 1}), f.M);
  MotionPolynomial diff = poly_sub(prod, t2m);
  double r = 0.0;
  for (const auto& ci : diff.c) r = std::max(r, max_abs_coeff(ci));
  return r;
}

inline Factorization factorize(const DesignParams& dp) {
  Factorization f;
  f.params = dp;
  f.M = make_vertical_darboux(dp.b, dp.c);
  f.P4 = make_P4(dp.q1, dp.q2);
  f.P3 = make_P3(dp);
  f.P2 = make_P2(dp);
  f.P1 = make_P1(dp);
  f.y1 = make_y1(dp);
  f.y2 = make_y2(dp);
  f.z3 = dp.z3;
  double r = factorization_residual(f);
  if (r > dp.tol)
    throw VerificationFailure("factorize: product identity residual", r);
  return f;
}

inline double p1_closed_form_deviation(const Factorization& f) {
  MotionPolynomial diff = poly_sub(f.P1, p1_closed_form(f.params));
  double r = 0.0;
  for (const auto& ci : diff.c) r = std::max(r, max_abs_coeff(ci));
  return r;
}

struct Joint {
  char type = 'R';  // 'R' revolute, 'C' cylindrical
  std::array<double, 6> plucker{};
};

struct LinkageDescription {
  DesignParams design;
  std::vector<Joint> joints;  // chain order P1, P2, P3, P4, C
};

namespace detail {

inline std::array<double, 6> normalized_plucker(const PlueckerLine& line) {
  std::array<double, 6> a{line.direction.x, line.direction.y,
                          line.direction.z, line.moment.x,
                          line.moment.y,    line.moment.z};
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  if (m == 0.0) return a;
  for (double& v : a) v /= m;
  for (double v : a) {
    if (std::abs(v) > 1e-12) {
      if (v < 0.0)
        for (double& x : a) x = -x;
      break;
    }
  }
  return a;
}

}  // namespace detail

inline LinkageDescription extract_linkage(const Factorization& f) {
  LinkageDescription lk;
  lk.design = f.params;
  for (const MotionPolynomial* p : {&f.P1, &f.P2, &f.P3, &f.P4}) {
    JointAxis axis = axis_of_linear(-p->c[0]);
    lk.joints.push_back(
        {'R', detail::normalized_plucker(std::get<PlueckerLine>(axis))});
  }
  lk.joints.push_back({'C', {0, 0, 1, 0, 0, 0}});
  return lk;
}

}  // namespace darboux
