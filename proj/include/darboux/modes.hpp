#pragma once
#include <memory>
#include <optional>
#include <string>

#include "darboux/linkage.hpp"

namespace darboux {

enum class Branch { A, B, Cplus, Cminus, II_rot_plus, II_rot_minus, II_curve };

inline const char* branch_name(Branch b) {
  switch (b) {
    case Branch::A: return "A";
    case Branch::B: return "B";
    case Branch::Cplus: return "C+";
    case Branch::Cminus: return "C-";
    case Branch::II_rot_plus: return "II-rot+";
    case Branch::II_rot_minus: return "II-rot-";
    case Branch::II_curve: return "II-curve";
  }
  return "?";
}

inline std::optional<Branch> parse_branch(const std::string& s) {
  for (Branch b : {Branch::A, Branch::B, Branch::Cplus, Branch::Cminus,
                   Branch::II_rot_plus, Branch::II_rot_minus,
                   Branch::II_curve})
    if (s == branch_name(b)) return b;
  return std::nullopt;
}

// One solution branch of the closure equations: a curve of joint values
// over one driving parameter (v1 for A and B, v3 everywhere else).
struct ModeSolution {
  int assembly = 1;
  Branch branch = Branch::A;
  ModeCurve curve;
  std::vector<double> poles;
  bool real = true;
  double discriminant = 0.0;
};

// The second factor of the v4-resultant of the first-assembly closure
// equations, term for term.
inline double eval_F(double v1, double v3, const DesignParams& dp) {
  double b = dp.b, c = dp.c, q1 = dp.q1, q2 = dp.q2;
  double b2 = b * b, c2 = c * c, q12 = q1 * q1, q22 = q2 * q2;
  double b4 = b2 * b2, c4 = c2 * c2, bc = b * c;
  double v12 = v1 * v1, v13 = v12 * v1;
  return 8 * bc * q12 * v13 * v3 + 8 * bc * q22 * v13 * v3 + b4 * v13 -
         b4 * v12 * v3 + 2 * b2 * c2 * v13 - 2 * b2 * c2 * v12 * v3 +
         4 * b2 * q12 * v13 + 12 * b2 * q12 * v12 * v3 + 4 * b2 * q22 * v13 +
         12 * b2 * q22 * v12 * v3 + c4 * v13 - c4 * v12 * v3 -
         4 * c2 * q12 * v13 - 12 * c2 * q12 * v12 * v3 - 4 * c2 * q22 * v13 -
         12 * c2 * q22 * v12 * v3 - 24 * bc * q12 * v12 -
         24 * bc * q12 * v1 * v3 - 24 * bc * q22 * v12 -
         24 * bc * q22 * v1 * v3 + v1 * b4 - b4 * v3 + 2 * v1 * c2 * b2 -
         2 * b2 * c2 * v3 - 12 * b2 * q12 * v1 - 4 * b2 * q12 * v3 -
         12 * b2 * q22 * v1 - 4 * b2 * q22 * v3 + v1 * c4 - c4 * v3 +
         12 * c2 * q12 * v1 + 4 * c2 * q12 * v3 + 12 * c2 * q22 * v1 +
         4 * c2 * q22 * v3 + 8 * bc * q12 + 8 * bc * q22;
}

namespace detail {

// tau = -(v3 v4 + 1)/(v3 - v4) on the extended real line (first assembly).
inline double tau_assembly1(double v3, double v4) {
  if (std::isinf(v3) && std::isinf(v4))
    return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(v3)) return -v4;
  if (std::isinf(v4)) return v3;
  return -(v3 * v4 + 1.0) / (v3 - v4);
}

// tau = (v3 - v4)/(v3 v4 + 1) on the extended real line (second assembly).
inline double tau_assembly2(double v3, double v4) {
  if (std::isinf(v3) && std::isinf(v4))
    return std::numeric_limits<double>::quiet_NaN();
  if (std::isinf(v3)) return 1.0 / v4;
  if (std::isinf(v4)) return -1.0 / v3;
  return (v3 - v4) / (v3 * v4 + 1.0);
}

inline double slide_assembly1(const DesignParams& dp, double v1) {
  if (std::isinf(v1)) return 0.0;
  return -(dp.b * v1 - dp.c) / (v1 * v1 + 1.0);
}

inline double slide_assembly2(const DesignParams& dp, double v1) {
  if (std::isinf(v1)) return dp.z * (dp.b * dp.b + dp.c * dp.c) / 2.0;
  double u = dp.b * dp.b + dp.c * dp.c;
  return (dp.z * u * (v1 * v1 + 1.0) + 2.0 * dp.b * v1 - 2.0 * dp.c) /
         (2.0 * (v1 * v1 + 1.0));
}

}  // namespace detail

// Mode A: v2 = v3 = v1, v4 = (v1^2-1)/(2 v1), tau = -v1; the coupler
// performs the prescribed vertical Darboux motion.
inline JointValues mode_A(const DesignParams& dp, double v1) {
  JointValues jv;
  jv.v1 = jv.v2 = jv.v3 = v1;
  if (std::isinf(v1))
    jv.v4 = inf;
  else
    jv.v4 = v1 == 0.0 ? inf : (v1 * v1 - 1.0) / (2.0 * v1);
  jv.tau = -v1;
  jv.s = detail::slide_assembly1(dp, v1);
  return jv;
}

// Mode B: v2 = v1 and the closed forms for v3, v4; the coupler motion has
// degree five and sextic trajectories.
inline JointValues mode_B(const DesignParams& dp, double v1) {
  double b = dp.b, c = dp.c;
  double u = b * b + c * c;
  double w = 4.0 * (dp.q1 * dp.q1 + dp.q2 * dp.q2);
  double b2c2 = b * b - c * c, bc = b * c;
  JointValues jv;
  jv.v1 = jv.v2 = v1;
  if (std::isinf(v1)) {
    jv.v3 = (u * u + b2c2 * w) / (-2.0 * bc * w);
    jv.v4 = -b2c2 / (2.0 * bc);
  } else {
    double num = v1 * (v1 * v1 + 1.0) * u * u +
                 (b2c2 * (v1 * v1 * v1 - 3.0 * v1) - 6.0 * bc * v1 * v1 +
                  2.0 * bc) *
                     w;
    double den = (v1 * v1 + 1.0) * u * u -
                 (b2c2 * (3.0 * v1 * v1 - 1.0) + 2.0 * bc * v1 * v1 * v1 -
                  6.0 * bc * v1) *
                     w;
    jv.v3 = num / den;
    jv.v4 = -((b * v1 + c * v1 + b - c) * (b * v1 - c * v1 - b - c)) /
            (2.0 * (c * v1 + b) * (b * v1 - c));
  }
  jv.tau = detail::tau_assembly1(jv.v3, jv.v4);
  jv.s = detail::slide_assembly1(dp, v1);
  return jv;
}

// The mode-B coupler motion decomposed as vertical Darboux motion times
// z-rotation.  Their product is proportional to
// P1(v1) P2(v1) P3(v3(v1)) P4(v4(v1)) at every parameter value.
inline std::pair<MotionPolynomial, MotionPolynomial> mode_B_decomposition(
    const DesignParams& dp) {
  double b = dp.b, c = dp.c;
  double u = b * b + c * c;
  double w = 4.0 * (dp.q1 * dp.q1 + dp.q2 * dp.q2);
  MotionPolynomial darb;  // (t^2+1)(bt-c+(ct+b)k) + eps(bt-c)(ct+b-(bt-c)k)
  darb.c.resize(4);
  darb.c[0] = DualQuaternion{{-c, 0, 0, b}, {-b * c, 0, 0, -c * c}};
  darb.c[1] = DualQuaternion{{b, 0, 0, c}, {b * b - c * c, 0, 0, 2 * b * c}};
  darb.c[2] = DualQuaternion{{-c, 0, 0, b}, {b * c, 0, 0, -b * b}};
  darb.c[3] = DualQuaternion{{b, 0, 0, c}, {}};
  MotionPolynomial rot;  // -(bt^2-2ct-b)(u+w) - (ct^2+2bt-c)(u-w)k
  rot.c.resize(3);
  rot.c[0] = DualQuaternion{{b * (u + w), 0, 0, c * (u - w)}, {}};
  rot.c[1] = DualQuaternion{{2 * c * (u + w), 0, 0, -2 * b * (u - w)}, {}};
  rot.c[2] = DualQuaternion{{-b * (u + w), 0, 0, -c * (u - w)}, {}};
  return {darb, rot};
}

inline ModeSolution mode_A_solution(const DesignParams& dp) {
  ModeSolution m;
  m.assembly = 1;
  m.branch = Branch::A;
  m.curve = [dp](double v1) { return mode_A(dp, v1); };
  m.poles = {0.0};
  return m;
}

inline ModeSolution mode_B_solution(const DesignParams& dp) {
  ModeSolution m;
  m.assembly = 1;
  m.branch = Branch::B;
  m.curve = [dp](double v1) { return mode_B(dp, v1); };
  m.poles = {-dp.b / dp.c, dp.c / dp.b};
  return m;
}

// The two z-axis rotation modes v1 = (c +- sqrt(b^2+c^2))/b, v4 = c/b that
// appear when b^2+c^2-4q1^2-4q2^2 = 0.  tau and s are recovered per sample
// from the remaining linear closure equations.
inline std::vector<ModeSolution> special_rotation_modes(
    const DesignParams& dp) {
  if (!degenerate_condition(dp.b, dp.c, dp.q1, dp.q2, dp.tol)) return {};
  if (dp.b == 0.0)
    throw std::invalid_argument("special rotation modes: b must not vanish");
  auto f = std::make_shared<Factorization>(factorize(dp));
  double root = std::sqrt(dp.b * dp.b + dp.c * dp.c);
  std::vector<ModeSolution> out;
  for (int sign : {+1, -1}) {
    double v1 = (dp.c + sign * root) / dp.b;
    double v4 = dp.c / dp.b;
    ModeSolution m;
    m.assembly = 1;
    m.branch = sign > 0 ? Branch::Cplus : Branch::Cminus;
    m.poles = {v4};  // v3 = v4 sends tau through infinity
    m.curve = [f, v1, v4](double v3) {
      JointValues jv;
      jv.v1 = jv.v2 = v1;
      jv.v3 = v3;
      jv.v4 = v4;
      auto [tau, s] = solve_cjoint_assembly1(coupler_transform(*f, jv));
      jv.tau = tau;
      jv.s = s;
      return jv;
    };
    out.push_back(std::move(m));
  }
  return out;
}

inline bool assembly2_exists(const DesignParams& dp) {
  return degenerate_condition(dp.b, dp.c, dp.q1, dp.q2, dp.tol);
}

inline double assembly2_condition_value(const DesignParams& dp) {
  return dp.b * dp.b + dp.c * dp.c -
         4.0 * (dp.q1 * dp.q1 + dp.q2 * dp.q2);
}

// Realness dead zone for discriminant classification.
inline constexpr double discriminant_dead_zone = 1e-12;

// First factor of the second-assembly condition (b v4 - c) = 0:
// v1 = (-c +- sqrt(-3b^2+8bz3+c^2-4z3^2))/(b-2z3), v4 = c/b.
inline std::vector<ModeSolution> assembly2_rot_branch(const DesignParams& dp,
                                                      double z3) {
  if (!assembly2_exists(dp))
    throw std::invalid_argument("assembly 2 does not exist for these params");
  if (dp.b - 2.0 * z3 == 0.0)
    throw std::invalid_argument("assembly2 rotation branch: b = 2 z3");
  double b = dp.b, c = dp.c;
  double disc = -3.0 * b * b + 8.0 * b * z3 + c * c - 4.0 * z3 * z3;
  bool real = disc > -discriminant_dead_zone;
  double root = real ? std::sqrt(std::max(disc, 0.0)) : 0.0;
  std::vector<ModeSolution> out;
  for (int sign : {+1, -1}) {
    ModeSolution m;
    m.assembly = 2;
    m.branch = sign > 0 ? Branch::II_rot_plus : Branch::II_rot_minus;
    m.real = real;
    m.discriminant = disc;
    double v1 = real ? (-c + sign * root) / (b - 2.0 * z3)
                     : std::numeric_limits<double>::quiet_NaN();
    double v4 = c / b;
    DesignParams p = dp;
    m.poles = {-1.0 / v4};  // v3 v4 + 1 = 0 sends tau through infinity
    m.curve = [p, v1, v4](double v3) {
      JointValues jv;
      jv.v1 = v1;
      jv.v2 = -1.0 / v1;
      jv.v3 = v3;
      jv.v4 = v4;
      jv.tau = detail::tau_assembly2(v3, v4);
      jv.s = detail::slide_assembly2(p, v1);
      return jv;
    };
    out.push_back(std::move(m));
  }
  return out;
}

struct Assembly2CurveResult {
  std::vector<JointValues> solutions;
  double discriminant = 0.0;
};

// Second factor of the second-assembly condition, v4 = (v3^2-1)/(2 v3); the
// resubstituted closure equation is quadratic in v1.
inline Assembly2CurveResult assembly2_curve_branch(const DesignParams& dp,
                                                   double z3, double v3) {
  if (!assembly2_exists(dp))
    throw std::invalid_argument("assembly 2 does not exist for these params");
  if (v3 == 0.0)
    throw std::invalid_argument("assembly2 curve branch: v3 = 0");
  double b = dp.b, c = dp.c;
  double qa = -v3 * v3 * z3 + c * v3 + b - z3;
  double qb = c * (v3 * v3 + 1.0);
  double qc = b * v3 * v3 - v3 * v3 * z3 + c * v3 + 2.0 * b - z3;
  Assembly2CurveResult res;
  double v4 = (v3 * v3 - 1.0) / (2.0 * v3);
  auto push = [&](double v1) {
    JointValues jv;
    jv.v1 = v1;
    jv.v2 = -1.0 / v1;
    jv.v3 = v3;
    jv.v4 = v4;
    jv.tau = detail::tau_assembly2(v3, v4);
    jv.s = detail::slide_assembly2(dp, v1);
    res.solutions.push_back(jv);
  };
  if (qa == 0.0) {
    res.discriminant = qb * qb;
    if (qb != 0.0) push(-qc / qb);
    return res;
  }
  double disc = qb * qb - 4.0 * qa * qc;
  res.discriminant = disc;
  if (disc < -discriminant_dead_zone) return res;
  if (std::abs(disc) <= discriminant_dead_zone) {
    push(-qb / (2.0 * qa));
    push(-qb / (2.0 * qa));
    return res;
  }
  double root = std::sqrt(disc);
  push((-qb - root) / (2.0 * qa));
  push((-qb + root) / (2.0 * qa));
  return res;
}

inline ModeSolution assembly2_curve_solution(const DesignParams& dp,
                                             double z3) {
  ModeSolution m;
  m.assembly = 2;
  m.branch = Branch::II_curve;
  m.poles = {0.0};
  DesignParams p = dp;
  m.curve = [p, z3](double v3) {
    if (v3 == 0.0) {
      JointValues bad;
      bad.v1 = std::numeric_limits<double>::quiet_NaN();
      return bad;
    }
    Assembly2CurveResult r = assembly2_curve_branch(p, z3, v3);
    if (r.solutions.empty()) {
      JointValues bad;
      bad.v1 = std::numeric_limits<double>::quiet_NaN();
      return bad;
    }
    return r.solutions.front();
  };
  return m;
}

inline std::vector<ModeSolution> enumerate_modes(const DesignParams& dp,
                                                 int assembly) {
  std::vector<ModeSolution> out;
  if (assembly == 1) {
    out.push_back(mode_A_solution(dp));
    out.push_back(mode_B_solution(dp));
    for (auto& m : special_rotation_modes(dp)) out.push_back(std::move(m));
  } else if (assembly == 2) {
    if (!assembly2_exists(dp)) return out;
    for (auto& m : assembly2_rot_branch(dp, dp.z3))
      out.push_back(std::move(m));
    out.push_back(assembly2_curve_solution(dp, dp.z3));
  } else {
    throw std::invalid_argument("assembly index must be 1 or 2");
  }
  return out;
}

struct SweepReport {
  double max_residual = 0.0;
  int evaluated = 0;
  int skipped = 0;
};

// Max closure residual of a branch over an even parameter grid.  Samples
// whose pose comes out indeterminate are skipped and counted.
inline SweepReport sweep_closure(const Factorization& f,
                                 const ModeSolution& mode, double lo,
                                 double hi, int n) {
  SweepReport rep;
  for (int i = 0; i < n; ++i) {
    double t = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    JointValues jv = mode.curve(t);
    DualQuaternion c = chain_pose(f, jv);
    bool bad = false;
    for (double x : c.coeffs())
      if (!std::isfinite(x)) bad = true;
    if (bad) {
      ++rep.skipped;
      continue;
    }
    ClosureResidual r = mode.assembly == 1
                            ? closure_residual_1(c)
                            : closure_residual_2(c, f.params);
    if (!r.nondegenerate) {
      ++rep.skipped;
      continue;
    }
    rep.max_residual = std::max(rep.max_residual, r.max_abs());
    ++rep.evaluated;
  }
  return rep;
}

}  // namespace darboux
