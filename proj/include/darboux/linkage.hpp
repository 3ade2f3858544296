#pragma once
#include <functional>
#include <utility>

#include "darboux/factorization.hpp"

namespace darboux {

// Joint coordinates of the closed chain
// C = P1(v1) P2(v2) P3(v3) P4(v4) (tau - k)(1 - eps s k).
// The rotation parameters are tan-half-angle values on the extended real
// line; an infinite value parks that joint at the identity.
struct JointValues {
  double v1 = inf, v2 = inf, v3 = inf, v4 = inf;
  double tau = inf;
  double s = 0.0;
};

inline DualQuaternion cjoint_pose(double tau, double s) {
  DualQuaternion rot = std::isinf(tau)
                           ? DualQuaternion::identity()
                           : DualQuaternion{{tau, 0, 0, -1}, {}};
  DualQuaternion slide{{1, 0, 0, 0}, {0, 0, 0, -s}};
  return rot * slide;
}

inline DualQuaternion coupler_transform(const Factorization& f,
                                        const JointValues& jv) {
  return poly_eval(f.P1, jv.v1) * poly_eval(f.P2, jv.v2) *
         poly_eval(f.P3, jv.v3) * poly_eval(f.P4, jv.v4);
}

inline DualQuaternion chain_pose(const Factorization& f,
                                 const JointValues& jv) {
  return coupler_transform(f, jv) * cjoint_pose(jv.tau, jv.s);
}

// Closure residuals are read off the max-abs normalized pose so they are
// insensitive to the projective scale.
struct ClosureResidual {
  std::array<double, 7> components{};
  int mode = 1;
  bool nondegenerate = true;

  double max_abs() const {
    double m = 0.0;
    for (double c : components) m = std::max(m, std::abs(c));
    return m;
  }
  bool closed(double tol = default_tol) const {
    return nondegenerate && max_abs() < tol;
  }
};

// First assembly: C must reduce to a real scalar, so the coefficients of
// i, j, k, eps, eps i, eps j, eps k all vanish.
inline ClosureResidual closure_residual_1(const DualQuaternion& c) {
  DualQuaternion n = normalized(c);
  ClosureResidual r;
  r.components = {n.p.x, n.p.y, n.p.z, n.d.w, n.d.x, n.d.y, n.d.z};
  r.mode = 1;
  return r;
}

// Second assembly: the coefficients of 1, k, eps, eps i, eps j, eps k
// vanish, the surviving i and j coefficients satisfy
// (b q1 - c q2) ci + (b q2 + c q1) cj = 0, and (ci, cj) != 0 so the pose is
// a genuine half-turn rather than the identity.
inline ClosureResidual closure_residual_2(const DualQuaternion& c,
                                          const DesignParams& dp,
                                          double nondeg_tol = 1e-6) {
  DualQuaternion n = normalized(c);
  double ci = n.p.x, cj = n.p.y;
  ClosureResidual r;
  r.components = {n.p.w,
                  n.p.z,
                  n.d.w,
                  n.d.x,
                  n.d.y,
                  n.d.z,
                  (dp.b * dp.q1 - dp.c * dp.q2) * ci +
                      (dp.b * dp.q2 + dp.c * dp.q1) * cj};
  r.mode = 2;
  r.nondegenerate = ci * ci + cj * cj > nondeg_tol;
  return r;
}

// Recovers the C-joint values closing a first-assembly configuration with
// coupler pose K.  The primal part of K must be a z-rotation a0 + a3 k;
// tau = a0/a3 cancels it and the slide then follows from one linear
// equation in the eps k coefficient.
inline std::pair<double, double> solve_cjoint_assembly1(
    const DualQuaternion& k) {
  double tau = k.p.z == 0.0 ? inf : k.p.w / k.p.z;
  DualQuaternion a =
      k * (std::isinf(tau) ? DualQuaternion::identity()
                           : DualQuaternion{{tau, 0, 0, -1}, {}});
  double s = a.d.z / a.p.w;
  return {tau, s};
}

using ModeCurve = std::function<JointValues(double)>;

struct TrajectorySample {
  double t = 0.0;
  Vec3 point;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  std::vector<double> skipped;  // parameters where the pose was indeterminate
};

inline Trajectory trace_point(const Factorization& f, const ModeCurve& curve,
                              const ProjectivePoint& pt,
                              const std::vector<double>& t_samples) {
  Trajectory out;
  for (double t : t_samples) {
    JointValues jv = curve(t);
    DualQuaternion pose = coupler_transform(f, jv);
    bool bad = false;
    for (double c : pose.coeffs())
      if (!std::isfinite(c)) bad = true;
    if (bad || max_abs_coeff(pose) == 0.0) {
      out.skipped.push_back(t);
      continue;
    }
    ProjectivePoint image = act_on_point(pose, pt);
    if (image.x0 == 0.0 || !std::isfinite(1.0 / image.x0)) {
      out.skipped.push_back(t);
      continue;
    }
    out.samples.push_back({t, image.dehomogenized()});
  }
  return out;
}

}  // namespace darboux
