#pragma once
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <variant>

namespace darboux {

inline constexpr double default_tol = 1e-9;
inline constexpr double inf = std::numeric_limits<double>::infinity();

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};

inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

struct Quaternion {
  double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

  Quaternion operator+(const Quaternion& o) const {
    return {w + o.w, x + o.x, y + o.y, z + o.z};
  }
  Quaternion operator-(const Quaternion& o) const {
    return {w - o.w, x - o.x, y - o.y, z - o.z};
  }
  Quaternion operator*(double s) const { return {w * s, x * s, y * s, z * s}; }
  Quaternion operator-() const { return {-w, -x, -y, -z}; }
};

// Hamilton product, i^2 = j^2 = k^2 = ijk = -1.
inline Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline Quaternion conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

inline double dot(const Quaternion& a, const Quaternion& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

// Dual numbers re + eps * du with eps^2 = 0; the value of the dual
// quaternion norm.
struct DualNumber {
  double re = 0.0, du = 0.0;
};

inline DualNumber operator*(const DualNumber& a, const DualNumber& b) {
  return {a.re * b.re, a.re * b.du + a.du * b.re};
}

// A dual quaternion p + eps * d in Study coordinates
// (p0, p1, p2, p3, d0, d1, d2, d3).  Flat indices 0..7 follow that order.
struct DualQuaternion {
  Quaternion p;  // primal
  Quaternion d;  // dual

  static DualQuaternion identity() { return {{1.0, 0.0, 0.0, 0.0}, {}}; }
  static DualQuaternion from_coeffs(const std::array<double, 8>& c) {
    return {{c[0], c[1], c[2], c[3]}, {c[4], c[5], c[6], c[7]}};
  }

  std::array<double, 8> coeffs() const {
    return {p.w, p.x, p.y, p.z, d.w, d.x, d.y, d.z};
  }

  DualQuaternion operator+(const DualQuaternion& o) const {
    return {p + o.p, d + o.d};
  }
  DualQuaternion operator-(const DualQuaternion& o) const {
    return {p - o.p, d - o.d};
  }
  DualQuaternion operator*(double s) const { return {p * s, d * s}; }
  DualQuaternion operator-() const { return {-p, -d}; }
};

inline DualQuaternion dq_mul(const DualQuaternion& a, const DualQuaternion& b) {
  return {a.p * b.p, a.p * b.d + a.d * b.p};
}

inline DualQuaternion operator*(const DualQuaternion& a,
                                const DualQuaternion& b) {
  return dq_mul(a, b);
}

inline DualQuaternion dq_conj(const DualQuaternion& h) {
  return {conj(h.p), conj(h.d)};
}

inline DualNumber dq_norm(const DualQuaternion& h) {
  return {dot(h.p, h.p), 2.0 * dot(h.p, h.d)};
}

inline double max_abs_coeff(const DualQuaternion& h) {
  double m = 0.0;
  for (double c : h.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

// Canonical projective representative: scale by the largest coefficient
// magnitude, then flip sign so the first nonzero coefficient is positive.
inline DualQuaternion normalized(const DualQuaternion& h,
                                 double zero_tol = 1e-12) {
  double m = max_abs_coeff(h);
  if (m == 0.0) return h;
  DualQuaternion r = h * (1.0 / m);
  for (double c : r.coeffs()) {
    if (std::abs(c) > zero_tol) {
      if (c < 0.0) r = -r;
      break;
    }
  }
  return r;
}

inline bool study_check(const DualQuaternion& h, double tol = default_tol) {
  DualNumber n = dq_norm(h);
  return n.re > 0.0 && std::abs(n.du) <= tol;
}

inline bool dq_equiv(const DualQuaternion& a, const DualQuaternion& b,
                     double tol = default_tol) {
  DualQuaternion na = normalized(a), nb = normalized(b);
  auto ca = na.coeffs(), cb = nb.coeffs();
  for (int i = 0; i < 8; ++i)
    if (std::abs(ca[i] - cb[i]) > tol) return false;
  return true;
}

// Point of projective three-space, [x0 : x1 : x2 : x3] with x0 the
// homogenizing coordinate.
struct ProjectivePoint {
  double x0 = 1.0, x1 = 0.0, x2 = 0.0, x3 = 0.0;

  Vec3 dehomogenized() const { return {x1 / x0, x2 / x0, x3 / x0}; }
};

// Displacement action x0 + eps*x  ->  (p - eps d)(x0 + eps x)(p~ + eps d~).
inline ProjectivePoint act_on_point(const DualQuaternion& h,
                                    const ProjectivePoint& pt) {
  if (dot(h.p, h.p) == 0.0)
    throw std::invalid_argument("act_on_point: zero primal part");
  DualQuaternion left{h.p, -h.d};
  DualQuaternion x{{pt.x0, 0.0, 0.0, 0.0}, {0.0, pt.x1, pt.x2, pt.x3}};
  DualQuaternion right{conj(h.p), conj(h.d)};
  DualQuaternion r = left * x * right;
  return {r.p.w, r.d.x, r.d.y, r.d.z};
}

struct PlueckerLine {
  Vec3 direction;
  Vec3 moment;
};

struct TranslationDirection {
  Vec3 direction;
};

using JointAxis = std::variant<PlueckerLine, TranslationDirection>;

// Axis of the motion given by the monic linear polynomial t - h.  For a
// rotation the Pluecker coordinates are [p1,p2,p3,-d1,-d2,-d3]; a factor
// with vanishing primal vector part is a translation along [d1,d2,d3].
inline JointAxis axis_of_linear(const DualQuaternion& h,
                                double tol = default_tol) {
  if (std::abs(h.d.w) > tol)
    throw std::invalid_argument("axis_of_linear: d0 must vanish for t - h");
  Vec3 pv{h.p.x, h.p.y, h.p.z};
  if (norm(pv) > tol) return PlueckerLine{pv, {-h.d.x, -h.d.y, -h.d.z}};
  return TranslationDirection{{h.d.x, h.d.y, h.d.z}};
}

}  // namespace darboux
