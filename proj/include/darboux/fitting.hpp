#pragma once
#include <Eigen/Dense>

#include "darboux/dual_quaternion.hpp"

namespace darboux {

// Least-squares plane n . x = offset with unit normal; rms is the root mean
// square point-to-plane distance.
struct PlaneFit {
  Vec3 normal;
  double offset = 0.0;
  double rms = 0.0;
};

inline PlaneFit plane_fit(const std::vector<Vec3>& pts) {
  if (pts.size() < 3) throw std::invalid_argument("plane_fit: need 3 points");
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (const auto& p : pts) centroid += Eigen::Vector3d(p.x, p.y, p.z);
  centroid /= static_cast<double>(pts.size());
  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (const auto& p : pts) {
    Eigen::Vector3d d = Eigen::Vector3d(p.x, p.y, p.z) - centroid;
    cov += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
  Eigen::Vector3d n = eig.eigenvectors().col(0);  // smallest eigenvalue
  PlaneFit fit;
  fit.normal = {n.x(), n.y(), n.z()};
  fit.offset = n.dot(centroid);
  fit.rms = std::sqrt(std::max(eig.eigenvalues()(0), 0.0) /
                      static_cast<double>(pts.size()));
  return fit;
}

// Orthonormal in-plane axes for a unit normal.
inline std::pair<Vec3, Vec3> plane_basis(const Vec3& normal) {
  Vec3 seed = std::abs(normal.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  Vec3 u = cross(normal, seed);
  u = u * (1.0 / norm(u));
  Vec3 v = cross(normal, u);
  return {u, v};
}

inline std::vector<std::array<double, 2>> project_to_plane(
    const std::vector<Vec3>& pts, const PlaneFit& plane) {
  auto [u, v] = plane_basis(plane.normal);
  Vec3 origin = plane.normal * plane.offset;
  std::vector<std::array<double, 2>> out;
  out.reserve(pts.size());
  for (const auto& p : pts) {
    Vec3 d = p - origin;
    out.push_back({dot(d, u), dot(d, v)});
  }
  return out;
}

// Algebraic conic a x^2 + b xy + c y^2 + d x + e y + f = 0 fitted with the
// unit-norm constraint on (a..f); rms is the root mean square algebraic
// residual.
struct ConicFit {
  std::array<double, 6> coeffs{};
  double rms = 0.0;
};

inline ConicFit conic_fit(const std::vector<std::array<double, 2>>& pts) {
  if (pts.size() < 6) throw std::invalid_argument("conic_fit: need 6 points");
  Eigen::MatrixXd m(pts.size(), 6);
  for (size_t i = 0; i < pts.size(); ++i) {
    double x = pts[i][0], y = pts[i][1];
    m.row(static_cast<Eigen::Index>(i)) << x * x, x * y, y * y, x, y, 1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinV);
  Eigen::VectorXd v = svd.matrixV().col(5);
  ConicFit fit;
  for (int i = 0; i < 6; ++i) fit.coeffs[static_cast<size_t>(i)] = v(i);
  fit.rms = svd.singularValues()(5) /
            std::sqrt(static_cast<double>(pts.size()));
  return fit;
}

// Deviation of a trajectory from a circle about the z-axis.
struct CircleStats {
  double mean_z = 0.0, z_spread = 0.0;
  double mean_radius = 0.0, radius_spread = 0.0;
};

inline CircleStats circle_stats(const std::vector<Vec3>& pts) {
  if (pts.empty()) throw std::invalid_argument("circle_stats: no points");
  CircleStats st;
  for (const auto& p : pts) {
    st.mean_z += p.z;
    st.mean_radius += std::hypot(p.x, p.y);
  }
  st.mean_z /= static_cast<double>(pts.size());
  st.mean_radius /= static_cast<double>(pts.size());
  for (const auto& p : pts) {
    st.z_spread = std::max(st.z_spread, std::abs(p.z - st.mean_z));
    st.radius_spread = std::max(
        st.radius_spread, std::abs(std::hypot(p.x, p.y) - st.mean_radius));
  }
  return st;
}

}  // namespace darboux
