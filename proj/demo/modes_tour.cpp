// Tours the operation modes of two example linkages: a generic one with
// two modes in the first assembly, and a degenerate one that gains the
// special rotation modes and a second assembly mode.
#include <cmath>
#include <cstdio>

#include "darboux/fitting.hpp"
#include "darboux/io.hpp"
#include "darboux/modes.hpp"

namespace {

void sweep_and_report(const darboux::Factorization& f,
                      const darboux::ModeSolution& m) {
  using namespace darboux;
  std::printf("  branch %-8s", branch_name(m.branch));
  if (!m.real) {
    std::printf(" complex, discriminant %.6g\n", m.discriminant);
    return;
  }
  SweepReport rep = sweep_closure(f, m, -8.0, 8.0, 161);
  std::printf(" max closure residual %.3g over %d samples", rep.max_residual,
              rep.evaluated);
  if (rep.skipped) std::printf(" (%d skipped)", rep.skipped);
  std::printf("\n");
}

void trace_and_fit(const darboux::Factorization& f,
                   const darboux::ModeSolution& m) {
  using namespace darboux;
  Trajectory traj = trace_point(f, m.curve, {1.0, 1.0, 0.0, 0.0},
                                linspace(-8.0, 8.0, 321));
  if (traj.samples.size() < 6) return;
  std::vector<Vec3> pts;
  for (const auto& s : traj.samples) pts.push_back(s.point);
  CircleStats cs = circle_stats(pts);
  std::printf("  branch %-8s traces z=%.6g radius %.6g  (spreads %.2g, %.2g)\n",
              branch_name(m.branch), cs.mean_z, cs.mean_radius, cs.z_spread,
              cs.radius_spread);
}

}  // namespace

int main() {
  using namespace darboux;

  DesignParams generic = generic_params(1.0, 2.0, 1.0, 0.0, 0.0, 0.0);
  Factorization fg = factorize(generic);
  std::printf("generic linkage b=1 c=2 q1=1 q2=0:\n");
  std::printf("assembly 1:\n");
  for (const auto& m : enumerate_modes(generic, 1)) sweep_and_report(fg, m);
  std::printf("assembly 2 exists: %s (condition value %.6g)\n\n",
              assembly2_exists(generic) ? "yes" : "no",
              assembly2_condition_value(generic));

  double r2 = std::sqrt(2.0);
  DesignParams degen = degenerate_params(r2, r2, 1.0, 0.0, 0.0, 0.0);
  Factorization fd = factorize(degen);
  std::printf("degenerate linkage b=c=sqrt(2) q1=1 q2=0:\n");
  std::printf("assembly 1:\n");
  auto modes1 = enumerate_modes(degen, 1);
  for (const auto& m : modes1) sweep_and_report(fd, m);
  std::printf("special rotation modes drive circles:\n");
  for (const auto& m : modes1)
    if (m.branch == Branch::Cplus || m.branch == Branch::Cminus)
      trace_and_fit(fd, m);

  std::printf("assembly 2:\n");
  for (const auto& m : enumerate_modes(degen, 2)) sweep_and_report(fd, m);
  return 0;
}
