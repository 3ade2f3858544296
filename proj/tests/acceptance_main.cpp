// Acceptance gate: one numbered PASS/FAIL line per criterion, exit 0 only
// if every criterion holds.  Criterion 8 drives the installed CLI binary
// through its exit-code contract.
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "darboux/fitting.hpp"
#include "darboux/io.hpp"
#include "darboux/modes.hpp"
#include "darboux/svg.hpp"

using namespace darboux;

namespace {

std::vector<std::string> g_notes;

void note(const std::string& msg) { g_notes.push_back(msg); }

bool expect(bool ok, const std::string& msg) {
  if (!ok) note(msg);
  return ok;
}

bool expect_near(double got, double want, double tol, const std::string& what) {
  return expect(std::abs(got - want) < tol,
                what + ": got " + std::to_string(got) + ", want " +
                    std::to_string(want));
}

DesignParams random_generic(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (;;) {
    double b = dist(rng), c = dist(rng);
    double q1 = dist(rng), q2 = dist(rng);
    double u = b * b + c * c;
    double w = 4.0 * (q1 * q1 + q2 * q2);
    if (u < 0.2 || w < 0.2 || std::abs(u - w) < 0.05 * u) continue;
    return generic_params(b, c, q1, q2, 0.5 * dist(rng), 0.5 * dist(rng));
  }
}

DesignParams random_degenerate(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  for (;;) {
    double b = dist(rng), c = dist(rng);
    double u = b * b + c * c;
    if (u < 0.2) continue;
    double r = 0.5 * std::sqrt(u), th = angle(rng);
    return degenerate_params(b, c, r * std::cos(th), r * std::sin(th),
                             0.5 * dist(rng), 0.5 * dist(rng));
  }
}

// --- criterion 1: factorization identity ---------------------------------

bool criterion_identity() {
  Factorization ref = factorize(generic_params(1, 2, 1, 0, 0, 0));
  if (!expect(factorization_residual(ref) < 1e-9, "reference params residual"))
    return false;
  std::mt19937_64 rng(0x5eedaa01u);
  for (int trial = 0; trial < 200; ++trial) {
    DesignParams dp =
        trial % 2 ? random_degenerate(rng) : random_generic(rng);
    double res = factorization_residual(factorize(dp));
    if (!expect(res < 1e-9, "draw " + std::to_string(trial) + " residual " +
                                std::to_string(res)))
      return false;
  }
  return true;
}

// --- criterion 2: closed-form values -------------------------------------

bool criterion_values() {
  DesignParams dp = generic_params(1, 2, 1, 0, 0, 0);
  Factorization f = factorize(dp);
  bool ok = true;
  ok &= expect_near(f.y1, 0.25, 1e-12, "y1");
  ok &= expect_near(f.y2, 1.0, 1e-12, "y2");
  auto p2 = f.P2.c[0].coeffs();
  ok &= expect_near(p2[1], 4.0 / 9.0, 1e-12, "P2 direction x");
  ok &= expect_near(p2[2], 8.0 / 9.0, 1e-12, "P2 direction y");
  ok &= expect_near(p2[3], -1.0 / 9.0, 1e-12, "P2 direction z");

  JointValues a = mode_A(dp, 1.0);
  ok &= expect_near(a.tau, -1.0, 1e-12, "mode A tau");
  ok &= expect_near(a.s, 0.5, 1e-12, "mode A s");
  ok &= expect(closure_residual_1(chain_pose(f, a)).max_abs() < 1e-9,
               "mode A closure at v1=1");

  JointValues bjv = mode_B(dp, 0.0);
  ok &= expect_near(bjv.v3, 16.0 / 13.0, 1e-12, "mode B v3");
  ok &= expect_near(bjv.v4, 0.75, 1e-12, "mode B v4");
  ok &= expect_near(bjv.tau, -4.0, 1e-12, "mode B tau");
  ok &= expect_near(bjv.s, 2.0, 1e-12, "mode B s");
  ok &= expect(closure_residual_1(chain_pose(f, bjv)).max_abs() < 1e-9,
               "mode B closure at v1=0");
  ok &= expect(std::abs(eval_F(0.0, bjv.v3, dp)) < 1e-9, "F on mode B");
  return ok;
}

// --- criterion 3: operation-mode identity --------------------------------

bool criterion_mode_identity() {
  DesignParams dp = generic_params(1, 2, 1, 0, 0, 0);
  Factorization f = factorize(dp);
  std::mt19937_64 rng(0x5eedaa03u);
  std::uniform_real_distribution<double> dist(-10.0, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    double v1 = dist(rng);
    DualQuaternion coupler = coupler_transform(f, mode_A(dp, v1));
    if (!expect(dq_equiv(coupler, poly_eval(f.M, v1), 1e-9),
                "coupler vs motion at v1=" + std::to_string(v1)))
      return false;
  }
  return true;
}

// --- criterion 4: ellipse property ---------------------------------------

bool criterion_ellipse() {
  DesignParams dp = generic_params(1, 2, 1, 0, 0, 0);
  Factorization f = factorize(dp);
  ModeCurve curve_A = [dp](double v1) { return mode_A(dp, v1); };
  Trajectory ta =
      trace_point(f, curve_A, {1, 1, 0, 0}, linspace(-10, 10, 400));
  if (!expect(ta.samples.size() >= 390, "mode A sample count")) return false;
  std::vector<Vec3> pts;
  for (const auto& s : ta.samples) pts.push_back(s.point);
  PlaneFit plane = plane_fit(pts);
  bool ok = expect(plane.rms < 1e-9,
                   "mode A plane rms " + std::to_string(plane.rms));
  ConicFit conic = conic_fit(project_to_plane(pts, plane));
  ok &= expect(conic.rms < 1e-8,
               "mode A conic rms " + std::to_string(conic.rms));

  ModeCurve curve_B = [dp](double v1) { return mode_B(dp, v1); };
  Trajectory tb =
      trace_point(f, curve_B, {1, 1, 0, 0}, linspace(-10, 10, 400));
  if (!expect(tb.samples.size() >= 300, "mode B sample count")) return false;
  pts.clear();
  for (const auto& s : tb.samples) pts.push_back(s.point);
  double rms_b = plane_fit(pts).rms;
  ok &= expect(rms_b > 1e-3, "mode B plane rms " + std::to_string(rms_b));
  return ok;
}

// --- criterion 5: degenerate regime --------------------------------------

bool criterion_degenerate() {
  double b = std::sqrt(2.0), c = std::sqrt(2.0);
  DesignParams dp = degenerate_params(b, c, 1, 0, 0, 0);
  Factorization f = factorize(dp);
  bool ok = true;

  double kappa = 2.0 * (b * b + c * c);
  for (int i = 0; i < 20 && ok; ++i) {
    for (int j = 0; j < 20 && ok; ++j) {
      double v1 = -5.0 + 10.0 * i / 19.0;
      double v3 = -5.0 + 10.0 * j / 19.0;
      double factored = kappa * (b * v1 * v1 - 2 * c * v1 - b) *
                        (c * v1 * v3 + b * v1 + b * v3 - c);
      ok &= expect(std::abs(eval_F(v1, v3, dp) - factored) < 1e-9,
                   "factored F at (" + std::to_string(v1) + ", " +
                       std::to_string(v3) + ")");
    }
  }

  auto rot_modes = special_rotation_modes(dp);
  ok &= expect(rot_modes.size() == 2, "two special rotation modes");
  double root = std::sqrt(2.0);
  ok &= expect_near(rot_modes[0].curve(0.0).v1, 1.0 + root, 1e-12,
                    "rotation mode v1+");
  ok &= expect_near(rot_modes[1].curve(0.0).v1, 1.0 - root, 1e-12,
                    "rotation mode v1-");
  for (const auto& m : rot_modes) {
    ok &= expect_near(m.curve(0.0).v4, 1.0, 1e-12, "rotation mode v4");
    SweepReport rep = sweep_closure(f, m, -8.0, 8.0, 160);
    ok &= expect(rep.max_residual < 1e-9,
                 "rotation mode closure " + std::to_string(rep.max_residual));
    Trajectory traj =
        trace_point(f, m.curve, {1, 1, 0, 0}, linspace(-8, 8, 200));
    std::vector<Vec3> pts;
    for (const auto& s : traj.samples) pts.push_back(s.point);
    CircleStats cs = circle_stats(pts);
    ok &= expect(cs.z_spread < 1e-9 && cs.radius_spread < 1e-9,
                 "rotation mode circle spreads " +
                     std::to_string(cs.z_spread) + ", " +
                     std::to_string(cs.radius_spread));
  }

  auto [darb, rot] = mode_B_decomposition(dp);
  (void)darb;
  for (const auto& ci : rot.c)
    ok &= expect(std::abs(ci.p.z) < 1e-9, "rotation polynomial k part");
  return ok;
}

// --- criterion 6: second assembly ----------------------------------------

bool criterion_second_assembly() {
  bool ok = true;
  std::mt19937_64 rng(0x5eedaa06u);
  for (int trial = 0; trial < 1000; ++trial) {
    DesignParams dp =
        trial % 2 ? random_degenerate(rng) : random_generic(rng);
    ok &= expect(assembly2_exists(dp) == dp.degenerate,
                 "existence draw " + std::to_string(trial));
    if (!ok) return false;
  }

  double r2 = std::sqrt(2.0);
  auto complex_rot =
      assembly2_rot_branch(degenerate_params(r2, r2, 1, 0, 0, 0), 0.0);
  ok &= expect(complex_rot.size() == 2 && !complex_rot[0].real,
               "symmetric rotation branch should be complex");
  ok &= expect_near(complex_rot[0].discriminant, -4.0, 1e-12,
                    "symmetric rotation discriminant");

  DesignParams asym = degenerate_params(1, 2, std::sqrt(5.0) / 2, 0, 0, 0);
  Factorization fa = factorize(asym);
  auto rot = assembly2_rot_branch(asym, 0.0);
  ok &= expect(rot.size() == 2 && rot[0].real && rot[1].real,
               "asymmetric rotation branch realness");
  ok &= expect_near(rot[0].curve(1.0).v1, -1.0, 1e-12, "rotation v1+");
  ok &= expect_near(rot[1].curve(1.0).v1, -3.0, 1e-12, "rotation v1-");
  for (const auto& m : rot)
    for (double v3 : {-4.0, -1.0, 0.3, 2.0, 7.0}) {
      ClosureResidual r = closure_residual_2(chain_pose(fa, m.curve(v3)), asym);
      ok &= expect(r.closed(1e-9), "rotation branch closure at v3=" +
                                       std::to_string(v3));
    }

  DesignParams sym = degenerate_params(r2, r2, 1, 0, 0, 0);
  Factorization fs = factorize(sym);
  Assembly2CurveResult res = assembly2_curve_branch(sym, 0.0, -3.0);
  ok &= expect(res.solutions.size() == 2, "curve branch root count");
  if (res.solutions.size() == 2) {
    double hi = (10.0 + 2.0 * std::sqrt(41.0)) / 4.0;
    double lo = (10.0 - 2.0 * std::sqrt(41.0)) / 4.0;
    ok &= expect_near(res.solutions[0].v1, hi, 1e-9, "curve root high");
    ok &= expect_near(res.solutions[1].v1, lo, 1e-9, "curve root low");
    for (const auto& jv : res.solutions) {
      ClosureResidual r = closure_residual_2(chain_pose(fs, jv), sym);
      ok &= expect(r.closed(1e-9), "curve branch closure");
    }
  }
  return ok;
}

// --- criterion 7: second-mode decomposition ------------------------------

bool criterion_decomposition() {
  std::mt19937_64 rng(0x5eedaa07u);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int draw = 0; draw < 20; ++draw) {
    DesignParams dp = random_generic(rng);
    Factorization f = factorize(dp);
    auto [darb, rot] = mode_B_decomposition(dp);
    MotionPolynomial product = poly_mul(darb, rot);
    int taken = 0, attempts = 0;
    while (taken < 20 && attempts < 2000) {
      ++attempts;
      double v1 = dist(rng);
      JointValues jv = mode_B(dp, v1);
      if (!std::isfinite(jv.v3) || !std::isfinite(jv.v4)) continue;
      DualQuaternion coupler = coupler_transform(f, jv);
      DualQuaternion value = poly_eval(product, v1);
      if (max_abs_coeff(coupler) < 1e-8 || max_abs_coeff(value) < 1e-8)
        continue;
      ++taken;
      if (!expect(dq_equiv(value, coupler, 1e-9),
                  "decomposition draw " + std::to_string(draw) + " at v1=" +
                      std::to_string(v1)))
        return false;
    }
    if (!expect(taken == 20, "decomposition sampling starved")) return false;
  }
  return true;
}

// --- criterion 8: CLI pipeline -------------------------------------------

int run_cli(const std::string& args) {
  std::string cmd = std::string("\"") + DARBOUX_CLI_PATH + "\" " + args +
                    " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool criterion_cli() {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "darboux-acceptance";
  fs::create_directories(dir);
  auto q = [](const fs::path& p) { return "\"" + p.string() + "\""; };

  fs::path generic = dir / "generic.json";
  fs::path degen = dir / "degenerate.json";
  bool ok = true;
  ok &= expect(run_cli("synth --b 1 --c 2 --q1 1 --q2 0 --z1 0 --z2 0 --out " +
                       q(generic)) == 0,
               "synth generic exit");
  ok &= expect(run_cli("verify " + q(generic)) == 0, "verify generic exit");
  ok &= expect(
      run_cli("synth --b 1.4142135623730951 --c 1.4142135623730951 "
              "--q1 1 --q2 0 --z 0 --z3 0 --out " +
              q(degen)) == 0,
      "synth degenerate exit");
  ok &= expect(run_cli("verify " + q(degen)) == 0, "verify degenerate exit");
  ok &= expect(run_cli("synth --b 1 --c 2 --q1 0 --q2 0 --z1 0 --z2 0 --out " +
                       q(dir / "reject.json")) == 1,
               "synth invalid params exit");
  if (!ok) return false;

  // fault injection: one perturbed coefficient must fail verification
  LoadedLinkage lk = read_linkage(slurp(generic));
  lk.factorization.P1.c[0].p.x += 1e-3;
  fs::path bad = dir / "bad.json";
  {
    std::ofstream out(bad, std::ios::binary);
    out << write_linkage(lk.factorization, {lk.design, lk.joints});
  }
  ok &= expect(run_cli("verify " + q(bad)) == 2, "verify fault exit");
  {
    std::ofstream out(dir / "trunc.json", std::ios::binary);
    out << slurp(generic).substr(0, 40);
  }
  ok &= expect(run_cli("verify " + q(dir / "trunc.json")) == 1,
               "verify truncated exit");

  // lossless round trips
  std::string text = slurp(generic);
  LoadedLinkage back = read_linkage(text);
  ok &= expect(write_linkage(back.factorization, {back.design, back.joints}) ==
                   text,
               "linkage round trip");

  ok &= expect(run_cli("modes " + q(generic)) == 0, "modes exit");
  ok &= expect(run_cli("modes " + q(degen) + " --assembly 2") == 0,
               "modes assembly 2 exit");

  fs::path tr_csv = dir / "trace_a.csv";
  fs::path tr_json = dir / "trace_b.json";
  ok &= expect(run_cli("trace " + q(generic) + " --branch A --out " +
                       q(tr_csv)) == 0,
               "trace csv exit");
  ok &= expect(run_cli("trace " + q(generic) +
                       " --branch B --format json --out " + q(tr_json)) == 0,
               "trace json exit");
  ok &= expect(run_cli("trace " + q(generic) + " --branch Z --out " +
                       q(dir / "x.csv")) == 1,
               "trace unknown branch exit");
  ok &= expect(run_cli("trace " + q(degen) +
                       " --assembly 2 --branch II-rot+ --out " +
                       q(dir / "x.csv")) == 2,
               "trace complex branch exit");
  if (!ok) return false;

  std::string csv_text = slurp(tr_csv);
  ok &= expect(write_trajectory_csv(read_trajectory(csv_text)) == csv_text,
               "trajectory csv round trip");
  std::string json_text = slurp(tr_json);
  ok &= expect(write_trajectory_json(read_trajectory(json_text)) == json_text,
               "trajectory json round trip");

  fs::path svg = dir / "plot.svg";
  ok &= expect(run_cli("plot " + q(tr_csv) + " " + q(tr_json) + " --out " +
                       q(svg)) == 0,
               "plot exit");
  ok &= expect(slurp(svg).rfind("<svg", 0) == 0, "plot output is svg");
  return ok;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    bool (*fn)();
  };
  const Criterion criteria[] = {
      {"factorization identity on reference and random parameters",
       criterion_identity},
      {"closed-form constants and joint values", criterion_values},
      {"first mode reproduces the prescribed motion", criterion_mode_identity},
      {"first mode traces ellipses, second mode leaves the plane",
       criterion_ellipse},
      {"degenerate regime: factored resultant, rotation modes, real "
       "rotation polynomial",
       criterion_degenerate},
      {"second assembly existence, branches and closures",
       criterion_second_assembly},
      {"second mode decomposes into the printed factors",
       criterion_decomposition},
      {"command line pipeline and exit codes", criterion_cli},
  };

  int failed = 0;
  for (size_t i = 0; i < sizeof(criteria) / sizeof(criteria[0]); ++i) {
    g_notes.clear();
    bool ok = false;
    try {
      ok = criteria[i].fn();
    } catch (const std::exception& e) {
      note(std::string("exception: ") + e.what());
    }
    std::printf("criterion %zu: %-72s %s\n", i + 1, criteria[i].name,
                ok ? "PASS" : "FAIL");
    if (!ok) {
      ++failed;
      for (const auto& msg : g_notes)
        std::fprintf(stderr, "  criterion %zu detail: %s\n", i + 1,
                     msg.c_str());
    }
  }
  return failed == 0 ? 0 : 1;
}
