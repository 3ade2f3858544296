// Command line front end: synthesize a linkage, verify its factorization,
// enumerate operation modes, trace coupler trajectories and plot them.
// Exit codes: 0 success, 1 input or validation error, 2 verification or
// realness failure.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "darboux/fitting.hpp"
#include "darboux/io.hpp"
#include "darboux/modes.hpp"
#include "darboux/svg.hpp"

namespace {

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) return false;
  out << content;
  return static_cast<bool>(out);
}

bool parse_range(const std::string& text, double& lo, double& hi) {
  size_t sep = text.find(':', 1);  // skip a leading minus sign
  if (sep == std::string::npos) return false;
  try {
    lo = std::stod(text.substr(0, sep));
    hi = std::stod(text.substr(sep + 1));
  } catch (const std::exception&) {
    return false;
  }
  return lo < hi;
}

bool parse_point(const std::string& text, darboux::ProjectivePoint& pt) {
  std::istringstream in(text);
  char c1 = 0, c2 = 0;
  double x = 0, y = 0, z = 0;
  if (!(in >> x >> c1 >> y >> c2 >> z) || c1 != ',' || c2 != ',')
    return false;
  pt = {1.0, x, y, z};
  return true;
}

struct SynthArgs {
  double b = 0, c = 0, q1 = 0, q2 = 0;
  double z1 = 0, z2 = 0, z = 0, z3 = 0;
  double tol = darboux::default_tol;
  bool has_z1 = false, has_z2 = false, has_z = false, has_z3 = false;
  std::string out = "linkage.json";
};

int run_synth(const SynthArgs& a) {
  using namespace darboux;
  try {
    bool degenerate = degenerate_condition(a.b, a.c, a.q1, a.q2, a.tol);
    DesignParams dp;
    if (degenerate) {
      if (a.has_z1 || a.has_z2) {
        std::cerr << "synth: parameters satisfy b^2+c^2-4q1^2-4q2^2 = 0; "
                     "pass --z/--z3 instead of --z1/--z2\n";
        return 1;
      }
      dp = degenerate_params(a.b, a.c, a.q1, a.q2, a.z, a.z3, a.tol);
    } else {
      if (a.has_z || a.has_z3) {
        std::cerr << "synth: parameters violate b^2+c^2-4q1^2-4q2^2 = 0; "
                     "pass --z1/--z2 instead of --z/--z3\n";
        return 1;
      }
      dp = generic_params(a.b, a.c, a.q1, a.q2, a.z1, a.z2, a.tol);
    }
    Factorization f = factorize(dp);
    LinkageDescription lk = extract_linkage(f);
    if (!write_file(a.out, write_linkage(f, lk))) {
      std::cerr << "synth: cannot write " << a.out << "\n";
      return 1;
    }
    std::cout << "branch: " << (degenerate ? "degenerate" : "generic")
              << "\nresidual: " << factorization_residual(f)
              << "\nwrote: " << a.out << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "synth: " << e.what() << "\n";
    return 1;
  }
}

int run_verify(const std::string& path, double tol_override, bool has_tol) {
  using namespace darboux;
  auto text = read_file(path);
  if (!text) {
    std::cerr << "verify: cannot read " << path << "\n";
    return 1;
  }
  LoadedLinkage lk;
  try {
    lk = read_linkage(*text);
  } catch (const std::exception& e) {
    std::cerr << "verify: malformed file: " << e.what() << "\n";
    return 1;
  }
  double tol = has_tol ? tol_override : lk.design.tol;
  double residual = factorization_residual(lk.factorization);
  std::cout << "max residual: " << residual << " (tol " << tol << ")\n";
  if (residual < tol) {
    std::cout << "factorization identity holds\n";
    return 0;
  }
  std::cout << "factorization identity FAILS\n";
  return 2;
}

int run_modes(const std::string& path, int assembly, int samples,
              const std::string& range) {
  using namespace darboux;
  auto text = read_file(path);
  if (!text) {
    std::cerr << "modes: cannot read " << path << "\n";
    return 1;
  }
  double lo = 0, hi = 0;
  if (!parse_range(range, lo, hi)) {
    std::cerr << "modes: bad range " << range << "\n";
    return 1;
  }
  try {
    LoadedLinkage lk = read_linkage(*text);
    if (assembly == 2 && !assembly2_exists(lk.design)) {
      std::cout << "assembly 2 does not exist: b^2+c^2-4q1^2-4q2^2 = "
                << assembly2_condition_value(lk.design) << "\n";
      return 0;
    }
    auto modes = enumerate_modes(lk.design, assembly);
    for (const auto& m : modes) {
      std::cout << "branch " << branch_name(m.branch);
      if (!m.real) {
        std::cout << ": complex (discriminant " << m.discriminant << ")\n";
        continue;
      }
      SweepReport rep =
          sweep_closure(lk.factorization, m, lo, hi, samples);
      std::cout << ": real, driving parameter in [" << lo << ", " << hi
                << "], max closure residual " << rep.max_residual << " over "
                << rep.evaluated << " samples";
      if (rep.skipped) std::cout << " (" << rep.skipped << " skipped)";
      if (!m.poles.empty()) {
        std::cout << ", poles at";
        for (double p : m.poles) std::cout << " " << p;
      }
      std::cout << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "modes: " << e.what() << "\n";
    return 1;
  }
}

int run_trace(const std::string& path, int assembly,
              const std::string& branch_label, const std::string& point_text,
              int samples, const std::string& range,
              const std::string& format, const std::string& out) {
  using namespace darboux;
  auto text = read_file(path);
  if (!text) {
    std::cerr << "trace: cannot read " << path << "\n";
    return 1;
  }
  double lo = 0, hi = 0;
  if (!parse_range(range, lo, hi)) {
    std::cerr << "trace: bad range " << range << "\n";
    return 1;
  }
  ProjectivePoint pt;
  if (!parse_point(point_text, pt)) {
    std::cerr << "trace: bad point " << point_text << "\n";
    return 1;
  }
  auto branch = parse_branch(branch_label);
  if (!branch) {
    std::cerr << "trace: unknown branch " << branch_label << "\n";
    return 1;
  }
  try {
    LoadedLinkage lk = read_linkage(*text);
    if (assembly == 2 && !assembly2_exists(lk.design)) {
      std::cerr << "trace: assembly 2 does not exist, condition value "
                << assembly2_condition_value(lk.design) << "\n";
      return 1;
    }
    auto modes = enumerate_modes(lk.design, assembly);
    const ModeSolution* mode = nullptr;
    for (const auto& m : modes)
      if (m.branch == *branch) mode = &m;
    if (!mode) {
      std::cerr << "trace: branch " << branch_label
                << " not available in assembly " << assembly << "\n";
      return 1;
    }
    if (!mode->real) {
      std::cerr << "trace: branch " << branch_label
                << " is complex, discriminant " << mode->discriminant
                << "\n";
      return 2;
    }
    Trajectory traj = trace_point(lk.factorization, mode->curve, pt,
                                  linspace(lo, hi, samples));
    TrajectoryFile tf;
    tf.branch = branch_name(*branch);
    tf.assembly = assembly;
    tf.point = {pt.x1, pt.x2, pt.x3};
    tf.hash = params_hash(lk.design);
    tf.skipped = traj.skipped;
    for (const auto& s : traj.samples)
      tf.rows.push_back({s.t, s.point.x, s.point.y, s.point.z});
    std::string content = format == "json" ? write_trajectory_json(tf)
                                           : write_trajectory_csv(tf);
    if (!write_file(out, content)) {
      std::cerr << "trace: cannot write " << out << "\n";
      return 1;
    }
    std::cout << "wrote " << tf.rows.size() << " samples to " << out;
    if (!tf.skipped.empty())
      std::cout << " (" << tf.skipped.size() << " poles skipped)";
    std::cout << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "trace: " << e.what() << "\n";
    return 1;
  }
}

int run_plot(const std::vector<std::string>& files, const std::string& view,
             const std::string& out) {
  using namespace darboux;
  std::vector<TrajectoryFile> trajectories;
  for (const auto& path : files) {
    auto text = read_file(path);
    if (!text) {
      std::cerr << "plot: cannot read " << path << "\n";
      return 1;
    }
    try {
      trajectories.push_back(read_trajectory(*text));
    } catch (const std::exception& e) {
      std::cerr << "plot: " << path << ": " << e.what() << "\n";
      return 1;
    }
    if (trajectories.back().rows.empty()) {
      std::cerr << "plot: " << path << " has no samples\n";
      return 1;
    }
  }
  if (!write_file(out, render_svg(trajectories, view))) {
    std::cerr << "plot: cannot write " << out << "\n";
    return 1;
  }
  std::cout << "wrote " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vertical Darboux 4RC linkage toolkit"};
  app.require_subcommand(1);

  SynthArgs sa;
  auto* synth = app.add_subcommand("synth", "synthesize a linkage");
  synth->add_option("--b", sa.b, "Darboux parameter b")->required();
  synth->add_option("--c", sa.c, "Darboux parameter c")->required();
  synth->add_option("--q1", sa.q1, "repeated joint offset q1")->required();
  synth->add_option("--q2", sa.q2, "repeated joint offset q2")->required();
  auto* oz1 = synth->add_option("--z1", sa.z1, "generic branch z1");
  auto* oz2 = synth->add_option("--z2", sa.z2, "generic branch z2");
  auto* oz = synth->add_option("--z", sa.z, "degenerate branch z");
  auto* oz3 = synth->add_option("--z3", sa.z3, "degenerate branch z3");
  synth->add_option("--tol", sa.tol, "verification tolerance");
  synth->add_option("--out", sa.out, "output linkage file");

  std::string file, range = "-10:10", point_text = "1,0,0";
  std::string branch_label, format = "csv", view = "iso";
  std::string trace_out = "trajectory.csv", plot_out = "plot.svg";
  int assembly = 1, samples = 100, trace_samples = 400;
  double tol_override = darboux::default_tol;
  std::vector<std::string> plot_files;

  auto* verify = app.add_subcommand("verify", "check the product identity");
  verify->add_option("file", file, "linkage file")->required();
  auto* otol = verify->add_option("--tol", tol_override, "tolerance");

  auto* modes = app.add_subcommand("modes", "enumerate operation modes");
  modes->add_option("file", file, "linkage file")->required();
  modes->add_option("--assembly", assembly, "assembly mode 1 or 2")
      ->check(CLI::Range(1, 2));
  modes->add_option("--samples", samples, "sweep sample count");
  modes->add_option("--range", range, "driving parameter range a:b");

  auto* trace = app.add_subcommand("trace", "trace a coupler point");
  trace->add_option("file", file, "linkage file")->required();
  trace->add_option("--assembly", assembly, "assembly mode 1 or 2")
      ->check(CLI::Range(1, 2));
  trace->add_option("--branch", branch_label, "branch label")->required();
  trace->add_option("--point", point_text, "traced point x,y,z");
  trace->add_option("--samples", trace_samples, "sample count");
  trace->add_option("--range", range, "driving parameter range a:b");
  trace->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  trace->add_option("--out", trace_out, "output trajectory file");

  auto* plot = app.add_subcommand("plot", "render trajectories to SVG");
  plot->add_option("files", plot_files, "trajectory files")->required();
  plot->add_option("--view", view, "projection direction")
      ->check(CLI::IsMember({"x", "y", "z", "iso"}));
  plot->add_option("--out", plot_out, "output SVG file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  sa.has_z1 = oz1->count() > 0;
  sa.has_z2 = oz2->count() > 0;
  sa.has_z = oz->count() > 0;
  sa.has_z3 = oz3->count() > 0;

  if (app.got_subcommand(synth)) return run_synth(sa);
  if (app.got_subcommand(verify))
    return run_verify(file, tol_override, otol->count() > 0);
  if (app.got_subcommand(modes)) return run_modes(file, assembly, samples, range);
  if (app.got_subcommand(trace))
    return run_trace(file, assembly, branch_label, point_text, trace_samples,
                     range, format, trace_out);
  if (app.got_subcommand(plot)) return run_plot(plot_files, view, plot_out);
  return 1;
}
