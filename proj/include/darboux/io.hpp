#pragma once
#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

#include "darboux/factorization.hpp"

namespace darboux {

// 17 significant digits, enough for exact double round trips, so a
// write -> read -> write cycle is byte identical.  Negative zero is
// flattened to zero; JSON parsers do not preserve its sign.
inline std::string format_double(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i)
    out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
  return out;
}

namespace detail {

inline void emit_array(std::string& out, const std::vector<double>& vals) {
  out += '[';
  for (size_t i = 0; i < vals.size(); ++i) {
    if (i) out += ", ";
    out += format_double(vals[i]);
  }
  out += ']';
}

inline void emit_factor(std::string& out, const MotionPolynomial& p,
                        const std::string& row_indent,
                        const std::string& close_indent) {
  out += '[';
  for (size_t i = 0; i < p.c.size(); ++i) {
    if (i) out += ',';
    out += '\n';
    out += row_indent;
    auto co = p.c[i].coeffs();
    emit_array(out, {co.begin(), co.end()});
  }
  out += '\n';
  out += close_indent;
  out += ']';
}

}  // namespace detail

// Canonical design-block serialization; doubles as the hash input tying
// trajectory files to the linkage they came from.
inline std::string design_json(const DesignParams& dp) {
  std::string s = "{\n";
  auto field = [&s](const char* name, double v, bool last = false) {
    s += "    \"";
    s += name;
    s += "\": ";
    s += format_double(v);
    s += last ? "\n" : ",\n";
  };
  field("b", dp.b);
  field("c", dp.c);
  field("q1", dp.q1);
  field("q2", dp.q2);
  field("z1", dp.z1);
  field("z2", dp.z2);
  field("z", dp.z);
  field("z3", dp.z3);
  s += dp.degenerate ? "    \"degenerate\": true,\n"
                     : "    \"degenerate\": false,\n";
  field("tol", dp.tol, true);
  s += "  }";
  return s;
}

inline std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string params_hash(const DesignParams& dp) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(design_json(dp))));
  return buf;
}

inline std::string write_linkage(const Factorization& f,
                                 const LinkageDescription& lk) {
  std::string s = "{\n  \"design\": ";
  s += design_json(f.params);
  s += ",\n  \"factors\": {\n";
  const char* names[] = {"P1", "P2", "P3", "P4"};
  const MotionPolynomial* ps[] = {&f.P1, &f.P2, &f.P3, &f.P4};
  for (int i = 0; i < 4; ++i) {
    s += "    \"";
    s += names[i];
    s += "\": ";
    detail::emit_factor(s, *ps[i], "      ", "    ");
    s += i < 3 ? ",\n" : "\n";
  }
  s += "  },\n  \"joints\": [\n";
  for (size_t i = 0; i < lk.joints.size(); ++i) {
    s += "    {\"type\": \"";
    s += lk.joints[i].type;
    s += "\", \"plucker\": ";
    detail::emit_array(s, {lk.joints[i].plucker.begin(),
                           lk.joints[i].plucker.end()});
    s += i + 1 < lk.joints.size() ? "},\n" : "}\n";
  }
  s += "  ]\n}\n";
  return s;
}

struct LoadedLinkage {
  DesignParams design;
  Factorization factorization;  // factors as stored, M rebuilt from design
  std::vector<Joint> joints;
};

inline MotionPolynomial parse_factor(const nlohmann::json& j) {
  MotionPolynomial p;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != 8)
      throw std::runtime_error("linkage file: factor row is not 8 reals");
    std::array<double, 8> c{};
    for (size_t i = 0; i < 8; ++i) c[i] = row[i].get<double>();
    p.c.push_back(DualQuaternion::from_coeffs(c));
  }
  return p;
}

inline LoadedLinkage read_linkage(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  LoadedLinkage lk;
  const auto& d = j.at("design");
  lk.design.b = d.at("b").get<double>();
  lk.design.c = d.at("c").get<double>();
  lk.design.q1 = d.at("q1").get<double>();
  lk.design.q2 = d.at("q2").get<double>();
  lk.design.z1 = d.at("z1").get<double>();
  lk.design.z2 = d.at("z2").get<double>();
  lk.design.z = d.at("z").get<double>();
  lk.design.z3 = d.at("z3").get<double>();
  lk.design.degenerate = d.at("degenerate").get<bool>();
  lk.design.tol = d.at("tol").get<double>();
  const auto& f = j.at("factors");
  lk.factorization.params = lk.design;
  lk.factorization.M = make_vertical_darboux(lk.design.b, lk.design.c);
  lk.factorization.P1 = parse_factor(f.at("P1"));
  lk.factorization.P2 = parse_factor(f.at("P2"));
  lk.factorization.P3 = parse_factor(f.at("P3"));
  lk.factorization.P4 = parse_factor(f.at("P4"));
  lk.factorization.y1 = make_y1(lk.design);
  lk.factorization.y2 = make_y2(lk.design);
  lk.factorization.z3 = lk.design.z3;
  for (const auto& joint : j.at("joints")) {
    Joint out;
    std::string type = joint.at("type").get<std::string>();
    if (type != "R" && type != "C")
      throw std::runtime_error("linkage file: joint type must be R or C");
    out.type = type[0];
    const auto& pl = joint.at("plucker");
    if (pl.size() != 6)
      throw std::runtime_error("linkage file: joint needs 6 coordinates");
    for (size_t i = 0; i < 6; ++i) out.plucker[i] = pl[i].get<double>();
    lk.joints.push_back(out);
  }
  return lk;
}

struct TrajectoryFile {
  std::string branch;
  int assembly = 1;
  std::array<double, 3> point{};
  std::string hash;
  std::vector<double> skipped;
  std::vector<std::array<double, 4>> rows;  // t, x, y, z sorted by t
};

namespace detail {

inline void sort_rows(TrajectoryFile& tf) {
  std::sort(tf.rows.begin(), tf.rows.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
}

}  // namespace detail

inline std::string write_trajectory_csv(TrajectoryFile tf) {
  detail::sort_rows(tf);
  std::string s;
  s += "# branch," + tf.branch + "\n";
  s += "# assembly," + std::to_string(tf.assembly) + "\n";
  s += "# point," + format_double(tf.point[0]) + "," +
       format_double(tf.point[1]) + "," + format_double(tf.point[2]) + "\n";
  s += "# params_hash," + tf.hash + "\n";
  s += "# skipped,";
  for (size_t i = 0; i < tf.skipped.size(); ++i) {
    if (i) s += ';';
    s += format_double(tf.skipped[i]);
  }
  s += "\nt,x,y,z\n";
  for (const auto& r : tf.rows) {
    s += format_double(r[0]);
    for (int i = 1; i < 4; ++i) s += "," + format_double(r[i]);
    s += "\n";
  }
  return s;
}

inline std::string write_trajectory_json(TrajectoryFile tf) {
  detail::sort_rows(tf);
  std::string s = "{\n  \"branch\": \"" + tf.branch + "\",\n";
  s += "  \"assembly\": " + std::to_string(tf.assembly) + ",\n";
  s += "  \"point\": ";
  detail::emit_array(s, {tf.point.begin(), tf.point.end()});
  s += ",\n  \"params_hash\": \"" + tf.hash + "\",\n";
  s += "  \"skipped\": ";
  detail::emit_array(s, tf.skipped);
  s += ",\n  \"samples\": [";
  for (size_t i = 0; i < tf.rows.size(); ++i) {
    s += i ? ",\n    " : "\n    ";
    detail::emit_array(s, {tf.rows[i].begin(), tf.rows[i].end()});
  }
  s += tf.rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return s;
}

inline TrajectoryFile read_trajectory(const std::string& text) {
  TrajectoryFile tf;
  size_t start = text.find_first_not_of(" \t\r\n");
  if (start != std::string::npos && text[start] == '{') {
    nlohmann::json j = nlohmann::json::parse(text);
    tf.branch = j.at("branch").get<std::string>();
    tf.assembly = j.at("assembly").get<int>();
    for (size_t i = 0; i < 3; ++i) tf.point[i] = j.at("point")[i];
    tf.hash = j.at("params_hash").get<std::string>();
    for (const auto& v : j.at("skipped")) tf.skipped.push_back(v);
    for (const auto& row : j.at("samples")) {
      if (row.size() != 4)
        throw std::runtime_error("trajectory file: sample is not t,x,y,z");
      tf.rows.push_back({row[0], row[1], row[2], row[3]});
    }
    return tf;
  }
  std::istringstream in(text);
  std::string line;
  bool saw_header = false;
  auto split = [](const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
      if (c == sep) {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);
    return parts;
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto parts = split(line.substr(2), ',');
      if (parts.empty()) continue;
      if (parts[0] == "branch" && parts.size() > 1) tf.branch = parts[1];
      if (parts[0] == "assembly" && parts.size() > 1)
        tf.assembly = std::stoi(parts[1]);
      if (parts[0] == "point" && parts.size() == 4)
        for (size_t i = 0; i < 3; ++i) tf.point[i] = std::stod(parts[i + 1]);
      if (parts[0] == "params_hash" && parts.size() > 1) tf.hash = parts[1];
      if (parts[0] == "skipped" && parts.size() > 1 && !parts[1].empty())
        for (const auto& v : split(parts[1], ';'))
          tf.skipped.push_back(std::stod(v));
      continue;
    }
    if (line == "t,x,y,z") {
      saw_header = true;
      continue;
    }
    auto parts = split(line, ',');
    if (parts.size() != 4)
      throw std::runtime_error("trajectory file: row is not t,x,y,z");
    tf.rows.push_back({std::stod(parts[0]), std::stod(parts[1]),
                       std::stod(parts[2]), std::stod(parts[3])});
  }
  if (!saw_header && tf.rows.empty())
    throw std::runtime_error("trajectory file: no data");
  return tf;
}

}  // namespace darboux
