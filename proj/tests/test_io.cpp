#include <catch2/catch_amalgamated.hpp>

#include "darboux/io.hpp"
#include "darboux/svg.hpp"

using namespace darboux;

namespace {

std::string linkage_text(const DesignParams& dp) {
  Factorization f = factorize(dp);
  return write_linkage(f, extract_linkage(f));
}

TrajectoryFile sample_trajectory() {
  TrajectoryFile tf;
  tf.branch = "A";
  tf.assembly = 1;
  tf.point = {1, 0, 0};
  tf.hash = "00000000deadbeef";
  tf.skipped = {0.5};
  tf.rows = {{1.0, 0.25, -0.125, 3.0},
             {-2.0, 1.0 / 3.0, 0.1, -0.7},
             {0.0, 1.0, 0.0, 0.0}};
  return tf;
}

}  // namespace

TEST_CASE("linkage file round trip") {
  for (bool degenerate : {false, true}) {
    DesignParams dp =
        degenerate
            ? degenerate_params(std::sqrt(2.0), std::sqrt(2.0), 1, 0, 0.25, 0)
            : generic_params(1.0 / 3.0, 2, 1, 0.1, -0.7, 0.3);
    std::string first = linkage_text(dp);
    LoadedLinkage lk = read_linkage(first);
    std::string second =
        write_linkage(lk.factorization, {lk.design, lk.joints});
    CHECK(first == second);
    CHECK(lk.design.degenerate == degenerate);
    CHECK(factorization_residual(lk.factorization) < 1e-9);
    REQUIRE(lk.joints.size() == 5);
    CHECK(lk.joints[4].type == 'C');
  }
}

TEST_CASE("parameter hash") {
  DesignParams a = generic_params(1, 2, 1, 0, 0, 0);
  DesignParams b = generic_params(1, 2, 1, 0, 1e-13, 0);
  CHECK(params_hash(a) == params_hash(a));
  CHECK(params_hash(a) != params_hash(b));
  CHECK(params_hash(a).size() == 16);
}

TEST_CASE("malformed linkage input") {
  CHECK_THROWS(read_linkage("{"));
  CHECK_THROWS(read_linkage("{}"));
  std::string good = linkage_text(generic_params(1, 2, 1, 0, 0, 0));
  CHECK_THROWS(read_linkage(good.substr(0, good.size() / 2)));
  std::string bad_row = good;
  size_t pos = bad_row.find("\"P1\": [");
  REQUIRE(pos != std::string::npos);
  bad_row.replace(pos, 7, "\"P1\": [[1, 2],");
  CHECK_THROWS(read_linkage(bad_row));
}

TEST_CASE("trajectory round trips") {
  TrajectoryFile tf = sample_trajectory();

  SECTION("csv") {
    std::string first = write_trajectory_csv(tf);
    TrajectoryFile back = read_trajectory(first);
    CHECK(back.branch == "A");
    CHECK(back.assembly == 1);
    CHECK(back.hash == tf.hash);
    REQUIRE(back.rows.size() == 3);
    CHECK(back.rows[0][0] == -2.0);  // sorted by t
    CHECK(back.rows[0][1] == 1.0 / 3.0);
    REQUIRE(back.skipped.size() == 1);
    CHECK(back.skipped[0] == 0.5);
    CHECK(write_trajectory_csv(back) == first);
  }
  SECTION("json") {
    std::string first = write_trajectory_json(tf);
    TrajectoryFile back = read_trajectory(first);
    CHECK(back.point == tf.point);
    REQUIRE(back.rows.size() == 3);
    CHECK(back.rows[2][3] == 3.0);
    CHECK(write_trajectory_json(back) == first);
  }
}

TEST_CASE("svg rendering") {
  TrajectoryFile a;
  a.branch = "A";
  for (int i = 0; i < 30; ++i) {
    double t = 0.2 * i;
    a.rows.push_back({t, std::cos(t), std::sin(t), 0.1 * t});
  }
  TrajectoryFile b = a;
  b.branch = "B";
  for (auto& row : b.rows) row[1] += 1.0;

  std::string svg = render_svg({a, b}, "iso");
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  size_t count = 0;
  for (size_t pos = svg.find("<polyline"); pos != std::string::npos;
       pos = svg.find("<polyline", pos + 1))
    ++count;
  CHECK(count >= 2);
  CHECK(svg.find(">A<") != std::string::npos);
  CHECK(svg.find(">B<") != std::string::npos);

  CHECK(render_svg({a, b}, "iso") == svg);  // deterministic
  for (const char* view : {"x", "y", "z"}) {
    std::string other = render_svg({a, b}, view);
    CHECK(other.find("<svg") == 0);
    CHECK(other != svg);
  }
}
