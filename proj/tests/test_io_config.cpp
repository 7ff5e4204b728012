#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "slag/config.hpp"
#include "slag/embedding.hpp"
#include "slag/error.hpp"
#include "slag/io.hpp"

using namespace slag;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "slag_io_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string parse_error(std::string_view text) {
  try {
    config::Document::parse(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    return e.what();
  }
  FAIL("no parse error");
  return {};
}

}  // namespace

TEST_CASE("format_double round-trips") {
  for (double x : {0.1, -1.0 / 3.0, 1e-300, 6.02214076e23, 0.0, -2.5}) {
    CHECK(std::stod(io::format_double(x)) == x);
  }
}

TEST_CASE("field CSV round trip") {
  const GridDomain d(-1, 0.5, 2, 3, 7, 5);
  const ScalarField2D f = ScalarField2D::sample(d, [](double x, double y) { return std::sin(x) / (1 + y); });
  const fs::path p = scratch("csv") / "f.csv";
  io::write_field_csv(p, f);
  std::ifstream in(p);
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,y,value");
  const ScalarField2D g = io::read_field_csv(p);
  CHECK(g.domain().nx() == 7);
  CHECK(g.domain().ny() == 5);
  for (std::size_t k = 0; k < d.size(); ++k) CHECK(g.values()[k] == f.values()[k]);
}

TEST_CASE("field VTK header") {
  const GridDomain d(0, 1, 0, 1, 3, 4);
  std::ostringstream out;
  io::write_field_vtk(out, ScalarField2D(d, 1.5), "f");
  const std::string s = out.str();
  CHECK(s.rfind("# vtk DataFile Version", 0) == 0);
  CHECK(s.find("DATASET STRUCTURED_GRID") != std::string::npos);
  CHECK(s.find("DIMENSIONS 3 4 1") != std::string::npos);
  CHECK(s.find("POINT_DATA 12") != std::string::npos);
  CHECK(s.find("SCALARS f double") != std::string::npos);
}

TEST_CASE("boundary CSV in traversal order") {
  const GridDomain d(0, 1, 0, 1, 4, 3);
  const fs::path p = scratch("bnd") / "phi.csv";
  {
    std::ofstream out(p);
    out << "x,y,value\n";
    for (auto [i, j] : boundary_nodes(d)) out << d.x(i) << ',' << d.y(j) << ',' << d.x(i) + 10 * d.y(j) << '\n';
  }
  const BoundaryData b = io::read_boundary_csv(p, d);
  CHECK(b.values().size() == 10u);
  CHECK(b.values()[4] == doctest::Approx(1 + 5));  // node (3, 1)
  {
    std::ofstream out(p);
    out << "x,y,value\n0,0,1\n";
  }
  CHECK_THROWS_AS(io::read_boundary_csv(p, d), Error);
}

TEST_CASE("projection parsing") {
  const auto proj = io::parse_projection("re:z3,im:z3,re:z1", 3);
  REQUIRE(proj.size() == 3);
  CHECK(proj[0].index == 2);
  CHECK_FALSE(proj[0].imaginary);
  CHECK(proj[1].imaginary);
  CHECK(io::coordinate_name(proj[2]) == "re_z1");
  CHECK_THROWS_AS(io::parse_projection("re:z4,im:z3,re:z1", 3), Error);
  CHECK_THROWS_AS(io::parse_projection("re:z1,im:z1", 3), Error);
  CHECK_THROWS_AS(io::parse_projection("ab:z1,im:z1,re:z2", 3), Error);
}

TEST_CASE("sample CSV columns") {
  const ReductionParams p({1.0, -1.0});
  const double angles[] = {0.0};
  const EmbeddedSample s = lift_point(p, {0.1, 0.2, 0.3, 0.4}, angles);
  std::ostringstream out;
  io::write_samples_csv(out, {s}, 3);
  std::string header = out.str().substr(0, out.str().find('\n'));
  CHECK(header == "x,y,u,v,w,theta_total,re_z1,im_z1,re_z2,im_z2,re_z3,im_z3");
}

TEST_CASE("document parsing") {
  const auto doc = config::Document::parse(R"(
# comment
[params]
a = [1.0, -1.0]   # trailing
n = 3
[output]
dir = "results"
field = ["csv", "vtk"]
flag = true
)");
  CHECK(doc.numbers("params.a") == std::vector<double>{1.0, -1.0});
  CHECK(doc.integer("params.n") == 3);
  CHECK(doc.string("output.dir") == "results");
  CHECK(doc.strings_or("output.field", {}) == std::vector<std::string>{"csv", "vtk"});
  CHECK(doc.number_or("solver.tolerance", 5.0) == 5.0);

  CHECK(parse_error("[params]\na = [1, 2\n").find("line 2") != std::string::npos);
  CHECK(parse_error("a = \"open\n").find("line 1") != std::string::npos);
  CHECK(parse_error("x = 1\nx = 2\n").find("line 2") != std::string::npos);
  CHECK(parse_error("just words\n").find("column") != std::string::npos);
}

TEST_CASE("run config assembly") {
  const fs::path dir = scratch("cfg");
  const auto doc = config::Document::parse(R"(
[params]
a = [1.0, -1.0]
[domain]
x0 = -1
x1 = 1
y0 = -1
y1 = 1
nx = 9
ny = 9
[boundary]
kind = "affine"
coefficients = [2.0, -1.0, 1.0]
[solver]
tolerance = 1e-9
[verify]
omega = 1e-8
)");
  const config::RunConfig cfg = config::load_run_config(doc, dir);
  CHECK(cfg.params.n() == 3);
  REQUIRE(cfg.domain);
  CHECK(cfg.domain->nx() == 9);
  REQUIRE(cfg.boundary);
  CHECK(config::boundary_closed_form(*cfg.boundary, 0.5, 0.25) == doctest::Approx(2 * 0.125 + 0.5 - 0.25));
  CHECK(cfg.solver.tolerance == 1e-9);
  CHECK(cfg.solver.max_iterations == 10000);
  CHECK(cfg.budgets.omega == 1e-8);
  CHECK(cfg.outputs.dir == fs::path("out"));

  auto bad = [](std::string_view text) {
    try {
      config::load_run_config(config::Document::parse(text));
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      return std::string(e.what());
    }
    FAIL("no error");
    return std::string();
  };
  CHECK(bad("[params]\na = [1.0]\n").find("line 2") != std::string::npos);
  CHECK(bad("[params]\na = [1.0, 2.0]\nn = 4\n").find("line 3") != std::string::npos);
  CHECK(bad("[params]\na = [1.0, 2.0]\n[boundary]\nkind = \"spline\"\n").find("line 4") != std::string::npos);
  CHECK(bad("[params]\na = [1.0, 2.0]\n[output]\nfield = [\"png\"]\n").find("png") != std::string::npos);
}
