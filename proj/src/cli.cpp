#include "slag/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "slag/calibration.hpp"
#include "slag/config.hpp"
#include "slag/error.hpp"
#include "slag/families.hpp"
#include "slag/io.hpp"
#include "slag/pde.hpp"
#include "slag/winding.hpp"

namespace slag::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, what + ": '" + item + "' is not a number");
    }
  }
  return out;
}

std::ofstream open_file(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  return out;
}

void write_json(const fs::path& path, const ordered_json& doc) {
  auto out = open_file(path);
  out << doc.dump(2) << '\n';
}

bool wants(const std::vector<std::string>& formats, const std::string& f) {
  return std::find(formats.begin(), formats.end(), f) != formats.end();
}

ordered_json params_json(const ReductionParams& p) {
  return {{"n", p.n()},
          {"a", std::vector<double>(p.a().begin(), p.a().end())},
          {"w0", p.w0()},
          {"minMultiplicity", p.min_multiplicity()}};
}

ordered_json grid_json(const GridDomain& d) {
  return {{"x0", d.x0()}, {"x1", d.x1()}, {"y0", d.y0()}, {"y1", d.y1()}, {"nx", d.nx()}, {"ny", d.ny()}};
}

void write_fields(const fs::path& dir, const std::vector<std::string>& formats,
                  const std::vector<std::pair<std::string, const ScalarField2D*>>& fields) {
  fs::create_directories(dir);
  for (const auto& [name, field] : fields) {
    if (wants(formats, "csv")) io::write_field_csv(dir / (name + ".csv"), *field);
    if (wants(formats, "vtk")) io::write_field_vtk(dir / (name + ".vtk"), *field, name);
  }
}

std::pair<ScalarField2D, ScalarField2D> load_uv(const std::string& fields_dir, const std::string& u_path,
                                                const std::string& v_path) {
  const fs::path u_file = !u_path.empty() ? fs::path(u_path) : fs::path(fields_dir) / "u.csv";
  const fs::path v_file = !v_path.empty() ? fs::path(v_path) : fs::path(fields_dir) / "v.csv";
  ScalarField2D u = io::read_field_csv(u_file);
  ScalarField2D v = io::read_field_csv(v_file);
  if (!(u.domain() == v.domain())) throw Error(ErrorCode::DomainMismatch, "u and v grids differ");
  return {std::move(u), std::move(v)};
}

// ---------------------------------------------------------------- solve

int cmd_solve(const std::string& config_path, const std::string& out_override, std::ostream& out) {
  config::RunConfig cfg = config::load_run_config(config_path);
  if (!cfg.domain) throw Error(ErrorCode::ParseError, "solve needs a [domain] section");
  if (!cfg.boundary) throw Error(ErrorCode::ParseError, "solve needs a [boundary] section");
  const fs::path dir = out_override.empty() ? cfg.outputs.dir : fs::path(out_override);
  const BoundaryData phi = config::resolve_boundary(*cfg.boundary, *cfg.domain);

  ordered_json report;
  report["params"] = params_json(cfg.params);
  report["grid"] = grid_json(*cfg.domain);
  report["solver"] = {{"tolerance", cfg.solver.tolerance},
                      {"maxIterations", cfg.solver.max_iterations},
                      {"sorFactor", cfg.solver.sor_factor},
                      {"ellipticityFloor", cfg.solver.ellipticity_floor}};

  auto finish = [&](int code) {
    if (wants(cfg.outputs.report, "json")) write_json(dir / "report.json", report);
    return code;
  };

  try {
    const PdeSolution sol = solve_dirichlet(cfg.params, *cfg.domain, phi, cfg.solver);
    report["status"] = "converged";
    report["iterations"] = sol.iterations;
    report["sweeps"] = sol.sweeps;
    report["finalResidual"] = sol.final_residual;
    report["ellipticityMargin"] = sol.ellipticity_margin;
    if (cfg.boundary->kind != config::BoundaryKind::Csv) {
      // distance to the closed form the boundary was sampled from
      double err = 0.0;
      const GridDomain& d = *cfg.domain;
      for (int j = 0; j < d.ny(); ++j) {
        for (int i = 0; i < d.nx(); ++i) {
          err = std::max(err, std::abs(sol.f(i, j) - config::boundary_closed_form(*cfg.boundary, d.x(i), d.y(j))));
        }
      }
      report["maxDeviationFromBoundaryClosedForm"] = err;
    }
    write_fields(dir, cfg.outputs.field, {{"f", &sol.f}, {"u", &sol.u}, {"v", &sol.v}});
    out << "converged in " << sol.iterations << " iterations, residual "
        << io::format_double(sol.final_residual) << '\n';
    return finish(kOk);
  } catch (const NoConvergenceError& e) {
    report["status"] = "no_convergence";
    report["iterations"] = e.iterations();
    report["finalResidual"] = e.residual();
    out << e.what() << '\n';
    return finish(kNoConvergence);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularParameters) {
      report["status"] = "singular_parameters";
      out << e.what() << '\n';
      return finish(kSingularParameters);
    }
    if (e.code() == ErrorCode::DegeneracyEncountered) {
      report["status"] = "degeneracy";
      out << e.what() << '\n';
      return finish(kNoConvergence);
    }
    throw;
  }
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::string& config_path, const std::string& fields_dir, const std::string& u_path,
               const std::string& v_path, const std::string& out_override, std::ostream& out) {
  const config::RunConfig cfg = config::load_run_config(config_path);
  const auto [u, v] = load_uv(fields_dir, u_path, v_path);
  const fs::path dir = out_override.empty() ? cfg.outputs.dir : fs::path(out_override);

  const auto [r1, r2] = residual_first_order(cfg.params, u, v);
  const double r1_max = r1.max_abs_interior();
  const double r2_max = r2.max_abs_interior();
  const CalibrationReport cal = verify_calibration(cfg.params, u, v);

  const config::VerifyBudgets& b = cfg.budgets;
  const double first_order = std::max(r1_max, r2_max);
  const bool evaluated_any = cal.skipped < static_cast<int>(cal.points.size());
  const bool passed = first_order <= b.first_order && cal.omega.value <= b.omega &&
                      cal.im_omega.value <= b.im_omega && cal.fit_residual.value <= b.gamma_fit &&
                      evaluated_any;

  const GridDomain& d = u.domain();
  auto max_json = [&](const Maximum& m) {
    ordered_json j{{"max", m.value}};
    if (m.i >= 0) j["argmax"] = {{"i", m.i}, {"j", m.j}, {"x", d.x(m.i)}, {"y", d.y(m.j)}};
    return j;
  };

  ordered_json report;
  report["params"] = params_json(cfg.params);
  report["grid"] = grid_json(d);
  report["budgets"] = {{"firstOrder", b.first_order}, {"omega", b.omega}, {"imOmega", b.im_omega}, {"gammaFit", b.gamma_fit}};
  report["firstOrder"] = {{"max", first_order}, {"r1Max", r1_max}, {"r2Max", r2_max}};
  report["omega"] = max_json(cal.omega);
  report["imOmega"] = max_json(cal.im_omega);
  report["gammaFit"] = max_json(cal.fit_residual);
  report["skippedPoints"] = cal.skipped;
  ordered_json points = ordered_json::array();
  for (const PointCheck& pc : cal.points) {
    ordered_json p{{"i", pc.i}, {"j", pc.j}, {"x", pc.x}, {"y", pc.y}, {"evaluated", pc.evaluated}};
    if (pc.evaluated) {
      p["r1"] = r1(pc.i, pc.j);
      p["r2"] = r2(pc.i, pc.j);
      p["omega"] = pc.omega;
      p["imOmega"] = pc.im_omega;
      p["gamma"] = pc.gamma;
      p["gammaTimesPprime"] = pc.gamma_law;
      p["fitResidual"] = pc.fit_residual;
    }
    points.push_back(std::move(p));
  }
  report["points"] = std::move(points);
  report["passed"] = passed;

  fs::create_directories(dir);
  write_json(dir / "verify.json", report);
  out << "first-order " << io::format_double(first_order) << ", omega " << io::format_double(cal.omega.value)
      << ", ImOmega " << io::format_double(cal.im_omega.value) << ", gamma fit "
      << io::format_double(cal.fit_residual.value) << (passed ? "  PASS\n" : "  FAIL\n");
  return passed ? kOk : kVerificationFailed;
}

// ---------------------------------------------------------------- example

struct ExampleArgs {
  std::string family;
  std::string coeffs = "0,0,0";
  std::string a = "1,-1";
  double b = 0.0;
  std::string domain = "-1,1,-1,1";
  std::string nodes = "5,5";
  double joyce_a = 1.0;
  double s_max = 100.0;
  int samples = 1000;
};

int cmd_example(const ExampleArgs& args, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  std::ostringstream table;
  std::ostream& note = out_dir.empty() ? err : out;  // keep stdout a clean CSV
  int code = kOk;

  if (args.family == "joyce") {
    std::vector<double> grid(args.samples);
    for (int k = 0; k < args.samples; ++k) grid[k] = args.s_max * k / std::max(1, args.samples - 1);
    const ReductionParams params({args.joyce_a, -args.joyce_a});
    table << "s,F,closed_form,deviation\n";
    for (double s : grid) {
      const double f = coefficient_F(params, s);
      const double exact = 2.0 * std::sqrt(s + args.joyce_a * args.joyce_a);
      table << io::format_double(s) << ',' << io::format_double(f) << ',' << io::format_double(exact) << ','
            << io::format_double(std::abs(f - exact)) << '\n';
    }
    const double dev = joyce_check(args.joyce_a, grid);
    note << "joyce max deviation " << io::format_double(dev) << '\n';
    code = dev <= 1e-10 ? kOk : kVerificationFailed;
  } else {
    const auto box = parse_list(args.domain, "--domain");
    const auto nodes = parse_list(args.nodes, "--nodes");
    if (box.size() != 4 || nodes.size() != 2) throw Error(ErrorCode::InvalidArgument, "--domain needs 4 values, --nodes 2");
    const GridDomain d(box[0], box[1], box[2], box[3], static_cast<int>(nodes[0]), static_cast<int>(nodes[1]));
    const ReductionParams params(parse_list(args.a, "--a"));
    table << "x,y,u,v,w,alpha,status\n";

    if (args.family == "affine") {
      const auto c = parse_list(args.coeffs, "--coeffs");
      if (c.size() != 3) throw Error(ErrorCode::InvalidArgument, "--coeffs needs alpha,beta,gamma");
      const AffineSolution sol{c[0], c[1], c[2]};
      for (int j = 0; j < d.ny(); ++j) {
        for (int i = 0; i < d.nx(); ++i) {
          const auto [u, v] = affine_uv(sol, d.x(i), d.y(j));
          const double w = solve_branch(params, v * v + d.y(j) * d.y(j)).w;
          table << io::format_double(d.x(i)) << ',' << io::format_double(d.y(j)) << ',' << io::format_double(u) << ','
                << io::format_double(v) << ',' << io::format_double(w) << ',' << io::format_double(sol.alpha) << ",ok\n";
        }
      }
    } else if (args.family == "hl") {
      const HLConfig hl(params, args.b);
      for (int j = 0; j < d.ny(); ++j) {
        for (int i = 0; i < d.nx(); ++i) {
          const double x = d.x(i), y = d.y(j);
          table << io::format_double(x) << ',' << io::format_double(y) << ',';
          try {
            const HLTriple t = hl_triple(hl, x, y);
            table << io::format_double(t.u) << ',' << io::format_double(t.v) << ',' << io::format_double(t.w) << ','
                  << io::format_double(t.alpha) << ",ok\n";
          } catch (const Error& e) {
            const char* status = e.code() == ErrorCode::YZero ? "y_zero"
                                 : e.code() == ErrorCode::DegenerateRegion ? "degenerate"
                                                                           : "error";
            table << "nan,nan,nan,nan," << status << '\n';
          }
        }
      }
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown family '" + args.family + "'");
    }
  }

  if (out_dir.empty()) {
    out << table.str();
  } else {
    auto file = open_file(fs::path(out_dir) / (args.family + ".csv"));
    file << table.str();
  }
  return code;
}

// ---------------------------------------------------------------- embed

int cmd_embed(const std::string& config_path, const std::string& fields_dir, int torus_res,
              const std::string& projection, const std::string& out_override, std::ostream& out) {
  const config::RunConfig cfg = config::load_run_config(config_path);
  const auto proj = io::parse_projection(projection, cfg.params.n());
  const auto [u, v] = load_uv(fields_dir, "", "");
  const fs::path dir = out_override.empty() ? cfg.outputs.dir : fs::path(out_override);

  const SurfaceSamples samples = sample_surface(cfg.params, u, v, torus_res);
  fs::create_directories(dir);
  if (wants(cfg.outputs.embedding, "csv")) {
    auto f = open_file(dir / "embedding.csv");
    io::write_samples_csv(f, samples.samples, cfg.params.n());
  }
  if (wants(cfg.outputs.embedding, "vtk")) {
    auto f = open_file(dir / "embedding.vtk");
    io::write_samples_vtk(f, samples.samples, proj);
  }
  auto skipped = open_file(dir / "skipped.csv");
  io::write_skipped_csv(skipped, samples.skipped);
  out << samples.samples.size() << " points, " << samples.skipped.size() << " singular nodes skipped\n";
  return kOk;
}

// ---------------------------------------------------------------- wind

int cmd_wind(const std::string& model, const std::string& fields1, const std::string& fields2,
             const std::string& center_text, double radius, int samples, const std::string& out_dir,
             std::ostream& out) {
  const auto center_list = parse_list(center_text, "--center");
  if (center_list.size() != 2) throw Error(ErrorCode::InvalidArgument, "--center needs x,y");
  const Vec2 center{center_list[0], center_list[1]};

  LoopTrace trace;
  if (!model.empty()) {
    std::function<Vec2(double, double)> fn;
    if (model == "identity") {
      fn = [](double x, double y) { return Vec2{x, y}; };
    } else if (model == "square") {
      fn = [](double x, double y) { return Vec2{x * x - y * y, 2 * x * y}; };
    } else if (model == "cube") {
      fn = [](double x, double y) { return Vec2{x * x * x - 3 * x * y * y, 3 * x * x * y - y * y * y}; };
    } else if (model == "conjugate") {
      fn = [](double x, double y) { return Vec2{x, -y}; };
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown model '" + model + "'");
    }
    trace = circle_trace(fn, center, radius, samples);
  } else {
    const auto [u1, v1] = load_uv(fields1, "", "");
    const auto [u2, v2] = load_uv(fields2, "", "");
    trace = difference_trace(u1, v1, u2, v2, center, radius, samples);
  }

  WindingResult result;
  try {
    result = winding_trace(trace);
  } catch (const Error& e) {
    out << e.what() << '\n';
    return kVerificationFailed;
  }
  if (!out_dir.empty()) {
    auto f = open_file(fs::path(out_dir) / "trace.csv");
    io::write_trace_csv(f, trace, result);
  }
  out << "winding " << result.winding << " (raw " << io::format_double(result.raw) << ")\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Build and verify torus-invariant special Lagrangian samples"};
  app.require_subcommand(1);

  std::string config_path, out_dir, fields_dir, u_path, v_path, projection = "re:z3,im:z3,re:z1";
  std::string model, fields1, fields2, center = "0,0";
  int torus_res = 8;
  int samples = 64;
  double radius = 1.0;
  ExampleArgs ex;

  auto* solve = app.add_subcommand("solve", "solve the Dirichlet problem for the potential");
  solve->add_option("--config", config_path, "run configuration")->required();
  solve->add_option("--out", out_dir, "output directory (overrides output.dir)");

  auto* verify = app.add_subcommand("verify", "check first-order and calibration residuals of (u, v)");
  verify->add_option("--config", config_path, "run configuration")->required();
  verify->add_option("--fields", fields_dir, "directory holding u.csv and v.csv");
  verify->add_option("--u", u_path, "u field CSV");
  verify->add_option("--v", v_path, "v field CSV");
  verify->add_option("--out", out_dir, "output directory (overrides output.dir)");

  auto* example = app.add_subcommand("example", "tabulate an explicit solution family");
  example->add_option("--family", ex.family, "affine | hl | joyce")->required()->check(CLI::IsMember({"affine", "hl", "joyce"}));
  example->add_option("--coeffs", ex.coeffs, "affine alpha,beta,gamma");
  example->add_option("--a", ex.a, "parameters a_1,...,a_{n-1}");
  example->add_option("--b", ex.b, "Harvey-Lawson offset b");
  example->add_option("--domain", ex.domain, "x0,x1,y0,y1");
  example->add_option("--nodes", ex.nodes, "nx,ny");
  example->add_option("--joyce-a", ex.joyce_a, "Joyce parameter a");
  example->add_option("--smax", ex.s_max, "largest s for joyce");
  example->add_option("--samples", ex.samples, "s samples for joyce")->check(CLI::PositiveNumber);
  example->add_option("--out", out_dir, "output directory (default: stdout)");

  auto* embed = app.add_subcommand("embed", "lift a planar solution to points of C^n");
  embed->add_option("--config", config_path, "run configuration")->required();
  embed->add_option("--fields", fields_dir, "directory holding u.csv and v.csv")->required();
  embed->add_option("--torus-res", torus_res, "samples per torus angle")->check(CLI::PositiveNumber);
  embed->add_option("--project", projection, "three coordinates for VTK, e.g. re:z3,im:z3,re:z1");
  embed->add_option("--out", out_dir, "output directory (overrides output.dir)");

  auto* wind = app.add_subcommand("wind", "winding number of a planar map along a circle");
  wind->add_option("--model", model, "identity | square | cube | conjugate");
  wind->add_option("--fields1", fields1, "first solution directory (u.csv, v.csv)");
  wind->add_option("--fields2", fields2, "second solution directory (u.csv, v.csv)");
  wind->add_option("--center", center, "x,y");
  wind->add_option("--radius", radius, "loop radius");
  wind->add_option("--samples", samples, "loop samples")->check(CLI::PositiveNumber);
  wind->add_option("--out", out_dir, "directory for trace.csv");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return cmd_solve(config_path, out_dir, out);
    if (*verify) {
      if (fields_dir.empty() && (u_path.empty() || v_path.empty())) {
        throw Error(ErrorCode::InvalidArgument, "verify needs --fields DIR or both --u and --v");
      }
      return cmd_verify(config_path, fields_dir, u_path, v_path, out_dir, out);
    }
    if (*example) return cmd_example(ex, out_dir, out, err);
    if (*embed) return cmd_embed(config_path, fields_dir, torus_res, projection, out_dir, out);
    if (*wind) {
      if (model.empty() && (fields1.empty() || fields2.empty())) {
        throw Error(ErrorCode::InvalidArgument, "wind needs --model or both --fields1 and --fields2");
      }
      return cmd_wind(model, fields1, fields2, center, radius, samples, out_dir, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace slag::cli
