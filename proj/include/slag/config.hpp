#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "slag/grid.hpp"
#include "slag/params.hpp"
#include "slag/pde.hpp"

namespace slag::config {

// A small TOML subset: [section] headers (dotted names allowed), key = value
// lines, '#' comments. Values are numbers, "strings", true/false, or flat
// arrays of numbers or strings.
using Scalar = std::variant<double, std::string, bool>;
using Value = std::variant<double, std::string, bool, std::vector<Scalar>>;

struct Entry {
  Value value;
  int line = 0;
  int column = 0;
};

class Document {
 public:
  /// Throws ParseError("line L, column C: ...").
  static Document parse(std::string_view text);
  static Document load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  const Entry* find(const std::string& key) const;

  double number(const std::string& key) const;
  double number_or(const std::string& key, double fallback) const;
  int integer(const std::string& key) const;
  int integer_or(const std::string& key, int fallback) const;
  std::string string(const std::string& key) const;
  std::string string_or(const std::string& key, const std::string& fallback) const;
  std::vector<double> numbers(const std::string& key) const;
  std::vector<std::string> strings_or(const std::string& key, std::vector<std::string> fallback) const;

  const std::map<std::string, Entry>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, Entry> entries_;
};

enum class BoundaryKind { Affine, Bilinear, Csv };

struct BoundarySource {
  BoundaryKind kind = BoundaryKind::Affine;
  std::vector<double> coefficients;
  std::filesystem::path path;
};

/// Closed form behind a registry boundary source, as f(x, y).
double boundary_closed_form(const BoundarySource& source, double x, double y);

struct VerifyBudgets {
  double first_order = 1e-6;
  double omega = 1e-6;
  double im_omega = 1e-6;
  double gamma_fit = 1e-6;
};

struct Outputs {
  std::filesystem::path dir = "out";
  std::vector<std::string> field{"csv"};
  std::vector<std::string> report{"json"};
  std::vector<std::string> embedding{"csv"};
};

struct RunConfig {
  ReductionParams params;
  std::optional<GridDomain> domain;
  std::optional<BoundarySource> boundary;
  SolverConfig solver;
  VerifyBudgets budgets;
  Outputs outputs;
};

/// Builds a RunConfig; [params] is required, the other sections are optional.
/// Throws ParseError with the offending key's position.
RunConfig load_run_config(const Document& doc, const std::filesystem::path& base_dir = {});
RunConfig load_run_config(const std::filesystem::path& path);

BoundaryData resolve_boundary(const BoundarySource& source, const GridDomain& domain);

}  // namespace slag::config
