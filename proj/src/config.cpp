#include "slag/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "slag/error.hpp"
#include "slag/io.hpp"

namespace slag::config {

namespace {

[[noreturn]] void fail(int line, int column, const std::string& msg) {
  throw Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg);
}

class LineParser {
 public:
  LineParser(std::string_view text, int line) : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
  }
  bool at_end_or_comment() {
    skip_space();
    return pos_ >= text_.size() || text_[pos_] == '#';
  }
  int column() const { return static_cast<int>(pos_) + 1; }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  [[noreturn]] void error(const std::string& msg) const { fail(line_, column(), msg); }

  std::string key() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
            text_[pos_] == '-' || text_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ == start) error("expected a key");
    return std::string(text_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) error(std::string("expected '") + c + "'");
    ++pos_;
  }

  Scalar scalar() {
    skip_space();
    const char c = peek();
    if (c == '"') {
      ++pos_;
      std::string out;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) ++pos_;
        out.push_back(text_[pos_++]);
      }
      if (pos_ >= text_.size()) error("unterminated string");
      ++pos_;
      return out;
    }
    if (text_.substr(pos_, 4) == "true") {
      pos_ += 4;
      return true;
    }
    if (text_.substr(pos_, 5) == "false") {
      pos_ += 5;
      return false;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != ']' && text_[pos_] != '#' &&
           text_[pos_] != ' ' && text_[pos_] != '\t' && text_[pos_] != '\r') {
      ++pos_;
    }
    std::string_view token = text_.substr(start, pos_ - start);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
      pos_ = start;
      error("expected a number, string, boolean or array");
    }
    return value;
  }

  Value value() {
    skip_space();
    if (peek() != '[') {
      Scalar s = scalar();
      return std::visit([](auto&& v) -> Value { return v; }, s);
    }
    ++pos_;
    std::vector<Scalar> items;
    skip_space();
    if (peek() == ']') {
      ++pos_;
      return items;
    }
    while (true) {
      items.push_back(scalar());
      skip_space();
      if (peek() == ',') {
        ++pos_;
        skip_space();
        if (peek() == ']') {
          ++pos_;
          break;
        }
        continue;
      }
      if (peek() == ']') {
        ++pos_;
        break;
      }
      error("expected ',' or ']' in array");
    }
    return items;
  }

 private:
  std::string_view text_;
  int line_;
  std::size_t pos_ = 0;
};

const char* type_name(const Value& v) {
  switch (v.index()) {
    case 0: return "number";
    case 1: return "string";
    case 2: return "boolean";
    default: return "array";
  }
}

[[noreturn]] void wrong_type(const std::string& key, const Entry& e, const char* wanted) {
  fail(e.line, e.column, "key '" + key + "' must be a " + wanted + ", found " + type_name(e.value));
}

}  // namespace

Document Document::parse(std::string_view text) {
  Document doc;
  std::string section;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', start), text.size());
    const std::string_view line = text.substr(start, nl - start);
    ++line_no;
    start = nl + 1;

    LineParser p(line, line_no);
    if (p.at_end_or_comment()) continue;
    if (p.peek() == '[') {
      p.expect('[');
      section = p.key();
      p.expect(']');
      if (!p.at_end_or_comment()) p.error("unexpected text after section header");
      continue;
    }
    const int column = p.column();
    const std::string key = p.key();
    p.expect('=');
    Value value = p.value();
    if (!p.at_end_or_comment()) p.error("unexpected text after value");
    const std::string full = section.empty() ? key : section + "." + key;
    if (doc.entries_.count(full)) fail(line_no, column, "duplicate key '" + full + "'");
    doc.entries_.emplace(full, Entry{std::move(value), line_no, column});
  }
  return doc;
}

Document Document::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

const Entry* Document::find(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

double Document::number(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) throw Error(ErrorCode::ParseError, "missing required key '" + key + "'");
  if (const auto* d = std::get_if<double>(&e->value)) return *d;
  wrong_type(key, *e, "number");
}

double Document::number_or(const std::string& key, double fallback) const {
  return has(key) ? number(key) : fallback;
}

int Document::integer(const std::string& key) const {
  const double d = number(key);
  if (d != std::floor(d) || std::abs(d) > 1e9) {
    const Entry* e = find(key);
    fail(e->line, e->column, "key '" + key + "' must be an integer");
  }
  return static_cast<int>(d);
}

int Document::integer_or(const std::string& key, int fallback) const {
  return has(key) ? integer(key) : fallback;
}

std::string Document::string(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) throw Error(ErrorCode::ParseError, "missing required key '" + key + "'");
  if (const auto* s = std::get_if<std::string>(&e->value)) return *s;
  wrong_type(key, *e, "string");
}

std::string Document::string_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? string(key) : fallback;
}

std::vector<double> Document::numbers(const std::string& key) const {
  const Entry* e = find(key);
  if (!e) throw Error(ErrorCode::ParseError, "missing required key '" + key + "'");
  const auto* arr = std::get_if<std::vector<Scalar>>(&e->value);
  if (!arr) wrong_type(key, *e, "array of numbers");
  std::vector<double> out;
  for (const Scalar& s : *arr) {
    const auto* d = std::get_if<double>(&s);
    if (!d) wrong_type(key, *e, "array of numbers");
    out.push_back(*d);
  }
  return out;
}

std::vector<std::string> Document::strings_or(const std::string& key,
                                              std::vector<std::string> fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  if (const auto* s = std::get_if<std::string>(&e->value)) return {*s};
  const auto* arr = std::get_if<std::vector<Scalar>>(&e->value);
  if (!arr) wrong_type(key, *e, "array of strings");
  std::vector<std::string> out;
  for (const Scalar& item : *arr) {
    const auto* s = std::get_if<std::string>(&item);
    if (!s) wrong_type(key, *e, "array of strings");
    out.push_back(*s);
  }
  return out;
}

double boundary_closed_form(const BoundarySource& source, double x, double y) {
  const auto& c = source.coefficients;
  switch (source.kind) {
    case BoundaryKind::Affine:  // potential of u = c0 x + c1, v = c0 y + c2
      return c[0] * x * y + c[2] * x + c[1] * y;
    case BoundaryKind::Bilinear:
      return c[0] + c[1] * x + c[2] * y + c[3] * x * y;
    case BoundaryKind::Csv:
      break;
  }
  throw Error(ErrorCode::InvalidArgument, "csv boundary has no closed form");
}

BoundaryData resolve_boundary(const BoundarySource& source, const GridDomain& domain) {
  if (source.kind == BoundaryKind::Csv) return io::read_boundary_csv(source.path, domain);
  return BoundaryData::sample(domain, [&](double x, double y) { return boundary_closed_form(source, x, y); });
}

namespace {

void check_formats(const Document& doc, const std::string& key, const std::vector<std::string>& formats,
                   const std::vector<std::string>& allowed) {
  for (const auto& f : formats) {
    if (std::find(allowed.begin(), allowed.end(), f) == allowed.end()) {
      const Entry* e = doc.find(key);
      fail(e ? e->line : 0, e ? e->column : 0, "unsupported format '" + f + "' for " + key);
    }
  }
}

template <typename Fn>
auto at_key(const Document& doc, const std::string& key, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& err) {
    if (err.code() == ErrorCode::ParseError) throw;
    const Entry* e = doc.find(key);
    fail(e ? e->line : 0, e ? e->column : 0, err.what());
  }
}

}  // namespace

RunConfig load_run_config(const Document& doc, const std::filesystem::path& base_dir) {
  const auto a = doc.numbers("params.a");
  if (doc.has("params.n") && doc.integer("params.n") != static_cast<int>(a.size()) + 1) {
    const Entry* e = doc.find("params.n");
    fail(e->line, e->column, "params.n must equal len(params.a) + 1");
  }
  RunConfig cfg{at_key(doc, "params.a", [&] { return ReductionParams(a); }), {}, {}, {}, {}, {}};

  if (doc.has("domain.nx") || doc.has("domain.x0")) {
    cfg.domain = at_key(doc, "domain.x0", [&] {
      return GridDomain(doc.number("domain.x0"), doc.number("domain.x1"), doc.number("domain.y0"),
                        doc.number("domain.y1"), doc.integer("domain.nx"), doc.integer("domain.ny"));
    });
  }

  if (doc.has("boundary.kind")) {
    BoundarySource src;
    const std::string kind = doc.string("boundary.kind");
    const Entry* e = doc.find("boundary.kind");
    if (kind == "affine") {
      src.kind = BoundaryKind::Affine;
      src.coefficients = doc.numbers("boundary.coefficients");
      if (src.coefficients.size() != 3) fail(e->line, e->column, "affine boundary needs 3 coefficients");
    } else if (kind == "bilinear") {
      src.kind = BoundaryKind::Bilinear;
      src.coefficients = doc.numbers("boundary.coefficients");
      if (src.coefficients.size() != 4) fail(e->line, e->column, "bilinear boundary needs 4 coefficients");
    } else if (kind == "csv") {
      src.kind = BoundaryKind::Csv;
      src.path = doc.string("boundary.path");
      if (src.path.is_relative()) src.path = base_dir / src.path;
    } else {
      fail(e->line, e->column, "unknown boundary kind '" + kind + "'");
    }
    cfg.boundary = std::move(src);
  }

  SolverConfig& s = cfg.solver;
  s.tolerance = doc.number_or("solver.tolerance", s.tolerance);
  s.max_iterations = doc.integer_or("solver.max_iterations", s.max_iterations);
  s.sor_factor = doc.number_or("solver.sor_factor", s.sor_factor);
  s.ellipticity_floor = doc.number_or("solver.ellipticity_floor", s.ellipticity_floor);
  s.max_inner_sweeps = doc.integer_or("solver.max_inner_sweeps", s.max_inner_sweeps);
  if (!(s.tolerance > 0.0)) fail(doc.find("solver.tolerance")->line, 1, "solver.tolerance must be > 0");
  if (!(s.sor_factor > 0.0 && s.sor_factor < 2.0)) {
    fail(doc.find("solver.sor_factor")->line, 1, "solver.sor_factor must lie in (0, 2)");
  }

  VerifyBudgets& b = cfg.budgets;
  b.first_order = doc.number_or("verify.first_order", b.first_order);
  b.omega = doc.number_or("verify.omega", b.omega);
  b.im_omega = doc.number_or("verify.im_omega", b.im_omega);
  b.gamma_fit = doc.number_or("verify.gamma_fit", b.gamma_fit);

  Outputs& o = cfg.outputs;
  o.dir = doc.string_or("output.dir", o.dir.string());
  o.field = doc.strings_or("output.field", o.field);
  o.report = doc.strings_or("output.report", o.report);
  o.embedding = doc.strings_or("output.embedding", o.embedding);
  check_formats(doc, "output.field", o.field, {"csv", "vtk"});
  check_formats(doc, "output.report", o.report, {"json"});
  check_formats(doc, "output.embedding", o.embedding, {"csv", "vtk"});
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return load_run_config(Document::load(path), path.parent_path());
}

}  // namespace slag::config
