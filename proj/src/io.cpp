#include "slag/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "slag/error.hpp"

namespace slag::io {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  return out;
}

double parse_double(std::string_view text, const std::string& where) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorCode::ParseError, where + ": not a number '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::array<double, 3>> read_xyz_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  std::string line;
  std::vector<std::array<double, 3>> rows;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    std::array<double, 3> row{};
    std::size_t start = 0;
    for (int c = 0; c < 3; ++c) {
      const std::size_t comma = line.find(',', start);
      if ((c < 2 && comma == std::string::npos) || (c == 2 && comma != std::string::npos)) {
        throw Error(ErrorCode::ParseError,
                    path.string() + ":" + std::to_string(line_no) + ": expected 3 columns");
      }
      const std::string_view cell(line.data() + start, (c < 2 ? comma : line.size()) - start);
      row[c] = parse_double(cell, path.string() + ":" + std::to_string(line_no));
      start = comma + 1;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

void write_field_csv(std::ostream& out, const ScalarField2D& field) {
  const GridDomain& d = field.domain();
  out << "x,y,value\n";
  for (int j = 0; j < d.ny(); ++j) {
    for (int i = 0; i < d.nx(); ++i) {
      out << format_double(d.x(i)) << ',' << format_double(d.y(j)) << ','
          << format_double(field(i, j)) << '\n';
    }
  }
}

void write_field_csv(const std::filesystem::path& path, const ScalarField2D& field) {
  auto out = open_out(path);
  write_field_csv(out, field);
}

ScalarField2D read_field_csv(const std::filesystem::path& path) {
  const auto rows = read_xyz_rows(path);
  if (rows.empty()) throw Error(ErrorCode::ParseError, path.string() + ": no data rows");
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    xs.push_back(r[0]);
    ys.push_back(r[1]);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  const int nx = static_cast<int>(xs.size());
  const int ny = static_cast<int>(ys.size());
  if (rows.size() != static_cast<std::size_t>(nx) * ny) {
    throw Error(ErrorCode::DomainMismatch, path.string() + ": rows do not form a full grid");
  }
  GridDomain domain(xs.front(), xs.back(), ys.front(), ys.back(), nx, ny);
  std::vector<double> values(domain.size());
  std::vector<char> seen(domain.size(), 0);
  for (const auto& r : rows) {
    const int i = static_cast<int>(std::lower_bound(xs.begin(), xs.end(), r[0]) - xs.begin());
    const int j = static_cast<int>(std::lower_bound(ys.begin(), ys.end(), r[1]) - ys.begin());
    const std::size_t k = domain.index(i, j);
    if (seen[k]) throw Error(ErrorCode::ParseError, path.string() + ": duplicate node");
    seen[k] = 1;
    values[k] = r[2];
  }
  return ScalarField2D(domain, std::move(values));
}

void write_field_vtk(std::ostream& out, const ScalarField2D& field, std::string_view name) {
  const GridDomain& d = field.domain();
  out << "# vtk DataFile Version 3.0\n"
      << name << "\nASCII\nDATASET STRUCTURED_GRID\n"
      << "DIMENSIONS " << d.nx() << ' ' << d.ny() << " 1\n"
      << "POINTS " << d.size() << " double\n";
  for (int j = 0; j < d.ny(); ++j) {
    for (int i = 0; i < d.nx(); ++i) {
      out << format_double(d.x(i)) << ' ' << format_double(d.y(j)) << " 0\n";
    }
  }
  out << "POINT_DATA " << d.size() << "\nSCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
  for (double v : field.values()) out << format_double(v) << '\n';
}

void write_field_vtk(const std::filesystem::path& path, const ScalarField2D& field,
                     std::string_view name) {
  auto out = open_out(path);
  write_field_vtk(out, field, name);
}

BoundaryData read_boundary_csv(const std::filesystem::path& path, const GridDomain& domain) {
  const auto rows = read_xyz_rows(path);
  const auto nodes = boundary_nodes(domain);
  if (rows.size() != nodes.size()) {
    throw Error(ErrorCode::DomainMismatch, path.string() + ": expected " +
                                               std::to_string(nodes.size()) + " boundary rows, got " +
                                               std::to_string(rows.size()));
  }
  std::vector<double> values;
  values.reserve(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto [i, j] = nodes[k];
    const double tol = 1e-4 * std::min(domain.hx(), domain.hy());  // rows may carry rounded coordinates
    if (std::abs(rows[k][0] - domain.x(i)) > tol || std::abs(rows[k][1] - domain.y(j)) > tol) {
      throw Error(ErrorCode::DomainMismatch,
                  path.string() + ": row " + std::to_string(k + 1) + " is not boundary node (" +
                      std::to_string(i) + ", " + std::to_string(j) + ")");
    }
    values.push_back(rows[k][2]);
  }
  return BoundaryData(domain, std::move(values));
}

std::vector<Coordinate> parse_projection(std::string_view text, int n) {
  std::vector<Coordinate> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string_view item = text.substr(start, comma - start);
    Coordinate c;
    if (item.size() < 5 || item[2] != ':' || item[3] != 'z') {
      throw Error(ErrorCode::InvalidArgument, "bad coordinate '" + std::string(item) + "'");
    }
    if (item.substr(0, 2) == "re") {
      c.imaginary = false;
    } else if (item.substr(0, 2) == "im") {
      c.imaginary = true;
    } else {
      throw Error(ErrorCode::InvalidArgument, "bad coordinate '" + std::string(item) + "'");
    }
    int k = 0;
    const auto digits = item.substr(4);
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || k < 1 || k > n) {
      throw Error(ErrorCode::InvalidArgument,
                  "coordinate '" + std::string(item) + "' outside z1..z" + std::to_string(n));
    }
    c.index = k - 1;
    out.push_back(c);
    start = comma + 1;
  }
  if (out.size() != 3) throw Error(ErrorCode::InvalidArgument, "projection needs three coordinates");
  return out;
}

std::string coordinate_name(const Coordinate& c) {
  return std::string(c.imaginary ? "im" : "re") + "_z" + std::to_string(c.index + 1);
}

void write_samples_csv(std::ostream& out, const std::vector<EmbeddedSample>& samples, int n) {
  out << "x,y,u,v,w,theta_total";
  for (int k = 1; k <= n; ++k) out << ",re_z" << k << ",im_z" << k;
  out << '\n';
  for (const auto& s : samples) {
    out << format_double(s.base.x) << ',' << format_double(s.base.y) << ','
        << format_double(s.base.u) << ',' << format_double(s.base.v) << ','
        << format_double(s.w) << ',' << format_double(s.theta_total);
    for (const cplx& z : s.z) out << ',' << format_double(z.real()) << ',' << format_double(z.imag());
    out << '\n';
  }
}

void write_samples_vtk(std::ostream& out, const std::vector<EmbeddedSample>& samples,
                       const std::vector<Coordinate>& projection) {
  out << "# vtk DataFile Version 3.0\nembedded samples";
  for (const auto& c : projection) out << ' ' << coordinate_name(c);
  out << "\nASCII\nDATASET POLYDATA\nPOINTS " << samples.size() << " double\n";
  for (const auto& s : samples) {
    for (std::size_t k = 0; k < projection.size(); ++k) {
      const cplx z = s.z[projection[k].index];
      out << (k ? " " : "") << format_double(projection[k].imaginary ? z.imag() : z.real());
    }
    out << '\n';
  }
  out << "VERTICES " << samples.size() << ' ' << 2 * samples.size() << '\n';
  for (std::size_t k = 0; k < samples.size(); ++k) out << "1 " << k << '\n';
}

void write_skipped_csv(std::ostream& out, const std::vector<SkippedNode>& skipped) {
  out << "i,j,x,y,reason\n";
  for (const auto& s : skipped) {
    out << s.i << ',' << s.j << ',' << format_double(s.x) << ',' << format_double(s.y) << ','
        << s.reason << '\n';
  }
}

void write_trace_csv(std::ostream& out, const LoopTrace& trace, const WindingResult& result) {
  out << "x,y,f1,f2,cumulative_angle\n";
  for (std::size_t k = 0; k < trace.points.size(); ++k) {
    out << format_double(trace.points[k][0]) << ',' << format_double(trace.points[k][1]) << ','
        << format_double(trace.values[k][0]) << ',' << format_double(trace.values[k][1]) << ','
        << format_double(k < result.cumulative.size() ? result.cumulative[k] : 0.0) << '\n';
  }
}

}  // namespace slag::io
