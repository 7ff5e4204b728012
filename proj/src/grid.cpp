#include "slag/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slag/error.hpp"

namespace slag {

GridDomain::GridDomain(double x0, double x1, double y0, double y1, int nx, int ny)
    : x0_(x0), x1_(x1), y0_(y0), y1_(y1), nx_(nx), ny_(ny) {
  if (!(x0 < x1) || !(y0 < y1)) {
    throw Error(ErrorCode::InvalidArgument, "grid bounds must satisfy x0 < x1 and y0 < y1");
  }
  if (nx < 3 || ny < 3) {
    throw Error(ErrorCode::InvalidArgument, "grid needs at least 3 nodes per direction");
  }
  hx_ = (x1 - x0) / (nx - 1);
  hy_ = (y1 - y0) / (ny - 1);
}

ScalarField2D::ScalarField2D(GridDomain domain, double fill)
    : domain_(domain), values_(domain.size(), fill) {}

ScalarField2D::ScalarField2D(GridDomain domain, std::vector<double> values)
    : domain_(domain), values_(std::move(values)) {
  if (values_.size() != domain_.size()) {
    throw Error(ErrorCode::DomainMismatch,
                "field has " + std::to_string(values_.size()) + " values, grid has " +
                    std::to_string(domain_.size()) + " nodes");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite field value");
  }
}

ScalarField2D ScalarField2D::sample(const GridDomain& domain,
                                    const std::function<double(double, double)>& fn) {
  ScalarField2D field(domain);
  for (int j = 0; j < domain.ny(); ++j) {
    for (int i = 0; i < domain.nx(); ++i) field(i, j) = fn(domain.x(i), domain.y(j));
  }
  return field;
}

double ScalarField2D::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double ScalarField2D::max_abs_interior() const noexcept {
  double m = 0.0;
  for (int j = 1; j < domain_.ny() - 1; ++j) {
    for (int i = 1; i < domain_.nx() - 1; ++i) m = std::max(m, std::abs((*this)(i, j)));
  }
  return m;
}

std::vector<std::pair<int, int>> boundary_nodes(const GridDomain& domain) {
  const int nx = domain.nx();
  const int ny = domain.ny();
  std::vector<std::pair<int, int>> nodes;
  nodes.reserve(2 * (nx + ny) - 4);
  for (int i = 0; i < nx; ++i) nodes.emplace_back(i, 0);
  for (int j = 1; j < ny; ++j) nodes.emplace_back(nx - 1, j);
  for (int i = nx - 2; i >= 0; --i) nodes.emplace_back(i, ny - 1);
  for (int j = ny - 2; j >= 1; --j) nodes.emplace_back(0, j);
  return nodes;
}

BoundaryData::BoundaryData(const GridDomain& domain, std::vector<double> values)
    : values_(std::move(values)) {
  const std::size_t expected = 2 * static_cast<std::size_t>(domain.nx() + domain.ny()) - 4;
  if (values_.size() != expected) {
    throw Error(ErrorCode::DomainMismatch,
                "boundary data has " + std::to_string(values_.size()) + " values, expected " +
                    std::to_string(expected));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "non-finite boundary value");
  }
}

BoundaryData BoundaryData::sample(const GridDomain& domain,
                                  const std::function<double(double, double)>& fn) {
  std::vector<double> values;
  for (auto [i, j] : boundary_nodes(domain)) values.push_back(fn(domain.x(i), domain.y(j)));
  return BoundaryData(domain, std::move(values));
}

BoundaryData BoundaryData::of(const ScalarField2D& field) {
  std::vector<double> values;
  for (auto [i, j] : boundary_nodes(field.domain())) values.push_back(field(i, j));
  return BoundaryData(field.domain(), std::move(values));
}

double BoundaryData::min() const noexcept { return *std::min_element(values_.begin(), values_.end()); }
double BoundaryData::max() const noexcept { return *std::max_element(values_.begin(), values_.end()); }

ScalarField2D transfinite_interpolation(const GridDomain& domain, const BoundaryData& phi) {
  const int nx = domain.nx();
  const int ny = domain.ny();
  ScalarField2D f(domain);
  const auto nodes = boundary_nodes(domain);
  for (std::size_t k = 0; k < nodes.size(); ++k) f(nodes[k].first, nodes[k].second) = phi.values()[k];

  const double f00 = f(0, 0), f10 = f(nx - 1, 0), f01 = f(0, ny - 1), f11 = f(nx - 1, ny - 1);
  for (int j = 1; j < ny - 1; ++j) {
    const double eta = static_cast<double>(j) / (ny - 1);
    for (int i = 1; i < nx - 1; ++i) {
      const double xi = static_cast<double>(i) / (nx - 1);
      const double edges = (1 - eta) * f(i, 0) + eta * f(i, ny - 1) + (1 - xi) * f(0, j) +
                           xi * f(nx - 1, j);
      const double corners = (1 - xi) * (1 - eta) * f00 + xi * (1 - eta) * f10 +
                             (1 - xi) * eta * f01 + xi * eta * f11;
      f(i, j) = edges - corners;
    }
  }
  return f;
}

double interpolate_bilinear(const ScalarField2D& field, double x, double y) {
  const GridDomain& d = field.domain();
  if (!(x >= d.x0() && x <= d.x1() && y >= d.y0() && y <= d.y1())) {
    throw Error(ErrorCode::OutOfDomain,
                "point (" + std::to_string(x) + ", " + std::to_string(y) + ") outside grid");
  }
  const double tx = (x - d.x0()) / d.hx();
  const double ty = (y - d.y0()) / d.hy();
  const int i = std::clamp(static_cast<int>(std::floor(tx)), 0, d.nx() - 2);
  const int j = std::clamp(static_cast<int>(std::floor(ty)), 0, d.ny() - 2);
  const double fx = tx - i;
  const double fy = ty - j;
  return (1 - fx) * (1 - fy) * field(i, j) + fx * (1 - fy) * field(i + 1, j) +
         (1 - fx) * fy * field(i, j + 1) + fx * fy * field(i + 1, j + 1);
}

}  // namespace slag
