#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace slag {

/// Rectangle [x0, x1] x [y0, y1] sampled at nx by ny nodes (both >= 3).
class GridDomain {
 public:
  GridDomain(double x0, double x1, double y0, double y1, int nx, int ny);

  double x0() const noexcept { return x0_; }
  double x1() const noexcept { return x1_; }
  double y0() const noexcept { return y0_; }
  double y1() const noexcept { return y1_; }
  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  double hx() const noexcept { return hx_; }
  double hy() const noexcept { return hy_; }

  double x(int i) const noexcept { return i == nx_ - 1 ? x1_ : x0_ + i * hx_; }
  double y(int j) const noexcept { return j == ny_ - 1 ? y1_ : y0_ + j * hy_; }

  std::size_t size() const noexcept { return static_cast<std::size_t>(nx_) * ny_; }
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(j) * nx_ + i;
  }
  bool is_boundary(int i, int j) const noexcept {
    return i == 0 || j == 0 || i == nx_ - 1 || j == ny_ - 1;
  }

  bool operator==(const GridDomain&) const = default;

 private:
  double x0_, x1_, y0_, y1_;
  int nx_, ny_;
  double hx_, hy_;
};

/// Node values on a GridDomain, x index fastest: values[j * nx + i].
class ScalarField2D {
 public:
  explicit ScalarField2D(GridDomain domain, double fill = 0.0);
  ScalarField2D(GridDomain domain, std::vector<double> values);

  static ScalarField2D sample(const GridDomain& domain,
                              const std::function<double(double, double)>& fn);

  const GridDomain& domain() const noexcept { return domain_; }
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  double operator()(int i, int j) const noexcept { return values_[domain_.index(i, j)]; }
  double& operator()(int i, int j) noexcept { return values_[domain_.index(i, j)]; }

  double max_abs() const noexcept;
  /// Largest |value| over interior nodes only.
  double max_abs_interior() const noexcept;

 private:
  GridDomain domain_;
  std::vector<double> values_;
};

/// Grid indices of the boundary in counterclockwise order from (x0, y0).
std::vector<std::pair<int, int>> boundary_nodes(const GridDomain& domain);

/// Boundary values in the traversal order of boundary_nodes().
class BoundaryData {
 public:
  BoundaryData(const GridDomain& domain, std::vector<double> values);

  static BoundaryData sample(const GridDomain& domain,
                             const std::function<double(double, double)>& fn);
  static BoundaryData of(const ScalarField2D& field);

  std::span<const double> values() const noexcept { return values_; }
  double min() const noexcept;
  double max() const noexcept;

 private:
  std::vector<double> values_;
};

/// Coons-patch blend of the boundary data; matches it exactly on the boundary.
ScalarField2D transfinite_interpolation(const GridDomain& domain, const BoundaryData& phi);

/// Bilinear interpolation at (x, y); throws OutOfDomain outside the rectangle.
double interpolate_bilinear(const ScalarField2D& field, double x, double y);

}  // namespace slag
