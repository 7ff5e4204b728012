#pragma once

#include <span>

#include "slag/grid.hpp"
#include "slag/params.hpp"

// Grid kernels behind the potential-equation solver. Each kernel exists twice:
// a plain serial reference and an OpenMP version. Both visit the same nodes
// and perform the same floating-point operations per node, so results agree
// bit for bit (red-black ordering makes same-color updates independent).
namespace slag::kernels {

enum class Exec { Serial, Parallel };

/// coef[k] = P'(w((D_x f)^2 + y^2)) at interior nodes; boundary entries are left alone.
/// A NaN derivative yields a NaN coefficient instead of throwing.
void assemble_coefficient(const ReductionParams& params, const ScalarField2D& f,
                          std::span<double> coef, Exec exec = Exec::Parallel);

/// out = D_xx f + coef * D_yy f at interior nodes, 0 on the boundary.
void potential_residual(const ScalarField2D& f, std::span<const double> coef,
                        std::span<double> out, Exec exec = Exec::Parallel);

/// Max-norm of potential_residual without materializing it.
double potential_residual_max(const ScalarField2D& f, std::span<const double> coef,
                              Exec exec = Exec::Parallel);

/// One over-relaxed Gauss-Seidel pass over the nodes with (i + j) % 2 == color,
/// for the frozen-coefficient operator D_xx + coef D_yy.
void sor_color_sweep(ScalarField2D& f, std::span<const double> coef, int color, double omega,
                     Exec exec = Exec::Parallel);

/// Smallest interior coefficient (the ellipticity margin).
double min_interior(const GridDomain& domain, std::span<const double> coef,
                    Exec exec = Exec::Parallel);

namespace serial {
void assemble_coefficient(const ReductionParams& params, const ScalarField2D& f,
                          std::span<double> coef);
void potential_residual(const ScalarField2D& f, std::span<const double> coef,
                        std::span<double> out);
double potential_residual_max(const ScalarField2D& f, std::span<const double> coef);
void sor_color_sweep(ScalarField2D& f, std::span<const double> coef, int color, double omega);
double min_interior(const GridDomain& domain, std::span<const double> coef);
}  // namespace serial

namespace omp {
void assemble_coefficient(const ReductionParams& params, const ScalarField2D& f,
                          std::span<double> coef);
void potential_residual(const ScalarField2D& f, std::span<const double> coef,
                        std::span<double> out);
double potential_residual_max(const ScalarField2D& f, std::span<const double> coef);
void sor_color_sweep(ScalarField2D& f, std::span<const double> coef, int color, double omega);
double min_interior(const GridDomain& domain, std::span<const double> coef);
}  // namespace omp

}  // namespace slag::kernels
