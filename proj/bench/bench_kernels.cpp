// Serial reference vs OpenMP kernels on the potential-equation grid loops.
#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "slag/kernels.hpp"
#include "slag/pde.hpp"

using namespace slag;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
  fn();  // warm up
  const auto t0 = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void row(const char* name, double serial, double parallel) {
  std::printf("%-22s %10.3f %10.3f %8.2fx\n", name, serial, parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::stoi(argv[1]) : 513;
  const ReductionParams params({1.0, -0.5, 2.0});
  const GridDomain d(-1, 1, -1, 1, n, n);
  ScalarField2D f = ScalarField2D::sample(d, [](double x, double y) { return std::exp(x) * std::cos(y); });
  std::vector<double> coef(d.size(), 1.0), out(d.size());

  std::printf("grid %dx%d, %d threads\n", n, n, omp_get_max_threads());
  std::printf("%-22s %10s %10s %9s\n", "kernel (ms/call)", "serial", "openmp", "speedup");
  row("assemble_coefficient",
      time_ms([&] { kernels::serial::assemble_coefficient(params, f, coef); }, 5),
      time_ms([&] { kernels::omp::assemble_coefficient(params, f, coef); }, 5));
  row("potential_residual",
      time_ms([&] { kernels::serial::potential_residual(f, coef, out); }, 20),
      time_ms([&] { kernels::omp::potential_residual(f, coef, out); }, 20));
  row("potential_residual_max",
      time_ms([&] { kernels::serial::potential_residual_max(f, coef); }, 20),
      time_ms([&] { kernels::omp::potential_residual_max(f, coef); }, 20));
  ScalarField2D g = f;
  row("sor sweep (both colors)",
      time_ms([&] { for (int c : {0, 1}) kernels::serial::sor_color_sweep(g, coef, c, 1.7); }, 20),
      time_ms([&] { for (int c : {0, 1}) kernels::omp::sor_color_sweep(f, coef, c, 1.7); }, 20));

  const GridDomain small(-1, 1, -1, 1, 65, 65);
  const BoundaryData phi = BoundaryData::sample(small, [](double x, double y) { return std::exp(x) * std::cos(y); });
  SolverConfig serial_cfg, omp_cfg;
  serial_cfg.exec = kernels::Exec::Serial;
  PdeSolution a = solve_dirichlet(params, small, phi, serial_cfg), b = a;
  row("solve_dirichlet 65x65",
      time_ms([&] { a = solve_dirichlet(params, small, phi, serial_cfg); }, 3),
      time_ms([&] { b = solve_dirichlet(params, small, phi, omp_cfg); }, 3));
  const bool same = std::memcmp(a.f.values().data(), b.f.values().data(), small.size() * sizeof(double)) == 0;
  std::printf("serial and openmp solutions bitwise identical: %s\n", same ? "yes" : "no");
  return same ? 0 : 1;
}
