#pragma once
#include <cmath>
#include <string>
#include <vector>

#include "phaseless/grid.hpp"

namespace phaseless {

enum class WindowKind { Gaussian, ExpAbs, CauchyMix, Hermite, HermiteSum, Table };

/// Analytic window description. All built-in kinds are real-valued; Table
/// wraps arbitrary complex samples and loses the analytic evaluator.
struct WindowSpec {
    WindowKind kind = WindowKind::Gaussian;
    unsigned hermite_order = 0;          // Hermite
    std::vector<double> hermite_coeffs;  // HermiteSum
    Signal table;                        // Table

    static WindowSpec gaussian() { return {WindowKind::Gaussian, 0, {}, {}}; }
    static WindowSpec exp_abs() { return {WindowKind::ExpAbs, 0, {}, {}}; }
    static WindowSpec cauchy_mix() { return {WindowKind::CauchyMix, 0, {}, {}}; }
    static WindowSpec hermite(unsigned n) { return {WindowKind::Hermite, n, {}, {}}; }
    static WindowSpec hermite_sum(std::vector<double> coeffs) {
        return {WindowKind::HermiteSum, 0, std::move(coeffs), {}};
    }
    static WindowSpec from_table(Signal s) { return {WindowKind::Table, 0, {}, std::move(s)}; }

    bool analytic() const { return kind != WindowKind::Table; }
    double eval(double t) const;  // analytic kinds only
    std::string label() const;
};

/// Pointwise evaluation of the spec on a grid.
Signal sample_analytic(const WindowSpec& spec, const Grid& grid);

/// A window bound to a grid: samples plus (when available) the analytic
/// evaluator, so g(t - x) can be produced exactly for arbitrary shifts x.
class Window {
  public:
    Window(WindowSpec spec, const Grid& grid)
        : spec_(std::move(spec)), samples_(sample_analytic(spec_, grid)) {}

    const WindowSpec& spec() const { return spec_; }
    const Signal& samples() const { return samples_; }
    const Grid& grid() const { return samples_.grid(); }
    bool analytic() const { return spec_.analytic(); }

    /// True when g(t_j - x) is representable as a real array: any analytic
    /// kind, or a real table with x a grid multiple.
    bool real_shift_available(double x) const;

    /// g(t_j - x) as a real array (zero fill where a shifted table runs out).
    std::vector<double> shifted_real(double x) const;

  private:
    WindowSpec spec_;
    Signal samples_;
};

/// Quadrature inner product <a,b> = sum_j a_j conj(b_j) w_j with trapezoid
/// end-weights by default. Compensated summation in fixed index order;
/// bit-identical across calls and conjugate-symmetric in its arguments.
cplx inner_product(const Signal& a, const Signal& b,
                   QuadratureOrder q = QuadratureOrder::Trapezoid);

double l2_norm(const Signal& a, QuadratureOrder q = QuadratureOrder::Trapezoid);

/// max_j |a_j|
double sup_norm(const Signal& a);

/// Quadrature weights (dt everywhere, dt/2 at the ends for trapezoid).
std::vector<double> quadrature_weights(const Grid& grid, QuadratureOrder q);

/// a_j * w_j, the weight-folded copy used by Fourier-type reductions.
std::vector<cplx> weighted_values(const Signal& a, QuadratureOrder q);

}  // namespace phaseless
