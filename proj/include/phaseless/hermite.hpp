#pragma once
#include <span>
#include <vector>

#include "phaseless/core.hpp"
#include "phaseless/operators.hpp"
#include "phaseless/report.hpp"

namespace phaseless {

inline constexpr unsigned kDefaultHermiteOrder = 64;
inline constexpr double kDefaultTruncationBudget = 1e-10;

/// Fractional Fourier order theta (radians), with tags for the orders where
/// the transform is an exact classical operator.
struct FrftOrder {
    double theta = 0.0;

    FrftOrder() = default;
    explicit FrftOrder(double th) : theta(th) {}

    enum class Special { None, Identity, Fourier, InvFourier, Reflect };

    /// Special-case tag when theta is within 1e-12 of {0, pi/2, -pi/2, pi} mod 2pi.
    Special special() const;
};

/// h_0..h_N sampled on a grid. Rows are exact samples of the orthonormal
/// Hermite functions; the discrete Gram matrix stays within 1e-8 of the
/// identity whenever the grid resolves and contains order N (tested).
class HermiteBasis {
  public:
    HermiteBasis(Grid grid, unsigned max_order);

    const Grid& grid() const { return grid_; }
    unsigned max_order() const { return max_order_; }
    std::span<const double> row(unsigned n) const;
    Signal basis_signal(unsigned n) const;

    struct Analysis {
        std::vector<cplx> coeffs;
        double norm2 = 0.0;        // quadrature ||f||^2
        double tail_energy = 0.0;  // ||f||^2 - sum |coeff|^2, clamped at 0
    };

    /// Coefficients <f, h_n> for n = 0..N plus the truncation diagnostic.
    Analysis analyze(const Signal& f, QuadratureOrder q = QuadratureOrder::Trapezoid) const;

    /// sum_n coeffs[n] h_n on the basis grid.
    Signal synthesize(std::span<const cplx> coeffs, std::string label = {}) const;

    /// sum_n coeffs[n] h_n evaluated at arbitrary points.
    std::vector<cplx> evaluate(std::span<const cplx> coeffs, std::span<const double> pts) const;

    /// max_{m,n} |<h_m,h_n> - delta_mn| over the whole basis.
    double gram_defect(QuadratureOrder q = QuadratureOrder::Trapezoid) const;

  private:
    Grid grid_;
    unsigned max_order_;
    std::vector<double> rows_;  // (N+1) x n row-major
};

/// h_n sampled on a grid; n is capped (default 64) to keep the recurrence in
/// its validated range.
Signal hermite_eval(unsigned n, const Grid& grid, unsigned limit = kDefaultHermiteOrder);

/// (<f,h_n>)_n together with the tail-energy diagnostic.
HermiteBasis::Analysis hermite_coeffs(const Signal& f, const HermiteBasis& basis);

/// Fractional Fourier transform of order theta. Exact operator at the
/// special orders; Hermite path otherwise, guarded by the truncation budget:
/// tail energy above budget*||f||^2 raises TruncationBudgetExceeded.
Signal frft(const Signal& f, FrftOrder theta, const HermiteBasis& basis,
            double truncation_budget = kDefaultTruncationBudget);

/// Fractional Fourier shift F_{-theta} T_tau F_theta. Special orders reduce
/// to translate/modulate exactly.
Signal frac_shift(const Signal& u, double tau, FrftOrder theta, const HermiteBasis& basis,
                  double truncation_budget = kDefaultTruncationBudget);

/// Residual of the rotation identity
///   V_g f(R_theta(x,w)) = e^{-i pi q} e^{i pi x w} V_{F_theta g}(F_theta f)(x,w)
/// with q = (x cos - w sin)(x sin + w cos), for Hermite-bandlimited f, g.
VerificationReport check_rotation_property(const Signal& f, const Signal& g, FrftOrder theta,
                                           TFPoint p, const HermiteBasis& basis,
                                           const ToleranceProfile& tol);

}  // namespace phaseless
