#pragma once
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "phaseless/errors.hpp"

namespace phaseless {

using cplx = std::complex<double>;

/// Uniform time grid: points t0 + j*dt for 0 <= j < n.
struct Grid {
    double t0 = 0.0;
    double dt = 1.0;
    std::size_t n = 2;

    Grid() = default;
    Grid(double t0_, double dt_, std::size_t n_) : t0(t0_), dt(dt_), n(n_) {
        if (!(dt > 0.0)) throw Error("grid: dt must be positive");
        if (n < 2) throw Error("grid: need at least two points");
    }

    /// Symmetric grid on [-t_max, t_max] with the given step. 2*t_max must be
    /// an integer multiple of dt so that 0 is a grid point.
    static Grid symmetric(double t_max, double dt_) {
        const double m = 2.0 * t_max / dt_;
        const auto k = static_cast<long long>(std::llround(m));
        if (std::abs(m - static_cast<double>(k)) > 1e-9 || k <= 0)
            throw Error("grid: 2*t_max must be a multiple of dt");
        const std::size_t n_ = static_cast<std::size_t>(k) + 1;
        return Grid(-0.5 * static_cast<double>(k) * dt_, dt_, n_);
    }

    double point(std::size_t j) const { return t0 + static_cast<double>(j) * dt; }
    double t_end() const { return point(n - 1); }

    bool operator==(const Grid& o) const { return t0 == o.t0 && dt == o.dt && n == o.n; }
    bool operator!=(const Grid& o) const { return !(*this == o); }

    /// True when the point set is symmetric about 0 (t0 = -(n-1)*dt/2).
    bool is_symmetric() const {
        return std::abs(t0 + 0.5 * static_cast<double>(n - 1) * dt) <= 1e-12 * dt;
    }

    /// Integer k with tau == k*dt, if tau is a grid multiple (1e-9*dt slack).
    std::optional<long long> shift_index(double tau) const {
        const double m = tau / dt;
        const auto k = static_cast<long long>(std::llround(m));
        if (std::abs(tau - static_cast<double>(k) * dt) <= 1e-9 * dt) return k;
        return std::nullopt;
    }

    /// Canonical dual grid: n frequencies spaced 1/(n*dt), symmetric for odd n.
    Grid dual() const {
        const double dw = 1.0 / (static_cast<double>(n) * dt);
        return Grid(-0.5 * static_cast<double>(n - 1) * dw, dw, n);
    }
};

/// Complex samples on a grid. Immutable after construction.
class Signal {
  public:
    Signal() = default;
    Signal(Grid grid, std::vector<cplx> values, std::string label = {})
        : grid_(grid), values_(std::move(values)), label_(std::move(label)) {
        if (values_.size() != grid_.n) throw Error("signal: length does not match grid");
        for (const cplx& v : values_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw Error("signal: non-finite sample");
    }

    const Grid& grid() const { return grid_; }
    const std::vector<cplx>& values() const { return values_; }
    const cplx* data() const { return values_.data(); }
    std::size_t size() const { return values_.size(); }
    const std::string& label() const { return label_; }
    cplx operator[](std::size_t j) const { return values_[j]; }

    static Signal zero(Grid grid, std::string label = "zero") {
        return Signal(grid, std::vector<cplx>(grid.n, cplx{0.0, 0.0}), std::move(label));
    }

  private:
    Grid grid_;
    std::vector<cplx> values_;
    std::string label_;
};

enum class QuadratureOrder { Riemann, Trapezoid };

struct ToleranceProfile {
    double abs_tol = 0.0;
    double rel_tol = 1e-6;
    QuadratureOrder quadrature = QuadratureOrder::Trapezoid;

    ToleranceProfile() = default;
    ToleranceProfile(double a, double r, QuadratureOrder q = QuadratureOrder::Trapezoid)
        : abs_tol(a), rel_tol(r), quadrature(q) {
        if (!(abs_tol > 0.0) && !(rel_tol > 0.0))
            throw Error("tolerance profile: need a positive tolerance");
    }
};

}  // namespace phaseless
