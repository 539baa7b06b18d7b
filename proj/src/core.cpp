#include "phaseless/core.hpp"

#include <algorithm>
#include <thread>

#include "phaseless/hermite_eval.hpp"
#include "phaseless/kernels.hpp"
#include "phaseless/parallel.hpp"

namespace phaseless {

double WindowSpec::eval(double t) const {
    switch (kind) {
        case WindowKind::Gaussian:
            return std::exp(-M_PI * t * t);
        case WindowKind::ExpAbs:
            return std::exp(-std::abs(t));
        case WindowKind::CauchyMix:
            return std::exp(-std::abs(t)) + 1.0 / (1.0 + t * t);
        case WindowKind::Hermite:
            return hermite_point(hermite_order, t);
        case WindowKind::HermiteSum:
            return hermite_sum_point(hermite_coeffs, t);
        case WindowKind::Table:
            throw UnsupportedWindow("table windows have no analytic evaluator");
    }
    throw UnsupportedWindow("unknown window kind");
}

std::string WindowSpec::label() const {
    switch (kind) {
        case WindowKind::Gaussian:
            return "gaussian";
        case WindowKind::ExpAbs:
            return "exp_abs";
        case WindowKind::CauchyMix:
            return "cauchy_mix";
        case WindowKind::Hermite:
            return "hermite(" + std::to_string(hermite_order) + ")";
        case WindowKind::HermiteSum:
            return "hermite_sum(" + std::to_string(hermite_coeffs.size()) + ")";
        case WindowKind::Table:
            return "table:" + table.label();
    }
    return "?";
}

Signal sample_analytic(const WindowSpec& spec, const Grid& grid) {
    if (spec.kind == WindowKind::Table) {
        if (spec.table.grid() != grid)
            throw GridMismatch("table window sampled on a different grid");
        return spec.table;
    }
    std::vector<cplx> v(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) v[j] = cplx{spec.eval(grid.point(j)), 0.0};
    return Signal(grid, std::move(v), spec.label());
}

bool Window::real_shift_available(double x) const {
    if (analytic()) return true;
    if (!grid().shift_index(x)) return false;
    for (const cplx& v : samples_.values())
        if (v.imag() != 0.0) return false;
    return true;
}

std::vector<double> Window::shifted_real(double x) const {
    const Grid& g = grid();
    std::vector<double> out(g.n);
    if (analytic()) {
        for (std::size_t j = 0; j < g.n; ++j) out[j] = spec_.eval(g.point(j) - x);
        return out;
    }
    const auto k = g.shift_index(x);
    if (!k) throw GridMultipleViolation("table window shift " + std::to_string(x));
    const auto& v = samples_.values();
    const long long n = static_cast<long long>(g.n);
    for (long long j = 0; j < n; ++j) {
        const long long src = j - *k;
        out[static_cast<std::size_t>(j)] =
            (src >= 0 && src < n) ? v[static_cast<std::size_t>(src)].real() : 0.0;
    }
    return out;
}

std::vector<double> quadrature_weights(const Grid& grid, QuadratureOrder q) {
    std::vector<double> w(grid.n, grid.dt);
    if (q == QuadratureOrder::Trapezoid) {
        w.front() *= 0.5;
        w.back() *= 0.5;
    }
    return w;
}

std::vector<cplx> weighted_values(const Signal& a, QuadratureOrder q) {
    std::vector<cplx> out(a.values());
    const double dt = a.grid().dt;
    for (cplx& v : out) v *= dt;
    if (q == QuadratureOrder::Trapezoid) {
        out.front() *= 0.5;
        out.back() *= 0.5;
    }
    return out;
}

cplx inner_product(const Signal& a, const Signal& b, QuadratureOrder q) {
    if (a.grid() != b.grid()) throw GridMismatch("inner_product");
    const std::size_t n = a.size();
    cplx raw = kernels::ops().cdot_conj(a.data(), b.data(), n);
    if (q == QuadratureOrder::Trapezoid)
        raw -= 0.5 * (a[0] * std::conj(b[0]) + a[n - 1] * std::conj(b[n - 1]));
    return raw * a.grid().dt;
}

double l2_norm(const Signal& a, QuadratureOrder q) {
    return std::sqrt(std::max(0.0, inner_product(a, a, q).real()));
}

double sup_norm(const Signal& a) {
    double m = 0.0;
    for (const cplx& v : a.values()) m = std::max(m, std::abs(v));
    return m;
}

std::size_t thread_budget() {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PHASELESS_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min(n, static_cast<std::size_t>(cap));
    }
    return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    const std::size_t workers = std::min(thread_budget(), n);
    if (workers <= 1) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace phaseless
