#include "phaseless/hermite.hpp"

#include <algorithm>
#include <cmath>

#include "phaseless/hermite_eval.hpp"
#include "phaseless/kernels.hpp"
#include "phaseless/parallel.hpp"

namespace phaseless {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

cplx unit_phasor(double phi) { return {std::cos(phi), std::sin(phi)}; }

double wrap_two_pi(double theta) {
    double r = std::fmod(theta, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

}  // namespace

FrftOrder::Special FrftOrder::special() const {
    const double r = wrap_two_pi(theta);
    const double eps = 1e-12;
    auto near = [&](double v) { return std::abs(r - v) <= eps; };
    if (near(0.0) || near(kTwoPi)) return Special::Identity;
    if (near(0.25 * kTwoPi)) return Special::Fourier;
    if (near(0.75 * kTwoPi)) return Special::InvFourier;
    if (near(0.5 * kTwoPi)) return Special::Reflect;
    return Special::None;
}

HermiteBasis::HermiteBasis(Grid grid, unsigned max_order)
    : grid_(grid), max_order_(max_order) {
    std::vector<double> pts(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) pts[j] = grid.point(j);
    rows_ = hermite_rows(max_order_, pts);
}

std::span<const double> HermiteBasis::row(unsigned n) const {
    if (n > max_order_) throw OrderOverflow("basis row " + std::to_string(n));
    return {rows_.data() + static_cast<std::size_t>(n) * grid_.n, grid_.n};
}

Signal HermiteBasis::basis_signal(unsigned n) const {
    const auto r = row(n);
    std::vector<cplx> v(grid_.n);
    for (std::size_t j = 0; j < grid_.n; ++j) v[j] = cplx{r[j], 0.0};
    return Signal(grid_, std::move(v), "h" + std::to_string(n));
}

HermiteBasis::Analysis HermiteBasis::analyze(const Signal& f, QuadratureOrder q) const {
    if (f.grid() != grid_) throw GridMismatch("hermite analyze");
    const std::vector<cplx> fw = weighted_values(f, q);
    Analysis out;
    out.coeffs.resize(max_order_ + 1);
    parallel_for(max_order_ + 1, [&](std::size_t b, std::size_t e) {
        for (std::size_t n = b; n < e; ++n)
            out.coeffs[n] = kernels::ops().cdot_real(
                fw.data(), rows_.data() + n * grid_.n, grid_.n);
    });
    out.norm2 = std::max(0.0, inner_product(f, f, q).real());
    double captured = 0.0;
    for (const cplx& c : out.coeffs) captured += std::norm(c);
    out.tail_energy = std::max(0.0, out.norm2 - captured);
    return out;
}

Signal HermiteBasis::synthesize(std::span<const cplx> coeffs, std::string label) const {
    if (coeffs.size() > static_cast<std::size_t>(max_order_) + 1)
        throw OrderOverflow("synthesize coefficient count");
    std::vector<cplx> out(grid_.n, cplx{0.0, 0.0});
    for (std::size_t n = 0; n < coeffs.size(); ++n)
        kernels::ops().caxpy_real(coeffs[n], rows_.data() + n * grid_.n, out.data(), grid_.n);
    return Signal(grid_, std::move(out), std::move(label));
}

std::vector<cplx> HermiteBasis::evaluate(std::span<const cplx> coeffs,
                                         std::span<const double> pts) const {
    std::vector<double> re(coeffs.size()), im(coeffs.size());
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        re[n] = coeffs[n].real();
        im[n] = coeffs[n].imag();
    }
    std::vector<cplx> out(pts.size());
    for (std::size_t j = 0; j < pts.size(); ++j)
        out[j] = cplx{hermite_sum_point(re, pts[j]), hermite_sum_point(im, pts[j])};
    return out;
}

double HermiteBasis::gram_defect(QuadratureOrder q) const {
    const std::vector<double> w = quadrature_weights(grid_, q);
    const std::size_t n = grid_.n;
    double defect = 0.0;
    for (unsigned a = 0; a <= max_order_; ++a) {
        const double* ra = rows_.data() + static_cast<std::size_t>(a) * n;
        for (unsigned b = a; b <= max_order_; ++b) {
            const double* rb = rows_.data() + static_cast<std::size_t>(b) * n;
            double acc = 0.0, comp = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double y = ra[j] * rb[j] * w[j] - comp;
                const double t = acc + y;
                comp = (t - acc) - y;
                acc = t;
            }
            defect = std::max(defect, std::abs(acc - (a == b ? 1.0 : 0.0)));
        }
    }
    return defect;
}

Signal hermite_eval(unsigned n, const Grid& grid, unsigned limit) {
    if (n > limit) throw OrderOverflow("hermite_eval n=" + std::to_string(n));
    std::vector<cplx> v(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) v[j] = cplx{hermite_point(n, grid.point(j)), 0.0};
    return Signal(grid, std::move(v), "h" + std::to_string(n));
}

HermiteBasis::Analysis hermite_coeffs(const Signal& f, const HermiteBasis& basis) {
    return basis.analyze(f);
}

namespace {

std::vector<cplx> phased_coeffs(std::span<const cplx> coeffs, double theta) {
    std::vector<cplx> out(coeffs.size());
    for (std::size_t n = 0; n < coeffs.size(); ++n)
        out[n] = coeffs[n] * unit_phasor(-theta * static_cast<double>(n));
    return out;
}

void check_tail(const HermiteBasis::Analysis& an, double budget, const char* who) {
    if (an.norm2 == 0.0) return;
    if (an.tail_energy > budget * an.norm2)
        throw TruncationBudgetExceeded(std::string(who) + ": tail " +
                                       std::to_string(an.tail_energy / an.norm2) +
                                       " of norm^2 exceeds budget " + std::to_string(budget));
}

}  // namespace

Signal frft(const Signal& f, FrftOrder theta, const HermiteBasis& basis,
            double truncation_budget) {
    switch (theta.special()) {
        case FrftOrder::Special::Identity:
            return f;
        case FrftOrder::Special::Fourier:
            return fourier(f, f.grid());
        case FrftOrder::Special::InvFourier:
            return inverse_fourier(f, f.grid());
        case FrftOrder::Special::Reflect:
            return reflect(f);
        case FrftOrder::Special::None:
            break;
    }
    const auto an = basis.analyze(f);
    check_tail(an, truncation_budget, "frft");
    return basis.synthesize(phased_coeffs(an.coeffs, theta.theta), f.label());
}

Signal frac_shift(const Signal& u, double tau, FrftOrder theta, const HermiteBasis& basis,
                  double truncation_budget) {
    switch (theta.special()) {
        case FrftOrder::Special::Identity:
            return translate(u, tau);
        case FrftOrder::Special::Fourier:
            return modulate(u, tau);
        case FrftOrder::Special::InvFourier:
            return modulate(u, -tau);
        case FrftOrder::Special::Reflect:
            return translate(u, -tau);
        case FrftOrder::Special::None:
            break;
    }
    const auto an = basis.analyze(u);
    check_tail(an, truncation_budget, "frac_shift");
    const Signal rotated = basis.synthesize(phased_coeffs(an.coeffs, theta.theta));
    const Signal shifted = translate(rotated, tau);
    const auto an2 = basis.analyze(shifted);
    check_tail(an2, truncation_budget, "frac_shift (after shift)");
    return basis.synthesize(phased_coeffs(an2.coeffs, -theta.theta), u.label());
}

VerificationReport check_rotation_property(const Signal& f, const Signal& g, FrftOrder theta,
                                           TFPoint p, const HermiteBasis& basis,
                                           const ToleranceProfile& tol) {
    if (f.grid() != g.grid() || f.grid() != basis.grid())
        throw GridMismatch("check_rotation_property");
    const Grid& grid = f.grid();

    const auto af = basis.analyze(f, tol.quadrature);
    const auto ag = basis.analyze(g, tol.quadrature);

    auto stft_coeff_window = [&](const Signal& sig, std::span<const cplx> gcoeffs,
                                 TFPoint pt) -> cplx {
        std::vector<double> pts(grid.n);
        for (std::size_t j = 0; j < grid.n; ++j) pts[j] = grid.point(j) - pt.x;
        const std::vector<cplx> gs = basis.evaluate(gcoeffs, pts);
        const std::vector<cplx> fw = weighted_values(sig, tol.quadrature);
        std::vector<cplx> prod(grid.n);
        kernels::ops().mul_conj(fw.data(), gs.data(), prod.data(), grid.n);
        return kernels::ops().phasor_dot(prod.data(), grid.n, grid.t0, grid.dt, pt.omega);
    };

    const double ct = std::cos(theta.theta), st = std::sin(theta.theta);
    const TFPoint rotated{p.x * ct - p.omega * st, p.x * st + p.omega * ct};
    const double q_phase = rotated.x * rotated.omega;

    const cplx lhs = stft_coeff_window(f, ag.coeffs, rotated);

    const std::vector<cplx> f_rot = phased_coeffs(af.coeffs, theta.theta);
    const std::vector<cplx> g_rot = phased_coeffs(ag.coeffs, theta.theta);
    const Signal f_theta = basis.synthesize(f_rot);
    const cplx rhs = unit_phasor(-M_PI * q_phase) * unit_phasor(M_PI * p.x * p.omega) *
                     stft_coeff_window(f_theta, g_rot, p);

    VerificationReport rep;
    rep.claim_id = "rotation_property";
    rep.threshold = tol.rel_tol > 0.0 ? tol.rel_tol : tol.abs_tol;
    rep.add("rotation", std::abs(lhs - rhs));
    rep.sample_points = 1;
    rep.notes = "theta=" + std::to_string(theta.theta);
    rep.finalize();
    return rep;
}

}  // namespace phaseless
