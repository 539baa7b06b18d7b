#include "phaseless/counterexamples.hpp"

#include <algorithm>
#include <cmath>

#include "phaseless/kernels.hpp"

namespace phaseless {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

cplx unit_phasor(double phi) { return {std::cos(phi), std::sin(phi)}; }

/// Values of h(t_j - offset) where h = sum_k c_k T^theta_{s k}(R g).
std::vector<cplx> synth_offset_values(const SIConfig& config, const CoefficientSequence& c,
                                      const HermiteBasis& basis, double offset) {
    const Window& win = config.window;
    const Grid& grid = win.grid();
    const double s = config.step;
    std::vector<cplx> out(grid.n, cplx{0.0, 0.0});
    const auto special = config.theta.special();

    if (special == FrftOrder::Special::Identity || special == FrftOrder::Special::Reflect) {
        // T^0_{sk} R g (t - a) = g(sk + a - t); T^pi flips the shift sign
        const double sign = special == FrftOrder::Special::Identity ? 1.0 : -1.0;
        if (win.analytic()) {
            for (const long long k : c.support()) {
                const cplx ck = c.at(k);
                const double tau = sign * s * static_cast<double>(k) + offset;
                for (std::size_t j = 0; j < grid.n; ++j)
                    out[j] += ck * win.spec().eval(tau - grid.point(j));
            }
            return out;
        }
        const Signal rg = reflect(win.samples());
        for (const long long k : c.support()) {
            const double tau = sign * s * static_cast<double>(k) + offset;
            if (!grid.shift_index(tau))
                throw GridMultipleViolation("synthesize: table window, shift " +
                                            std::to_string(tau));
            const Signal sh = translate(rg, tau);
            const cplx ck = c.at(k);
            for (std::size_t j = 0; j < grid.n; ++j) out[j] += ck * sh[j];
        }
        return out;
    }

    if (special == FrftOrder::Special::Fourier || special == FrftOrder::Special::InvFourier) {
        // T^{pi/2}_{sk} = M_{sk}: sum_k c_k e^{+-2 pi i sk (t-a)} g(a - t)
        const double sign = special == FrftOrder::Special::Fourier ? 1.0 : -1.0;
        std::vector<cplx> rg(grid.n);
        if (win.analytic()) {
            for (std::size_t j = 0; j < grid.n; ++j)
                rg[j] = cplx{win.spec().eval(offset - grid.point(j)), 0.0};
        } else {
            if (!grid.shift_index(offset))
                throw GridMultipleViolation("synthesize: table window, shift " +
                                            std::to_string(offset));
            const Signal sh = translate(reflect(win.samples()), offset);
            for (std::size_t j = 0; j < grid.n; ++j) rg[j] = sh[j];
        }
        for (const long long k : c.support()) {
            const cplx ck = c.at(k);
            const double nu = sign * s * static_cast<double>(k);
            for (std::size_t j = 0; j < grid.n; ++j)
                out[j] += ck * unit_phasor(kTwoPi * nu * (grid.point(j) - offset)) * rg[j];
        }
        return out;
    }

    // general order: one analysis/synthesis pass around exact translates of
    // v = F_theta R g, which lives in the basis by construction
    const auto ag = basis.analyze(win.samples());
    if (ag.norm2 > 0.0 && ag.tail_energy > config.truncation_budget * ag.norm2)
        throw TruncationBudgetExceeded("synthesize: window tail " +
                                       std::to_string(ag.tail_energy / ag.norm2));
    std::vector<cplx> vcoef(ag.coeffs.size());
    for (std::size_t n = 0; n < vcoef.size(); ++n) {
        const double parity = (n % 2 == 0) ? 1.0 : -1.0;  // reflection in the basis
        vcoef[n] = ag.coeffs[n] * parity * unit_phasor(-config.theta.theta * double(n));
    }
    const Signal v = basis.synthesize(vcoef);
    std::vector<cplx> w(grid.n, cplx{0.0, 0.0});
    for (const long long k : c.support()) {
        const double tau = s * static_cast<double>(k);
        const cplx ck = c.at(k);
        if (grid.shift_index(tau)) {
            const Signal sh = translate(v, tau);
            for (std::size_t j = 0; j < grid.n; ++j) w[j] += ck * sh[j];
        } else {
            std::vector<double> pts(grid.n);
            for (std::size_t j = 0; j < grid.n; ++j) pts[j] = grid.point(j) - tau;
            const auto sh = basis.evaluate(vcoef, pts);
            for (std::size_t j = 0; j < grid.n; ++j) w[j] += ck * sh[j];
        }
    }
    const auto aw = basis.analyze(Signal(grid, std::move(w)));
    if (aw.norm2 > 0.0 && aw.tail_energy > config.truncation_budget * aw.norm2)
        throw TruncationBudgetExceeded("synthesize: translate sum tail " +
                                       std::to_string(aw.tail_energy / aw.norm2));
    std::vector<cplx> fcoef(aw.coeffs.size());
    for (std::size_t n = 0; n < fcoef.size(); ++n)
        fcoef[n] = aw.coeffs[n] * unit_phasor(config.theta.theta * double(n));
    if (offset == 0.0) return basis.synthesize(fcoef).values();
    std::vector<double> pts(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) pts[j] = grid.point(j) - offset;
    return basis.evaluate(fcoef, pts);
}

Signal shifted_member(const SIConfig& config, const CoefficientSequence& c,
                      const HermiteBasis& basis, const std::string& label) {
    const double a = config.shift[0], b = config.shift[1];
    std::vector<cplx> vals = synth_offset_values(config, c, basis, a);
    if (b != 0.0) {
        const Grid& grid = config.window.grid();
        for (std::size_t j = 0; j < grid.n; ++j)
            vals[j] *= unit_phasor(kTwoPi * b * grid.point(j));
    }
    return Signal(config.window.grid(), std::move(vals), label);
}

}  // namespace

Signal synthesize(const SIConfig& config, const CoefficientSequence& c,
                  const HermiteBasis& basis) {
    SIConfig unshifted = config;
    unshifted.shift = {0.0, 0.0};
    return Signal(config.window.grid(), synth_offset_values(unshifted, c, basis, 0.0),
                  "synth[" + config.window.spec().label() + "]");
}

CounterexamplePair build_pair(const SIConfig& config, const CoefficientSequence& c,
                              const HermiteBasis& basis) {
    const CoefficientSequence cx = conjugate_partner(c);
    CounterexamplePair pair{
        shifted_member(config, c, basis, "f1"),
        shifted_member(config, cx, basis, "f2"),
        config,
        c,
        LineFamily(config.theta.theta, 1.0 / config.step, config.shift),
        {}};
    if (!c.in_ell2O())
        pair.warning = "defining sequence lies on a line: the pair may agree up to a phase";

    if (c.odd_support_only()) {
        // spot-check the half-spacing refinement before asserting it; probe x
        // values snap onto 2a + dt Z, where the sampled-window identity is
        // exact even for non-smooth windows
        const LineFamily refined(config.theta.theta, 0.5 / config.step, config.shift);
        const Grid& grid = config.window.grid();
        std::vector<double> xs{-1.3, -0.4, 0.25, 0.8, 1.7};
        for (double& x : xs) {
            const double base = 2.0 * config.shift[0];
            x = base + std::round((x - base) / grid.dt) * grid.dt;
        }
        std::vector<TFPoint> probes;
        for (const long long n : {-3LL, -1LL, 1LL, 3LL}) {  // refinement-only lines
            auto pts = line_points(refined, xs, n, n);
            probes.insert(probes.end(), pts.begin(), pts.end());
        }
        const auto v1 = stft_values(pair.f1, config.window, probes);
        const auto v2 = stft_values(pair.f2, config.window, probes);
        double scale = 0.0, resid = 0.0;
        for (std::size_t i = 0; i < probes.size(); ++i) {
            scale = std::max({scale, std::abs(v1[i]), std::abs(v2[i])});
            resid = std::max(resid, std::abs(std::abs(v1[i]) - std::abs(v2[i])));
        }
        if (scale == 0.0 || resid <= 1e-6 * std::max(scale, 1e-300))
            pair.line_family = refined;
    }
    return pair;
}

CounterexamplePair build_real_pair(const Window& g, double alpha, double beta,
                                   const HermiteBasis& basis,
                                   const CoefficientSequence* coeffs_override) {
    if (alpha == 0.0 || beta == 0.0)
        throw Error("build_real_pair: alpha and beta must be nonzero");
    (void)beta;  // the vertical line family covers every beta
    double gmax = 0.0, gimag = 0.0;
    for (const cplx& v : g.samples().values()) {
        gmax = std::max(gmax, std::abs(v));
        gimag = std::max(gimag, std::abs(v.imag()));
    }
    if (gimag > 1e-12 * std::max(gmax, 1e-300))
        throw NonRealWindow("build_real_pair: max |Im g| = " + std::to_string(gimag));

    CoefficientSequence c = coeffs_override
                                ? *coeffs_override
                                : CoefficientSequence(-1, {cplx{1.0, -1.0}, cplx{0.0, 0.0},
                                                           cplx{1.0, 1.0}});
    if (!c.in_ell2O() || !c.is_hermitian())
        throw InvalidCoefficients(
            "build_real_pair: sequence must be Hermitian and leave every line");

    const SIConfig config(g, 1.0 / std::abs(alpha), FrftOrder(M_PI_2));
    CounterexamplePair pair = build_pair(config, c, basis);

    for (const Signal* f : {&pair.f1, &pair.f2}) {
        double sup = 0.0, imag = 0.0;
        for (const cplx& v : f->values()) {
            sup = std::max(sup, std::abs(v));
            imag = std::max(imag, std::abs(v.imag()));
        }
        if (imag > 1e-8 * std::max(sup, 1e-300))
            throw Error("build_real_pair: output not real, max |Im| = " + std::to_string(imag));
    }
    return pair;
}

VerificationReport realness_lemma_check(const Signal& u, const CoefficientSequence& c,
                                        double step, const ToleranceProfile& tol) {
    VerificationReport rep;
    rep.claim_id = "hermitian_sequence_real_transform";
    rep.threshold = tol.rel_tol > 0.0 ? tol.rel_tol : tol.abs_tol;
    const Grid dual = u.grid().dual();

    const Signal fu = fourier(u, dual, tol.quadrature);
    double fu_max = 0.0, fu_imag = 0.0;
    for (const cplx& v : fu.values()) {
        fu_max = std::max(fu_max, std::abs(v));
        fu_imag = std::max(fu_imag, std::abs(v.imag()));
    }
    rep.add("generator_transform_imag", fu_imag / std::max(fu_max, 1e-300));
    rep.add("sequence_hermitian_violation", c.is_hermitian() ? 0.0 : 1.0);

    std::vector<cplx> hv(u.size(), cplx{0.0, 0.0});
    for (const long long k : c.support()) {
        const Signal sh = translate(u, step * static_cast<double>(k));
        const cplx ck = c.at(k);
        for (std::size_t j = 0; j < u.size(); ++j) hv[j] += ck * sh[j];
    }
    const Signal fh = fourier(Signal(u.grid(), std::move(hv)), dual, tol.quadrature);
    double fh_max = 0.0, fh_imag = 0.0;
    for (const cplx& v : fh.values()) {
        fh_max = std::max(fh_max, std::abs(v));
        fh_imag = std::max(fh_imag, std::abs(v.imag()));
    }
    rep.add("sum_transform_imag", fh_imag / std::max(fh_max, 1e-300));
    rep.sample_points = dual.n;
    rep.finalize();
    return rep;
}

CounterexamplePair gaussian_oracle_pair(double beta, const Grid& grid) {
    if (!(beta > 0.0)) throw Error("gaussian_oracle_pair: beta must be positive");
    std::vector<cplx> v1(grid.n), v2(grid.n);
    for (std::size_t j = 0; j < grid.n; ++j) {
        const double t = grid.point(j);
        const double env = std::exp(-M_PI * t * t);
        const double ch = std::cosh(M_PI * t / beta), sh = std::sinh(M_PI * t / beta);
        v1[j] = cplx{env * ch, env * sh};
        v2[j] = cplx{env * ch, -env * sh};
    }
    Signal f1(grid, std::move(v1), "gauss_pair_f1");
    Signal f2(grid, std::move(v2), "gauss_pair_f2");

    const double amp = 0.5 * std::exp(M_PI / (4.0 * beta * beta));
    const CoefficientSequence c(-1, {cplx{amp, -amp}, cplx{0.0, 0.0}, cplx{amp, amp}});
    const double s = 1.0 / (2.0 * beta);

    SIConfig config(Window(WindowSpec::gaussian(), grid), s, FrftOrder(0.0));
    HermiteBasis basis(grid, 1);  // order-0 synthesis path never touches it
    const Signal synth = synthesize(config, c, basis);
    double diff2 = 0.0, ref2 = 0.0;
    const double dt = grid.dt;
    for (std::size_t j = 0; j < grid.n; ++j) {
        diff2 += std::norm(synth[j] - f1[j]) * dt;
        ref2 += std::norm(f1[j]) * dt;
    }
    const double rel = std::sqrt(diff2 / std::max(ref2, 1e-300));
    if (rel > 1e-8)
        throw Error("gaussian_oracle_pair: synthesized form misses closed form by " +
                    std::to_string(rel));

    return CounterexamplePair{std::move(f1), std::move(f2), config, c,
                              LineFamily(0.0, beta, {0.0, 0.0}), {}};
}

}  // namespace phaseless
