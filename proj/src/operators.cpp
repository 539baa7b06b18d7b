#include "phaseless/operators.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "phaseless/kernels.hpp"
#include "phaseless/parallel.hpp"

namespace phaseless {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

cplx unit_phasor(double phi) { return {std::cos(phi), std::sin(phi)}; }

double sup_diff(const Signal& a, const Signal& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}

}  // namespace

Signal translate(const Signal& f, double tau, InterpMode mode) {
    const Grid& g = f.grid();
    const auto& v = f.values();
    std::vector<cplx> out(g.n, cplx{0.0, 0.0});
    if (const auto k = g.shift_index(tau)) {
        const long long n = static_cast<long long>(g.n);
        for (long long j = 0; j < n; ++j) {
            const long long src = j - *k;
            if (src >= 0 && src < n)
                out[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(src)];
        }
    } else if (mode == InterpMode::Linear) {
        for (std::size_t j = 0; j < g.n; ++j) {
            const double s = (g.point(j) - tau - g.t0) / g.dt;
            const double fl = std::floor(s);
            const long long k = static_cast<long long>(fl);
            const double frac = s - fl;
            cplx lo{0.0, 0.0}, hi{0.0, 0.0};
            if (k >= 0 && k < static_cast<long long>(g.n)) lo = v[static_cast<std::size_t>(k)];
            if (k + 1 >= 0 && k + 1 < static_cast<long long>(g.n))
                hi = v[static_cast<std::size_t>(k + 1)];
            out[j] = (1.0 - frac) * lo + frac * hi;
        }
    } else {
        for (std::size_t j = 0; j < g.n; ++j) {
            const double s = (g.point(j) - tau - g.t0) / g.dt;
            cplx acc{0.0, 0.0};
            for (std::size_t m = 0; m < g.n; ++m) {
                const double x = s - static_cast<double>(m);
                const double w = (std::abs(x) < 1e-12) ? 1.0 : std::sin(M_PI * x) / (M_PI * x);
                acc += v[m] * w;
            }
            out[j] = acc;
        }
    }
    return Signal(g, std::move(out), f.label());
}

Signal modulate(const Signal& f, double nu) {
    const Grid& g = f.grid();
    std::vector<cplx> out(g.n);
    for (std::size_t j = 0; j < g.n; ++j) out[j] = f[j] * unit_phasor(kTwoPi * nu * g.point(j));
    return Signal(g, std::move(out), f.label());
}

Signal reflect(const Signal& f) {
    if (!f.grid().is_symmetric()) throw AsymmetricGrid("reflect");
    std::vector<cplx> out(f.values().rbegin(), f.values().rend());
    return Signal(f.grid(), std::move(out), f.label());
}

Signal conjugate(const Signal& f) {
    std::vector<cplx> out(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) out[j] = std::conj(f[j]);
    return Signal(f.grid(), std::move(out), f.label());
}

Signal fourier(const Signal& f, const Grid& freq_grid, QuadratureOrder q) {
    const std::vector<cplx> fw = weighted_values(f, q);
    const Grid& g = f.grid();
    std::vector<cplx> out(freq_grid.n);
    parallel_for(freq_grid.n, [&](std::size_t b, std::size_t e) {
        for (std::size_t m = b; m < e; ++m)
            out[m] = kernels::ops().phasor_dot(fw.data(), fw.size(), g.t0, g.dt,
                                               freq_grid.point(m));
    });
    return Signal(freq_grid, std::move(out), f.label());
}

Signal fourier_fast(const Signal& f, QuadratureOrder q) {
    const Grid& g = f.grid();
    const Grid fg = g.dual();
    const std::size_t n = g.n;
    const std::vector<cplx> fw = weighted_values(f, q);

    // X_m = e^{-2 pi i w_m t0} * DFT_m(fw_j e^{-2 pi i w0 dt j}), w_m on the dual grid
    std::vector<cplx> in(n), dft(n);
    for (std::size_t j = 0; j < n; ++j)
        in[j] = fw[j] * unit_phasor(-kTwoPi * fg.t0 * g.dt * static_cast<double>(j));
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(dft.data()), FFTW_FORWARD,
                                      FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    std::vector<cplx> out(n);
    for (std::size_t m = 0; m < n; ++m)
        out[m] = dft[m] * unit_phasor(-kTwoPi * fg.point(m) * g.t0);
    return Signal(fg, std::move(out), f.label());
}

Signal inverse_fourier(const Signal& u, const Grid& time_grid, QuadratureOrder q) {
    const std::vector<cplx> uw = weighted_values(u, q);
    const Grid& g = u.grid();
    std::vector<cplx> out(time_grid.n);
    parallel_for(time_grid.n, [&](std::size_t b, std::size_t e) {
        for (std::size_t m = b; m < e; ++m)
            out[m] = kernels::ops().phasor_dot(uw.data(), uw.size(), g.t0, g.dt,
                                               -time_grid.point(m));
    });
    return Signal(time_grid, std::move(out), u.label());
}

cplx stft(const Signal& f, const Signal& g, TFPoint p, QuadratureOrder q, InterpMode mode) {
    if (f.grid() != g.grid()) throw GridMismatch("stft");
    const Signal gs = translate(g, p.x, mode);
    const std::vector<cplx> fw = weighted_values(f, q);
    std::vector<cplx> prod(fw.size());
    kernels::ops().mul_conj(fw.data(), gs.data(), prod.data(), fw.size());
    return kernels::ops().phasor_dot(prod.data(), prod.size(), f.grid().t0, f.grid().dt, p.omega);
}

cplx stft(const Signal& f, const Window& g, TFPoint p, QuadratureOrder q) {
    const auto vals = stft_values(f, g, {p}, q);
    return vals[0];
}

std::vector<cplx> stft_values(const Signal& f, const Window& g, const std::vector<TFPoint>& points,
                              QuadratureOrder q) {
    if (f.grid() != g.grid()) throw GridMismatch("stft_values");
    const std::size_t n = f.size();
    const std::vector<cplx> fw = weighted_values(f, q);

    // one shifted window per distinct x
    std::map<double, std::size_t> slot_of_x;
    std::vector<std::size_t> slot(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        slot[i] = slot_of_x.emplace(points[i].x, slot_of_x.size()).first->second;

    bool real_path = true;
    for (const auto& [x, s] : slot_of_x) real_path = real_path && g.real_shift_available(x);

    std::vector<std::vector<double>> shifted_re(slot_of_x.size());
    std::vector<Signal> shifted_cx(slot_of_x.size());
    for (const auto& [x, s] : slot_of_x) {
        if (real_path)
            shifted_re[s] = g.shifted_real(x);
        else
            shifted_cx[s] = translate(g.samples(), x);
    }

    const Grid& grid = f.grid();
    std::vector<cplx> out(points.size());
    parallel_for(points.size(), [&](std::size_t b, std::size_t e) {
        std::vector<cplx> prod(n);
        for (std::size_t i = b; i < e; ++i) {
            if (real_path)
                kernels::ops().mul_real(fw.data(), shifted_re[slot[i]].data(), prod.data(), n);
            else
                kernels::ops().mul_conj(fw.data(), shifted_cx[slot[i]].data(), prod.data(), n);
            out[i] = kernels::ops().phasor_dot(prod.data(), n, grid.t0, grid.dt, points[i].omega);
        }
    });
    return out;
}

SpectrogramSamples stft_batch(const Signal& f, const Window& g, std::vector<TFPoint> points,
                              QuadratureOrder q) {
    const auto vals = stft_values(f, g, points, q);
    SpectrogramSamples out;
    out.points = std::move(points);
    out.values.resize(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) out.values[i] = std::abs(vals[i]);
    out.window_label = g.spec().label();
    out.signal_label = f.label();
    return out;
}

VerificationReport check_lemma21(const Signal& f, const Signal& g, double tau, double nu,
                                 TFPoint p, const ToleranceProfile& tol) {
    if (!f.grid().shift_index(tau)) throw GridMultipleViolation("check_lemma21 tau");
    VerificationReport rep;
    rep.claim_id = "lemma21";
    rep.threshold = tol.rel_tol > 0.0 ? tol.rel_tol : tol.abs_tol;
    const double scale = std::max(sup_norm(f), 1e-300);

    // (1) T_tau M_nu = e^{-2 pi i tau nu} M_nu T_tau
    {
        const Signal lhs = translate(modulate(f, nu), tau);
        Signal rhs = modulate(translate(f, tau), nu);
        const cplx ph = unit_phasor(-kTwoPi * tau * nu);
        std::vector<cplx> rv(rhs.size());
        for (std::size_t j = 0; j < rhs.size(); ++j) rv[j] = ph * rhs[j];
        rep.add("1_translate_modulate", sup_diff(lhs, Signal(rhs.grid(), std::move(rv))) / scale);
    }

    const Grid probe(-2.5, 0.5, 11);  // symmetric probe frequencies
    // (2) F T_tau = M_{-tau} F
    {
        const Signal lhs = fourier(translate(f, tau), probe, tol.quadrature);
        const Signal rhs = modulate(fourier(f, probe, tol.quadrature), -tau);
        rep.add("2_fourier_translate", sup_diff(lhs, rhs) / scale);
    }
    // (3) F^{-1} T_tau = M_tau F^{-1}
    {
        const Signal lhs = inverse_fourier(translate(f, tau), probe, tol.quadrature);
        const Signal rhs = modulate(inverse_fourier(f, probe, tol.quadrature), tau);
        rep.add("3_invfourier_translate", sup_diff(lhs, rhs) / scale);
    }
    // (4) T_tau R = R T_{-tau}
    {
        const Signal lhs = translate(reflect(f), tau);
        const Signal rhs = reflect(translate(f, -tau));
        rep.add("4_translate_reflect", sup_diff(lhs, rhs) / scale);
    }
    // (5) conj(F f) = R F conj(f)
    {
        const Signal lhs = conjugate(fourier(f, probe, tol.quadrature));
        const Signal rhs = reflect(fourier(conjugate(f), probe, tol.quadrature));
        rep.add("5_fourier_conj", sup_diff(lhs, rhs) / scale);
    }
    // (6) V_g(T_tau M_nu f)(x,w) = e^{-2 pi i tau w} V_g f(x-tau, w-nu)
    {
        const Signal tmf = translate(modulate(f, nu), tau);
        const cplx lhs = stft(tmf, g, p, tol.quadrature);
        const cplx rhs = unit_phasor(-kTwoPi * tau * p.omega) *
                         stft(f, g, TFPoint{p.x - tau, p.omega - nu}, tol.quadrature);
        rep.add("6_covariance", std::abs(lhs - rhs) / scale);
    }

    rep.sample_points = probe.n + 1;
    rep.finalize();
    return rep;
}

}  // namespace phaseless
