#include "phaseless/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "phaseless/parallel.hpp"

namespace phaseless {

VerificationReport verify_equal_on_points(const Signal& f1, const Signal& f2, const Window& g,
                                          const std::vector<TFPoint>& points,
                                          const ToleranceProfile& tol, double reference_peak) {
    if (f1.grid() != f2.grid()) throw GridMismatch("verify_equal_on_points");
    const auto v1 = stft_values(f1, g, points, tol.quadrature);
    const auto v2 = stft_values(f2, g, points, tol.quadrature);
    double peak = reference_peak;
    for (std::size_t i = 0; i < points.size(); ++i)
        peak = std::max({peak, std::abs(v1[i]), std::abs(v2[i])});
    double resid = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        resid = std::max(resid, std::abs(std::abs(v1[i]) - std::abs(v2[i])));

    VerificationReport rep;
    rep.claim_id = "spectrogram_equality_on_points";
    rep.threshold = tol.rel_tol > 0.0 ? tol.rel_tol : tol.abs_tol;
    rep.add("max_normalized_residual", resid / std::max(peak, 1e-300));
    rep.sample_points = points.size();
    rep.notes = "peak=" + std::to_string(peak);
    rep.finalize();
    return rep;
}

PhaseDistance phase_distance(const Signal& f1, const Signal& f2) {
    if (f1.grid() != f2.grid()) throw GridMismatch("phase_distance");
    const double n1 = inner_product(f1, f1).real();
    const double n2 = inner_product(f2, f2).real();
    const cplx ip = inner_product(f1, f2);
    PhaseDistance out;
    out.distance = std::sqrt(std::max(0.0, n1 + n2 - 2.0 * std::abs(ip)));
    out.best_nu = std::abs(ip) > 0.0 ? ip / std::abs(ip) : cplx{1.0, 0.0};
    return out;
}

PairVerification verify_pair_detailed(const CounterexamplePair& pair,
                                      const std::vector<double>& x_samples, long long n_min,
                                      long long n_max, const ToleranceProfile& tol,
                                      double noneq_threshold, double control_floor) {
    PairVerification out;
    const Window& g = pair.config.window;
    const auto on_points = line_points(pair.line_family, x_samples, n_min, n_max);

    // control points: same lines shifted by half a spacing
    std::vector<TFPoint> control_points;
    {
        const double ct = std::cos(pair.line_family.theta), st = std::sin(pair.line_family.theta);
        const double half = 0.5 * pair.line_family.spacing;
        for (const auto& p : on_points)
            control_points.push_back(TFPoint{p.x - st * half, p.omega + ct * half});
    }

    const auto v1_on = stft_values(pair.f1, g, on_points, tol.quadrature);
    const auto v2_on = stft_values(pair.f2, g, on_points, tol.quadrature);
    const auto v1_off = stft_values(pair.f1, g, control_points, tol.quadrature);
    const auto v2_off = stft_values(pair.f2, g, control_points, tol.quadrature);

    double peak = 0.0;
    for (const auto& v : v1_on) peak = std::max(peak, std::abs(v));
    for (const auto& v : v2_on) peak = std::max(peak, std::abs(v));
    for (const auto& v : v1_off) peak = std::max(peak, std::abs(v));
    for (const auto& v : v2_off) peak = std::max(peak, std::abs(v));

    double on_resid = 0.0;
    for (std::size_t i = 0; i < on_points.size(); ++i)
        on_resid = std::max(on_resid, std::abs(std::abs(v1_on[i]) - std::abs(v2_on[i])));
    double control_q = 0.0;  // nontriviality: the moduli must differ off the lines
    for (std::size_t i = 0; i < control_points.size(); ++i)
        control_q = std::max(control_q, std::abs(std::abs(v1_off[i]) - std::abs(v2_off[i])));

    const double normalizer = std::max(peak, 1e-300);
    out.equality.claim_id = "pair_equality_on_line_family";
    out.equality.threshold = tol.rel_tol > 0.0 ? tol.rel_tol : tol.abs_tol;
    out.equality.add("max_normalized_residual", on_resid / normalizer);
    out.equality.sample_points = on_points.size();
    out.equality.finalize();

    out.control_ratio = control_q / normalizer;
    out.controls_ok = out.control_ratio >= control_floor;

    const PhaseDistance pd = phase_distance(pair.f1, pair.f2);
    const double n1 = l2_norm(pair.f1);
    out.phase_distance_rel = n1 > 0.0 ? pd.distance / n1 : 0.0;
    out.nonequivalent = out.phase_distance_rel > noneq_threshold;

    out.passed = out.equality.passed && out.controls_ok && out.nonequivalent;
    return out;
}

VerificationReport verify_pair(const CounterexamplePair& pair,
                               const std::vector<double>& x_samples, long long n_min,
                               long long n_max, const ToleranceProfile& tol,
                               double noneq_threshold, double control_floor) {
    const PairVerification d = verify_pair_detailed(pair, x_samples, n_min, n_max, tol,
                                                    noneq_threshold, control_floor);
    VerificationReport rep;
    rep.claim_id = "uniqueness_pair_violation_witness";
    rep.threshold = tol.rel_tol > 0.0 ? tol.rel_tol : tol.abs_tol;
    rep.add("equality_on_lines", d.equality.residuals.front().second);
    rep.add("control_floor_violation", d.controls_ok ? 0.0 : 1.0);
    rep.add("equivalence_violation", d.nonequivalent ? 0.0 : 1.0);
    rep.sample_points = d.equality.sample_points;
    rep.notes = "phase_distance_rel=" + std::to_string(d.phase_distance_rel) +
                " control_ratio=" + std::to_string(d.control_ratio);
    if (!pair.warning.empty()) {
        rep.notes += " warning=" + pair.warning;
        if (!d.nonequivalent) rep.notes += " (pair is equivalent)";
    }
    rep.finalize();
    return rep;
}

namespace {

struct SuiteRng {
    std::mt19937_64 engine;
    explicit SuiteRng(std::uint64_t seed) : engine(seed) {}
    double uniform(double lo, double hi) {
        const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        return lo + (hi - lo) * u;
    }
    long long integer(long long lo, long long hi) {
        return lo + static_cast<long long>(engine() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

Signal random_bandlimited(SuiteRng& rng, const HermiteBasis& basis, unsigned order) {
    std::vector<cplx> coeffs(order + 1);
    for (unsigned n = 0; n <= order; ++n) {
        const double decay = std::exp(-0.15 * static_cast<double>(n));
        coeffs[n] = cplx{rng.uniform(-1.0, 1.0) * decay, rng.uniform(-1.0, 1.0) * decay};
    }
    Signal s = basis.synthesize(coeffs, "random_bandlimited");
    const double nrm = l2_norm(s);
    std::vector<cplx> v(s.values());
    for (cplx& x : v) x /= nrm;
    return Signal(s.grid(), std::move(v), s.label());
}

}  // namespace

VerificationReport operator_identity_suite(std::uint64_t seed, const ToleranceProfile& tol) {
    constexpr double kLemma21Tol = 1e-8;
    constexpr double kFrftTol = 1e-6;
    constexpr double kRotationTol = 1e-6;

    const Grid grid = Grid::symmetric(8.0, 1.0 / 128.0);
    const HermiteBasis basis(grid, kDefaultHermiteOrder);
    SuiteRng rng(seed);

    VerificationReport rep;
    rep.claim_id = "operator_identity_suite";
    rep.threshold = 1.0;  // entries are residual / family-threshold margins

    // operator relations on random bandlimited signals, grid-multiple shifts
    {
        double worst[6] = {0, 0, 0, 0, 0, 0};
        for (int trial = 0; trial < 3; ++trial) {
            const Signal f = random_bandlimited(rng, basis, 20);
            const Signal g = random_bandlimited(rng, basis, 16);
            const double tau = static_cast<double>(rng.integer(-256, 256)) * grid.dt;
            const double nu = rng.uniform(-2.0, 2.0);
            const TFPoint p{static_cast<double>(rng.integer(-256, 256)) * grid.dt,
                            rng.uniform(-2.0, 2.0)};
            const auto sub = check_lemma21(f, g, tau, nu, p, tol);
            for (std::size_t i = 0; i < 6; ++i)
                worst[i] = std::max(worst[i], sub.residuals[i].second);
        }
        static const char* names[6] = {"lemma21_1_translate_modulate", "lemma21_2_fourier_translate",
                                       "lemma21_3_invfourier_translate", "lemma21_4_translate_reflect",
                                       "lemma21_5_fourier_conj", "lemma21_6_covariance"};
        for (int i = 0; i < 6; ++i) rep.add(names[i], worst[i] / kLemma21Tol);
    }

    // fractional-transform properties
    {
        const Signal f = random_bandlimited(rng, basis, 24);
        double eig = 0.0;
        for (int trial = 0; trial < 4; ++trial) {
            const unsigned n = static_cast<unsigned>(rng.integer(0, 16));
            const double theta = rng.uniform(0.1, 6.0);
            const Signal hn = basis.basis_signal(n);
            const Signal lhs = frft(hn, FrftOrder(theta), basis);
            const cplx phase{std::cos(-theta * n), std::sin(-theta * n)};
            double diff = 0.0;
            for (std::size_t j = 0; j < grid.n; ++j)
                diff = std::max(diff, std::abs(lhs[j] - phase * hn[j]));
            eig = std::max(eig, diff);
        }
        rep.add("frft_eigenfunction", eig / kFrftTol);

        // Hermite path forced at pi/2 (frft itself would take the exact branch)
        const auto an = basis.analyze(f);
        std::vector<cplx> phased(an.coeffs.size());
        for (std::size_t n = 0; n < phased.size(); ++n)
            phased[n] = an.coeffs[n] * cplx{std::cos(-M_PI_2 * double(n)),
                                            std::sin(-M_PI_2 * double(n))};
        const Signal viaHermite = basis.synthesize(phased);
        const Signal viaExact = fourier(f, grid, tol.quadrature);
        double sp = 0.0, nrm = 0.0;
        for (std::size_t j = 0; j < grid.n; ++j) {
            sp = std::max(sp, std::abs(viaHermite[j] - viaExact[j]));
            nrm = std::max(nrm, std::abs(viaExact[j]));
        }
        rep.add("frft_special_case_fourier", (sp / std::max(nrm, 1e-300)) / kFrftTol);

        const double a = rng.uniform(0.2, 2.8), b = rng.uniform(0.2, 2.8);
        const Signal g1 = frft(frft(f, FrftOrder(a), basis), FrftOrder(b), basis);
        const Signal g2 = frft(f, FrftOrder(a + b), basis);
        double grp = 0.0;
        for (std::size_t j = 0; j < grid.n; ++j) grp = std::max(grp, std::abs(g1[j] - g2[j]));
        rep.add("frft_group_law", grp / kFrftTol);

        const double th = rng.uniform(0.3, 5.9);
        const Signal c1 = conjugate(frft(f, FrftOrder(th), basis));
        const Signal c2 = frft(conjugate(f), FrftOrder(-th), basis);
        double cj = 0.0;
        for (std::size_t j = 0; j < grid.n; ++j) cj = std::max(cj, std::abs(c1[j] - c2[j]));
        rep.add("frft_conjugation", cj / kFrftTol);

        const Signal r1 = frft(reflect(f), FrftOrder(th), basis);
        const Signal r2 = reflect(frft(f, FrftOrder(th), basis));
        double rf = 0.0;
        for (std::size_t j = 0; j < grid.n; ++j) rf = std::max(rf, std::abs(r1[j] - r2[j]));
        rep.add("frft_reflect_commute", rf / kFrftTol);

        double uni = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            const double theta = rng.uniform(0.0, 6.28);
            const double n1 = l2_norm(frft(f, FrftOrder(theta), basis));
            uni = std::max(uni, std::abs(n1 - l2_norm(f)) / l2_norm(f));
        }
        rep.add("frft_unitarity", uni / kFrftTol);
    }

    // rotation identity at random orders and points
    {
        double rot = 0.0;
        const Signal f = random_bandlimited(rng, basis, 20);
        const Signal g = random_bandlimited(rng, basis, 14);
        for (int trial = 0; trial < 20; ++trial) {
            const double theta = rng.uniform(0.0, 6.28);
            const TFPoint p{rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)};
            const auto sub = check_rotation_property(f, g, FrftOrder(theta), p, basis, tol);
            rot = std::max(rot, sub.max_residual());
        }
        rep.add("rotation_property", rot / kRotationTol);
    }

    rep.sample_points = 3 * 7 + 20;
    rep.notes = "entries are residual/threshold margins: lemma21 vs 1e-8, frft vs 1e-6, "
                "rotation vs 1e-6";
    rep.finalize();
    return rep;
}

PeriodizationDiagnostic periodization_diagnostic(const Signal& h, double step, int resolution,
                                                 double sup_bound, double independence_delta) {
    if (!(step > 0.0)) throw Error("periodization_diagnostic: step must be positive");
    if (resolution < 2) throw Error("periodization_diagnostic: resolution too small");

    PeriodizationDiagnostic out;
    out.grid_resolution = resolution;
    out.sup_bound = sup_bound;
    out.independence_delta = independence_delta;

    const double nrm = l2_norm(h);
    if (nrm == 0.0) return out;  // all-zero input: estimates stay 0, flags false
    std::vector<cplx> unit(h.values());
    for (cplx& v : unit) v /= nrm;
    const Signal hs(h.grid(), std::move(unit), h.label());

    // Phi(u) = (1/step) sum_k |F h((u+k)/step)|^2 on u = i/R; the (u+k)/step
    // values form one uniform frequency grid
    constexpr int kFold = 16;  // integer shifts folded on each side
    const std::size_t total = static_cast<std::size_t>(2 * kFold) * resolution;
    const Grid freq(-static_cast<double>(kFold) / step, 1.0 / (resolution * step), total);
    const Signal spectrum = fourier(hs, freq);

    std::vector<double> phi(resolution, 0.0);
    for (std::size_t m = 0; m < total; ++m)
        phi[m % static_cast<std::size_t>(resolution)] += std::norm(spectrum[m]) / step;

    out.sup_estimate = *std::max_element(phi.begin(), phi.end());
    out.inf_estimate = *std::min_element(phi.begin(), phi.end());
    out.bessel_ok = out.sup_estimate < sup_bound;
    out.independence_ok = out.inf_estimate > independence_delta;

    // heuristic amalgam proxy: sum_k max over [k,k+1) of |h_s|
    {
        std::vector<double> bucket_max;
        std::vector<long long> bucket_idx;
        const Grid& g = hs.grid();
        for (std::size_t j = 0; j < g.n; ++j) {
            const long long k = static_cast<long long>(std::floor(g.point(j) / step));
            const double val = std::sqrt(step) * std::abs(hs[j]);
            bool found = false;
            for (std::size_t b = 0; b < bucket_idx.size(); ++b)
                if (bucket_idx[b] == k) {
                    bucket_max[b] = std::max(bucket_max[b], val);
                    found = true;
                }
            if (!found) {
                bucket_idx.push_back(k);
                bucket_max.push_back(val);
            }
        }
        out.w0_estimate = 0.0;
        for (double v : bucket_max) out.w0_estimate += v;
    }
    return out;
}

}  // namespace phaseless
