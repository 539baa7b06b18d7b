#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle_values.hpp"
#include "phaseless/hermite_eval.hpp"
#include "phaseless/operators.hpp"

using namespace phaseless;

namespace {
const Grid kGrid = Grid::symmetric(8.0, 1.0 / 128.0);

Signal gauss_unit() {
    std::vector<cplx> v(kGrid.n);
    for (std::size_t j = 0; j < kGrid.n; ++j) v[j] = {hermite_point(0, kGrid.point(j)), 0.0};
    return Signal(kGrid, std::move(v), "h0");
}

double sup_diff(const Signal& a, const Signal& b) {
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j]));
    return m;
}
}  // namespace

TEST_CASE("translate: identity, index shift, group law") {
    const Signal f = gauss_unit();
    CHECK(sup_diff(translate(f, 0.0), f) == 0.0);

    const Signal s1 = translate(f, kGrid.dt);
    for (std::size_t j = 1; j < kGrid.n; ++j) CHECK(s1[j] == f[j - 1]);
    CHECK(s1[0] == cplx{0.0, 0.0});

    const Signal back = translate(translate(f, 0.5), -0.5);
    double interior = 0.0;
    for (std::size_t j = 128; j + 128 < kGrid.n; ++j)
        interior = std::max(interior, std::abs(back[j] - f[j]));
    CHECK(interior <= 1e-12);
}

TEST_CASE("translate: interpolated fallback stays close for smooth signals") {
    const Signal f = gauss_unit();
    const double tau = 0.7 / 3.0;  // not a grid multiple
    const Signal lin = translate(f, tau, InterpMode::Linear);
    double err = 0.0;
    for (std::size_t j = 0; j < kGrid.n; ++j)
        err = std::max(err, std::abs(lin[j].real() - hermite_point(0, kGrid.point(j) - tau)));
    CHECK(err <= 5e-5);  // O(dt^2) for the Gaussian
}

TEST_CASE("modulate: identity, modulus, additivity") {
    const Signal f = gauss_unit();
    CHECK(sup_diff(modulate(f, 0.0), f) == 0.0);
    const Signal m = modulate(f, 1.3);
    for (std::size_t j = 0; j < kGrid.n; j += 97)
        CHECK(std::abs(m[j]) == doctest::Approx(std::abs(f[j])).epsilon(1e-14));
    CHECK(sup_diff(modulate(modulate(f, 0.4), 0.35), modulate(f, 0.75)) <= 1e-12);
}

TEST_CASE("reflect: parity and involution") {
    const Signal even = gauss_unit();
    CHECK(sup_diff(reflect(even), even) == 0.0);

    std::vector<cplx> odd(kGrid.n);
    for (std::size_t j = 0; j < kGrid.n; ++j) odd[j] = {hermite_point(1, kGrid.point(j)), 0.0};
    const Signal h1(kGrid, std::move(odd));
    const Signal rh1 = reflect(h1);
    for (std::size_t j = 0; j < kGrid.n; j += 53) CHECK(rh1[j] == -h1[j]);

    CHECK(sup_diff(reflect(reflect(h1)), h1) == 0.0);
    CHECK_THROWS_AS(reflect(Signal::zero(Grid(0.0, 0.5, 8))), AsymmetricGrid);
}

TEST_CASE("fourier: gaussian self-duality against the quadrature oracle") {
    const Signal f = gauss_unit();
    const Grid probe(-3.0, 0.25, 25);
    const Signal F = fourier(f, probe);
    for (std::size_t m = 0; m < probe.n; ++m) {
        const double w = probe.point(m);
        // F h0 = h0: high-precision oracle value
        const cplx orc = oracle::simpson_inner(
            [w](double t) {
                const double v = hermite_point(0, t);
                return cplx{v * std::cos(2 * M_PI * w * t), -v * std::sin(2 * M_PI * w * t)};
            },
            8.0, 8192);
        CHECK(std::abs(F[m] - orc) <= 1e-12);
        CHECK(std::abs(F[m] - cplx{hermite_point(0, w), 0.0}) <= 1e-12);
    }
    CHECK(sup_diff(fourier(Signal::zero(kGrid), probe), Signal::zero(probe)) == 0.0);
}

TEST_CASE("fourier: Parseval on the canonical dual grid") {
    const Signal f = gauss_unit();
    const Signal F = fourier(f, kGrid.dual());
    const double nf = l2_norm(f), nF = l2_norm(F);
    CHECK(std::abs(nf - nF) / nf <= 1e-8);
}

TEST_CASE("fourier: fast path reproduces the quadrature path") {
    std::vector<cplx> v(kGrid.n);
    for (std::size_t j = 0; j < kGrid.n; ++j) {
        const double t = kGrid.point(j);
        v[j] = {std::exp(-t * t) * std::cos(3.0 * t), std::exp(-0.8 * t * t) * std::sin(t)};
    }
    const Signal f(kGrid, std::move(v));
    const Signal slow = fourier(f, kGrid.dual());
    const Signal fast = fourier_fast(f);
    double scale = 0.0;
    for (std::size_t m = 0; m < slow.size(); ++m) scale = std::max(scale, std::abs(slow[m]));
    for (std::size_t m = 0; m < slow.size(); ++m)
        CHECK(std::abs(slow[m] - fast[m]) <= 1e-10 * scale);
}

TEST_CASE("inverse fourier undoes fourier on bandlimited input") {
    const Signal f = gauss_unit();
    const Signal F = fourier(f, kGrid.dual());
    const Signal back = inverse_fourier(F, kGrid);
    CHECK(sup_diff(back, f) <= 1e-10);
}

TEST_CASE("stft: diagonal value, zero signal, frozen Gaussian samples") {
    const Signal g = gauss_unit();
    const cplx diag = stft(g, g, TFPoint{0.0, 0.0});
    CHECK(diag.real() == doctest::Approx(1.0).epsilon(1e-12));  // <g,g> for unit g
    CHECK(std::abs(diag.imag()) <= 1e-15);

    CHECK(std::abs(stft(Signal::zero(kGrid), g, TFPoint{0.3, -0.4})) == 0.0);

    // analytic window handle: exact shifts at arbitrary x
    const Window win(WindowSpec::hermite(0), kGrid);
    for (const auto& s : oracle::kGaussStftTable) {
        const cplx got = stft(g, win, TFPoint{s.x, s.omega});
        CHECK(std::abs(got - s.value) <= 1e-12);
    }
    // sampled-window path at a grid-multiple x agrees too
    const cplx sampled = stft(g, g, TFPoint{0.25, -0.75});
    CHECK(std::abs(sampled - oracle::kGaussStftTable[2].value) <= 1e-12);
}

TEST_CASE("stft agrees with the inner-product form") {
    const Signal g = gauss_unit();
    std::vector<cplx> fv(kGrid.n);
    for (std::size_t j = 0; j < kGrid.n; ++j) {
        const double t = kGrid.point(j);
        fv[j] = {hermite_point(2, t), 0.3 * hermite_point(1, t)};
    }
    const Signal f(kGrid, std::move(fv));
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const double x = static_cast<double>(static_cast<long long>(rng() % 513) - 256) / 128.0;
        const double w = (double(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0) * 2.0;
        const cplx direct = stft(f, g, TFPoint{x, w});
        const cplx viaip = inner_product(f, modulate(translate(g, x), w));
        CHECK(std::abs(direct - viaip) <= 1e-10);
    }
}

TEST_CASE("stft batch: unimodular invariance and plumbing") {
    const Signal g = gauss_unit();
    const Window win(WindowSpec::hermite(0), kGrid);  // same unit gaussian as g
    std::vector<TFPoint> pts;
    for (int i = 0; i < 24; ++i) pts.push_back({-1.5 + 0.13 * i, 0.9 - 0.08 * i});

    std::vector<cplx> fv(kGrid.n);
    for (std::size_t j = 0; j < kGrid.n; ++j)
        fv[j] = g[j] * cplx{std::cos(kGrid.point(j)), std::sin(kGrid.point(j))};
    const Signal f(kGrid, std::move(fv));

    const cplx nu{std::cos(1.1), std::sin(1.1)};
    std::vector<cplx> sv(kGrid.n);
    for (std::size_t j = 0; j < kGrid.n; ++j) sv[j] = nu * f[j];
    const Signal nuf(kGrid, std::move(sv));

    const auto b1 = stft_batch(f, win, pts);
    const auto b2 = stft_batch(nuf, win, pts);
    for (std::size_t i = 0; i < pts.size(); ++i)
        CHECK(std::abs(b1.values[i] - b2.values[i]) <= 1e-12 * (1.0 + b1.values[i]));

    const auto single = stft_batch(f, win, {pts[3]});
    CHECK(single.values[0] == doctest::Approx(std::abs(stft(f, win, pts[3]))).epsilon(1e-12));

    CHECK(stft_batch(f, win, {}).values.empty());
    CHECK_THROWS_AS(stft(f, Signal::zero(Grid::symmetric(4.0, 0.25)), TFPoint{0, 0}),
                    GridMismatch);
}

TEST_CASE("lemma 2.1 residuals on Gaussian inputs") {
    const Signal f = gauss_unit();
    const Signal g = gauss_unit();
    const ToleranceProfile tol(0.0, 1e-8);
    const auto rep = check_lemma21(f, g, 1.0, 0.5, TFPoint{0.25, -0.75}, tol);
    CHECK(rep.passed);
    for (const auto& [name, r] : rep.residuals) {
        CAPTURE(name);
        CHECK(r <= 1e-8);
    }

    const auto trivial = check_lemma21(f, g, 0.0, 0.0, TFPoint{0.25, -0.75}, tol);
    CHECK(trivial.residuals[0].second == 0.0);

    const auto zero = check_lemma21(Signal::zero(kGrid), g, 1.0, 0.5, TFPoint{0.0, 0.0}, tol);
    for (const auto& [name, r] : zero.residuals) CHECK(r == 0.0);

    CHECK_THROWS_AS(check_lemma21(f, g, 0.7, 0.5, TFPoint{0, 0}, tol), GridMultipleViolation);
}

TEST_CASE("fourier of conjugate reflects in frequency") {
    std::vector<cplx> fv(kGrid.n);
    for (std::size_t j = 0; j < kGrid.n; ++j) {
        const double t = kGrid.point(j);
        fv[j] = {hermite_point(1, t) + 0.2 * hermite_point(4, t), 0.7 * hermite_point(2, t)};
    }
    const Signal f(kGrid, std::move(fv));
    const Grid probe(-2.0, 0.5, 9);
    const Signal lhs = conjugate(fourier(f, probe));
    const Signal rhs = reflect(fourier(conjugate(f), probe));
    CHECK(sup_diff(lhs, rhs) <= 1e-12);
}
