#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle_values.hpp"
#include "phaseless/lattice.hpp"

using namespace phaseless;

TEST_CASE("line_points: axis cases and independent rotation check") {
    const auto p = line_points(LineFamily(0.0, 1.0, {0.0, 0.0}), {0.0}, 2, 2);
    REQUIRE(p.size() == 1);
    CHECK(p[0].x == doctest::Approx(0.0));
    CHECK(p[0].omega == doctest::Approx(2.0));

    // theta = pi/2 maps (x, nh) -> (-nh, x)
    const auto q = line_points(LineFamily(M_PI_2, 0.5, {0.0, 0.0}), {1.25}, 3, 3);
    CHECK(q[0].x == doctest::Approx(-1.5).epsilon(1e-14));
    CHECK(q[0].omega == doctest::Approx(1.25).epsilon(1e-14));

    // generic angle against an independent 2x2 multiply
    const double th = 1.0;
    const auto r = line_points(LineFamily(th, 0.5, {1.0, 1.0}), {0.3}, -2, -2);
    const double c = std::cos(th), s = std::sin(th);
    const double vx = 0.3, vw = -1.0;
    CHECK(r[0].x == doctest::Approx(1.0 + c * vx - s * vw).epsilon(1e-15));
    CHECK(r[0].omega == doctest::Approx(1.0 + s * vx + c * vw).epsilon(1e-15));
}

TEST_CASE("line_points: inverse rotation recovers parameters") {
    const LineFamily fam(0.77, 0.25, {0.4, -0.9});
    const std::vector<double> xs{-1.7, 0.0, 2.3};
    const auto pts = line_points(fam, xs, -3, 3);
    const double c = std::cos(fam.theta), s = std::sin(fam.theta);
    std::size_t i = 0;
    for (long long n = -3; n <= 3; ++n)
        for (const double x : xs) {
            const double dx = pts[i].x - fam.shift[0], dw = pts[i].omega - fam.shift[1];
            CHECK(std::abs(c * dx + s * dw - x) <= 1e-14);
            CHECK(std::abs(-s * dx + c * dw - fam.spacing * double(n)) <= 1e-14);
            ++i;
        }
}

TEST_CASE("lattice_points_in_box: identity, shifts, brute force") {
    Lattice I;
    const auto p = lattice_points_in_box(I, Box{-1.0, 1.0, -1.0, 1.0});
    CHECK(p.points.size() == 9);
    CHECK(!p.degenerate);

    Lattice shifted;
    shifted.shift = {0.5, 0.5};
    const auto q = lattice_points_in_box(shifted, Box{0.0, 1.0, 0.0, 1.0});
    REQUIRE(q.points.size() == 1);
    CHECK(q.points[0].x == doctest::Approx(0.5));
    CHECK(q.points[0].omega == doctest::Approx(0.5));

    // generic generator vs brute-force double loop
    Lattice g;
    g.generator = {{{0.7, 0.31}, {-0.22, 0.9}}};
    g.shift = {0.13, -0.4};
    const Box box{-2.0, 2.0, -1.5, 1.5};
    const auto got = lattice_points_in_box(g, box);
    std::size_t count = 0;
    for (long long m = -30; m <= 30; ++m)
        for (long long n = -30; n <= 30; ++n) {
            const double x = g.shift[0] + m * g.generator[0][0] + n * g.generator[0][1];
            const double w = g.shift[1] + m * g.generator[1][0] + n * g.generator[1][1];
            if (x >= box.x_lo - 1e-9 && x <= box.x_hi + 1e-9 && w >= box.omega_lo - 1e-9 &&
                w <= box.omega_hi + 1e-9)
                ++count;
        }
    CHECK(got.points.size() == count);

    Lattice deg;
    deg.generator = {{{1.0, 2.0}, {0.5, 1.0}}};  // rank 1
    const auto d = lattice_points_in_box(deg, Box{-2.0, 2.0, -2.0, 2.0});
    CHECK(d.degenerate);
    CHECK(!d.points.empty());
}

TEST_CASE("detect_rational_dependence: exact pairs") {
    const auto r = detect_rational_dependence(Rational(1, 2), Rational(3, 4), 100, 1e-12);
    CHECK(r.dependent);
    CHECK(r.mode == DependenceMode::Exact);
    REQUIRE(r.ratio.has_value());
    CHECK(*r.ratio == Rational(2, 3));

    const auto z = detect_rational_dependence(Rational(0), Rational(5), 100, 1e-12);
    CHECK(z.dependent);
    CHECK(*z.ratio == Rational(0));

    // zero base swaps roles
    const auto s = detect_rational_dependence(Rational(5), Rational(0), 100, 1e-12);
    CHECK(s.dependent);
    CHECK(!s.base_is_second);
    CHECK(*s.ratio == Rational(0));

    CHECK_THROWS_AS(detect_rational_dependence(Rational(0), Rational(0), 100, 1e-12),
                    DegenerateInput);
    CHECK_THROWS_AS(detect_rational_dependence(0.0, 0.0, 100, 1e-12), DegenerateInput);
}

TEST_CASE("detect_rational_dependence: continued-fraction heuristic") {
    // sqrt(2)'s best convergent below 1e6 misses by ~1.59e-12 > eps
    const auto r = detect_rational_dependence(std::sqrt(2.0), 1.0, 1000000, 1e-12);
    CHECK(r.mode == DependenceMode::ContinuedFractionHeuristic);
    CHECK(!r.dependent);
    const double conv_err = std::abs(std::sqrt(2.0) - double(oracle::kSqrt2ConvNum) /
                                                          double(oracle::kSqrt2ConvDen));
    CHECK(conv_err > 1e-12);  // the frozen margin that forces rejection

    // but a float that IS rational gets recovered
    const auto ok = detect_rational_dependence(0.75, 0.5, 1000, 1e-12);
    CHECK(ok.dependent);
    CHECK(*ok.ratio == Rational(3, 2));

    // and loosening eps accepts the convergent
    const auto loose = detect_rational_dependence(std::sqrt(2.0), 1.0, 1000000, 1e-11);
    CHECK(loose.dependent);
}

TEST_CASE("superlattice_embed: worked example and exhaustive witness") {
    const std::array<std::array<Rational, 2>, 2> gen{
        {{Rational(1), Rational(2)}, {Rational(3), Rational(1)}}};
    const Lattice lat = Lattice::from_exact(gen);
    const auto d0 = detect_rational_dependence(gen[0][0], gen[0][1], 100, 1e-12);
    const auto d1 = detect_rational_dependence(gen[1][0], gen[1][1], 100, 1e-12);
    CHECK(*d0.ratio == Rational(1, 2));
    CHECK(*d1.ratio == Rational(3, 1));

    const auto emb = superlattice_embed(lat, {d0, d1});
    CHECK(emb.rectangular.generator[0][0] == doctest::Approx(1.0));  // b/p2 = 2/2
    CHECK(emb.rectangular.generator[1][1] == doctest::Approx(1.0));  // d/q2 = 1/1
    REQUIRE(emb.rectangular.exact.has_value());

    // exhaustive: L v == L' w(v) for all |v_i| <= 20, exact arithmetic
    const auto& Lx = *lat.exact;
    const auto& Px = *emb.rectangular.exact;
    for (long long v1 = -20; v1 <= 20; ++v1)
        for (long long v2 = -20; v2 <= 20; ++v2) {
            const auto w = emb.witness(v1, v2);
            CHECK(Lx[0][0] * v1 + Lx[0][1] * v2 == Px[0][0] * w[0]);
            CHECK(Lx[1][0] * v1 + Lx[1][1] * v2 == Px[1][1] * w[1]);
        }
}

TEST_CASE("superlattice_embed: diagonal lattice embeds into itself") {
    const std::array<std::array<Rational, 2>, 2> gen{
        {{Rational(7, 3), Rational(0)}, {Rational(0), Rational(5, 2)}}};
    const Lattice lat = Lattice::from_exact(gen);
    const auto d0 = detect_rational_dependence(gen[0][0], gen[0][1], 100, 1e-12);
    const auto d1 = detect_rational_dependence(gen[1][0], gen[1][1], 100, 1e-12);
    const auto emb = superlattice_embed(lat, {d0, d1});
    // rows (a, 0): base swaps to a, ratio 0, entry a, witness w = v1
    CHECK(emb.rectangular.generator[0][0] == doctest::Approx(7.0 / 3.0));
    CHECK(emb.rectangular.generator[1][1] == doctest::Approx(5.0 / 2.0));
    const auto w = emb.witness(3, -4);
    CHECK(w[0] == 3);
    CHECK(w[1] == -4);
}

TEST_CASE("superlattice_embed: property test over random rational generators") {
    std::mt19937_64 rng(2024);
    int tested = 0;
    while (tested < 100) {
        auto draw = [&] {
            const long long num = static_cast<long long>(rng() % 41) - 20;
            const long long den = 1 + static_cast<long long>(rng() % 12);
            return Rational(num, den);
        };
        const std::array<std::array<Rational, 2>, 2> gen{{{draw(), draw()}, {draw(), draw()}}};
        if (gen[0][0] * gen[1][1] - gen[0][1] * gen[1][0] == Rational(0)) continue;  // degenerate
        const Lattice lat = Lattice::from_exact(gen);
        RationalDependence d0, d1;
        try {
            d0 = detect_rational_dependence(gen[0][0], gen[0][1], 1000, 1e-12);
            d1 = detect_rational_dependence(gen[1][0], gen[1][1], 1000, 1e-12);
        } catch (const DegenerateInput&) {
            continue;  // a whole row of zeros
        }
        const auto emb = superlattice_embed(lat, {d0, d1});
        REQUIRE(emb.rectangular.exact.has_value());
        const auto& Lx = *lat.exact;
        const auto& Px = *emb.rectangular.exact;
        std::array<std::array<long long, 2>, 4> probes{{{1, 0}, {0, 1}, {13, -7}, {-50, 50}}};
        for (const auto& v : probes) {
            const auto w = emb.witness(v[0], v[1]);
            CHECK(Lx[0][0] * v[0] + Lx[0][1] * v[1] == Px[0][0] * w[0]);
            CHECK(Lx[1][0] * v[0] + Lx[1][1] * v[1] == Px[1][1] * w[1]);
        }
        ++tested;
    }
}

TEST_CASE("superlattice_embed: 1000 random witnesses with |v_i| <= 50 stay exact") {
    const std::array<std::array<Rational, 2>, 2> gen{
        {{Rational(4, 7), Rational(-6, 5)}, {Rational(9, 2), Rational(3, 4)}}};
    const Lattice lat = Lattice::from_exact(gen);
    const auto d0 = detect_rational_dependence(gen[0][0], gen[0][1], 1000, 1e-12);
    const auto d1 = detect_rational_dependence(gen[1][0], gen[1][1], 1000, 1e-12);
    const auto emb = superlattice_embed(lat, {d0, d1});
    const auto& Lx = *lat.exact;
    const auto& Px = *emb.rectangular.exact;
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 1000; ++trial) {
        const long long v1 = static_cast<long long>(rng() % 101) - 50;
        const long long v2 = static_cast<long long>(rng() % 101) - 50;
        const auto w = emb.witness(v1, v2);
        CHECK(Lx[0][0] * v1 + Lx[0][1] * v2 == Px[0][0] * w[0]);
        CHECK(Lx[1][0] * v1 + Lx[1][1] * v2 == Px[1][1] * w[1]);
    }
}

TEST_CASE("superlattice_embed rejects independent rows") {
    Lattice lat;
    lat.generator = {{{std::sqrt(2.0), 1.0}, {1.0, 1.0}}};
    const auto d0 = detect_rational_dependence(std::sqrt(2.0), 1.0, 1000000, 1e-12);
    const auto d1 = detect_rational_dependence(1.0, 1.0, 1000000, 1e-12);
    CHECK_THROWS_AS(superlattice_embed(lat, {d0, d1}), NotEmbeddable);
}

TEST_CASE("lattice_in_line_family: rectangular, rotated, degenerate") {
    const Lattice rect = Lattice::rectangular(0.8, 1.3);
    const LineFamily f1 = lattice_in_line_family(rect);
    CHECK(f1.theta == doctest::Approx(0.0));
    CHECK(f1.spacing == doctest::Approx(1.3));

    const double th = 1.0, c = std::cos(th), s = std::sin(th);
    Lattice rot;
    rot.generator = {{{c, -s}, {s, c}}};  // R_1 * I
    const LineFamily f2 = lattice_in_line_family(rot);
    CHECK(f2.theta == doctest::Approx(th).epsilon(1e-12));
    CHECK(f2.spacing == doctest::Approx(1.0).epsilon(1e-12));

    Lattice deg;
    deg.generator = {{{1.0, 2.0}, {0.5, 1.0}}};
    const LineFamily f3 = lattice_in_line_family(deg);
    CHECK(f3.spacing == 0.0);
}

TEST_CASE("lattice_in_line_family containment over random generators") {
    std::mt19937_64 rng(7);
    auto u = [&] { return double(rng() >> 11) * 0x1.0p-53 * 4.0 - 2.0; };
    int tested = 0;
    while (tested < 25) {
        Lattice lat;
        lat.generator = {{{u(), u()}, {u(), u()}}};
        if (std::abs(lat.det()) < 0.05) continue;
        lat.shift = {u(), u()};
        const LineFamily fam = lattice_in_line_family(lat);  // throws on containment failure
        const auto pts = lattice_points_in_box(lat, Box{-10.0, 10.0, -10.0, 10.0});
        const double cc = std::cos(fam.theta), ss = std::sin(fam.theta);
        for (const auto& p : pts.points) {
            const double ortho =
                -ss * (p.x - lat.shift[0]) + cc * (p.omega - lat.shift[1]);
            CHECK(std::abs(ortho - std::round(ortho / fam.spacing) * fam.spacing) <= 1e-10);
        }
        ++tested;
    }
}
