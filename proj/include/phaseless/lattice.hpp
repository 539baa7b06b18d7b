#pragma once
#include <boost/rational.hpp>

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "phaseless/grid.hpp"
#include "phaseless/operators.hpp"

namespace phaseless {

using Rational = boost::rational<long long>;

/// Shifted rotated parallel lines z + R_theta(R x hZ). spacing == 0 marks the
/// degenerate single-line family produced by rank-deficient lattices.
struct LineFamily {
    double theta = 0.0;
    double spacing = 1.0;
    std::array<double, 2> shift{0.0, 0.0};

    LineFamily() = default;
    LineFamily(double th, double h, std::array<double, 2> z) : theta(th), spacing(h), shift(z) {
        if (spacing < 0.0) throw Error("line family: spacing must be >= 0");
    }
};

/// z + R_theta(x, n*h) for every x in x_samples and n in [n_min, n_max].
std::vector<TFPoint> line_points(const LineFamily& fam, const std::vector<double>& x_samples,
                                 long long n_min, long long n_max);

/// Shifted lattice z + L Z^2. The generator carries float entries and,
/// optionally, exact rationals; the real-valued construction path requires
/// the exact form (float rationality detection stays a labelled heuristic).
struct Lattice {
    std::array<std::array<double, 2>, 2> generator{{{1.0, 0.0}, {0.0, 1.0}}};
    std::optional<std::array<std::array<Rational, 2>, 2>> exact;
    std::array<double, 2> shift{0.0, 0.0};

    double det() const {
        return generator[0][0] * generator[1][1] - generator[0][1] * generator[1][0];
    }
    bool degenerate(double eps = 1e-12) const;

    static Lattice from_exact(const std::array<std::array<Rational, 2>, 2>& gen,
                              std::array<double, 2> z = {0.0, 0.0});
    static Lattice rectangular(double alpha, double beta, std::array<double, 2> z = {0.0, 0.0});
};

struct LatticeBoxPoints {
    std::vector<TFPoint> points;
    bool degenerate = false;
};

struct Box {
    double x_lo, x_hi, omega_lo, omega_hi;
};

/// All lattice points inside the closed box, no duplicates. Degenerate
/// generators enumerate along the single spanned line and flag the result.
LatticeBoxPoints lattice_points_in_box(const Lattice& lat, const Box& box);

enum class DependenceMode { Exact, ContinuedFractionHeuristic };

/// One scalar that is exactly rational or a float.
struct NumberOrRational {
    double value = 0.0;
    std::optional<Rational> exact;

    NumberOrRational(double v) : value(v) {}                           // NOLINT
    NumberOrRational(Rational r)                                      // NOLINT
        : value(static_cast<double>(r.numerator()) / static_cast<double>(r.denominator())),
          exact(r) {}
};

/// Outcome of testing a = (p1/p2) b over Q. ratio is reduced; base_is_second
/// records which element served as the base b (roles swap when b == 0).
struct RationalDependence {
    bool dependent = false;
    std::optional<Rational> ratio;
    bool base_is_second = true;
    DependenceMode mode = DependenceMode::Exact;
};

/// Exact mode when both inputs carry rationals; otherwise continued-fraction
/// convergents of a/b up to denominator q_max, accepted when
/// |a - (p1/p2) b| <= eps * max(|a|,|b|). Both inputs zero is degenerate.
RationalDependence detect_rational_dependence(const NumberOrRational& a,
                                              const NumberOrRational& b, long long q_max,
                                              double eps);

/// Rectangular superlattice L' = diag(b/p2, d/q2) containing L Z^2, from the
/// per-row dependencies a = (p1/p2) b and c = (q1/q2) d. Exact when the
/// lattice carries rationals. Throws NotEmbeddable when a row is independent.
struct SuperlatticeEmbedding {
    Lattice rectangular;
    /// integer witness w with L v == L' w(v)
    std::array<long long, 2> witness(long long v1, long long v2) const;
    std::array<std::array<long long, 2>, 2> witness_matrix{{{1, 0}, {0, 1}}};
    bool degenerate = false;
};
SuperlatticeEmbedding superlattice_embed(const Lattice& lat,
                                         const std::pair<RationalDependence, RationalDependence>& dep_rows);

/// Smallest line family z + R_theta(R x hZ) containing the lattice:
/// theta from the first generator column, h = |det| / |col1|. Containment is
/// verified on a finite box before returning.
LineFamily lattice_in_line_family(const Lattice& lat);

}  // namespace phaseless
