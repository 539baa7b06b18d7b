#include "phaseless/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace phaseless {

std::vector<TFPoint> line_points(const LineFamily& fam, const std::vector<double>& x_samples,
                                 long long n_min, long long n_max) {
    const double ct = std::cos(fam.theta), st = std::sin(fam.theta);
    std::vector<TFPoint> out;
    out.reserve(x_samples.size() * static_cast<std::size_t>(std::max<long long>(0, n_max - n_min + 1)));
    for (long long n = n_min; n <= n_max; ++n) {
        const double h = fam.spacing * static_cast<double>(n);
        for (const double x : x_samples)
            out.push_back(TFPoint{fam.shift[0] + ct * x - st * h, fam.shift[1] + st * x + ct * h});
    }
    return out;
}

bool Lattice::degenerate(double eps) const {
    double scale = 0.0;
    for (const auto& row : generator)
        for (double v : row) scale = std::max(scale, std::abs(v));
    return std::abs(det()) <= eps * std::max(1.0, scale * scale);
}

Lattice Lattice::from_exact(const std::array<std::array<Rational, 2>, 2>& gen,
                            std::array<double, 2> z) {
    Lattice lat;
    lat.exact = gen;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c)
            lat.generator[r][c] = boost::rational_cast<double>(gen[r][c]);
    lat.shift = z;
    return lat;
}

Lattice Lattice::rectangular(double alpha, double beta, std::array<double, 2> z) {
    Lattice lat;
    lat.generator = {{{alpha, 0.0}, {0.0, beta}}};
    lat.shift = z;
    return lat;
}

LatticeBoxPoints lattice_points_in_box(const Lattice& lat, const Box& box) {
    LatticeBoxPoints out;
    const double eps = 1e-9;
    auto inside = [&](double x, double w) {
        return x >= box.x_lo - eps && x <= box.x_hi + eps && w >= box.omega_lo - eps &&
               w <= box.omega_hi + eps;
    };
    const auto& L = lat.generator;
    if (lat.degenerate()) {
        out.degenerate = true;
        // points m*col1 + n*col2 all lie on the line spanned by the nonzero column
        const std::array<double, 2> c1{L[0][0], L[1][0]}, c2{L[0][1], L[1][1]};
        const double n1 = std::hypot(c1[0], c1[1]), n2 = std::hypot(c2[0], c2[1]);
        const double nd = std::max(n1, n2);
        if (nd == 0.0) {
            if (inside(lat.shift[0], lat.shift[1]))
                out.points.push_back(TFPoint{lat.shift[0], lat.shift[1]});
            return out;
        }
        // enumerate k*dir + shift within the box; second column may add a
        // rational multiple of dir, so sweep a fine multiple range
        const double span = std::hypot(box.x_hi - box.x_lo, box.omega_hi - box.omega_lo) +
                            std::hypot(lat.shift[0], lat.shift[1]);
        const long long kmax = static_cast<long long>(std::ceil(span / nd)) + 2;
        for (long long m = -kmax; m <= kmax; ++m)
            for (long long n = -kmax; n <= kmax; ++n) {
                const double x = lat.shift[0] + m * c1[0] + n * c2[0];
                const double w = lat.shift[1] + m * c1[1] + n * c2[1];
                if (!inside(x, w)) continue;
                bool dup = false;
                for (const auto& p : out.points)
                    if (std::abs(p.x - x) < 1e-9 && std::abs(p.omega - w) < 1e-9) dup = true;
                if (!dup) out.points.push_back(TFPoint{x, w});
            }
        return out;
    }

    // integer bounds from the box corners mapped through L^{-1}
    const double idet = 1.0 / lat.det();
    double m_lo = 0, m_hi = 0, n_lo = 0, n_hi = 0;
    bool first = true;
    for (const double bx : {box.x_lo, box.x_hi})
        for (const double bw : {box.omega_lo, box.omega_hi}) {
            const double px = bx - lat.shift[0], pw = bw - lat.shift[1];
            const double m = idet * (L[1][1] * px - L[0][1] * pw);
            const double n = idet * (-L[1][0] * px + L[0][0] * pw);
            if (first) {
                m_lo = m_hi = m;
                n_lo = n_hi = n;
                first = false;
            } else {
                m_lo = std::min(m_lo, m);
                m_hi = std::max(m_hi, m);
                n_lo = std::min(n_lo, n);
                n_hi = std::max(n_hi, n);
            }
        }
    const long long mi = static_cast<long long>(std::floor(m_lo)) - 1;
    const long long ma = static_cast<long long>(std::ceil(m_hi)) + 1;
    const long long ni = static_cast<long long>(std::floor(n_lo)) - 1;
    const long long na = static_cast<long long>(std::ceil(n_hi)) + 1;
    for (long long m = mi; m <= ma; ++m)
        for (long long n = ni; n <= na; ++n) {
            const double x = lat.shift[0] + m * L[0][0] + n * L[0][1];
            const double w = lat.shift[1] + m * L[1][0] + n * L[1][1];
            if (inside(x, w)) out.points.push_back(TFPoint{x, w});
        }
    return out;
}

RationalDependence detect_rational_dependence(const NumberOrRational& a,
                                              const NumberOrRational& b, long long q_max,
                                              double eps) {
    const bool a_zero = a.exact ? (*a.exact == Rational(0)) : (a.value == 0.0);
    const bool b_zero = b.exact ? (*b.exact == Rational(0)) : (b.value == 0.0);
    if (a_zero && b_zero) throw DegenerateInput("detect_rational_dependence: both zero");

    RationalDependence out;
    if (a.exact && b.exact) {
        out.mode = DependenceMode::Exact;
        out.dependent = true;  // two rationals are always dependent over Q
        if (!b_zero) {
            out.ratio = *a.exact / *b.exact;
            out.base_is_second = true;
        } else {
            out.ratio = *b.exact / *a.exact;  // = 0; roles swapped
            out.base_is_second = false;
        }
        return out;
    }

    out.mode = DependenceMode::ContinuedFractionHeuristic;
    if (a_zero || b_zero) {
        out.dependent = true;
        out.ratio = Rational(0);
        out.base_is_second = a_zero;  // 0 = 0 * (nonzero base)
        return out;
    }

    // continued-fraction convergents of a/b
    const double target = a.value / b.value;
    const double scale = std::max(std::abs(a.value), std::abs(b.value));
    double x = target;
    long long p_prev = 1, p_curr = static_cast<long long>(std::floor(x));
    long long q_prev = 0, q_curr = 1;
    double best_err = std::abs(a.value - static_cast<double>(p_curr) * b.value);
    Rational best(p_curr, 1);
    for (int iter = 0; iter < 64; ++iter) {
        const double frac = x - std::floor(x);
        if (frac < 1e-18) break;
        x = 1.0 / frac;
        const double fl = std::floor(x);
        if (fl > 9.0e17) break;
        const long long ai = static_cast<long long>(fl);
        const long long p_next = ai * p_curr + p_prev;
        const long long q_next = ai * q_curr + q_prev;
        if (q_next > q_max || q_next < 0) break;
        p_prev = p_curr;
        p_curr = p_next;
        q_prev = q_curr;
        q_curr = q_next;
        const double err =
            std::abs(a.value - (static_cast<double>(p_curr) / static_cast<double>(q_curr)) * b.value);
        if (err < best_err) {
            best_err = err;
            best = Rational(p_curr, q_curr);
        }
    }
    if (best_err <= eps * scale) {
        out.dependent = true;
        out.ratio = best;
        out.base_is_second = true;
    }
    return out;
}

namespace {

/// Per-row rectangular factor: row (a,b) = base/den * (num*v1 + den*v2) style.
/// Returns {entry, w_row = (w1_coeff_of_v1, w2_coeff_of_v2)}.
struct RowEmbed {
    double entry;
    std::optional<Rational> entry_exact;
    std::array<long long, 2> wcoef;
    bool degenerate = false;
};

RowEmbed embed_row(double a, double b, const std::optional<std::array<Rational, 2>>& exact,
                   const RationalDependence& dep) {
    RowEmbed out{0.0, std::nullopt, {0, 0}, false};
    if (!dep.dependent) throw NotEmbeddable("row is not rationally dependent");
    if (!dep.ratio) throw NotEmbeddable("missing dependence ratio");
    const Rational r = *dep.ratio;
    const long long num = r.numerator(), den = r.denominator();
    if (dep.base_is_second) {
        // a = (num/den) b : a v1 + b v2 = (b/den)(num v1 + den v2)
        if (b == 0.0 && a == 0.0) {
            out.degenerate = true;
            return out;
        }
        out.entry = b / static_cast<double>(den);
        if (exact) out.entry_exact = (*exact)[1] / den;
        out.wcoef = {num, den};
    } else {
        // b = (num/den) a : a v1 + b v2 = (a/den)(den v1 + num v2)
        if (a == 0.0 && b == 0.0) {
            out.degenerate = true;
            return out;
        }
        out.entry = a / static_cast<double>(den);
        if (exact) out.entry_exact = (*exact)[0] / den;
        out.wcoef = {den, num};
    }
    return out;
}

}  // namespace

std::array<long long, 2> SuperlatticeEmbedding::witness(long long v1, long long v2) const {
    return {witness_matrix[0][0] * v1 + witness_matrix[0][1] * v2,
            witness_matrix[1][0] * v1 + witness_matrix[1][1] * v2};
}

SuperlatticeEmbedding superlattice_embed(
    const Lattice& lat, const std::pair<RationalDependence, RationalDependence>& dep_rows) {
    const auto& L = lat.generator;
    std::optional<std::array<Rational, 2>> row0_exact, row1_exact;
    if (lat.exact) {
        row0_exact = (*lat.exact)[0];
        row1_exact = (*lat.exact)[1];
    }
    const RowEmbed r0 = embed_row(L[0][0], L[0][1], row0_exact, dep_rows.first);
    const RowEmbed r1 = embed_row(L[1][0], L[1][1], row1_exact, dep_rows.second);

    SuperlatticeEmbedding out;
    out.degenerate = r0.degenerate || r1.degenerate;
    out.rectangular.generator = {{{r0.degenerate ? 0.0 : r0.entry, 0.0},
                                  {0.0, r1.degenerate ? 0.0 : r1.entry}}};
    out.rectangular.shift = lat.shift;
    if (r0.entry_exact && r1.entry_exact) {
        out.rectangular.exact = {{{*r0.entry_exact, Rational(0)},
                                  {Rational(0), *r1.entry_exact}}};
    }
    out.witness_matrix = {{r0.degenerate ? std::array<long long, 2>{0, 0} : r0.wcoef,
                           r1.degenerate ? std::array<long long, 2>{0, 0} : r1.wcoef}};
    return out;
}

LineFamily lattice_in_line_family(const Lattice& lat) {
    const auto& L = lat.generator;
    const std::array<double, 2> c1{L[0][0], L[1][0]}, c2{L[0][1], L[1][1]};
    const double n1 = std::hypot(c1[0], c1[1]);
    LineFamily fam;
    if (lat.degenerate()) {
        const std::array<double, 2> dir = n1 > 0.0 ? c1 : c2;
        fam = LineFamily(std::atan2(dir[1], dir[0]), 0.0, lat.shift);
        return fam;
    }
    const double theta = std::atan2(c1[1], c1[0]);
    const double h = std::abs(lat.det()) / n1;
    fam = LineFamily(theta, h, lat.shift);

    // containment check on a finite box before returning
    const auto pts = lattice_points_in_box(lat, Box{-10.0, 10.0, -10.0, 10.0});
    const double ct = std::cos(theta), st = std::sin(theta);
    for (const auto& p : pts.points) {
        const double dx = p.x - lat.shift[0], dw = p.omega - lat.shift[1];
        const double ortho = -st * dx + ct * dw;  // second rotated coordinate
        const double miss = std::abs(ortho - std::round(ortho / h) * h);
        if (miss > 1e-10)
            throw Error("lattice_in_line_family: containment check failed, miss " +
                        std::to_string(miss));
    }
    return fam;
}

}  // namespace phaseless
