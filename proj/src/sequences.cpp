#include "phaseless/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace phaseless {
namespace {

constexpr double kCollinearTol = 1e-14;

bool collinear_through_origin(std::span<const cplx> values) {
    double maxmod2 = 0.0;
    for (const cplx& v : values) maxmod2 = std::max(maxmod2, std::norm(v));
    if (maxmod2 == 0.0) return true;  // all zero: vacuously on every line
    const double tol = kCollinearTol * maxmod2;
    for (std::size_t j = 0; j < values.size(); ++j)
        for (std::size_t k = j + 1; k < values.size(); ++k)
            if (std::abs(std::imag(values[j] * std::conj(values[k]))) > tol) return false;
    return true;
}

}  // namespace

CoefficientSequence::CoefficientSequence(long long k_min, std::vector<cplx> coeffs)
    : k_min_(k_min), coeffs_(std::move(coeffs)) {
    for (const cplx& v : coeffs_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw Error("coefficient sequence: non-finite entry");
    in_ell2O_ = !collinear_through_origin(coeffs_);
    is_hermitian_ = true;
    for (long long k = std::min(k_min_, -k_max()); k <= std::max(k_max(), -k_min_); ++k)
        if (at(k) != std::conj(at(-k))) {
            is_hermitian_ = false;
            break;
        }
}

cplx CoefficientSequence::at(long long k) const {
    if (coeffs_.empty() || k < k_min_ || k > k_max()) return {0.0, 0.0};
    return coeffs_[static_cast<std::size_t>(k - k_min_)];
}

bool CoefficientSequence::odd_support_only() const {
    bool any = false;
    for (long long k = k_min_; k <= k_max(); ++k)
        if (at(k) != cplx{0.0, 0.0}) {
            if ((k % 2) == 0) return false;
            any = true;
        }
    return any;
}

std::vector<long long> CoefficientSequence::support() const {
    std::vector<long long> out;
    for (long long k = k_min_; k <= k_max(); ++k)
        if (at(k) != cplx{0.0, 0.0}) out.push_back(k);
    return out;
}

bool classify_ell2O(const CoefficientSequence& c) { return c.in_ell2O(); }

bool classify_hermitian(const CoefficientSequence& c) { return c.is_hermitian(); }

std::optional<double> line_check(std::span<const cplx> values) {
    if (!collinear_through_origin(values)) return std::nullopt;
    // angle from the largest-modulus element, folded into [0, pi)
    double best = 0.0;
    cplx ref{0.0, 0.0};
    for (const cplx& v : values)
        if (std::norm(v) > best) {
            best = std::norm(v);
            ref = v;
        }
    if (best == 0.0) return 0.0;  // all zero: pick the real axis
    double alpha = std::atan2(ref.imag(), ref.real());
    alpha = std::fmod(alpha, M_PI);
    if (alpha < 0.0) alpha += M_PI;
    return alpha;
}

CoefficientSequence conjugate_partner(const CoefficientSequence& c) {
    std::vector<cplx> conj(c.coeffs().size());
    for (std::size_t i = 0; i < conj.size(); ++i) conj[i] = std::conj(c.coeffs()[i]);
    return CoefficientSequence(c.k_min(), std::move(conj));
}

CoefficientSequence sample_cone(int support_radius, std::uint64_t seed) {
    if (support_radius < 1) throw Error("sample_cone: support_radius must be >= 1");
    std::mt19937_64 rng(seed);
    // raw-word mapping keeps draws identical across standard libraries
    auto uniform = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    };
    const std::size_t len = static_cast<std::size_t>(2 * support_radius + 1);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<cplx> coeffs(len);
        for (cplx& v : coeffs) v = cplx{uniform(), uniform()};
        CoefficientSequence c(-support_radius, std::move(coeffs));
        if (c.in_ell2O()) return c;
    }
    throw Error("sample_cone: failed to leave the line (should be unreachable)");
}

}  // namespace phaseless
