#pragma once
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "phaseless/grid.hpp"

namespace phaseless {

/// Finite complex sequence c_k for k in [k_min, k_max]. Always finitely
/// supported; class membership flags are recomputed from the values.
class CoefficientSequence {
  public:
    CoefficientSequence() = default;
    CoefficientSequence(long long k_min, std::vector<cplx> coeffs);

    long long k_min() const { return k_min_; }
    long long k_max() const { return k_min_ + static_cast<long long>(coeffs_.size()) - 1; }
    const std::vector<cplx>& coeffs() const { return coeffs_; }
    cplx at(long long k) const;

    bool in_ell2O() const { return in_ell2O_; }
    bool is_hermitian() const { return is_hermitian_; }

    /// True when every nonzero coefficient sits at an odd index.
    bool odd_support_only() const;

    std::vector<long long> support() const;

  private:
    long long k_min_ = 0;
    std::vector<cplx> coeffs_;
    bool in_ell2O_ = false;
    bool is_hermitian_ = true;
};

/// True iff the values do NOT all lie on one line through the origin of the
/// complex plane. Exact for finite support: collinear means
/// Im(c_j conj(c_k)) == 0 for every pair, within 1e-14 of max |c|^2.
bool classify_ell2O(const CoefficientSequence& c);

/// True iff c_k == conj(c_{-k}) for all k, absent indices counting as zero.
bool classify_hermitian(const CoefficientSequence& c);

/// The line angle alpha (mod pi) when all values lie on e^{i alpha} R, else
/// nothing. alpha exists iff the sequence equals a unimodular multiple of its
/// conjugate.
std::optional<double> line_check(std::span<const cplx> values);

/// Coefficients conjugated; class flags recomputed (both classes are
/// conjugation-invariant).
CoefficientSequence conjugate_partner(const CoefficientSequence& c);

/// Deterministic random finite sequence on [-radius, radius], redrawn until
/// it leaves every line through the origin.
CoefficientSequence sample_cone(int support_radius, std::uint64_t seed);

}  // namespace phaseless
