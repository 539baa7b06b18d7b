#pragma once
#include <string>
#include <utility>
#include <vector>

namespace phaseless {

/// Outcome of one quantitative check: named residuals against a single
/// threshold. passed == (max residual <= threshold) by construction.
struct VerificationReport {
    std::string claim_id;
    std::vector<std::pair<std::string, double>> residuals;
    double threshold = 0.0;
    bool passed = false;
    std::size_t sample_points = 0;
    std::string notes;

    double max_residual() const {
        double m = 0.0;
        for (const auto& [name, r] : residuals) m = std::max(m, r);
        return m;
    }

    void add(std::string name, double value) { residuals.emplace_back(std::move(name), value); }

    /// Recomputes passed from the residual list.
    void finalize() { passed = max_residual() <= threshold; }
};

}  // namespace phaseless
