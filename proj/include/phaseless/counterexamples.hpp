#pragma once
#include <array>
#include <string>

#include "phaseless/hermite.hpp"
#include "phaseless/lattice.hpp"
#include "phaseless/sequences.hpp"

namespace phaseless {

/// Everything fixing one shift-invariant-space construction: the window g,
/// step s, fractional order theta, and the time-frequency shift z = (a, b)
/// applied to the finished pair.
struct SIConfig {
    Window window;
    double step = 1.0;
    FrftOrder theta{};
    std::array<double, 2> shift{0.0, 0.0};
    double truncation_budget = kDefaultTruncationBudget;

    SIConfig(Window w, double s, FrftOrder th, std::array<double, 2> z = {0.0, 0.0},
             double budget = kDefaultTruncationBudget)
        : window(std::move(w)), step(s), theta(th), shift(z), truncation_budget(budget) {
        if (!(step > 0.0)) throw Error("si config: step must be positive");
    }
};

/// A pair with matching spectrogram moduli on line_family but differing by
/// more than a global phase whenever the defining sequence leaves every line.
struct CounterexamplePair {
    Signal f1;
    Signal f2;
    SIConfig config;
    CoefficientSequence coeffs;
    LineFamily line_family;
    std::string warning;  // set when the sequence sits on a line
};

/// sum_k c_k T^theta_{s k}(R g): reflected-window generator, shifts realized
/// exactly (index shifts on grid multiples, analytic evaluation otherwise),
/// fractional orders through one analysis/synthesis pass in the basis.
Signal synthesize(const SIConfig& config, const CoefficientSequence& c,
                  const HermiteBasis& basis);

/// The (f, f_x) pair: f2 uses the conjugated sequence; both are shifted by
/// M_b T_a. The line family spacing 1/s is refined to 1/(2s) for sequences
/// supported on odd k only, after a numerical spot check of the refinement.
CounterexamplePair build_pair(const SIConfig& config, const CoefficientSequence& c,
                              const HermiteBasis& basis);

/// Real-valued pair for a real window on the rectangular lattice
/// alpha Z x beta Z: order pi/2, step 1/|alpha|, Hermitian defining sequence
/// (default 1-i, 0, 1+i). Outputs are checked real to 1e-8 * sup|f|.
CounterexamplePair build_real_pair(const Window& g, double alpha, double beta,
                                   const HermiteBasis& basis,
                                   const CoefficientSequence* coeffs_override = nullptr);

/// Checks that F(sum_k c_k T_{step k} u) stays real when F u is real and the
/// sequence is Hermitian; deviations become report residuals, not errors.
VerificationReport realness_lemma_check(const Signal& u, const CoefficientSequence& c,
                                        double step, const ToleranceProfile& tol);

/// Closed-form Gaussian pair e^{-pi t^2}(cosh(pi t / beta) +- i sinh(pi t / beta))
/// together with its defining sequence c_{-+1} = (1 -+ i)/2 e^{pi/(4 beta^2)},
/// step 1/(2 beta); construction is cross-checked against the closed form to
/// 1e-8 relative before returning.
CounterexamplePair gaussian_oracle_pair(double beta, const Grid& grid);

}  // namespace phaseless
