#pragma once
#include <cstdint>
#include <vector>

#include "phaseless/counterexamples.hpp"

namespace phaseless {

/// Fold of |F h_s|^2 over integer shifts, h_s the unit-step dilation of h.
/// Estimates are grid extrema on a [0,1) sample of the given resolution;
/// flags compare against the recorded thresholds. Input is normalized to
/// unit L2 norm first so the thresholds are scale-free.
struct PeriodizationDiagnostic {
    double sup_estimate = 0.0;
    double inf_estimate = 0.0;
    int grid_resolution = 0;
    bool bessel_ok = false;
    bool independence_ok = false;
    double w0_estimate = 0.0;  // heuristic amalgam-norm proxy
    double sup_bound = 0.0;
    double independence_delta = 0.0;
};

/// Normalized residuals | |V_g f1| - |V_g f2| | at the given points. The
/// normalizer is the larger of the point-set peak and reference_peak (pass
/// the rectangle peak when one is known).
VerificationReport verify_equal_on_points(const Signal& f1, const Signal& f2, const Window& g,
                                          const std::vector<TFPoint>& points,
                                          const ToleranceProfile& tol,
                                          double reference_peak = 0.0);

struct PhaseDistance {
    double distance = 0.0;  // min over |nu|=1 of ||f1 - nu f2||
    cplx best_nu{1.0, 0.0};
};

/// Closed form sqrt(||f1||^2 + ||f2||^2 - 2|<f1,f2>|); best_nu aligns f2
/// with f1 (arbitrary unimodular pick when the inner product vanishes).
PhaseDistance phase_distance(const Signal& f1, const Signal& f2);

/// verify_pair internals, exposed for reporting and tests.
struct PairVerification {
    VerificationReport equality;   // on-line normalized residuals
    double control_ratio = 0.0;    // off-line control peak / normalizer
    double phase_distance_rel = 0.0;
    bool controls_ok = false;
    bool nonequivalent = false;
    bool passed = false;
};

/// Equality on the pair's line family + non-equivalence + a nontriviality
/// guard at half-spacing control points.
PairVerification verify_pair_detailed(const CounterexamplePair& pair,
                                      const std::vector<double>& x_samples, long long n_min,
                                      long long n_max, const ToleranceProfile& tol,
                                      double noneq_threshold = 1e-3,
                                      double control_floor = 1e-3);

VerificationReport verify_pair(const CounterexamplePair& pair,
                               const std::vector<double>& x_samples, long long n_min,
                               long long n_max, const ToleranceProfile& tol,
                               double noneq_threshold = 1e-3, double control_floor = 1e-3);

/// Seeded sweep over the operator relations, the fractional-transform
/// properties, and the rotation identity. Residual entries are margins
/// (residual / family threshold), so the report threshold is 1.
VerificationReport operator_identity_suite(std::uint64_t seed, const ToleranceProfile& tol);

PeriodizationDiagnostic periodization_diagnostic(const Signal& h, double step, int resolution,
                                                 double sup_bound = 100.0,
                                                 double independence_delta = 0.01);

}  // namespace phaseless
