#pragma once
#include <vector>

#include "phaseless/core.hpp"
#include "phaseless/report.hpp"

namespace phaseless {

/// A point (x, omega) of the time-frequency plane.
struct TFPoint {
    double x = 0.0;
    double omega = 0.0;
};

/// Spectrogram moduli |V_g f| at a batch of points.
struct SpectrogramSamples {
    std::vector<TFPoint> points;
    std::vector<double> values;
    std::string window_label;
    std::string signal_label;
};

enum class InterpMode { Linear, Sinc };

/// T_tau f(t) = f(t - tau). Exact index shift with zero fill when tau is a
/// grid multiple; otherwise interpolation per mode.
Signal translate(const Signal& f, double tau, InterpMode mode = InterpMode::Linear);

/// M_nu f(t) = exp(2 pi i nu t) f(t).
Signal modulate(const Signal& f, double nu);

/// R f(t) = f(-t); requires a grid symmetric about 0.
Signal reflect(const Signal& f);

Signal conjugate(const Signal& f);

/// F f(omega) = \int f(t) exp(-2 pi i omega t) dt, evaluated by quadrature at
/// every point of freq_grid.
Signal fourier(const Signal& f, const Grid& freq_grid,
               QuadratureOrder q = QuadratureOrder::Trapezoid);

/// Same transform on the canonical dual grid via an FFT; matches the
/// quadrature path to 1e-10 relative.
Signal fourier_fast(const Signal& f, QuadratureOrder q = QuadratureOrder::Trapezoid);

/// F^{-1} u(t) = F u(-t).
Signal inverse_fourier(const Signal& u, const Grid& time_grid,
                       QuadratureOrder q = QuadratureOrder::Trapezoid);

/// V_g f(x, omega) by direct oscillatory quadrature; sampled-window form.
cplx stft(const Signal& f, const Signal& g, TFPoint p,
          QuadratureOrder q = QuadratureOrder::Trapezoid, InterpMode mode = InterpMode::Linear);

/// Window-handle form: analytic windows shift exactly at any x.
cplx stft(const Signal& f, const Window& g, TFPoint p,
          QuadratureOrder q = QuadratureOrder::Trapezoid);

/// Complex STFT values for a batch of points. Points sharing an x reuse one
/// shifted window; evaluation parallelizes over points.
std::vector<cplx> stft_values(const Signal& f, const Window& g, const std::vector<TFPoint>& points,
                              QuadratureOrder q = QuadratureOrder::Trapezoid);

/// |V_g f| at each point.
SpectrogramSamples stft_batch(const Signal& f, const Window& g, std::vector<TFPoint> points,
                              QuadratureOrder q = QuadratureOrder::Trapezoid);

/// Residuals for the translation/modulation/reflection/Fourier relations and
/// the STFT covariance identity, evaluated on concrete signals. tau must be a
/// grid multiple.
VerificationReport check_lemma21(const Signal& f, const Signal& g, double tau, double nu,
                                 TFPoint p, const ToleranceProfile& tol);

}  // namespace phaseless
