#pragma once
#include <cmath>
#include <span>
#include <vector>

namespace phaseless {

// Orthonormal Hermite functions h_n adapted to the 2*pi-frequency Fourier
// transform (F h_n = (-i)^n h_n). Three-term recurrence:
//   h_0(t) = 2^{1/4} exp(-pi t^2)
//   h_{n+1}(t) = 2 sqrt(pi/(n+1)) t h_n(t) - sqrt(n/(n+1)) h_{n-1}(t)
// Constants validated symbolically against the Rodrigues form for n <= 5.

inline double hermite_h0(double t) {
    return 1.1892071150027210667175 * std::exp(-M_PI * t * t);  // 2^{1/4}
}

/// h_n(t) for a single point.
inline double hermite_point(unsigned n, double t) {
    double hm = hermite_h0(t);
    if (n == 0) return hm;
    double hc = 2.0 * std::sqrt(M_PI) * t * hm;
    for (unsigned k = 1; k < n; ++k) {
        const double hn =
            2.0 * std::sqrt(M_PI / (k + 1)) * t * hc - std::sqrt(double(k) / (k + 1)) * hm;
        hm = hc;
        hc = hn;
    }
    return hc;
}

/// sum_n coeffs[n] * h_n(t); one recurrence pass.
inline double hermite_sum_point(std::span<const double> coeffs, double t) {
    if (coeffs.empty()) return 0.0;
    double hm = hermite_h0(t);
    double acc = coeffs[0] * hm;
    if (coeffs.size() == 1) return acc;
    double hc = 2.0 * std::sqrt(M_PI) * t * hm;
    acc += coeffs[1] * hc;
    for (std::size_t k = 1; k + 1 < coeffs.size(); ++k) {
        const double hn =
            2.0 * std::sqrt(M_PI / (k + 1)) * t * hc - std::sqrt(double(k) / (k + 1)) * hm;
        hm = hc;
        hc = hn;
        acc += coeffs[k + 1] * hn;
    }
    return acc;
}

/// Rows h_0..h_N evaluated on the given points, row-major (N+1) x len.
inline std::vector<double> hermite_rows(unsigned max_order, std::span<const double> pts) {
    const std::size_t len = pts.size();
    std::vector<double> rows((max_order + 1) * len);
    for (std::size_t j = 0; j < len; ++j) rows[j] = hermite_h0(pts[j]);
    if (max_order >= 1) {
        const double c = 2.0 * std::sqrt(M_PI);
        for (std::size_t j = 0; j < len; ++j) rows[len + j] = c * pts[j] * rows[j];
    }
    for (unsigned k = 1; k < max_order; ++k) {
        const double a = 2.0 * std::sqrt(M_PI / (k + 1));
        const double b = std::sqrt(double(k) / (k + 1));
        const double* hm = rows.data() + (k - 1) * len;
        const double* hc = rows.data() + k * len;
        double* hn = rows.data() + (k + 1) * len;
        for (std::size_t j = 0; j < len; ++j) hn[j] = a * pts[j] * hc[j] - b * hm[j];
    }
    return rows;
}

}  // namespace phaseless
