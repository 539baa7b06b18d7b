#include <cmath>

#include "phaseless/kernels.hpp"

namespace phaseless::kernels {
namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Kahan accumulator for one double.
struct Comp {
    double s = 0.0;
    double c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

cplx cdot_conj_scalar(const cplx* a, const cplx* b, std::size_t n) {
    Comp re, im;
    for (std::size_t j = 0; j < n; ++j) {
        const double ar = a[j].real(), ai = a[j].imag();
        const double br = b[j].real(), bi = b[j].imag();
        re.add(ar * br + ai * bi);
        im.add(ai * br - ar * bi);
    }
    return {re.s, im.s};
}

cplx cdot_real_scalar(const cplx* a, const double* b, std::size_t n) {
    Comp re, im;
    for (std::size_t j = 0; j < n; ++j) {
        re.add(a[j].real() * b[j]);
        im.add(a[j].imag() * b[j]);
    }
    return {re.s, im.s};
}

cplx phasor_dot_scalar(const cplx* p, std::size_t n, double t0, double dt, double omega) {
    Comp re, im;
    for (std::size_t j = 0; j < n; ++j) {
        const double phi = -kTwoPi * omega * (t0 + static_cast<double>(j) * dt);
        const double cr = std::cos(phi), ci = std::sin(phi);
        const double pr = p[j].real(), pi = p[j].imag();
        re.add(pr * cr - pi * ci);
        im.add(pi * cr + pr * ci);
    }
    return {re.s, im.s};
}

void mul_conj_scalar(const cplx* a, const cplx* b, cplx* out, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) {
        const double ar = a[j].real(), ai = a[j].imag();
        const double br = b[j].real(), bi = b[j].imag();
        out[j] = {ar * br + ai * bi, ai * br - ar * bi};
    }
}

void mul_real_scalar(const cplx* a, const double* b, cplx* out, std::size_t n) {
    for (std::size_t j = 0; j < n; ++j) out[j] = {a[j].real() * b[j], a[j].imag() * b[j]};
}

void caxpy_real_scalar(cplx alpha, const double* b, cplx* y, std::size_t n) {
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t j = 0; j < n; ++j)
        y[j] = {y[j].real() + ar * b[j], y[j].imag() + ai * b[j]};
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{cdot_conj_scalar, cdot_real_scalar, phasor_dot_scalar,
                         mul_conj_scalar,  mul_real_scalar,  caxpy_real_scalar,
                         "scalar"};
    return ops;
}

}  // namespace phaseless::kernels
