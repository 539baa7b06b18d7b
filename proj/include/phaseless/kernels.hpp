#pragma once
#include <cstddef>

#include "phaseless/grid.hpp"

namespace phaseless::kernels {

/// Data-parallel inner loops behind the numeric operations. Every reduction
/// uses compensated (Kahan) accumulation with a fixed, input-independent
/// summation schedule, so repeated calls are bit-identical. The scalar
/// implementation is the reference semantics; vector variants are
/// equivalence-tested against it.
struct Ops {
    /// sum_j a[j] * conj(b[j])
    cplx (*cdot_conj)(const cplx* a, const cplx* b, std::size_t n);
    /// sum_j a[j] * b[j] with real b
    cplx (*cdot_real)(const cplx* a, const double* b, std::size_t n);
    /// sum_j p[j] * exp(-2*pi*i*omega*(t0 + j*dt))
    cplx (*phasor_dot)(const cplx* p, std::size_t n, double t0, double dt, double omega);
    /// out[j] = a[j] * conj(b[j])
    void (*mul_conj)(const cplx* a, const cplx* b, cplx* out, std::size_t n);
    /// out[j] = a[j] * b[j] with real b
    void (*mul_real)(const cplx* a, const double* b, cplx* out, std::size_t n);
    /// y[j] += alpha * b[j] with real b
    void (*caxpy_real)(cplx alpha, const double* b, cplx* y, std::size_t n);
    const char* name;
};

/// Active implementation. Picked once at startup: AVX2+FMA when the CPU has
/// them, scalar otherwise. PHASELESS_SIMD=scalar|avx2|auto overrides.
const Ops& ops();

/// Scalar reference kernels, always available.
const Ops& scalar_ops();

/// AVX2 kernels, or nullptr when the CPU lacks AVX2/FMA.
const Ops* avx2_ops_or_null();

}  // namespace phaseless::kernels
