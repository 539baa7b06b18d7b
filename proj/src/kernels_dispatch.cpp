#include <cstdlib>
#include <cstring>

#include "phaseless/kernels.hpp"

namespace phaseless::kernels {

#if defined(__x86_64__) || defined(_M_X64)
const Ops* avx2_ops_detail();  // defined in kernels_avx2.cpp
#endif

const Ops* avx2_ops_or_null() {
#if defined(__x86_64__) || defined(_M_X64)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return avx2_ops_detail();
#endif
    return nullptr;
}

namespace {

const Ops* pick() {
    const char* env = std::getenv("PHASELESS_SIMD");
    if (env && std::strcmp(env, "scalar") == 0) return &scalar_ops();
    const Ops* vec = avx2_ops_or_null();
    if (env && std::strcmp(env, "avx2") == 0 && !vec)
        throw Error("PHASELESS_SIMD=avx2 requested but AVX2/FMA not available");
    return vec ? vec : &scalar_ops();
}

}  // namespace

const Ops& ops() {
    static const Ops* active = pick();
    return *active;
}

}  // namespace phaseless::kernels
