#include <atomic>
#include <cstdlib>
#include <cstring>
#include <string>

#include "nptlab/kernels.hpp"

namespace nptlab::kern {

namespace {

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Ops* select(const char* name) {
    if (std::strcmp(name, "scalar") == 0) return &scalar_ops();
    if (std::strcmp(name, "avx2") == 0) {
        const Ops* v = avx2_ops();
        if (!v || !cpu_has_avx2_fma())
            throw PreconditionError("kern: avx2 kernels unavailable on this build/CPU");
        return v;
    }
    if (std::strcmp(name, "auto") == 0) {
        const Ops* v = avx2_ops();
        if (v && cpu_has_avx2_fma()) return v;
        return &scalar_ops();
    }
    throw PreconditionError(std::string("kern: unknown kernel table '") + name + "'");
}

std::atomic<const Ops*> g_active{nullptr};

const Ops* init_from_env() {
    const char* env = std::getenv("NPTLAB_SIMD");
    return select(env && *env ? env : "auto");
}

}  // namespace

const Ops& active() {
    const Ops* p = g_active.load(std::memory_order_acquire);
    if (!p) {
        p = init_from_env();
        g_active.store(p, std::memory_order_release);
    }
    return *p;
}

void force(const char* name) {
    g_active.store(select(name), std::memory_order_release);
}

}  // namespace nptlab::kern
