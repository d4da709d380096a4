#include "corridor/simd/dispatch.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <string>

#include "corridor/core/error.hpp"
#include "kernels_internal.hpp"

namespace corridor::simd {

const char* level_name(Level level) {
    switch (level) {
        case Level::scalar: return "scalar";
        case Level::avx2: return "avx2";
    }
    return "unknown";
}

namespace {

bool avx2_available() {
#if defined(CORRIDOR_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Level initial_level() {
    Level best = avx2_available() ? Level::avx2 : Level::scalar;
    if (const char* env = std::getenv("CORRIDOR_SIMD")) {
        if (std::strcmp(env, "scalar") == 0) return Level::scalar;
        if (std::strcmp(env, "avx2") == 0 && best == Level::avx2) return Level::avx2;
    }
    return best;
}

std::atomic<Level> g_active{initial_level()};

}  // namespace

Level detect() { return avx2_available() ? Level::avx2 : Level::scalar; }

Level active() { return g_active.load(std::memory_order_relaxed); }

void set_active(Level level) {
    if (level == Level::avx2 && !avx2_available())
        raise(ErrorCategory::config, "avx2 kernels are not available on this cpu/build");
    g_active.store(level, std::memory_order_relaxed);
}

const KernelTable& kernels(Level level) {
#ifdef CORRIDOR_HAVE_AVX2
    if (level == Level::avx2) return kAvx2Table;
#endif
    if (level == Level::avx2)
        raise(ErrorCategory::config, "avx2 kernels were not compiled in");
    return kScalarTable;
}

}  // namespace corridor::simd
