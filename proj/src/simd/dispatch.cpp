#include "relshock/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "relshock/errors.hpp"

namespace relshock::simd {

bool cpu_has_avx2() {
#if defined(RELSHOCK_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

#if defined(RELSHOCK_HAVE_AVX2_TU)
const Kernels& avx2_kernels();
#endif

const Kernels* avx2_kernels_if_available() {
#if defined(RELSHOCK_HAVE_AVX2_TU)
    if (cpu_has_avx2()) return &avx2_kernels();
#endif
    return nullptr;
}

namespace {

std::atomic<const Kernels*> g_active{nullptr};

const Kernels* resolve(const char* request) {
    if (std::strcmp(request, "scalar") == 0) return &scalar_kernels();
    if (std::strcmp(request, "avx2") == 0) {
        const Kernels* k = avx2_kernels_if_available();
        if (!k) fail(ErrorKind::config, "AVX2 kernels unavailable on this build/CPU");
        return k;
    }
    if (std::strcmp(request, "auto") == 0) {
        if (const Kernels* k = avx2_kernels_if_available()) return k;
        return &scalar_kernels();
    }
    fail(ErrorKind::config, std::string("unknown SIMD selection: ") + request);
}

} // namespace

const Kernels& active() {
    const Kernels* k = g_active.load(std::memory_order_acquire);
    if (!k) {
        const char* env = std::getenv("RELSHOCK_SIMD");
        k = resolve(env && *env ? env : "auto");
        g_active.store(k, std::memory_order_release);
    }
    return *k;
}

void force(const char* name) {
    g_active.store(resolve(name), std::memory_order_release);
}

} // namespace relshock::simd
