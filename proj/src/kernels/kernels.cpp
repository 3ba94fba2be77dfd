#include <cstdlib>

#include "cenet/common.hpp"
#include "cenet/kernels.hpp"

namespace cenet::kernels {
namespace {

const Backend* g_active = nullptr;

const Backend* resolve(const std::string& name) {
    if (name == "scalar") return &scalar_backend();
    if (name == "avx2") {
        if (!avx2_supported()) throw ConfigError("CENET_KERNELS=avx2 but AVX2 is not supported here");
        return &avx2_backend();
    }
    if (name == "auto" || name.empty()) return avx2_supported() ? &avx2_backend() : &scalar_backend();
    throw ConfigError("unknown kernel backend '" + name + "' (expected auto|scalar|avx2)");
}

}  // namespace

bool avx2_supported() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

const Backend& active() {
    if (!g_active) {
        const char* env = std::getenv("CENET_KERNELS");
        g_active = resolve(env ? env : "auto");
    }
    return *g_active;
}

void set_active(const std::string& name) { g_active = resolve(name); }

}  // namespace cenet::kernels
