#pragma once

#include <cstddef>
#include <string>

namespace cenet::kernels {

// Geometry of one conv2d call. Weights are laid out [co][ci][k][k],
// bias is [co]. Maps are row-major [c][h][w]. pad = k/2 (zero padding).
struct ConvShape {
    int ci = 0, hi = 0, wi = 0;
    int co = 0, ho = 0, wo = 0;
    int k = 3;
    int stride = 1;

    int pad() const { return k / 2; }
};

// All kernels promise a fixed floating-point accumulation order:
// per-output accumulations run in (ci, ky, kx) order, and reductions
// (grad_weights, l2sq) accumulate into four interleaved lanes that are
// folded left-to-right at the end. Vector backends reproduce the scalar
// results bit-exactly, which the equivalence tests assert.
struct Backend {
    const char* name;
    void (*conv_forward)(const double* in, const double* w, const double* b, double* out,
                         const ConvShape& s);
    void (*conv_grad_input)(const double* dout, const double* w, double* din, const ConvShape& s);
    void (*conv_grad_weights)(const double* in, const double* dout, double* dw, double* db,
                              const ConvShape& s);
    void (*axpy)(double a, const double* x, double* y, std::size_t n);
    double (*l2sq)(const double* a, const double* b, std::size_t n);
    void (*sgd_momentum)(double* theta, double* vel, const double* grad, double mu, double lr,
                         std::size_t n);
};

const Backend& scalar_backend();
const Backend& avx2_backend();  // falls back to scalar when AVX2 is unavailable
bool avx2_supported();

// Active backend: chosen once from CENET_KERNELS (auto|scalar|avx2),
// defaulting to auto (= best supported).
const Backend& active();
void set_active(const std::string& name);  // throws ConfigError on unknown name

}  // namespace cenet::kernels
