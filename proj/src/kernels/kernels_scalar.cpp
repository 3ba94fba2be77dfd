#include <cstddef>

#include "cenet/kernels.hpp"

// Reference kernels. Plain loops, but with the accumulation order pinned
// down exactly as documented in kernels.hpp so SIMD backends can match them
// bit for bit: per-output sums run over (ci, ky, kx); reductions over output
// positions use four interleaved lanes folded ((l0+l1)+l2)+l3.

namespace cenet::kernels {
namespace {

void conv_forward_scalar(const double* in, const double* w, const double* b, double* out,
                         const ConvShape& s) {
    const int pad = s.pad();
    const std::size_t in_plane = static_cast<std::size_t>(s.hi) * s.wi;
    const std::size_t out_plane = static_cast<std::size_t>(s.ho) * s.wo;
    const std::size_t w_per_co = static_cast<std::size_t>(s.ci) * s.k * s.k;
    for (int co = 0; co < s.co; ++co) {
        const double* wc = w + co * w_per_co;
        double* op = out + co * out_plane;
        for (int yo = 0; yo < s.ho; ++yo) {
            for (int xo = 0; xo < s.wo; ++xo) {
                double acc = b ? b[co] : 0.0;
                for (int ci = 0; ci < s.ci; ++ci) {
                    const double* ip = in + ci * in_plane;
                    const double* wk = wc + static_cast<std::size_t>(ci) * s.k * s.k;
                    for (int ky = 0; ky < s.k; ++ky) {
                        const int yi = yo * s.stride - pad + ky;
                        if (yi < 0 || yi >= s.hi) continue;
                        for (int kx = 0; kx < s.k; ++kx) {
                            const int xi = xo * s.stride - pad + kx;
                            if (xi < 0 || xi >= s.wi) continue;
                            acc += ip[static_cast<std::size_t>(yi) * s.wi + xi] * wk[ky * s.k + kx];
                        }
                    }
                }
                op[static_cast<std::size_t>(yo) * s.wo + xo] = acc;
            }
        }
    }
}

void conv_grad_input_scalar(const double* dout, const double* w, double* din, const ConvShape& s) {
    const int pad = s.pad();
    const std::size_t in_plane = static_cast<std::size_t>(s.hi) * s.wi;
    const std::size_t out_plane = static_cast<std::size_t>(s.ho) * s.wo;
    const std::size_t w_per_co = static_cast<std::size_t>(s.ci) * s.k * s.k;
    for (int ci = 0; ci < s.ci; ++ci) {
        double* dp = din + ci * in_plane;
        for (int yi = 0; yi < s.hi; ++yi) {
            for (int xi = 0; xi < s.wi; ++xi) {
                double acc = 0.0;
                for (int co = 0; co < s.co; ++co) {
                    const double* op = dout + co * out_plane;
                    const double* wk = w + co * w_per_co + static_cast<std::size_t>(ci) * s.k * s.k;
                    for (int ky = 0; ky < s.k; ++ky) {
                        const int ynum = yi + pad - ky;
                        if (ynum % s.stride != 0) continue;
                        const int yo = ynum / s.stride;
                        if (yo < 0 || yo >= s.ho) continue;
                        for (int kx = 0; kx < s.k; ++kx) {
                            const int xnum = xi + pad - kx;
                            if (xnum % s.stride != 0) continue;
                            const int xo = xnum / s.stride;
                            if (xo < 0 || xo >= s.wo) continue;
                            acc += op[static_cast<std::size_t>(yo) * s.wo + xo] * wk[ky * s.k + kx];
                        }
                    }
                }
                dp[static_cast<std::size_t>(yi) * s.wi + xi] = acc;
            }
        }
    }
}

void conv_grad_weights_scalar(const double* in, const double* dout, double* dw, double* db,
                              const ConvShape& s) {
    const int pad = s.pad();
    const std::size_t in_plane = static_cast<std::size_t>(s.hi) * s.wi;
    const std::size_t out_plane = static_cast<std::size_t>(s.ho) * s.wo;
    const std::size_t w_per_co = static_cast<std::size_t>(s.ci) * s.k * s.k;
    for (int co = 0; co < s.co; ++co) {
        const double* op = dout + co * out_plane;
        for (int ci = 0; ci < s.ci; ++ci) {
            const double* ip = in + ci * in_plane;
            for (int ky = 0; ky < s.k; ++ky) {
                for (int kx = 0; kx < s.k; ++kx) {
                    double lanes[4] = {0.0, 0.0, 0.0, 0.0};
                    for (int yo = 0; yo < s.ho; ++yo) {
                        const int yi = yo * s.stride - pad + ky;
                        if (yi < 0 || yi >= s.hi) continue;
                        // Valid xo range for this kx: xi = xo*stride - pad + kx in [0, wi).
                        int xo_lo = 0, xo_hi = s.wo - 1;
                        while (xo_lo <= xo_hi && xo_lo * s.stride - pad + kx < 0) ++xo_lo;
                        while (xo_hi >= xo_lo && xo_hi * s.stride - pad + kx >= s.wi) --xo_hi;
                        const double* orow = op + static_cast<std::size_t>(yo) * s.wo;
                        const double* irow = ip + static_cast<std::size_t>(yi) * s.wi - pad + kx;
                        for (int xo = xo_lo; xo <= xo_hi; ++xo)
                            lanes[(xo - xo_lo) & 3] += orow[xo] * irow[static_cast<std::size_t>(xo) * s.stride];
                    }
                    dw[co * w_per_co + static_cast<std::size_t>(ci) * s.k * s.k + ky * s.k + kx] =
                        ((lanes[0] + lanes[1]) + lanes[2]) + lanes[3];
                }
            }
        }
        if (db) {
            double lanes[4] = {0.0, 0.0, 0.0, 0.0};
            for (int yo = 0; yo < s.ho; ++yo) {
                const double* orow = op + static_cast<std::size_t>(yo) * s.wo;
                for (int xo = 0; xo < s.wo; ++xo) lanes[xo & 3] += orow[xo];
            }
            db[co] = ((lanes[0] + lanes[1]) + lanes[2]) + lanes[3];
        }
    }
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double l2sq_scalar(const double* a, const double* b, std::size_t n) {
    double lanes[4] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        lanes[i & 3] += d * d;
    }
    return ((lanes[0] + lanes[1]) + lanes[2]) + lanes[3];
}

void sgd_momentum_scalar(double* theta, double* vel, const double* grad, double mu, double lr,
                         std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        vel[i] = mu * vel[i] - lr * grad[i];
        theta[i] += vel[i];
    }
}

}  // namespace

const Backend& scalar_backend() {
    static const Backend backend = {
        "scalar",          conv_forward_scalar, conv_grad_input_scalar, conv_grad_weights_scalar,
        axpy_scalar,       l2sq_scalar,         sgd_momentum_scalar,
    };
    return backend;
}

}  // namespace cenet::kernels
