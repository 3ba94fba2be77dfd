#include "cenet/kernels.hpp"

// AVX2 variants. Compiled with -mavx2 for this translation unit only; the
// dispatcher guarantees they are never called on CPUs without AVX2.
//
// Bit-exactness contract with the scalar reference: vectorization runs across
// independent outputs (4 doubles per register) so every output element sees
// the identical sequence of mul/add operations, and reductions keep the
// scalar reference's 4-lane layout. No FMA, and the build disables FP
// contraction, so scalar and vector paths round identically.

#if defined(__AVX2__)

#include <immintrin.h>

namespace cenet::kernels {
namespace {

void conv_forward_avx2(const double* in, const double* w, const double* b, double* out,
                       const ConvShape& s) {
    if (s.stride != 1) {
        scalar_backend().conv_forward(in, w, b, out, s);
        return;
    }
    const int pad = s.pad();
    const std::size_t in_plane = static_cast<std::size_t>(s.hi) * s.wi;
    const std::size_t out_plane = static_cast<std::size_t>(s.ho) * s.wo;
    const std::size_t w_per_co = static_cast<std::size_t>(s.ci) * s.k * s.k;
    // Columns where every kx tap is in range.
    const int x_lo = pad;
    const int x_hi = s.wi - s.k + pad;  // inclusive

    for (int co = 0; co < s.co; ++co) {
        const double* wc = w + co * w_per_co;
        double* op = out + co * out_plane;
        const double bias = b ? b[co] : 0.0;
        for (int yo = 0; yo < s.ho; ++yo) {
            auto scalar_out = [&](int xo) {
                double acc = bias;
                for (int ci = 0; ci < s.ci; ++ci) {
                    const double* ip = in + ci * in_plane;
                    const double* wk = wc + static_cast<std::size_t>(ci) * s.k * s.k;
                    for (int ky = 0; ky < s.k; ++ky) {
                        const int yi = yo - pad + ky;
                        if (yi < 0 || yi >= s.hi) continue;
                        for (int kx = 0; kx < s.k; ++kx) {
                            const int xi = xo - pad + kx;
                            if (xi < 0 || xi >= s.wi) continue;
                            acc += ip[static_cast<std::size_t>(yi) * s.wi + xi] * wk[ky * s.k + kx];
                        }
                    }
                }
                op[static_cast<std::size_t>(yo) * s.wo + xo] = acc;
            };

            int xo = 0;
            for (; xo < x_lo && xo < s.wo; ++xo) scalar_out(xo);
            for (; xo + 3 <= x_hi && xo + 3 < s.wo; xo += 4) {
                __m256d acc = _mm256_set1_pd(bias);
                for (int ci = 0; ci < s.ci; ++ci) {
                    const double* ip = in + ci * in_plane;
                    const double* wk = wc + static_cast<std::size_t>(ci) * s.k * s.k;
                    for (int ky = 0; ky < s.k; ++ky) {
                        const int yi = yo - pad + ky;
                        if (yi < 0 || yi >= s.hi) continue;
                        const double* irow = ip + static_cast<std::size_t>(yi) * s.wi + xo - pad;
                        for (int kx = 0; kx < s.k; ++kx) {
                            const __m256d iv = _mm256_loadu_pd(irow + kx);
                            const __m256d wv = _mm256_set1_pd(wk[ky * s.k + kx]);
                            acc = _mm256_add_pd(acc, _mm256_mul_pd(iv, wv));
                        }
                    }
                }
                _mm256_storeu_pd(op + static_cast<std::size_t>(yo) * s.wo + xo, acc);
            }
            for (; xo < s.wo; ++xo) scalar_out(xo);
        }
    }
}

void conv_grad_input_avx2(const double* dout, const double* w, double* din, const ConvShape& s) {
    if (s.stride != 1) {
        scalar_backend().conv_grad_input(dout, w, din, s);
        return;
    }
    const int pad = s.pad();
    const std::size_t in_plane = static_cast<std::size_t>(s.hi) * s.wi;
    const std::size_t out_plane = static_cast<std::size_t>(s.ho) * s.wo;
    const std::size_t w_per_co = static_cast<std::size_t>(s.ci) * s.k * s.k;
    // Columns where xo = xi + pad - kx stays in range for every kx.
    const int x_lo = s.k - 1 - pad;
    const int x_hi = s.wo - 1 - pad;  // inclusive

    for (int ci = 0; ci < s.ci; ++ci) {
        double* dp = din + ci * in_plane;
        for (int yi = 0; yi < s.hi; ++yi) {
            auto scalar_din = [&](int xi) {
                double acc = 0.0;
                for (int co = 0; co < s.co; ++co) {
                    const double* op = dout + co * out_plane;
                    const double* wk = w + co * w_per_co + static_cast<std::size_t>(ci) * s.k * s.k;
                    for (int ky = 0; ky < s.k; ++ky) {
                        const int yo = yi + pad - ky;
                        if (yo < 0 || yo >= s.ho) continue;
                        for (int kx = 0; kx < s.k; ++kx) {
                            const int xo = xi + pad - kx;
                            if (xo < 0 || xo >= s.wo) continue;
                            acc += op[static_cast<std::size_t>(yo) * s.wo + xo] * wk[ky * s.k + kx];
                        }
                    }
                }
                dp[static_cast<std::size_t>(yi) * s.wi + xi] = acc;
            };

            int xi = 0;
            for (; xi < x_lo && xi < s.wi; ++xi) scalar_din(xi);
            for (; xi + 3 <= x_hi && xi + 3 < s.wi; xi += 4) {
                __m256d acc = _mm256_setzero_pd();
                for (int co = 0; co < s.co; ++co) {
                    const double* op = dout + co * out_plane;
                    const double* wk = w + co * w_per_co + static_cast<std::size_t>(ci) * s.k * s.k;
                    for (int ky = 0; ky < s.k; ++ky) {
                        const int yo = yi + pad - ky;
                        if (yo < 0 || yo >= s.ho) continue;
                        const double* orow = op + static_cast<std::size_t>(yo) * s.wo + xi + pad;
                        for (int kx = 0; kx < s.k; ++kx) {
                            const __m256d ov = _mm256_loadu_pd(orow - kx);
                            const __m256d wv = _mm256_set1_pd(wk[ky * s.k + kx]);
                            acc = _mm256_add_pd(acc, _mm256_mul_pd(ov, wv));
                        }
                    }
                }
                _mm256_storeu_pd(dp + static_cast<std::size_t>(yi) * s.wi + xi, acc);
            }
            for (; xi < s.wi; ++xi) scalar_din(xi);
        }
    }
}

inline double reduce_lanes(__m256d v) {
    double l[4];
    _mm256_storeu_pd(l, v);
    return ((l[0] + l[1]) + l[2]) + l[3];
}

void conv_grad_weights_avx2(const double* in, const double* dout, double* dw, double* db,
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
                    __m256d acc = _mm256_setzero_pd();
                    for (int yo = 0; yo < s.ho; ++yo) {
                        const int yi = yo * s.stride - pad + ky;
                        if (yi < 0 || yi >= s.hi) continue;
                        int xo_lo = 0, xo_hi = s.wo - 1;
                        while (xo_lo <= xo_hi && xo_lo * s.stride - pad + kx < 0) ++xo_lo;
                        while (xo_hi >= xo_lo && xo_hi * s.stride - pad + kx >= s.wi) --xo_hi;
                        const double* orow = op + static_cast<std::size_t>(yo) * s.wo;
                        const double* irow = ip + static_cast<std::size_t>(yi) * s.wi - pad + kx;
                        const int len = xo_hi - xo_lo + 1;
                        const int nfull = len > 0 ? len & ~3 : 0;
                        int i = 0;
                        if (s.stride == 1) {
                            for (; i < nfull; i += 4) {
                                const int xo = xo_lo + i;
                                const __m256d ov = _mm256_loadu_pd(orow + xo);
                                const __m256d iv = _mm256_loadu_pd(irow + xo);
                                acc = _mm256_add_pd(acc, _mm256_mul_pd(ov, iv));
                            }
                        } else {
                            for (; i < nfull; i += 4) {
                                const int xo = xo_lo + i;
                                const __m256d ov = _mm256_loadu_pd(orow + xo);
                                const __m256d iv = _mm256_set_pd(
                                    irow[static_cast<std::size_t>(xo + 3) * s.stride],
                                    irow[static_cast<std::size_t>(xo + 2) * s.stride],
                                    irow[static_cast<std::size_t>(xo + 1) * s.stride],
                                    irow[static_cast<std::size_t>(xo) * s.stride]);
                                acc = _mm256_add_pd(acc, _mm256_mul_pd(ov, iv));
                            }
                        }
                        if (i < len) {
                            double to[4] = {0, 0, 0, 0}, ti[4] = {0, 0, 0, 0};
                            for (int t = 0; i + t < len; ++t) {
                                const int xo = xo_lo + i + t;
                                to[t] = orow[xo];
                                ti[t] = irow[static_cast<std::size_t>(xo) * s.stride];
                            }
                            acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(to), _mm256_loadu_pd(ti)));
                        }
                    }
                    dw[co * w_per_co + static_cast<std::size_t>(ci) * s.k * s.k + ky * s.k + kx] =
                        reduce_lanes(acc);
                }
            }
        }
        if (db) {
            __m256d acc = _mm256_setzero_pd();
            for (int yo = 0; yo < s.ho; ++yo) {
                const double* orow = op + static_cast<std::size_t>(yo) * s.wo;
                const int nfull = s.wo & ~3;
                int xo = 0;
                for (; xo < nfull; xo += 4)
                    acc = _mm256_add_pd(acc, _mm256_loadu_pd(orow + xo));
                if (xo < s.wo) {
                    double t[4] = {0, 0, 0, 0};
                    for (int i = 0; xo + i < s.wo; ++i) t[i] = orow[xo + i];
                    acc = _mm256_add_pd(acc, _mm256_loadu_pd(t));
                }
            }
            db[co] = reduce_lanes(acc);
        }
    }
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d yv = _mm256_loadu_pd(y + i);
        const __m256d xv = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(y + i, _mm256_add_pd(yv, _mm256_mul_pd(av, xv)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

double l2sq_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    if (i < n) {
        double ta[4] = {0, 0, 0, 0}, tb[4] = {0, 0, 0, 0};
        for (std::size_t t = 0; i + t < n; ++t) {
            ta[t] = a[i + t];
            tb[t] = b[i + t];
        }
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(ta), _mm256_loadu_pd(tb));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    return reduce_lanes(acc);
}

void sgd_momentum_avx2(double* theta, double* vel, const double* grad, double mu, double lr,
                       std::size_t n) {
    const __m256d muv = _mm256_set1_pd(mu);
    const __m256d lrv = _mm256_set1_pd(lr);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_sub_pd(_mm256_mul_pd(muv, _mm256_loadu_pd(vel + i)),
                                        _mm256_mul_pd(lrv, _mm256_loadu_pd(grad + i)));
        _mm256_storeu_pd(vel + i, v);
        _mm256_storeu_pd(theta + i, _mm256_add_pd(_mm256_loadu_pd(theta + i), v));
    }
    for (; i < n; ++i) {
        vel[i] = mu * vel[i] - lr * grad[i];
        theta[i] += vel[i];
    }
}

}  // namespace

const Backend& avx2_backend() {
    static const Backend backend = {
        "avx2",    conv_forward_avx2, conv_grad_input_avx2, conv_grad_weights_avx2,
        axpy_avx2, l2sq_avx2,         sgd_momentum_avx2,
    };
    return backend;
}

}  // namespace cenet::kernels

#else  // !defined(__AVX2__)

namespace cenet::kernels {

const Backend& avx2_backend() { return scalar_backend(); }

}  // namespace cenet::kernels

#endif
