#include "siegel/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "siegel/errors.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define SIEGEL_HAVE_X86 1
#endif

namespace siegel {

void SiegelBatch2::push_back(const SiegelPoint& p) {
    if (p.dim() != 2) throw DimensionMismatch("SiegelBatch2: points must lie in H^2");
    zr.push_back(p.z().real());
    zi.push_back(p.z().imag());
    wr.push_back(p.w()[0].real());
    wi.push_back(p.w()[0].imag());
}

std::string to_string(KernelPath p) { return p == KernelPath::scalar ? "scalar" : "avx2"; }

bool avx2_available() {
#ifdef SIEGEL_HAVE_X86
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

KernelPath detected_kernel_path() { return avx2_available() ? KernelPath::avx2 : KernelPath::scalar; }

namespace {

void check_sizes(const SiegelBatch2& p) {
    const std::size_t n = p.size();
    if (p.zi.size() != n || p.wr.size() != n || p.wi.size() != n)
        throw DimensionMismatch("SiegelBatch2: ragged arrays");
}

// ---- scalar reference ----

void defect_scalar(const SiegelBatch2& p, std::size_t begin, double* out) {
    for (std::size_t i = begin; i < p.size(); ++i) out[i] = p.zr[i] - (p.wr[i] * p.wr[i] + p.wi[i] * p.wi[i]);
}

void dist_scalar(const SiegelBatch2& p, const SiegelBatch2& q, std::size_t begin, double* out) {
    for (std::size_t i = begin; i < p.size(); ++i) {
        const double np = p.wr[i] * p.wr[i] + p.wi[i] * p.wi[i];
        const double nq = q.wr[i] * q.wr[i] + q.wi[i] * q.wi[i];
        const double tp = p.zr[i] - np;
        const double tq = q.zr[i] - nq;
        // cross = w_p conj(w_q)
        const double cr = p.wr[i] * q.wr[i] + p.wi[i] * q.wi[i];
        const double ci = p.wi[i] * q.wr[i] - p.wr[i] * q.wi[i];
        const double dr = (p.zr[i] + q.zr[i]) - 2.0 * cr;
        const double di = (p.zi[i] - q.zi[i]) - 2.0 * ci;
        const double ur = p.wr[i] - q.wr[i];
        const double ui = p.wi[i] - q.wi[i];
        const double dw2 = ur * ur + ui * ui;
        const double dt = (p.zr[i] - q.zr[i]) - (np - nq);
        const double numer = dt * dt + 2.0 * (tp + tq) * dw2 + dw2 * dw2 + di * di;
        out[i] = std::min(std::sqrt(numer / (dr * dr + di * di)), 1.0);
    }
}

// ---- AVX2 (no FMA, so rounding matches the scalar loop) ----

#ifdef SIEGEL_HAVE_X86
__attribute__((target("avx2"))) std::size_t defect_avx2(const SiegelBatch2& p, double* out) {
    const std::size_t n = p.size() - p.size() % 4;
    for (std::size_t i = 0; i < n; i += 4) {
        const __m256d zr = _mm256_loadu_pd(&p.zr[i]);
        const __m256d wr = _mm256_loadu_pd(&p.wr[i]);
        const __m256d wi = _mm256_loadu_pd(&p.wi[i]);
        const __m256d nw = _mm256_add_pd(_mm256_mul_pd(wr, wr), _mm256_mul_pd(wi, wi));
        _mm256_storeu_pd(out + i, _mm256_sub_pd(zr, nw));
    }
    return n;
}

__attribute__((target("avx2"))) std::size_t dist_avx2(const SiegelBatch2& p, const SiegelBatch2& q, double* out) {
    const std::size_t n = p.size() - p.size() % 4;
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d one = _mm256_set1_pd(1.0);
    for (std::size_t i = 0; i < n; i += 4) {
        const __m256d pzr = _mm256_loadu_pd(&p.zr[i]), pzi = _mm256_loadu_pd(&p.zi[i]);
        const __m256d pwr = _mm256_loadu_pd(&p.wr[i]), pwi = _mm256_loadu_pd(&p.wi[i]);
        const __m256d qzr = _mm256_loadu_pd(&q.zr[i]), qzi = _mm256_loadu_pd(&q.zi[i]);
        const __m256d qwr = _mm256_loadu_pd(&q.wr[i]), qwi = _mm256_loadu_pd(&q.wi[i]);

        const __m256d np = _mm256_add_pd(_mm256_mul_pd(pwr, pwr), _mm256_mul_pd(pwi, pwi));
        const __m256d nq = _mm256_add_pd(_mm256_mul_pd(qwr, qwr), _mm256_mul_pd(qwi, qwi));
        const __m256d tp = _mm256_sub_pd(pzr, np);
        const __m256d tq = _mm256_sub_pd(qzr, nq);
        const __m256d cr = _mm256_add_pd(_mm256_mul_pd(pwr, qwr), _mm256_mul_pd(pwi, qwi));
        const __m256d ci = _mm256_sub_pd(_mm256_mul_pd(pwi, qwr), _mm256_mul_pd(pwr, qwi));
        const __m256d dr = _mm256_sub_pd(_mm256_add_pd(pzr, qzr), _mm256_mul_pd(two, cr));
        const __m256d di = _mm256_sub_pd(_mm256_sub_pd(pzi, qzi), _mm256_mul_pd(two, ci));
        const __m256d ur = _mm256_sub_pd(pwr, qwr);
        const __m256d ui = _mm256_sub_pd(pwi, qwi);
        const __m256d dw2 = _mm256_add_pd(_mm256_mul_pd(ur, ur), _mm256_mul_pd(ui, ui));
        const __m256d dt = _mm256_sub_pd(_mm256_sub_pd(pzr, qzr), _mm256_sub_pd(np, nq));

        __m256d numer = _mm256_mul_pd(dt, dt);
        numer = _mm256_add_pd(numer, _mm256_mul_pd(_mm256_mul_pd(two, _mm256_add_pd(tp, tq)), dw2));
        numer = _mm256_add_pd(numer, _mm256_mul_pd(dw2, dw2));
        numer = _mm256_add_pd(numer, _mm256_mul_pd(di, di));
        const __m256d denom = _mm256_add_pd(_mm256_mul_pd(dr, dr), _mm256_mul_pd(di, di));
        const __m256d d = _mm256_sqrt_pd(_mm256_div_pd(numer, denom));
        // min(d, 1) with d in the first operand position, as std::min(d, 1.0)
        _mm256_storeu_pd(out + i, _mm256_blendv_pd(d, one, _mm256_cmp_pd(one, d, _CMP_LT_OQ)));
    }
    return n;
}
#endif

} // namespace

void defect_batch(const SiegelBatch2& p, double* out, KernelPath path) {
    check_sizes(p);
    std::size_t done = 0;
#ifdef SIEGEL_HAVE_X86
    if (path == KernelPath::avx2) {
        if (!avx2_available()) throw InvalidParameter("defect_batch: AVX2 not available on this CPU");
        done = defect_avx2(p, out);
    }
#else
    if (path == KernelPath::avx2) throw InvalidParameter("defect_batch: AVX2 not available on this CPU");
#endif
    defect_scalar(p, done, out);
}

void defect_batch(const SiegelBatch2& p, double* out) { defect_batch(p, out, detected_kernel_path()); }

void dist_siegel_batch(const SiegelBatch2& p, const SiegelBatch2& q, double* out, KernelPath path) {
    check_sizes(p);
    check_sizes(q);
    if (p.size() != q.size()) throw DimensionMismatch("dist_siegel_batch: batch sizes differ");
    std::size_t done = 0;
#ifdef SIEGEL_HAVE_X86
    if (path == KernelPath::avx2) {
        if (!avx2_available()) throw InvalidParameter("dist_siegel_batch: AVX2 not available on this CPU");
        done = dist_avx2(p, q, out);
    }
#else
    if (path == KernelPath::avx2) throw InvalidParameter("dist_siegel_batch: AVX2 not available on this CPU");
#endif
    dist_scalar(p, q, done, out);
}

void dist_siegel_batch(const SiegelBatch2& p, const SiegelBatch2& q, double* out) {
    dist_siegel_batch(p, q, out, detected_kernel_path());
}

} // namespace siegel
