// Compiled with -mavx2 -mfma; only reached after the runtime CPU check.

#include <immintrin.h>

#include "kernels/kernels_impl.hpp"

namespace symrpr::kernels::detail::avx2 {

namespace {

inline __m256d vabs(__m256d x) { return _mm256_andnot_pd(_mm256_set1_pd(-0.0), x); }

}  // namespace

void curve_c(const CurveCoeffs& k, const double* t, double* d2, double* d3, std::size_t n) {
    const double b = k.b, h = k.h, d = k.d;
    const __m256d vb = _mm256_set1_pd(b);
    const __m256d vh = _mm256_set1_pd(h);
    const __m256d vd = _mm256_set1_pd(d);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d a2 = _mm256_set1_pd((2.0 * d - b) * h);
    const __m256d a1 = _mm256_set1_pd(2.0 * d * d - 2.0 * b * d - 2.0 * h * h);
    const __m256d a0 = _mm256_set1_pd((b - 2.0 * d) * h);
    const __m256d e1 = _mm256_set1_pd(2.0 * (d - b));
    const __m256d neg_h = _mm256_set1_pd(-h);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(t + i);
        const __m256d far = _mm256_cmp_pd(vabs(x), one, _CMP_GT_OQ);

        // |t| <= 1 branch
        __m256d w = _mm256_add_pd(one, _mm256_mul_pd(x, x));
        __m256d den = _mm256_mul_pd(_mm256_mul_pd(w, w), vh);
        __m256d lin = _mm256_add_pd(_mm256_mul_pd(vh, x), vd);
        __m256d num2 = _mm256_add_pd(_mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(a2, x), a1), x), a0);
        __m256d near2 = _mm256_div_pd(_mm256_mul_pd(vb, num2), den);
        __m256d q3 = _mm256_sub_pd(_mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(vh, x), e1), x), vh);
        __m256d near3 = _mm256_div_pd(_mm256_mul_pd(_mm256_mul_pd(lin, lin), q3), den);

        // |t| > 1 branch, in u = 1/t
        const __m256d u = _mm256_div_pd(one, x);
        w = _mm256_add_pd(one, _mm256_mul_pd(u, u));
        den = _mm256_mul_pd(_mm256_mul_pd(w, w), vh);
        lin = _mm256_add_pd(vh, _mm256_mul_pd(vd, u));
        num2 = _mm256_add_pd(_mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(a0, u), a1), u), a2);
        const __m256d far2 = _mm256_div_pd(_mm256_mul_pd(_mm256_mul_pd(vb, _mm256_mul_pd(u, u)), num2), den);
        q3 = _mm256_add_pd(_mm256_mul_pd(_mm256_add_pd(_mm256_mul_pd(neg_h, u), e1), u), vh);
        const __m256d far3 = _mm256_div_pd(_mm256_mul_pd(_mm256_mul_pd(lin, lin), q3), den);

        _mm256_storeu_pd(d2 + i, _mm256_blendv_pd(near2, far2, far));
        _mm256_storeu_pd(d3 + i, _mm256_blendv_pd(near3, far3, far));
    }
    if (i < n) scalar::curve_c(k, t + i, d2 + i, d3 + i, n - i);
}

void discriminant(const CurveCoeffs& k, const double* d2, const double* d3, double* disc, double* scale,
                  std::size_t n) {
    const double b = k.b, h = k.h, d = k.d;
    const __m256d vb = _mm256_set1_pd(b);
    const __m256d vh = _mm256_set1_pd(h);
    const __m256d vd = _mm256_set1_pd(d);
    const __m256d k2 = _mm256_set1_pd(b * h * h);
    const __m256d k1 = _mm256_set1_pd(2.0 * b * d * h - b * b * h);
    const __m256d k0 = _mm256_set1_pd(b * d * d - b * b * d);
    const __m256d c18 = _mm256_set1_pd(18.0);
    const __m256d c4 = _mm256_set1_pd(4.0);
    const __m256d c27 = _mm256_set1_pd(27.0);

    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x2 = _mm256_loadu_pd(d2 + i);
        const __m256d x3 = _mm256_loadu_pd(d3 + i);
        const __m256d bx3 = _mm256_mul_pd(vb, x3);
        const __m256d dx2 = _mm256_mul_pd(x2, vd);
        const __m256d c3 = _mm256_mul_pd(x2, vh);
        const __m256d c2 = _mm256_add_pd(_mm256_sub_pd(k2, bx3), dx2);
        const __m256d c1 = _mm256_add_pd(k1, c3);
        const __m256d c0 = _mm256_add_pd(_mm256_sub_pd(dx2, bx3), k0);

        const __m256d c2c2 = _mm256_mul_pd(c2, c2);
        const __m256d c1c1 = _mm256_mul_pd(c1, c1);
        __m256d acc = _mm256_mul_pd(_mm256_mul_pd(_mm256_mul_pd(c18, c3), c2), _mm256_mul_pd(c1, c0));
        acc = _mm256_sub_pd(acc, _mm256_mul_pd(_mm256_mul_pd(c4, c2c2), _mm256_mul_pd(c2, c0)));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(c2c2, c1c1));
        acc = _mm256_sub_pd(acc, _mm256_mul_pd(_mm256_mul_pd(c4, c3), _mm256_mul_pd(c1c1, c1)));
        acc = _mm256_sub_pd(acc, _mm256_mul_pd(_mm256_mul_pd(c27, _mm256_mul_pd(c3, c3)), _mm256_mul_pd(c0, c0)));
        _mm256_storeu_pd(disc + i, acc);

        const __m256d m = _mm256_max_pd(_mm256_max_pd(vabs(c3), vabs(c2)), _mm256_max_pd(vabs(c1), vabs(c0)));
        const __m256d m2 = _mm256_mul_pd(m, m);
        _mm256_storeu_pd(scale + i, _mm256_mul_pd(m2, m2));
    }
    if (i < n) scalar::discriminant(k, d2 + i, d3 + i, disc + i, scale + i, n - i);
}

void leg_lengths(const CurveCoeffs& k, const double* c, const double* s, const double* r, const double* g,
                 double* r1, double* r2, double* r3, std::size_t n) {
    const __m256d vb = _mm256_set1_pd(k.b);
    const __m256d vh = _mm256_set1_pd(k.h);
    const __m256d vd = _mm256_set1_pd(k.d);
    const __m256d four = _mm256_set1_pd(4.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d vc = _mm256_loadu_pd(c + i);
        const __m256d vs = _mm256_loadu_pd(s + i);
        const __m256d vr = _mm256_loadu_pd(r + i);
        const __m256d vg = _mm256_loadu_pd(g + i);
        const __m256d g2 = _mm256_mul_pd(vg, vg);
        const __m256d e2 = _mm256_sub_pd(_mm256_mul_pd(vb, vc), vr);
        const __m256d e3 = _mm256_sub_pd(_mm256_add_pd(_mm256_mul_pd(vd, vc), _mm256_mul_pd(vh, vs)), vr);
        _mm256_storeu_pd(r1 + i, _mm256_mul_pd(four, _mm256_add_pd(_mm256_mul_pd(vr, vr), g2)));
        _mm256_storeu_pd(r2 + i, _mm256_mul_pd(four, _mm256_add_pd(_mm256_mul_pd(e2, e2), g2)));
        _mm256_storeu_pd(r3 + i, _mm256_mul_pd(four, _mm256_add_pd(_mm256_mul_pd(e3, e3), g2)));
    }
    if (i < n) scalar::leg_lengths(k, c + i, s + i, r + i, g + i, r1 + i, r2 + i, r3 + i, n - i);
}

}  // namespace symrpr::kernels::detail::avx2
