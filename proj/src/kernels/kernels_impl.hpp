#pragma once

#include <cstddef>

#include "symrpr/geometry.hpp"

namespace symrpr::kernels::detail {

struct CurveCoeffs {
    double b, h, d;
};

#define SYMRPR_KERNEL_DECLS                                                                              \
    void curve_c(const CurveCoeffs& k, const double* t, double* d2, double* d3, std::size_t n);         \
    void discriminant(const CurveCoeffs& k, const double* d2, const double* d3, double* disc,           \
                      double* scale, std::size_t n);                                                    \
    void leg_lengths(const CurveCoeffs& k, const double* c, const double* s, const double* r,           \
                     const double* g, double* r1, double* r2, double* r3, std::size_t n);

namespace scalar {
SYMRPR_KERNEL_DECLS
}

#ifdef SYMRPR_HAVE_AVX2_TU
namespace avx2 {
SYMRPR_KERNEL_DECLS
}
#endif

#undef SYMRPR_KERNEL_DECLS

}  // namespace symrpr::kernels::detail
