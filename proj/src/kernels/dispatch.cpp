#include <cmath>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "kernels/kernels_impl.hpp"
#include "symrpr/kernels.hpp"

namespace symrpr::kernels {

namespace {

detail::CurveCoeffs coeffs(const GeometryParams& geom) { return {geom.b(), geom.h(), geom.d()}; }

void require_same(std::size_t a, std::size_t b) {
    if (a != b) throw std::invalid_argument("kernel spans differ in length");
}

bool use_avx2(Isa isa) {
    if (isa == Isa::Scalar) return false;
    if (!isa_available(Isa::Avx2)) throw std::invalid_argument("AVX2 kernels unavailable on this CPU");
    return true;
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
    if (isa == Isa::Scalar) return true;
#if defined(SYMRPR_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok;
#else
    return false;
#endif
}

Isa detected_isa() { return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() {
    static const Isa isa = [] {
        const char* env = std::getenv("SYMRPR_KERNELS");
        if (env && std::strcmp(env, "scalar") == 0) return Isa::Scalar;
        return detected_isa();
    }();
    return isa;
}

void curve_c(const GeometryParams& geom, std::span<const double> t, std::span<double> delta2,
             std::span<double> delta3, Isa isa) {
    require_same(t.size(), delta2.size());
    require_same(t.size(), delta3.size());
#ifdef SYMRPR_HAVE_AVX2_TU
    if (use_avx2(isa)) return detail::avx2::curve_c(coeffs(geom), t.data(), delta2.data(), delta3.data(), t.size());
#else
    use_avx2(isa);
#endif
    detail::scalar::curve_c(coeffs(geom), t.data(), delta2.data(), delta3.data(), t.size());
}

void characteristic_discriminant(const GeometryParams& geom, std::span<const double> delta2,
                                 std::span<const double> delta3, std::span<double> disc,
                                 std::span<double> scale, Isa isa) {
    require_same(delta2.size(), delta3.size());
    require_same(delta2.size(), disc.size());
    require_same(delta2.size(), scale.size());
#ifdef SYMRPR_HAVE_AVX2_TU
    if (use_avx2(isa)) {
        return detail::avx2::discriminant(coeffs(geom), delta2.data(), delta3.data(), disc.data(), scale.data(),
                                          delta2.size());
    }
#else
    use_avx2(isa);
#endif
    detail::scalar::discriminant(coeffs(geom), delta2.data(), delta3.data(), disc.data(), scale.data(),
                                 delta2.size());
}

void leg_lengths_squared(const GeometryParams& geom, std::span<const double> cos_psi,
                         std::span<const double> sin_psi, std::span<const double> r,
                         std::span<const double> g, std::span<double> rho1_sq, std::span<double> rho2_sq,
                         std::span<double> rho3_sq, Isa isa) {
    const std::size_t n = cos_psi.size();
    for (std::size_t m : {sin_psi.size(), r.size(), g.size(), rho1_sq.size(), rho2_sq.size(), rho3_sq.size()}) {
        require_same(n, m);
    }
#ifdef SYMRPR_HAVE_AVX2_TU
    if (use_avx2(isa)) {
        return detail::avx2::leg_lengths(coeffs(geom), cos_psi.data(), sin_psi.data(), r.data(), g.data(),
                                         rho1_sq.data(), rho2_sq.data(), rho3_sq.data(), n);
    }
#else
    use_avx2(isa);
#endif
    detail::scalar::leg_lengths(coeffs(geom), cos_psi.data(), sin_psi.data(), r.data(), g.data(), rho1_sq.data(),
                                rho2_sq.data(), rho3_sq.data(), n);
}

void classify_deltoid(const GeometryParams& geom, std::span<const double> delta2, std::span<const double> delta3,
                      double tol, std::span<std::int8_t> side, Isa isa) {
    require_same(delta2.size(), side.size());
    std::vector<double> disc(delta2.size());
    std::vector<double> scale(delta2.size());
    characteristic_discriminant(geom, delta2, delta3, disc, scale, isa);
    for (std::size_t i = 0; i < side.size(); ++i) {
        if (std::abs(disc[i]) <= tol * scale[i]) side[i] = 0;
        else side[i] = disc[i] > 0.0 ? 1 : -1;
    }
}

}  // namespace symrpr::kernels
