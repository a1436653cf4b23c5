#pragma once

// Batch evaluation of the arithmetic inner loops (curve sampling, region
// classification, leg lengths over many poses). Every kernel has a scalar
// reference and, on x86-64, an AVX2 variant picked at runtime. Results agree
// to rounding; the equivalence tests pin that.
//
// Setting SYMRPR_KERNELS=scalar in the environment forces the scalar path.

#include <cstdint>
#include <span>
#include <string_view>

#include "symrpr/geometry.hpp"

namespace symrpr::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);
bool isa_available(Isa isa);
Isa detected_isa();
Isa active_isa();

// Points of the discriminant curve at finite parameters t = tan(psi).
void curve_c(const GeometryParams& geom, std::span<const double> t, std::span<double> delta2,
             std::span<double> delta3, Isa isa = active_isa());

// Discriminant of the characteristic cubic at each (delta2, delta3), and the
// fourth power of the coefficient max-norm used to scale it.
void characteristic_discriminant(const GeometryParams& geom, std::span<const double> delta2,
                                 std::span<const double> delta3, std::span<double> disc,
                                 std::span<double> scale, Isa isa = active_isa());

// Squared leg lengths from precomputed cos/sin of psi.
void leg_lengths_squared(const GeometryParams& geom, std::span<const double> cos_psi,
                         std::span<const double> sin_psi, std::span<const double> r,
                         std::span<const double> g, std::span<double> rho1_sq, std::span<double> rho2_sq,
                         std::span<double> rho3_sq, Isa isa = active_isa());

// +1 inside the deltoid, -1 outside, 0 within the band |disc| <= tol * scale.
void classify_deltoid(const GeometryParams& geom, std::span<const double> delta2,
                      std::span<const double> delta3, double tol, std::span<std::int8_t> side,
                      Isa isa = active_isa());

}  // namespace symrpr::kernels
