#include <gtest/gtest.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "support/oracles.hpp"
#include "symrpr/kernels.hpp"

using namespace symrpr;
using kernels::Isa;

namespace {

// Odd lengths exercise the vector tails.
constexpr std::size_t kCount = 1027;

void expect_close(const std::vector<double>& a, const std::vector<double>& b, double rel) {
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_NEAR(a[i], b[i], rel * (1.0 + std::abs(a[i]))) << "index " << i;
    }
}

class KernelEquivalence : public ::testing::Test {
protected:
    void SetUp() override {
        if (!kernels::isa_available(Isa::Avx2)) GTEST_SKIP() << "AVX2 not available";
    }
};

}  // namespace

TEST(Kernels, ScalarAlwaysAvailable) {
    EXPECT_TRUE(kernels::isa_available(Isa::Scalar));
    EXPECT_EQ(kernels::to_string(Isa::Scalar), "scalar");
}

TEST(Kernels, LengthMismatchThrows) {
    const GeometryParams geom = GeometryParams::reference();
    std::vector<double> t(4), a(4), b(3);
    EXPECT_THROW(kernels::curve_c(geom, t, a, b, Isa::Scalar), std::invalid_argument);
}

TEST(Kernels, ScalarMatchesLibraryFormulas) {
    const GeometryParams geom = GeometryParams::reference();
    std::vector<double> c{1.0}, s{0.0}, r{0.0}, g{0.0}, r1(1), r2(1), r3(1);
    kernels::leg_lengths_squared(geom, c, s, r, g, r1, r2, r3, Isa::Scalar);
    EXPECT_NEAR(r1[0], 0.0, 1e-15);
    EXPECT_NEAR(r2[0], 4.0, 1e-15);
    EXPECT_NEAR(r3[0], 0.0, 1e-15);
}

TEST_F(KernelEquivalence, CurveC) {
    oracle::Rng rng(61);
    for (int trial = 0; trial < 10; ++trial) {
        const GeometryParams geom = oracle::random_geometry(rng);
        std::vector<double> t(kCount);
        for (auto& x : t) x = std::tan(rng.uniform(-1.55, 1.55));
        std::vector<double> a2(kCount), a3(kCount), b2(kCount), b3(kCount);
        kernels::curve_c(geom, t, a2, a3, Isa::Scalar);
        kernels::curve_c(geom, t, b2, b3, Isa::Avx2);
        expect_close(a2, b2, 1e-12);
        expect_close(a3, b3, 1e-12);
    }
}

TEST_F(KernelEquivalence, DiscriminantAndClassification) {
    oracle::Rng rng(62);
    for (int trial = 0; trial < 10; ++trial) {
        const GeometryParams geom = oracle::random_geometry(rng);
        std::vector<double> d2(kCount), d3(kCount);
        for (std::size_t i = 0; i < kCount; ++i) {
            d2[i] = rng.uniform(-3, 3);
            d3[i] = rng.uniform(-3, 3);
        }
        std::vector<double> da(kCount), sa(kCount), db(kCount), sb(kCount);
        kernels::characteristic_discriminant(geom, d2, d3, da, sa, Isa::Scalar);
        kernels::characteristic_discriminant(geom, d2, d3, db, sb, Isa::Avx2);
        for (std::size_t i = 0; i < kCount; ++i) {
            EXPECT_NEAR(da[i], db[i], 1e-12 * sa[i]);
            EXPECT_NEAR(sa[i], sb[i], 1e-12 * sa[i]);
        }
        std::vector<std::int8_t> ka(kCount), kb(kCount);
        kernels::classify_deltoid(geom, d2, d3, 1e-9, ka, Isa::Scalar);
        kernels::classify_deltoid(geom, d2, d3, 1e-9, kb, Isa::Avx2);
        for (std::size_t i = 0; i < kCount; ++i) {
            if (std::abs(da[i]) > 1e-6 * sa[i]) EXPECT_EQ(ka[i], kb[i]);
        }
    }
}

TEST_F(KernelEquivalence, LegLengths) {
    oracle::Rng rng(63);
    const GeometryParams geom = oracle::random_geometry(rng);
    std::vector<double> c(kCount), s(kCount), r(kCount), g(kCount);
    for (std::size_t i = 0; i < kCount; ++i) {
        const double psi = rng.uniform(-3, 3);
        c[i] = std::cos(psi);
        s[i] = std::sin(psi);
        r[i] = rng.uniform(-3, 3);
        g[i] = rng.uniform(-3, 3);
    }
    std::vector<double> a1(kCount), a2(kCount), a3(kCount), b1(kCount), b2(kCount), b3(kCount);
    kernels::leg_lengths_squared(geom, c, s, r, g, a1, a2, a3, Isa::Scalar);
    kernels::leg_lengths_squared(geom, c, s, r, g, b1, b2, b3, Isa::Avx2);
    expect_close(a1, b1, 1e-12);
    expect_close(a2, b2, 1e-12);
    expect_close(a3, b3, 1e-12);
}
