#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "potapov/catalog.hpp"
#include "potapov/potapov.hpp"

namespace potapov {
namespace {

/// Cavity poles ln r + 2 pi i n for |n| <= n_max as a RootSet.
RootSet cavity_root_set(int n_max) {
    RootSet set;
    for (Complex p : oracle::cavity_poles(0.8, 1.0, n_max)) {
        set.roots.push_back({p, 0.0});
    }
    return set;
}

RootSet budget(const DelayNetwork& net, double im_max) {
    return find_poles(net, default_pole_strip(net, -im_max, im_max));
}

TEST(ResidueAt, CavityResidueIsAnalytic) {
    const CMatrix l = residue_at(transfer_function(build_cavity(0.8, 1.0)), Complex(std::log(0.8), 0.0), 0.1);
    EXPECT_NEAR(std::abs(l(0, 0) - 0.45), 0.0, 1e-10);
}

TEST(ResidueAt, AnalyticFunctionHasZeroResidue) {
    const MatrixFunction f = [](Complex z) { return CMatrix::Constant(2, 2, std::exp(z)); };
    EXPECT_LT(residue_at(f, Complex(0.3, 0.2), 0.1).norm(), 1e-10);
}

TEST(ResidueAt, SimplePoleHasUnitResidue) {
    const Complex p(-0.5, 1.0);
    const MatrixFunction f = [p](Complex z) { return CMatrix::Constant(1, 1, 1.0 / (z - p)); };
    EXPECT_NEAR(std::abs(residue_at(f, p, 0.2)(0, 0) - 1.0), 0.0, 1e-12);
}

TEST(ExtractFactor, CavityFactorAndDeflation) {
    const Complex p0(std::log(0.8), 0.0);
    const FactorExtraction fx = extract_factor(transfer_function(build_cavity(0.8, 1.0)), p0, 0.1);
    EXPECT_NEAR(std::abs(std::abs(fx.factor.v(0)) - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(fx.factor.value(Complex(0.0))(0, 0) + 1.0), 0.0, 1e-14);
    EXPECT_LT(residue_at(fx.deflated, p0, 0.1).norm(), 1e-8);
}

TEST(ExtractFactor, MatrixFactorProjectsOntoResidueRowSpace) {
    const DelayNetwork net = catalog::example1();
    const MatrixFunction t = transfer_function(net);
    const RootSet poles = budget(net, 15.0);
    ASSERT_FALSE(poles.roots.empty());
    const Complex p = poles.roots.front().location;
    const FactorExtraction fx = extract_factor(t, p, 0.05);
    const CMatrix l = residue_at(t, p, 0.05);
    const CMatrix proj = fx.factor.v * fx.factor.v.adjoint();
    EXPECT_LT((l * proj - l).norm(), 1e-8 * l.norm());
    EXPECT_LT(residue_at(fx.deflated, p, 0.05).norm(), 1e-8);
}

TEST(ExtractFactor, NonPoleRaisesZeroResidue) {
    try {
        (void)extract_factor(transfer_function(build_cavity(0.8, 1.0)), Complex(-0.3, 3.0), 0.1);
        FAIL() << "expected ZeroResidue";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::ZeroResidue);
    }
}

TEST(BlaschkeFactorTest, MatchesEntrywiseFormula) {
    std::mt19937_64 rng(3);
    const CVector v = oracle::random_unitary(3, rng).col(0);
    const Complex p(-0.7, 2.0);
    const BlaschkeFactor f(p, v);
    for (int k = 0; k < 10; ++k) {
        const Complex z = oracle::random_point(rng, -1.0, 1.0, -5.0, 5.0);
        EXPECT_LT((f.value(z) - oracle::blaschke_entrywise(p, v, z)).norm(), 1e-13);
        EXPECT_LT((f.value(z) * f.inverse_value(z) - CMatrix::Identity(3, 3)).norm(), 1e-12);
    }
}

TEST(BlaschkeFactorTest, RightHalfPlanePoleIsDegenerate) {
    try {
        (void)BlaschkeFactor(Complex(0.1, 0.0), CVector::Ones(1));
        FAIL() << "expected DegeneratePole";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegeneratePole);
    }
}

TEST(Interpolate, CavitySingleFactorHasUnitMinusOne) {
    RootSet poles;
    poles.roots = {{Complex(std::log(0.8), 0.0), 0.0}};
    const PotapovProduct prod = interpolate(transfer_function(build_cavity(0.8, 1.0)), poles);
    ASSERT_EQ(prod.factors.size(), 1u);
    EXPECT_NEAR(std::abs(prod.u(0, 0) + 1.0), 0.0, 1e-10);
}

TEST(Interpolate, EmptyPoleSetGivesPolarFactor) {
    const MatrixFunction t = transfer_function(catalog::example1());
    const PotapovProduct prod = interpolate(t, RootSet{});
    EXPECT_TRUE(prod.factors.empty());
    EXPECT_LT((prod.u - polar_unitary(t(Complex(0.0)))).norm(), 1e-14);
}

TEST(Interpolate, ExampleOneLargerBudgetIsMoreAccurate) {
    const DelayNetwork net = catalog::example1();
    const MatrixFunction t = transfer_function(net);
    const double err30 = approximation_error(t, interpolate(t, budget(net, 30.0)), 30.0, 601);
    const double err60 = approximation_error(t, interpolate(t, budget(net, 60.0)), 30.0, 601);
    EXPECT_LT(err60, err30);
}

TEST(Interpolate, ExactForRationalInnerFunction) {
    std::mt19937_64 rng(21);
    PotapovProduct source;
    source.u = oracle::random_unitary(2, rng);
    RootSet poles;
    for (Complex p : {Complex(-0.5, 1.0), Complex(-0.8, -2.0), Complex(-0.3, 4.0)}) {
        source.factors.emplace_back(p, oracle::random_unitary(2, rng).col(0));
        poles.roots.push_back({p, 0.0});
    }
    const MatrixFunction t = product_function(source);
    const PotapovProduct rebuilt = interpolate(t, poles);
    EXPECT_LT(approximation_error(t, rebuilt, 30.0, 601), 1e-9);
}

TEST(EvalProduct, UnitaryOnImaginaryAxis) {
    const DelayNetwork net = catalog::example1();
    const PotapovProduct prod = interpolate(transfer_function(net), budget(net, 40.0));
    for (double w = -50.0; w <= 50.0; w += 1.7) {
        const CMatrix b = eval_product(prod, Complex(0.0, w));
        EXPECT_LT((b * b.adjoint() - CMatrix::Identity(2, 2)).norm(), 1e-10);
    }
}

TEST(EvalProduct, SingleFactorArithmetic) {
    PotapovProduct prod;
    prod.u = CMatrix::Constant(1, 1, Complex(0.6, 0.8));
    prod.factors.emplace_back(Complex(-1.0), CVector::Ones(1));
    EXPECT_NEAR(std::abs(eval_product(prod, Complex(0.0))(0, 0) + prod.u(0, 0)), 0.0, 1e-15);
}

TEST(EvalProduct, CavityMoreFactorsIsMoreAccurate) {
    const MatrixFunction t = transfer_function(build_cavity(0.8, 1.0));
    const double err3 = approximation_error(t, interpolate(t, cavity_root_set(1)), 10.0, 501);
    const double err41 = approximation_error(t, interpolate(t, cavity_root_set(20)), 10.0, 501);
    EXPECT_LT(err41, err3);
    // Pinned from a 200001-point comparison against the closed-form cavity response (measured 0.01105).
    EXPECT_LT(err41, 0.012);
}

TEST(PhaseError, ExampleTwoPhasesStayWrong) {
    const DelayNetwork net = catalog::example2();
    const MatrixFunction t = transfer_function(net);
    for (double im : {10.0, 30.0, 60.0}) {
        const MatrixFunction b = product_function(interpolate(t, budget(net, im)));
        EXPECT_GT(entry_phase_error(t, b, 0, 1, 30.0, 601), 0.01) << im;
        EXPECT_GT(entry_phase_error(t, b, 1, 1, 30.0, 601), 0.01) << im;
    }
}

TEST(SingularIsTrivial, Examples) {
    EXPECT_TRUE(singular_is_trivial(catalog::example1()));
    EXPECT_FALSE(singular_is_trivial(catalog::example2()));
    EXPECT_FALSE(singular_is_trivial(catalog::feedforward_chain(0.25)));
}

TEST(SingularBoundTest, LengthIsTotalDelay) {
    EXPECT_NEAR(singular_bound(build_cavity(0.8, 1.0)).ell, 1.0, 1e-15);
    EXPECT_NEAR(singular_bound(catalog::example1()).ell, 0.6, 1e-15);
    EXPECT_NEAR(singular_bound(catalog::example2()).ell, 0.329, 1e-15);
    const SingularBound b = singular_bound(build_cavity(0.8, 1.0));
    EXPECT_TRUE(b.negligible_at(Complex(0.05, 0.0)));
    EXPECT_FALSE(b.negligible_at(Complex(0.0, 1.0)));
}

TEST(Cayley, FixedValuesAndRoundTrip) {
    EXPECT_NEAR(std::abs(cayley_to_disc(Complex(1.0))), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(cayley_to_disc(Complex(0.0)) + 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(cayley_to_disc(Complex(0.0, 5.0))), 1.0, 1e-15);
    std::mt19937_64 rng(4);
    for (int k = 0; k < 20; ++k) {
        const Complex z = oracle::random_point(rng, 0.0, 5.0, -5.0, 5.0);
        EXPECT_LT(std::abs(cayley_from_disc(cayley_to_disc(z)) - z), 1e-13);
    }
    try {
        (void)cayley_to_disc(Complex(-1.0));
        FAIL() << "expected PoleOfMap";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::PoleOfMap);
    }
}

}  // namespace
}  // namespace potapov
