#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "paramtc/planner.hpp"
#include "paramtc/verify.hpp"

using namespace paramtc;

namespace {

constexpr double kTol = 1e-9;

CVector basis(int n, int j) {
    CVector e = CVector::Zero(n + 1);
    e[j] = 1.0;
    return e;
}

ProjectiveRep diagonal(int n) { return ProjectiveRep::normalized(CVector::Ones(n + 1)); }

}  // namespace

TEST(ProjectiveRep, Validation) {
    EXPECT_THROW(ProjectiveRep(CVector::Ones(3)), DomainError);
    EXPECT_THROW(ProjectiveRep::normalized(CVector::Zero(3)), DegenerateRepresentative);
    const auto a = diagonal(2);
    EXPECT_TRUE(a.same_line(ProjectiveRep(a.z() * std::polar(1.0, 0.7))));
    EXPECT_FALSE(a.same_line(ProjectiveRep(basis(2, 0))));
}

TEST(BundlePoint, Validation) {
    const auto z = diagonal(2);
    EXPECT_NO_THROW(BundlePoint(z, z.z() * 0.6, 0.8));
    EXPECT_THROW(BundlePoint(z, z.z() * 0.6, 0.5), DomainError);
    EXPECT_THROW(BundlePoint(z, basis(2, 0) * 0.6, 0.8), DomainError);
    EXPECT_THROW(BundlePoint(z, CVector::Zero(2), 1.0), DomainError);
    const auto p = BundlePoint::from_fiber_coordinates(z, Complex(3, 0), 4);
    EXPECT_NEAR(p.s(), 0.8, 1e-15);
    EXPECT_NEAR(p.vec().norm(), 1.0, 1e-15);
}

TEST(FiberInner, SameFiberOnly) {
    const auto z = diagonal(1);
    const auto a = BundlePoint::from_fiber_coordinates(z, Complex(1, 0), 0);
    const auto b = BundlePoint::sigma(ProjectiveRep(basis(1, 0)));
    EXPECT_THROW(fiber_inner(a, b), NotSameFiber);
    EXPECT_NEAR(fiber_inner(a, -a), -1.0, 1e-15);
    // gauge-independent: a different representative of the same line
    const auto z2 = ProjectiveRep(z.z() * std::polar(1.0, 1.1));
    EXPECT_NEAR(fiber_inner(a, a.with_base(z2)), 1.0, 1e-15);
}

TEST(Cells, IndexAndSection) {
    EXPECT_EQ(cell_index(ProjectiveRep(basis(3, 0))), 0);
    EXPECT_EQ(cell_index(ProjectiveRep(basis(3, 2))), 2);
    EXPECT_EQ(cell_index(diagonal(3)), 3);
    const auto z = ProjectiveRep(diagonal(2).z() * Complex(0, 1));
    const CVector phi = cell_section(z, 1);
    EXPECT_NEAR(phi[1].imag(), 0.0, 1e-15);
    EXPECT_GT(phi[1].real(), 0.0);
    EXPECT_NEAR(phi.norm(), 1.0, 1e-15);
    EXPECT_THROW(cell_section(ProjectiveRep(basis(2, 0)), 1), DegenerateRepresentative);
    EXPECT_THROW(cell_section(z, 5), DomainError);
}

TEST(Classify, Pieces) {
    const int n = 2;
    const auto z = diagonal(n);
    const auto x = BundlePoint::from_fiber_coordinates(z, Complex(0.6, 0), 0.8);
    EXPECT_EQ(classify_pair(x, x), 0);
    EXPECT_EQ(classify_pair(x, -x), 1);
    for (int j = 0; j <= n; ++j) {
        const auto sig = BundlePoint::sigma(ProjectiveRep(basis(n, j)));
        EXPECT_EQ(classify_pair(sig, -sig), 2 + j);
    }
    EXPECT_EQ(classify_pair(BundlePoint::sigma(z), -BundlePoint::sigma(z)), 2 + n);
    EXPECT_EQ(classify_pair(BundlePoint::sigma(z), BundlePoint::sigma(z)), 0);
}

TEST(Alpha, FrozenHalfStep) {
    const auto z = ProjectiveRep(basis(1, 0));
    const auto x = BundlePoint(z, basis(1, 0) * 0.6, 0.8);
    const auto half = alpha_deform(x, 0.5);
    const double norm = std::sqrt(0.36 + 0.16);
    EXPECT_NEAR(half.w()[0].real(), 0.6 / norm, 1e-15);
    EXPECT_NEAR(half.s(), 0.4 / norm, 1e-15);
    EXPECT_NEAR(alpha_deform(x, 1.0).s(), 0.0, 1e-15);
    EXPECT_THROW(alpha_deform(BundlePoint::sigma(z), 0.5), DomainError);
    EXPECT_THROW(alpha_deform(x, 1.5), DomainError);
}

TEST(Plan, Piece0IsGeodesicInterpolation) {
    const auto z = diagonal(2);
    const auto x = BundlePoint::from_fiber_coordinates(z, Complex(1, 0), 0);
    const auto y = BundlePoint::from_fiber_coordinates(z, Complex(0, 0), 1);
    const auto p = plan(x, y);
    EXPECT_EQ(p.piece(), 0);
    EXPECT_NEAR(p.length(), std::numbers::pi / 2, 1e-12);
    const auto mid = p.at(0.5);
    EXPECT_NEAR(mid.s, std::sqrt(0.5), 1e-12);
    EXPECT_TRUE(check_path(p).passed());
}

TEST(Plan, ConstantPath) {
    const auto z = diagonal(3);
    const auto x = BundlePoint::from_fiber_coordinates(z, Complex(0.2, 0.3), -0.5);
    const auto p = plan(x, x);
    EXPECT_EQ(p.piece(), 0);
    for (const auto& v : p.sample(11)) EXPECT_LT(v.distance(x.vec()), 1e-15);
    EXPECT_TRUE(check_path(p).passed());
}

TEST(Plan, Piece1GoesThroughTheEquator) {
    const auto z = diagonal(1);
    const auto x = BundlePoint::from_fiber_coordinates(z, Complex(0.6, 0), 0.8);
    const auto p = plan(x, -x);
    EXPECT_EQ(p.piece(), 1);
    ASSERT_EQ(p.segments().size(), 3u);
    EXPECT_EQ(p.segments()[0].kind(), SegmentKind::AlphaDeformation);
    EXPECT_EQ(p.segments()[1].kind(), SegmentKind::PhaseRotation);
    EXPECT_EQ(p.segments()[2].kind(), SegmentKind::AlphaDeformation);
    EXPECT_NEAR(p.at(p.segments()[1].t0).s, 0.0, 1e-12);
    EXPECT_LT(p.at(1.0).distance((-x).vec()), kTol);
    auto out = check_path(p);
    EXPECT_TRUE(out.passed());
}

TEST(Plan, PolarPiecesRotateThroughTheCellSection) {
    const int n = 3;
    for (int j = 0; j <= n; ++j) {
        const auto sig = BundlePoint::sigma(ProjectiveRep(basis(n, j)), 1);
        const auto p = plan(sig, -sig);
        EXPECT_EQ(p.piece(), 2 + j);
        const auto mid = p.at(0.5);
        EXPECT_NEAR(mid.s, 0.0, 1e-12);
        EXPECT_NEAR(mid.w[j].real(), 1.0, 1e-12);
        EXPECT_TRUE(check_path(p).passed());
    }
}

TEST(Plan, GaugeOfTheTargetDoesNotMatter) {
    std::mt19937_64 rng(kDefaultSeed);
    for (int i = 0; i < 50; ++i) {
        const auto line = random_line(2, rng);
        const auto x = random_point(line, rng);
        const auto y = random_point(line, rng);
        const auto p1 = plan(x, y);
        const auto p2 = plan(x, y.with_base(regauged(line, rng)));
        EXPECT_EQ(p1.piece(), p2.piece());
        for (double t : {0.0, 0.3, 0.7, 1.0}) EXPECT_LT(p1.at(t).distance(p2.at(t)), 1e-12);
    }
}

TEST(Plan, RejectsDifferentFibers) {
    const auto a = BundlePoint::sigma(ProjectiveRep(basis(2, 0)));
    const auto b = BundlePoint::sigma(ProjectiveRep(basis(2, 1)));
    EXPECT_THROW(plan(a, b), NotSameFiber);
}

TEST(Plan, ParameterOutsideUnitInterval) {
    const auto x = BundlePoint::sigma(diagonal(1));
    const auto p = plan(x, x);
    EXPECT_THROW(p.at(-0.1), DomainError);
    EXPECT_THROW(p.at(1.1), DomainError);
}

TEST(Hopf, ExactRotation) {
    const auto z = diagonal(2).z();
    const auto p0 = plan_hopf(z, z * std::polar(1.0, 0.5));
    EXPECT_EQ(p0.piece(), 0);
    EXPECT_NEAR(p0.length(), 0.5, 1e-12);
    const auto p1 = plan_hopf(z, -z);
    EXPECT_EQ(p1.piece(), 1);
    EXPECT_NEAR(p1.length(), std::numbers::pi, 1e-12);
    EXPECT_LT(p1.at(1.0).distance(FiberVector{-z, 0.0}), 1e-15);
    EXPECT_TRUE(check_path(p1).passed());
    EXPECT_THROW(plan_hopf(z, basis(2, 0)), NotSameFiber);
    EXPECT_THROW(plan_hopf(z, basis(3, 0)), NotSameFiber);
}

TEST(Hopf, ContinuousAcrossTheNegativeAxis) {
    const auto z = diagonal(1).z();
    const auto a = plan_hopf(z, z * std::polar(1.0, std::numbers::pi - 1e-10));
    const auto b = plan_hopf(z, z * std::polar(1.0, -std::numbers::pi + 1e-10));
    EXPECT_EQ(a.piece(), b.piece());
    for (double t : {0.25, 0.5, 0.75}) EXPECT_LT(a.at(t).distance(b.at(t)), 1e-9);
}
