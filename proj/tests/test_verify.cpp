#include <gtest/gtest.h>

#include "paramtc/verify.hpp"

using namespace paramtc;

namespace {

// A piece-0 path whose s-component is negated for t > 1/2.
struct CorruptedPath {
    PlannedPath inner;
    FiberVector at(double t) const {
        auto v = inner.at(t);
        if (t > 0.5) v.s = -v.s;
        return v;
    }
    const BundlePoint& start() const { return inner.start(); }
    const BundlePoint& end() const { return inner.end(); }
    const ProjectiveRep& line() const { return inner.line(); }
};

}  // namespace

TEST(CheckPath, DetectsInjectedDiscontinuity) {
    const auto z = ProjectiveRep::normalized(CVector::Ones(3));
    const auto x = BundlePoint::from_fiber_coordinates(z, Complex(0.6, 0), 0.8);
    const auto y = BundlePoint::from_fiber_coordinates(z, Complex(0, 0.6), 0.8);
    CorruptedPath bad{plan(x, y)};
    auto out = check_path(bad);
    EXPECT_FALSE(out.passed());
    bool lipschitz = false;
    for (const auto& f : out.failures) lipschitz = lipschitz || f.invariant == "lipschitz";
    EXPECT_TRUE(lipschitz);
}

TEST(CheckPath, RandomPiece0Paths) {
    std::mt19937_64 rng(kDefaultSeed);
    for (int i = 0; i < 200; ++i) {
        const auto line = random_line(3, rng);
        const auto x = random_point(line, rng);
        const auto y = random_point(line, rng);
        const auto p = plan(x, y);
        ASSERT_EQ(p.piece(), 0);
        EXPECT_TRUE(check_path(p).passed());
    }
}

TEST(Generators, ProduceValidPoints) {
    std::mt19937_64 rng(7);
    for (int n = 1; n <= 4; ++n) {
        for (int j = 0; j <= n; ++j) EXPECT_EQ(cell_index(random_cell_line(n, j, rng)), j);
        const auto pairs = boundary_pairs(n, rng);
        EXPECT_FALSE(pairs.empty());
        for (const auto& [x, y] : pairs) EXPECT_TRUE(x.base().same_line(y.base()));
    }
}

TEST(CheckPartition, WitnessesEveryPiece) {
    for (int n = 1; n <= 3; ++n) {
        auto out = check_partition(n, 2000);
        EXPECT_TRUE(out.passed()) << (out.failures.empty() ? "" : out.failures.front().input);
        std::set<int> want;
        for (int p = 0; p <= n + 2; ++p) want.insert(p);
        EXPECT_EQ(out.pieces_witnessed, want);
    }
    EXPECT_THROW(check_partition(0, 1), DomainError);
}

TEST(CheckPartition, SeedIsReproducible) {
    auto a = check_partition(2, 300, 42);
    auto b = check_partition(2, 300, 42);
    EXPECT_EQ(a.cases, b.cases);
    EXPECT_EQ(a.maxima, b.maxima);
}

TEST(CheckHopfPaths, Passes) {
    auto out = check_hopf_paths(2, 500);
    EXPECT_TRUE(out.passed());
    EXPECT_EQ(out.pieces_witnessed, (std::set<int>{0, 1}));
}

TEST(CheckBoundsTables, PassesAtEight) {
    auto out = check_bounds_tables(8);
    EXPECT_TRUE(out.passed());
    EXPECT_EQ(out.cases, 8 * 8 + 2 * 8);
    EXPECT_THROW(check_bounds_tables(1), DomainError);
}

TEST(Outcome, Merge) {
    VerificationOutcome a("a"), b("b");
    a.cases = 2;
    a.record("m", 1.0);
    b.cases = 3;
    b.record("m", 2.0);
    b.fail("input", "inv", 5.0);
    b.pieces_witnessed.insert(4);
    a.merge(b);
    EXPECT_EQ(a.cases, 5);
    EXPECT_EQ(a.maxima.at("m"), 2.0);
    EXPECT_FALSE(a.passed());
    EXPECT_TRUE(a.pieces_witnessed.contains(4));
}
