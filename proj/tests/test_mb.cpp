#include "superprolong/mb.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace superprolong;
using Q = Rational;
using P = Poly<Q>;

namespace {

struct Mb45 {
    ContactSetup s = mb45_setup();
    P g(const std::string& n) const { return P::gen(s.sig, n); }
};

}  // namespace

TEST(Mb45, ExplicitFamiliesAreMembers) {
    Mb45 M;
    for (P f : {M.g("q1") * M.g("xi2"), M.g("q1") * M.g("q2") * M.g("xi3"), M.g("q3") * M.g("q3") * M.g("xi1")})
        EXPECT_TRUE(mb45_membership(mb45_F(M.s, f))) << f.str();
    for (P f : {M.g("q1"), M.g("q1") * M.g("q2"), M.g("q2") * M.g("q2") * M.g("q3")})
        EXPECT_TRUE(mb45_membership(mb45_q0_family(M.s, f))) << f.str();
    for (P f : {M.g("q1") * M.g("xi2"), M.g("q1") * M.g("q1") * M.g("xi1")})
        EXPECT_TRUE(mb45_membership(mb45_F_tilde(M.s, f))) << f.str();
}

TEST(Mb45, NonMembers) {
    Mb45 M;
    EXPECT_FALSE(mb45_membership(M.g("q0") * M.g("q0")));
    EXPECT_FALSE(mb45_membership(M.g("q1") * M.g("xi1")));
    EXPECT_TRUE(mb45_membership(P(M.s.sig, Q(1))));
}

TEST(Mb45, RightInvariantFormAgrees) {
    Mb45 M;
    std::mt19937_64 rng(5);
    auto w = mb45_grading(M.s);
    for (int d = 0; d <= 2; ++d) {
        for (int it = 0; it < 10; ++it) {
            P f = random_poly<Q>(M.s.sig, w.w, d + 2, -1, 4, rng);
            bool a = mb45_member(M.s, f), b = true;
            for (auto& r : mb45_residuals_y(M.s, f)) b = b && r.is_zero();
            EXPECT_EQ(a, b) << f.str();
        }
    }
    for (P f : {mb45_F(M.s, M.g("q1") * M.g("xi2")), mb45_q0_family(M.s, M.g("q2"))})
        for (auto& r : mb45_residuals_y(M.s, f)) EXPECT_TRUE(r.is_zero()) << f.str();
}

TEST(Mb45, ComponentDimensions) {
    EXPECT_EQ(mb45_component<Q>(-2).sdim(), (SDim{0, 1}));
    EXPECT_EQ(mb45_component<Q>(-1).sdim(), (SDim{4, 4}));
    EXPECT_EQ(mb45_component<Q>(0).sdim(), (SDim{13, 12}));
    EXPECT_EQ(m4_component<Q>(0).sdim(), (SDim{17, 16}));
}

TEST(Mb38, FramesSatisfyRelations) {
    auto F = mb38_frames_unchecked<Q>();
    EXPECT_TRUE(mb38_frame_relations(F));
}

TEST(Mb38, NegativeDimensions) {
    auto F = mb38_frames<Q>();
    EXPECT_EQ(mb38_component(F, -3).sdim(), (SDim{0, 2}));
    EXPECT_EQ(mb38_component(F, -2).sdim(), (SDim{3, 0}));
    EXPECT_EQ(mb38_component(F, -1).sdim(), (SDim{0, 6}));
}

TEST(Mb38, PairsSolveFrameEquations) {
    auto F = mb38_frames<Q>();
    for (int d = -3; d <= 0; ++d) {
        auto c = mb38_component(F, d);
        for (auto& [F1, F2] : c.basis)
            for (auto& r : eqF_residuals(F, F1, F2)) EXPECT_TRUE(r.is_zero());
    }
}

TEST(Mb38, ZeroCollectionGivesZeroField) {
    auto F = mb38_frames<Q>();
    EXPECT_TRUE(field_from_collection(F, zero_collection<Q>(F.sp, 0)).is_zero());
}

TEST(Mb38, ConstantCollectionPreservesDistribution) {
    auto F = mb38_frames<Q>();
    auto c = zero_collection<Q>(F.sp, 0);
    c.f[0] = P(F.sp.sig, Q(1));
    auto X = field_from_collection(F, c);
    EXPECT_FALSE(X.is_zero());
    EXPECT_EQ(field_degree(X, F.sp.w), -2);
    EXPECT_TRUE(preserves_distribution(F, X));
}

TEST(Mb38, ConstraintViolationThrows) {
    auto F = mb38_frames<Q>();
    auto c = zero_collection<Q>(F.sp, 0);
    c.f[0] = P::gen(F.sp.sig, F.sp.u[0]);
    EXPECT_THROW(field_from_collection(F, c), std::invalid_argument);
}

TEST(Mb38, CollectionBracketIsFieldBracket) {
    auto F = mb38_frames<Q>();
    std::mt19937_64 rng(3);
    for (int it = 0; it < 3; ++it) {
        auto a = random_collection<Q>(F.sp, it & 1, 1, rng);
        auto b = random_collection<Q>(F.sp, 0, 1, rng);
        EXPECT_TRUE(collection_constraint(F.sp, a).is_zero());
        EXPECT_EQ(bracket(field_from_collection(F, a), field_from_collection(F, b)),
                  field_from_collection(F, bracket_collections(F.sp, a, b)));
    }
}

TEST(Mb38, DistributionFields) {
    auto F = mb38_frames<Q>();
    for (int i = 0; i < 3; ++i) {
        for (auto& r : distribution_residuals(F.sp, F.Yeta[i])) EXPECT_TRUE(r.is_zero());
        for (auto& r : distribution_residuals(F.sp, F.Yxi[i])) EXPECT_TRUE(r.is_zero());
    }
    bool some = false;
    for (auto& r : distribution_residuals(F.sp, F.Yu[0])) some = some || !r.is_zero();
    EXPECT_TRUE(some);
}

TEST(Lazha, JacobiCoefficient) {
    EXPECT_TRUE(lazha_jacobi(Q(1)).holds);
    auto half = lazha_jacobi(Q(1, 2));
    EXPECT_FALSE(half.holds);
    EXPECT_FALSE(half.residual.empty());
}
