#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace superprolong;
using namespace superprolong::testing;
using Q = Rational;

TEST(Resolve, ContactRegrading) {
    auto s = k_setup(0, 2);
    auto w = resolve(Series::k, s, Regrading::parse("r=1"));
    EXPECT_EQ(w[s.t], 1);
    EXPECT_EQ(w[s.xi[0]], 1);
    EXPECT_EQ(w[s.eta[0]], 0);
    auto st = resolve(Series::k, s, Regrading::parse("standard"));
    EXPECT_EQ(st[s.t], 2);
}

TEST(Resolve, PericontactRegradings) {
    auto s = m_setup(2);
    auto full = resolve(Series::m, s, Regrading::parse("r=2"));
    EXPECT_EQ(full[s.t], 1);
    EXPECT_EQ(full[s.q[1]], 1);
    EXPECT_EQ(full[s.xi[1]], 0);
    EXPECT_THROW(resolve(Series::m, s, Regrading::parse("r=1")), std::invalid_argument);
    auto ex = resolve(Series::m, s, Regrading::parse("r=1"), true);
    EXPECT_EQ(ex[s.q[0]], 2);
    EXPECT_EQ(ex[s.xi[0]], 0);
    EXPECT_EQ(ex[s.q[1]], 1);
}

TEST(Resolve, RegBForButtinLeites) {
    auto s = m_setup(2);
    auto w = resolve(Series::b_ab, s, Regrading::parse("Reg_b"));
    EXPECT_EQ(w[s.t], 0);
    EXPECT_EQ(w[s.xi[0]], -1);
    EXPECT_EQ(w[s.q[0]], 1);
    EXPECT_THROW(resolve(Series::m, s, Regrading::parse("Reg_b")), std::invalid_argument);
    EXPECT_THROW(Regrading::parse("bogus"), std::invalid_argument);
}

TEST(Resolve, VectOddCoordinatesOfDegreeZero) {
    auto s = vect_setup(1, 2);
    auto w = resolve(Series::vect, s, Regrading::parse("r=1"));
    EXPECT_EQ(w.w, (std::vector<int>{1, 0, 1}));
    EXPECT_THROW(resolve(Series::vect, s, Regrading::parse("r=3")), std::invalid_argument);
}

TEST(BuildAlgebra, RejectsWrongWeightLength) {
    auto s = m_setup(2);
    EXPECT_THROW(build_algebra<Q>(Series::m, s, GradingVector{{1, 1}}), std::invalid_argument);
}

TEST(Irreducible, DiagonalActionIsReducible) {
    Mat<Q> d{{Q(1), Q(0)}, {Q(0), Q(2)}};
    auto r = irreducible_check<Q>({d}, 2);
    EXPECT_FALSE(r.irreducible);
    EXPECT_EQ(r.invariant.size(), 1u);
    Mat<Q> e{{Q(0), Q(1)}, {Q(0), Q(0)}}, f{{Q(0), Q(0)}, {Q(1), Q(0)}};
    EXPECT_TRUE(irreducible_check<Q>({e, f}, 2).irreducible);
}

TEST(Weisfeiler, StandardPericontactHolds) {
    auto g = series_components<Q>("m", 2, 0, 1);
    auto e = weisfeiler_evidence(g);
    EXPECT_TRUE(e.all()) << e.transitive.witness << e.irreducible_witness;
    EXPECT_EQ(e.depth, 2);
}

TEST(Weisfeiler, ExcludedRegradingIsReducible) {
    auto A = make_algebra<Q>(Series::m, 2, 0, Regrading::parse("r=1"), Q(0), Q(1), true);
    auto e = weisfeiler_evidence(components(A, 1));
    EXPECT_FALSE(e.irreducible);
    EXPECT_FALSE(e.irreducible_witness.empty());
}

TEST(DimsEqual, MismatchReportsDegree) {
    auto v = series_components<Q>("vect", 1, 1, 2);
    auto k = series_components<Q>("k", 0, 2, 2);
    auto d = dims_equal(v.signature(-2, 2), k.signature(-2, 2), -2);
    EXPECT_FALSE(d.equal);
    EXPECT_EQ(d.first_mismatch, -2);
    EXPECT_EQ(d.left, (SDim{0, 0}));
    EXPECT_EQ(d.right, (SDim{1, 0}));
    EXPECT_THROW(dims_equal(v.signature(-1, 2), k.signature(-2, 2), -2), std::invalid_argument);
}

TEST(DimsEqual, RegradedContactMatchesVect) {
    auto v = series_components<Q>("vect", 1, 1, 3);
    auto k = series_components<Q>("k", 0, 2, 3, "r=1");
    EXPECT_TRUE(dims_equal(v.signature(-1, 3), k.signature(-1, 3), -1).equal);
}
