#include "helpers.hpp"

#include <gtest/gtest.h>

using namespace superprolong;
using namespace superprolong::testing;
using Q = Rational;
using VF = VectorField<Q>;

TEST(MatrixAlgebra, SuperDimensions) {
    auto sd = [](const std::string& n) { return sdim(matrix_algebra<Q>(n).basis); };
    EXPECT_EQ(sd("gl(1|1)"), std::make_pair(2, 2));
    EXPECT_EQ(sd("pe_a(2)"), std::make_pair(4, 4));
    EXPECT_EQ(sd("spe(3)"), std::make_pair(8, 9));
    EXPECT_EQ(sd("o(3)"), std::make_pair(3, 0));
    EXPECT_EQ(sd("sp(2)"), std::make_pair(3, 0));
    EXPECT_EQ(sd("c(sp(2))"), std::make_pair(4, 0));
    EXPECT_EQ(sd("gl(2|1)"), std::make_pair(5, 4));
    EXPECT_THROW(matrix_algebra<Q>("sl(2|2)"), std::invalid_argument);
    EXPECT_THROW(matrix_algebra<Q>("sp(3)"), std::invalid_argument);
    EXPECT_THROW(matrix_algebra<Q>("foo(2)"), std::invalid_argument);
}

TEST(LinearField, RowRealization) {
    auto sig = make_signature({"u1", "u2"}, {});
    auto g = matrix_algebra<Q>("gl(2)");
    // E_12 in row realization: x -> x E_12, i.e. u1 d_u2
    VF d = linear_field(sig, g.basis[1], Realization::row);
    EXPECT_EQ(d, VF::term(Poly<Q>::gen(sig, "u1"), 1));
}

TEST(Components, VectDimensions) {
    auto g = series_components<Q>("vect", 1, 1, 2);
    EXPECT_EQ(g.sdim(-1), (SDim{1, 1}));
    EXPECT_EQ(g.sdim(0), (SDim{2, 2}));
    EXPECT_EQ(g.sdim(1), (SDim{2, 2}));
    EXPECT_EQ(g.sdim(2), (SDim{2, 2}));
}

TEST(Components, ContactDimensions) {
    // k(1|2): generating functions of weight d + 2 in t (weight 2), xi, eta
    auto g = series_components<Q>("k", 0, 2, 1);
    EXPECT_EQ(g.sdim(-2), (SDim{1, 0}));
    EXPECT_EQ(g.sdim(-1), (SDim{0, 2}));
    EXPECT_EQ(g.sdim(0), (SDim{2, 0}));
    EXPECT_TRUE(closure_check(g));
}

TEST(CartanProlong, GeneralLinearOneOne) {
    auto g = matrix_prolong<Q>("gl(1|1)", 3);
    EXPECT_EQ(g.sdim(-1), (SDim{1, 1}));
    for (int d = 0; d <= 3; ++d) EXPECT_EQ(g.sdim(d), (SDim{2, 2})) << d;
    EXPECT_TRUE(closure_check(g));
    EXPECT_TRUE(transitive_check(g));
}

TEST(CartanProlong, OrthogonalTerminates) {
    auto g = matrix_prolong<Q>("o(3)", 2);
    EXPECT_EQ(g.sdim(0), (SDim{3, 0}));
    EXPECT_EQ(g.sdim(1), (SDim{0, 0}));
    EXPECT_EQ(termination_degree(g), 1);
}

TEST(CartanProlong, FullGeneralLinearIsVect) {
    auto g = matrix_prolong<Q>("gl(2)", 2);
    auto v = series_components<Q>("vect", 2, 0, 2);
    for (int d = -1; d <= 2; ++d) EXPECT_EQ(g.sdim(d), v.sdim(d)) << d;
}

TEST(CartanProlong, NonClosedNonpositivePartThrows) {
    auto sig = make_signature({"u"}, {});
    GradingVector w{{1}};
    ProlongSpec<Q> spec{sig, w, {{-1, {VF::partial(sig, 0)}}}, {VF::term(Poly<Q>::gen(sig, 0) * Poly<Q>::gen(sig, 0), 0)}, 2};
    EXPECT_ANY_THROW(cartan_prolong(spec));
}

TEST(PartialProlong, FromSubsetOfFirstComponent) {
    auto full = matrix_prolong<Q>("gl(1|1)", 1);
    auto sig = full.sig();
    ProlongSpec<Q> spec{sig, full.grading(), {{-1, full.at(-1).basis()}}, full.at(0).basis(), 3};
    std::vector<VF> h1{full.at(1).basis()[0]};
    auto g = partial_prolong(spec, h1);
    EXPECT_EQ(g.sdim(1).total(), 1);
    for (int d = 2; d <= 3; ++d) EXPECT_LE(g.sdim(d).total(), 4);
}

TEST(MkProlong, ContactWithSymplecticPlusCenter) {
    auto sp = inline_spec(R"x("kind": "mk_prolong", "contact": "k", "n": 1, "m": 0, "g0": "c(sp(2))")x");
    auto g = Driver<Q>(sp).graded(2);
    auto k = series_components<Q>("k", 1, 0, 2);
    for (int d = -2; d <= 2; ++d) EXPECT_EQ(g.sdim(d), k.sdim(d)) << d;
}

TEST(Transitive, DetectsKernelInDegreeZero) {
    auto sig = make_signature({"u", "v"}, {});
    GradingVector w{{1, 1}};
    GradedSubspace<Q> g(sig, w);
    g.set(-1, Component<Q>::span(make_space(sig, w, -1), {VF::partial(sig, 0)}));
    // v d_v commutes with d_u
    g.set(0, Component<Q>::span(make_space(sig, w, 0), {VF::term(Poly<Q>::gen(sig, 1), 1)}));
    auto c = transitive_check(g);
    EXPECT_FALSE(c);
    EXPECT_FALSE(c.witness.empty());
}

TEST(Rank1, FoundAndNotFound) {
    auto gl = matrix_prolong<Q>("gl(2|1)", 0);
    auto r = rank1_search(gl.at(0).basis(), gl.at(-1));
    ASSERT_TRUE(r.element.has_value());
    auto A = action_matrix(*r.element, gl.at(-1));
    ASSERT_TRUE(A.has_value());
    EXPECT_TRUE(rank1_verify(*A, gl.at(-1).parities()));

    auto o = matrix_prolong<Q>("o(3)", 0);
    EXPECT_EQ(rank1_search(o.at(0).basis(), o.at(-1)).stage, "NOT_FOUND");
}

TEST(Rank1, VerifyRejectsOddCovector) {
    Mat<Q> A{{Q(0), Q(1)}, {Q(0), Q(0)}};
    EXPECT_TRUE(rank1_verify(A, {0, 0}));
    EXPECT_FALSE(rank1_verify(A, {0, 1}));
    Mat<Q> I{{Q(1), Q(0)}, {Q(0), Q(1)}};
    EXPECT_FALSE(rank1_verify(I, {0, 0}));
}
