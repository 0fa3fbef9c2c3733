#include "superprolong/fields.hpp"
#include "superprolong/series.hpp"

#include <gtest/gtest.h>

using namespace superprolong;
using Q = Rational;
using P = Poly<Q>;
using VF = VectorField<Q>;

namespace {

SigPtr ring() { return make_signature({"x", "y"}, {"xi1", "xi2"}); }

}  // namespace

TEST(VectorField, ApplyOddFieldToOddProduct) {
    auto sig = ring();
    VF d = VF::partial(sig, "xi2");
    P f = P::gen(sig, "xi1") * P::gen(sig, "xi2");
    EXPECT_EQ(d(f), -P::gen(sig, "xi1"));
}

TEST(VectorField, ApplyMixedCoefficients) {
    auto sig = ring();
    P x = P::gen(sig, "x");
    VF d = VF::term(x * x, sig->index("x")) + VF::term(P::gen(sig, "xi1"), sig->index("y"));
    EXPECT_EQ(d(x * P::gen(sig, "y")), x * x * P::gen(sig, "y") + x * P::gen(sig, "xi1"));
}

TEST(Bracket, EvenFields) {
    auto sig = ring();
    P x = P::gen(sig, "x");
    VF a = VF::partial(sig, "x");
    VF b = VF::term(x * x, sig->index("x"));
    EXPECT_EQ(bracket(a, b), VF::term(x.scaled(Q(2)), sig->index("x")));
}

TEST(Bracket, OddPartialsAnticommute) {
    auto sig = ring();
    VF a = VF::partial(sig, "xi1");
    EXPECT_TRUE(bracket(a, a).is_zero());
    VF b = VF::term(P::gen(sig, "xi1"), sig->index("x"));
    // [d_xi1, xi1 d_x] = d_x
    EXPECT_EQ(bracket(a, b), VF::partial(sig, "x"));
}

TEST(Bracket, OddSquareOfNonnilpotentField) {
    auto sig = ring();
    // D = d_xi1 + xi1 d_x; [D, D] = 2 D^2 = 2 d_x
    VF d = VF::partial(sig, "xi1") + VF::term(P::gen(sig, "xi1"), sig->index("x"));
    EXPECT_EQ(bracket(d, d), VF::partial(sig, "x").scaled(Q(2)));
}

TEST(Divergence, EvenAndOddParts) {
    auto sig = ring();
    P x = P::gen(sig, "x"), xi1 = P::gen(sig, "xi1");
    EXPECT_EQ(divergence(VF::term(x * x, sig->index("x"))), x.scaled(Q(2)));
    EXPECT_EQ(divergence(VF::term(xi1, sig->index("xi1"))), P(sig, Q(-1)));
    EXPECT_EQ(divergence(VF::term(xi1 * P::gen(sig, "xi2"), sig->index("xi1"))), P::gen(sig, "xi2"));
}

TEST(FieldDegree, HomogeneousAndMixed) {
    auto sig = ring();
    GradingVector w{{1, 2, 1, 1}};
    P x = P::gen(sig, "x");
    EXPECT_EQ(field_degree(VF::partial(sig, "y"), w), -2);
    EXPECT_EQ(field_degree(VF::term(x * x, sig->index("y")), w), 0);
    EXPECT_FALSE(field_degree(VF::partial(sig, "x") + VF::partial(sig, "y"), w).has_value());
}

TEST(OneForm, DifferentialOfProduct) {
    auto sig = ring();
    P x = P::gen(sig, "x"), xi1 = P::gen(sig, "xi1");
    auto w = OneForm<Q>::d(x * xi1);
    EXPECT_EQ(w.coef("x"), -xi1);
    EXPECT_EQ(w.coef("xi1"), x);
}

TEST(LieForm, ContactFieldRescalesContactForm) {
    auto s = k_setup(1, 2);
    P t = P::gen(s.sig, "t"), p1 = P::gen(s.sig, "p1"), xi = P::gen(s.sig, "xi1");
    auto a = alpha1<Q>(s);
    for (P f : {t, t * t, t * p1 + xi * P::gen(s.sig, "eta1"), t * xi}) {
        auto lhs = lie_form(field_K(s, f), a);
        EXPECT_EQ(lhs, f.partial("t").scaled(Q(2)) * a) << f.str();
    }
}

TEST(LieDensity, OddEulerOnVolume) {
    auto sig = ring();
    P xi1 = P::gen(sig, "xi1");
    VF d = VF::term(xi1, sig->index("xi1"));
    auto out = lie_density(d, WeightedDensity<Q>{P(sig, Q(1)), Q(3, 2)});
    EXPECT_EQ(out.f, P(sig, Q(-3, 2)));
    EXPECT_EQ(out.lambda, Q(3, 2));
}

TEST(ConformalFactor, ContactAndPericontact) {
    auto k = k_setup(1, 0);
    auto f = conformal_factor(field_K(k, P::gen(k.sig, "t")), alpha1<Q>(k));
    ASSERT_TRUE(f.has_value());
    EXPECT_EQ(*f, P(k.sig, Q(2)));

    auto m = m_setup(1);
    auto g = conformal_factor(VF::partial(m.sig, "q1"), alpha0<Q>(m));
    EXPECT_FALSE(g.has_value());
}

TEST(Pairing, SignOnOddCoefficient) {
    auto sig = ring();
    P xi1 = P::gen(sig, "xi1");
    EXPECT_EQ(pairing(VF::partial(sig, "x"), xi1 * OneForm<Q>::dx(sig, "x")), -xi1);
    EXPECT_EQ(pairing(VF::partial(sig, "y"), OneForm<Q>::dx(sig, "y")), P(sig, Q(1)));
}
