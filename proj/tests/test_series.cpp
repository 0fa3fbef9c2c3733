#include "superprolong/series.hpp"

#include <gtest/gtest.h>

using namespace superprolong;
using Q = Rational;
using P = Poly<Q>;
using VF = VectorField<Q>;

TEST(ContactField, ConstantAndTime) {
    auto s = k_setup(1, 0);
    P one(s.sig, Q(1)), t = P::gen(s.sig, "t");
    EXPECT_EQ(field_K(s, one), VF::partial(s.sig, "t").scaled(Q(2)));
    VF expect = VF::term(t.scaled(Q(2)), s.t) + VF::term(P::gen(s.sig, "p1"), s.p[0]) +
                VF::term(P::gen(s.sig, "q1"), s.q[0]);
    EXPECT_EQ(field_K(s, t), expect);
}

TEST(ContactField, BracketOfConstantAndTime) {
    auto s = k_setup(1, 2);
    P one(s.sig, Q(1)), t = P::gen(s.sig, "t");
    EXPECT_EQ(bracket(field_K(s, one), field_K(s, t)), field_K(s, one).scaled(Q(2)));
    EXPECT_EQ(bracket_kb(s, one, t), P(s.sig, Q(2)));
}

TEST(HamiltonianField, MomentumTimesPosition) {
    auto s = h_setup(1, 0);
    P p = P::gen(s.sig, "p1"), q = P::gen(s.sig, "q1");
    EXPECT_EQ(field_H(s, p * q), VF::term(q, s.q[0]) - VF::term(p, s.p[0]));
}

TEST(PericontactField, ConstantAndLinear) {
    auto s = m_setup(2);
    EXPECT_EQ(field_M(s, P(s.sig, Q(1))), VF::partial(s.sig, "tau").scaled(Q(2)));
    auto l = le_setup(2);
    EXPECT_EQ(field_Le(l, P::gen(l.sig, "q1")), VF::partial(l.sig, "xi1"));
    EXPECT_EQ(field_Le(l, P::gen(l.sig, "xi1")), -VF::partial(l.sig, "q1"));
}

TEST(Brackets, PoissonCanonicalPair) {
    auto s = k_setup(1, 2);
    P p = P::gen(s.sig, "p1"), q = P::gen(s.sig, "q1");
    EXPECT_EQ(bracket_pb(s, p, q), P(s.sig, Q(1)));
    EXPECT_EQ(bracket_pb(s, q, p), P(s.sig, Q(-1)));
    P xi = P::gen(s.sig, "xi1"), eta = P::gen(s.sig, "eta1");
    EXPECT_EQ(bracket_pb(s, xi, eta), P(s.sig, Q(1)));
}

TEST(Brackets, ButtinCanonicalPair) {
    auto s = le_setup(1);
    P q = P::gen(s.sig, "q1"), xi = P::gen(s.sig, "xi1");
    EXPECT_EQ(bracket_bb(s, q, xi), P(s.sig, Q(1)));
    EXPECT_EQ(bracket_bb(s, xi, q), P(s.sig, Q(-1)));
    EXPECT_TRUE(bracket_bb(s, q, q).is_zero());
}

TEST(Brackets, PericontactTauWithLinear) {
    auto s = m_setup(1);
    P tau = P::gen(s.sig, "tau"), q = P::gen(s.sig, "q1");
    // (2-E)(tau) q_tau + (-1) tau_tau (2-E)(q) = -q
    EXPECT_EQ(bracket_mb(s, tau, q), -q);
    EXPECT_EQ(field_M(s, bracket_mb(s, tau, q)), bracket(field_M(s, tau), field_M(s, q)));
}

TEST(Delta, MixedSecondDerivative) {
    auto s = m_setup(2);
    P q1 = P::gen(s.sig, "q1"), xi1 = P::gen(s.sig, "xi1"), xi2 = P::gen(s.sig, "xi2");
    EXPECT_EQ(delta(s, q1 * xi1), P(s.sig, Q(1)));
    EXPECT_TRUE(delta(s, q1 * xi2).is_zero());
}

TEST(Divergence, AntibracketFieldIsTwiceDelta) {
    auto s = le_setup(2);
    P q1 = P::gen(s.sig, "q1"), q2 = P::gen(s.sig, "q2"), xi1 = P::gen(s.sig, "xi1"), xi2 = P::gen(s.sig, "xi2");
    for (P f : {q1 * xi1, q1 * q2 * xi1 * xi2, q1 * q1 * xi1, q2 * xi1 * xi2}) {
        int p = f.parity();
        EXPECT_EQ(divergence(field_Le(s, f)), delta(s, f).scaled(Q(p ? -2 : 2))) << f.str();
    }
}

TEST(Membership, ButtinLeitesFamily) {
    auto s = m_setup(2);
    P q1 = P::gen(s.sig, "q1"), xi2 = P::gen(s.sig, "xi2"), tau = P::gen(s.sig, "tau");
    EXPECT_TRUE(member(Series::b_ab, s, q1 * xi2, Q(1, 3), Q(2, 5)));
    EXPECT_TRUE(member(Series::b_ab, s, tau, Q(1), Q(0)));
    EXPECT_FALSE(member(Series::b_ab, s, tau, Q(1), Q(1)));
    EXPECT_EQ(member_residual(Series::b_ab, s, tau, Q(1), Q(1)), P(s.sig, Q(2)));
}

TEST(Membership, SpecialPericontact) {
    auto s = m_setup(2);
    P q1 = P::gen(s.sig, "q1"), xi1 = P::gen(s.sig, "xi1"), tau = P::gen(s.sig, "tau");
    EXPECT_TRUE(member(Series::m, s, tau));
    EXPECT_FALSE(member(Series::sm, s, q1 * xi1));
    EXPECT_TRUE(member(Series::sm, s, q1 * xi1 + tau));
}

TEST(Membership, DivergenceFree) {
    auto sig = make_signature({}, {"xi1", "xi2"});
    P xi1 = P::gen(sig, "xi1");
    EXPECT_TRUE(member_svect(VF::term(xi1, sig->index("xi2"))));
    EXPECT_FALSE(member_svect(VF::term(xi1, sig->index("xi1"))));
}

TEST(Membership, DeformedVolume) {
    auto sig = make_signature({}, {"theta1", "theta2", "theta3", "mu"});
    const int mu = sig->index("mu");
    std::vector<int> th{0, 1, 2};
    VF d = VF::partial(sig, "theta1");
    EXPECT_TRUE(member_svect(d));
    // theta_1 d_theta_1 is divergence-free for neither volume form
    VF e = VF::term(P::gen(sig, "theta1"), 0);
    EXPECT_FALSE(member_svect(e, mu, th));
}

TEST(ContactForms, PericontactRescaling) {
    auto s = m_setup(1);
    P tau = P::gen(s.sig, "tau"), q = P::gen(s.sig, "q1");
    auto a = alpha0<Q>(s);
    for (P f : {tau, q * tau, P::gen(s.sig, "xi1") * tau}) {
        int p = f.parity();
        P factor = f.partial("tau").scaled(Q(p ? 2 : -2));
        EXPECT_EQ(lie_form(field_M(s, f), a), factor * a) << f.str();
    }
}

TEST(AbForLambda, Parametrization) {
    auto [a, b] = ab_for_lambda<Q>(2, Q(1, 3));
    EXPECT_EQ(Q(2) * a / (Q(2) * (a - b)), Q(1, 3));
    auto inf = ab_for_lambda<Q>(2, std::nullopt);
    EXPECT_EQ(inf.first, inf.second);
}
