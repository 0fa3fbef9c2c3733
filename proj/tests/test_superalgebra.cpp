#include "superprolong/poly.hpp"

#include <gtest/gtest.h>

using namespace superprolong;
using Q = Rational;

namespace {

struct Ring {
    SigPtr sig = make_signature({"u1", "p", "q"}, {"xi1", "xi2", "xi3"});
    Poly<Q> g(const std::string& n) const { return Poly<Q>::gen(sig, n); }
    Poly<Q> c(long v) const { return Poly<Q>(sig, Q(v)); }
};

}  // namespace

TEST(Rational, CanonicalForm) {
    EXPECT_EQ(Q(2, 4), Q(1, 2));
    EXPECT_EQ(Q::parse("-6/8"), Q(-3, 4));
    EXPECT_THROW(Q::parse("1/0"), std::invalid_argument);
    EXPECT_THROW(Q(1, 0), std::domain_error);
}

TEST(RatFunc, MonicDenominator) {
    RatFunc x = RatFunc::param();
    RatFunc r = (x * RatFunc(2) + RatFunc(2)) / (x * RatFunc(4) + RatFunc(4));
    EXPECT_EQ(r, RatFunc(Q(1, 2)));
    RatFunc s = RatFunc(1) / (x * RatFunc(3));
    EXPECT_TRUE(s.den().lead().is_one());
    EXPECT_EQ(s * x, RatFunc(Q(1, 3)));
}

TEST(Mul, OddSquareVanishes) {
    Ring R;
    EXPECT_TRUE((R.g("xi1") * R.g("xi1")).is_zero());
}

TEST(Mul, TranspositionSign) {
    Ring R;
    EXPECT_EQ(R.g("xi2") * R.g("xi1"), -(R.g("xi1") * R.g("xi2")));
}

TEST(Mul, ExpandAndNormalize) {
    Ring R;
    auto f = (R.g("u1") + R.g("xi1") * R.g("xi2")) * R.g("xi1");
    EXPECT_EQ(f, R.g("u1") * R.g("xi1"));
}

TEST(Mul, SignatureMismatchThrows) {
    Ring R;
    auto other = make_signature({"v"}, {});
    EXPECT_THROW(R.g("u1") * Poly<Q>::gen(other, 0), std::invalid_argument);
}

TEST(Partial, LeadingOddFactor) {
    Ring R;
    EXPECT_EQ((R.g("xi1") * R.g("xi2")).partial("xi1"), R.g("xi2"));
}

TEST(Partial, OddFactorMovedLeft) {
    Ring R;
    EXPECT_EQ((R.g("xi1") * R.g("xi2")).partial("xi2"), -R.g("xi1"));
}

TEST(Partial, EvenGenerator) {
    Ring R;
    auto u = R.g("u1");
    EXPECT_EQ((u * u * R.g("xi1")).partial("u1"), (u * R.g("xi1")).scaled(Q(2)));
}

TEST(Partial, UnknownGeneratorThrows) {
    Ring R;
    EXPECT_ANY_THROW(R.g("u1").partial("nope"));
}

TEST(Euler, CountsDegreeInSubset) {
    Ring R;
    auto p = R.g("p"), q = R.g("q");
    const int P = R.sig->index("p"), Qi = R.sig->index("q"), X = R.sig->index("xi1");
    EXPECT_EQ((p * p * q).euler({P, Qi}), (p * p * q).scaled(Q(3)));
    EXPECT_TRUE(R.g("u1").euler({X}).is_zero());
    EXPECT_EQ((q * R.g("xi1")).euler({Qi, X}), (q * R.g("xi1")).scaled(Q(2)));
}

TEST(Antiderivative, LowerLimitZero) {
    Ring R;
    const int P = R.sig->index("p");
    auto p = R.g("p");
    EXPECT_EQ(p.antiderivative(P), (p * p).scaled(Q(1, 2)));
    EXPECT_EQ(R.g("xi1").antiderivative(P), p * R.g("xi1"));
    auto f = p * p * R.g("xi1") + R.g("q") * R.g("xi2") * R.g("xi3") + R.c(5);
    EXPECT_EQ(f.antiderivative(P).partial(P), f);
    EXPECT_TRUE(f.antiderivative(P).set_zero({P}).is_zero());
}

TEST(Antiderivative, OddGeneratorThrows) {
    Ring R;
    EXPECT_THROW(R.g("p").antiderivative(R.sig->index("xi1")), std::invalid_argument);
}

TEST(DOdd, CountsOddFactors) {
    Ring R;
    EXPECT_EQ((R.g("xi1") * R.g("xi2") * R.g("q")).d_odd(), 2);
    EXPECT_EQ((R.g("q") * R.g("q") * R.g("q")).d_odd(), 0);
    auto tau_sig = make_signature({}, {"tau", "xi1"});
    EXPECT_EQ((Poly<Q>::gen(tau_sig, 0) * Poly<Q>::gen(tau_sig, 1)).d_odd(), 2);
    EXPECT_THROW((R.g("xi1") + R.g("q")).d_odd(), std::invalid_argument);
}

TEST(Parity, HomogeneousAndMixed) {
    Ring R;
    EXPECT_EQ(R.g("xi1").parity(), 1);
    EXPECT_EQ((R.g("xi1") * R.g("xi2")).parity(), 0);
    EXPECT_EQ((R.g("xi1") + R.g("u1")).parity(), -1);
}
