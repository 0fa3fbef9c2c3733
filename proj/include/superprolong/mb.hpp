#pragma once

#include "superprolong/deform.hpp"
#include "superprolong/gradings.hpp"
#include "superprolong/prolong.hpp"
#include "superprolong/series.hpp"

#include <array>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace superprolong {

// ---------------- mb(4|5) inside m(4) ----------------

// m(4) on q0..q3 | xi0..xi3, tau.
inline ContactSetup mb45_setup() { return m_setup(4, 0); }

// Even permutations (i, j, k) of (1, 2, 3).
inline const std::array<std::array<int, 3>, 3>& cyclic_triples() {
    static const std::array<std::array<int, 3>, 3> t{{{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}};
    return t;
}

// Residuals of the 4|4 equations cutting mb(4|5) out of m(4).
template <class S>
std::vector<Poly<S>> mb45_residuals(const ContactSetup& s, const Poly<S>& f) {
    const auto& q = s.q;
    const auto& xi = s.xi;
    const int tau = s.t;
    auto gen = [&](int g) { return Poly<S>::gen(s.sig, g); };
    Poly<S> ft = f.partial(tau);
    std::vector<Poly<S>> r;
    r.push_back(f.partial(q[0]).partial(q[0]) - (gen(xi[0]) * ft.partial(q[0])).scaled(S(2)));
    for (int i = 1; i <= 3; ++i)
        r.push_back(f.partial(xi[i]).partial(q[0]) + gen(q[i]) * ft.partial(q[0]) + gen(xi[0]) * ft.partial(xi[i]));
    for (auto [i, j, k] : cyclic_triples()) {
        Poly<S> lower = gen(xi[0]) * ft.partial(q[i]) + gen(xi[i]) * ft.partial(q[0]) - gen(q[j]) * ft.partial(xi[k]) +
                        gen(q[k]) * ft.partial(xi[j]);
        r.push_back(f.partial(q[i]).partial(q[0]) - f.partial(xi[k]).partial(xi[j]) - lower);
    }
    r.push_back(delta(s, f) + euler_except_t(s, ft));
    return r;
}

// The same system in terms of the right-invariant fields Y_q = d_q - xi d_tau, Y_xi = d_xi + q d_tau.
template <class S>
std::vector<Poly<S>> mb45_residuals_y(const ContactSetup& s, const Poly<S>& f) {
    auto Yq = [&](int i) {
        return VectorField<S>::partial(s.sig, s.q[i]) -
               VectorField<S>::term(Poly<S>::gen(s.sig, s.xi[i]), s.t);
    };
    auto Yx = [&](int i) {
        return VectorField<S>::partial(s.sig, s.xi[i]) + VectorField<S>::term(Poly<S>::gen(s.sig, s.q[i]), s.t);
    };
    std::vector<Poly<S>> r;
    r.push_back(Yq(0)(Yq(0)(f)));
    for (int i = 1; i <= 3; ++i) r.push_back(Yq(0)(Yx(i)(f)));
    for (auto [i, j, k] : cyclic_triples()) r.push_back(Yq(0)(Yq(i)(f)) - Yx(j)(Yx(k)(f)));
    Poly<S> sum(s.sig);
    for (int i = 0; i <= 3; ++i) sum += Yq(i)(Yx(i)(f)) + Yx(i)(Yq(i)(f));
    r.push_back(sum);
    return r;
}

template <class S>
bool mb45_member(const ContactSetup& s, const Poly<S>& f) {
    for (auto& r : mb45_residuals(s, f))
        if (!r.is_zero()) return false;
    return true;
}

template <class S>
bool mb45_membership(const Poly<S>& f) {
    return mb45_member(mb45_setup(), f);
}

inline GradingVector mb45_grading(const ContactSetup& s) {
    auto w = standard_grading(*s.sig);
    w.w[s.t] = 2;
    return w;
}

template <class S>
ComponentModel<S> mb45_model(const ContactSetup& s = mb45_setup()) {
    return generating_model<S>(GenKind::M, s, mb45_grading(s), [s](const Poly<S>& f) { return mb45_residuals(s, f); });
}

template <class S>
GradedSubspace<S> mb45_graded(int hi) {
    auto s = mb45_setup();
    return graded_from_model<S>(s.sig, mb45_grading(s), mb45_model<S>(s), -2, hi);
}

template <class S>
Component<S> mb45_component(int d) {
    return mb45_model<S>()(d);
}

template <class S>
Component<S> m4_component(int d) {
    auto s = mb45_setup();
    auto w = standard_grading(*s.sig);
    w.w[s.t] = 2;
    return generating_component<S>(GenKind::M, s, w, d, {});
}

// Explicit solutions, f a function of q1..q3 (and xi1..xi3 where stated).
template <class S>
Poly<S> xi123(const ContactSetup& s) {
    return Poly<S>::gen(s.sig, s.xi[1]) * Poly<S>::gen(s.sig, s.xi[2]) * Poly<S>::gen(s.sig, s.xi[3]);
}

// F_f = f - q0 xi0 Delta f + xi0 Delta(xi1 xi2 xi3 Delta f), f = sum f_i(q) xi_i.
template <class S>
Poly<S> mb45_F(const ContactSetup& s, const Poly<S>& f) {
    auto g = [&](int x) { return Poly<S>::gen(s.sig, x); };
    Poly<S> df = delta(s, f);
    return f - g(s.q[0]) * g(s.xi[0]) * df + g(s.xi[0]) * delta(s, xi123<S>(s) * df);
}

// q0 f(q) - Delta(xi1 xi2 xi3 f)
template <class S>
Poly<S> mb45_q0_family(const ContactSetup& s, const Poly<S>& f) {
    return Poly<S>::gen(s.sig, s.q[0]) * f - delta(s, xi123<S>(s) * f);
}

// F~_f = f + q0 xi0 Delta f + 1/2 (tau - Phi - q0 xi0) Delta f, Phi = sum q_i xi_i.
template <class S>
Poly<S> mb45_F_tilde(const ContactSetup& s, const Poly<S>& f) {
    auto g = [&](int x) { return Poly<S>::gen(s.sig, x); };
    Poly<S> df = delta(s, f);
    Poly<S> phi(s.sig);
    for (int i = 1; i <= 3; ++i) phi += g(s.q[i]) * g(s.xi[i]);
    return f + g(s.q[0]) * g(s.xi[0]) * df + (g(s.t) - phi - g(s.q[0]) * g(s.xi[0])) * df.scaled(S(1) / S(2));
}

// ---------------- mb(3|8): frames, generating pairs, collections ----------------

struct Mb38Space {
    SigPtr sig;
    std::array<int, 3> u{}, eta{}, xi{};
    std::array<int, 2> chi{};
    GradingVector w;  // u: 2, eta, xi: 1, chi: 3
};

inline Mb38Space mb38_space() {
    Mb38Space sp;
    sp.sig = make_signature(numbered("u", 3),
                            {"eta1", "eta2", "eta3", "xi1", "xi2", "xi3", "chi1", "chi2"});
    for (int i = 0; i < 3; ++i) {
        sp.u[i] = i;
        sp.eta[i] = 3 + i;
        sp.xi[i] = 6 + i;
    }
    sp.chi = {9, 10};
    sp.w.w = {2, 2, 2, 1, 1, 1, 1, 1, 1, 3, 3};
    return sp;
}

template <class S>
struct Mb38Frames {
    Mb38Space sp;
    std::vector<VectorField<S>> Yu, Yeta, Yxi, Xu, Xeta, Xxi;  // indexed 0..2
    std::vector<VectorField<S>> Ychi, Xchi;                    // indexed 0..1
};

// 0-based indices of the cyclic triples.
inline std::array<std::array<int, 3>, 3> cyclic0() { return {{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}}; }

template <class S>
Mb38Frames<S> mb38_frames_unchecked() {
    Mb38Frames<S> F;
    auto sp = F.sp = mb38_space();
    auto g = [&](int x) { return Poly<S>::gen(sp.sig, x); };
    auto d = [&](int x) { return VectorField<S>::partial(sp.sig, x); };
    auto t = [&](const Poly<S>& f, int x) { return VectorField<S>::term(f, x); };
    const int c1 = sp.chi[0], c2 = sp.chi[1];
    for (auto* v : {&F.Yu, &F.Yeta, &F.Yxi, &F.Xu, &F.Xeta, &F.Xxi}) v->assign(3, VectorField<S>(sp.sig));
    for (auto [i, j, k] : cyclic0()) {
        F.Yeta[i] = d(sp.eta[i]) + t(g(sp.xi[k]), sp.u[j]) - t(g(sp.xi[j]), sp.u[k]) +
                    t(g(sp.xi[k]) * g(sp.eta[j]) - g(sp.xi[j]) * g(sp.eta[k]), c1) - t(g(sp.xi[j]) * g(sp.xi[k]), c2);
        F.Yxi[i] = d(sp.xi[i]);
        F.Yu[i] = d(sp.u[i]) + t(g(sp.eta[i]), c1) + t(g(sp.xi[i]), c2);
        F.Xxi[i] = d(sp.xi[i]) - t(g(sp.eta[j]), sp.u[k]) + t(g(sp.eta[k]), sp.u[j]) -
                   t(g(sp.eta[j]) * g(sp.eta[k]), c1) + t(g(sp.u[i]), c2);
        F.Xeta[i] = d(sp.eta[i]) + t(g(sp.u[i]), c1);
        F.Xu[i] = d(sp.u[i]);
    }
    F.Ychi = {d(c1), d(c2)};
    F.Xchi = {d(c1), d(c2)};
    return F;
}

// Commutation relations of both frames and their mutual commutation; first failure or ok.
template <class S>
CheckResult mb38_frame_relations(const Mb38Frames<S>& F) {
    auto zero = VectorField<S>(F.sp.sig);
    auto expect = [&](const VectorField<S>& got, const VectorField<S>& want, const std::string& what) -> CheckResult {
        if (got != want) return {false, what};
        return {};
    };
    std::vector<std::pair<std::string, const VectorField<S>*>> Ys, Xs;
    for (int i = 0; i < 3; ++i) {
        Ys.push_back({"Y_u" + std::to_string(i + 1), &F.Yu[i]});
        Ys.push_back({"Y_eta" + std::to_string(i + 1), &F.Yeta[i]});
        Ys.push_back({"Y_xi" + std::to_string(i + 1), &F.Yxi[i]});
        Xs.push_back({"X_u" + std::to_string(i + 1), &F.Xu[i]});
        Xs.push_back({"X_eta" + std::to_string(i + 1), &F.Xeta[i]});
        Xs.push_back({"X_xi" + std::to_string(i + 1), &F.Xxi[i]});
    }
    for (int s = 0; s < 2; ++s) {
        Ys.push_back({"Y_chi" + std::to_string(s + 1), &F.Ychi[s]});
        Xs.push_back({"X_chi" + std::to_string(s + 1), &F.Xchi[s]});
    }
    for (auto& [a, A] : Xs)
        for (auto& [b, B] : Ys)
            if (auto r = expect(bracket(*A, *B), zero, "[" + a + ", " + b + "] != 0"); !r) return r;
    // structure constants: Y's have the negatives of the X's
    for (int sgn : {1, -1}) {
        const auto& U = sgn > 0 ? F.Yu : F.Xu;
        const auto& E = sgn > 0 ? F.Yeta : F.Xeta;
        const auto& Z = sgn > 0 ? F.Yxi : F.Xxi;
        const auto& C = sgn > 0 ? F.Ychi : F.Xchi;
        std::string n = sgn > 0 ? "Y" : "X";
        S s(sgn);
        for (int i = 0; i < 3; ++i) {
            if (auto r = expect(bracket(E[i], U[i]), C[0].scaled(s), "[" + n + "_eta, " + n + "_u]"); !r) return r;
            if (auto r = expect(bracket(Z[i], U[i]), C[1].scaled(s), "[" + n + "_xi, " + n + "_u]"); !r) return r;
        }
        for (auto [i, j, k] : cyclic0()) {
            if (auto r = expect(bracket(E[i], Z[k]), U[j].scaled(s), "[" + n + "_eta_i, " + n + "_xi_k]"); !r) return r;
            if (auto r = expect(bracket(E[i], Z[j]), U[k].scaled(-s), "[" + n + "_eta_i, " + n + "_xi_j]"); !r) return r;
        }
    }
    return {};
}

template <class S>
Mb38Frames<S> mb38_frames() {
    auto F = mb38_frames_unchecked<S>();
    auto r = mb38_frame_relations(F);
    if (!r) throw std::logic_error("mb(3|8) frame self-check failed: " + r.witness);
    return F;
}

// Y_xi(F1) = 0, Y_eta(F1) = Y_xi(F2), Y_eta(F2) = 0.
template <class S>
std::vector<Poly<S>> eqF_residuals(const Mb38Frames<S>& Fr, const Poly<S>& F1, const Poly<S>& F2) {
    std::vector<Poly<S>> r;
    for (int i = 0; i < 3; ++i) {
        r.push_back(Fr.Yxi[i](F1));
        r.push_back(Fr.Yeta[i](F1) - Fr.Yxi[i](F2));
        r.push_back(Fr.Yeta[i](F2));
    }
    return r;
}

// Pfaff equations of the distribution spanned by the Y_eta, Y_xi, evaluated on the coefficients of D.
template <class S>
std::vector<Poly<S>> distribution_residuals(const Mb38Space& sp, const VectorField<S>& D) {
    auto g = [&](int x) { return Poly<S>::gen(sp.sig, x); };
    std::vector<Poly<S>> r;
    Poly<S> r4 = D.coef(sp.chi[0]), r5 = D.coef(sp.chi[1]);
    for (auto [i, j, k] : cyclic0()) {
        r.push_back(D.coef(sp.u[i]) + D.coef(sp.eta[j]) * g(sp.xi[k]) - D.coef(sp.eta[k]) * g(sp.xi[j]));
        r4 -= D.coef(sp.u[i]) * g(sp.eta[i]);
        r5 -= D.coef(sp.u[i]) * g(sp.xi[i]) + D.coef(sp.eta[i]) * g(sp.xi[j]) * g(sp.xi[k]);
    }
    r.push_back(r4);
    r.push_back(r5);
    return r;
}

// X preserves the distribution: every [X, Y_eta_i], [X, Y_xi_i] lies in it.
template <class S>
CheckResult preserves_distribution(const Mb38Frames<S>& Fr, const VectorField<S>& X) {
    for (int i = 0; i < 3; ++i)
        for (const auto* D : {&Fr.Yeta[i], &Fr.Yxi[i]})
            for (const auto& p : distribution_residuals(Fr.sp, bracket(X, *D)))
                if (!p.is_zero()) return {false, "bracket with Y_" + std::string(D == &Fr.Yxi[i] ? "xi" : "eta") + std::to_string(i + 1)};
    return {};
}

// Pairs (F1, F2) of weight d + 3 solving eqF; the element parity is p(F) + 1.
template <class S>
struct PairComponent {
    std::vector<std::pair<Poly<S>, Poly<S>>> basis;
    std::vector<int> parity;
    SDim sdim() const {
        SDim s;
        for (int p : parity) (p ? s.odd : s.even)++;
        return s;
    }
};

template <class S>
PairComponent<S> mb38_component(const Mb38Frames<S>& Fr, int d) {
    const auto& sp = Fr.sp;
    auto mons = d + 3 < 0 ? std::vector<Monomial>{} : monomials_of_weight(*sp.sig, sp.w.w, d + 3);
    const int n = static_cast<int>(mons.size());
    using Key = std::pair<int, Monomial>;
    PairComponent<S> out;
    for (int par = 0; par < 2; ++par) {
        std::vector<int> idx;
        for (int j = 0; j < n; ++j)
            if (mons[j].parity() == par) idx.push_back(j);
        const int m = static_cast<int>(idx.size());
        std::vector<std::vector<std::pair<Key, S>>> cols(2 * m);
        for (int c = 0; c < 2 * m; ++c) {
            Poly<S> f = Poly<S>::term(sp.sig, mons[idx[c % m]], S(1)), z(sp.sig);
            auto rs = c < m ? eqF_residuals(Fr, f, z) : eqF_residuals(Fr, z, f);
            for (int k = 0; k < static_cast<int>(rs.size()); ++k)
                for (auto& [mm, v] : rs[k].terms()) cols[c].push_back({{k, mm}, v});
        }
        auto ker = kernel_of_columns<S, Key>(cols);
        Mat<S> rows(ker.begin(), ker.end());
        rref(rows, 2 * m);
        for (auto& v : rows) {
            Poly<S> F1(sp.sig), F2(sp.sig);
            for (int c = 0; c < 2 * m; ++c)
                if (!v[c].is_zero()) (c < m ? F1 : F2).add_term(mons[idx[c % m]], v[c]);
            out.basis.push_back({F1, F2});
            out.parity.push_back(1 - par);
        }
    }
    return out;
}

// {alpha_1, alpha_2, f_1, f_2, f_3}, functions of u and chi; parity is that of the field X^F.
template <class S>
struct MbCollection {
    Poly<S> alpha1, alpha2;
    std::array<Poly<S>, 3> f;
    int parity = 0;
};

template <class S>
MbCollection<S> zero_collection(const Mb38Space& sp, int parity) {
    Poly<S> z(sp.sig);
    return {z, z, {z, z, z}, parity};
}

// sum (-1)^{p(f_i)} df_i/du_i + d alpha_1/d chi_1 + d alpha_2/d chi_2
template <class S>
Poly<S> collection_constraint(const Mb38Space& sp, const MbCollection<S>& c) {
    Poly<S> r = c.alpha1.partial(sp.chi[0]) + c.alpha2.partial(sp.chi[1]);
    S s(sign_of(c.parity));  // p(f_i) = p(X)
    for (int i = 0; i < 3; ++i) r += c.f[i].partial(sp.u[i]).scaled(s);
    return r;
}

template <class S>
std::pair<Poly<S>, Poly<S>> pair_from_collection(const Mb38Space& sp, const MbCollection<S>& c) {
    auto g = [&](int x) { return Poly<S>::gen(sp.sig, x); };
    const int c1 = sp.chi[0], c2 = sp.chi[1];
    Poly<S> F1 = c.alpha1 + g(sp.eta[0]) * g(sp.eta[1]) * g(sp.eta[2]) * c.alpha2.partial(c1);
    for (auto [i, j, k] : cyclic0()) F1 += g(sp.eta[i]) * g(sp.eta[j]) * c.alpha2.partial(sp.u[k]);
    for (int i = 0; i < 3; ++i) F1 += c.f[i] * g(sp.eta[i]);
    Poly<S> F2 = c.alpha2 - g(sp.xi[0]) * g(sp.xi[1]) * g(sp.xi[2]) * F1.partial(c2);
    for (int i = 0; i < 3; ++i) F2 += g(sp.xi[i]) * F1.partial(sp.eta[i]);
    for (auto [i, j, k] : cyclic0())
        F2 -= g(sp.xi[i]) * g(sp.xi[j]) * (F1.partial(sp.u[k]) + g(sp.eta[k]) * F1.partial(c1));
    return {F1, F2};
}

// X^F = F1 Y_chi1 + F2 Y_chi2 + sum (Y_u(F2) Y_xi + Y_u(F1) Y_eta - (-1)^{p(X)} Y_xi(F2) Y_u)
template <class S>
VectorField<S> field_from_pair(const Mb38Frames<S>& Fr, const Poly<S>& F1, const Poly<S>& F2, int parity) {
    VectorField<S> X = F1 * Fr.Ychi[0] + F2 * Fr.Ychi[1];
    for (int i = 0; i < 3; ++i) {
        X += Fr.Yu[i](F2) * Fr.Yxi[i] + Fr.Yu[i](F1) * Fr.Yeta[i];
        X -= Fr.Yxi[i](F2).scaled(S(sign_of(parity))) * Fr.Yu[i];
    }
    return X;
}

template <class S>
VectorField<S> field_from_collection(const Mb38Frames<S>& Fr, const MbCollection<S>& c) {
    if (!collection_constraint(Fr.sp, c).is_zero()) throw std::invalid_argument("collection violates the constraint");
    auto [F1, F2] = pair_from_collection(Fr.sp, c);
    return field_from_pair(Fr, F1, F2, c.parity);
}

// Collection of [X^F, X^G].
template <class S>
MbCollection<S> bracket_collections(const Mb38Space& sp, const MbCollection<S>& F, const MbCollection<S>& G) {
    const auto& a = F;
    const auto& b = G;
    S sG(sign_of(G.parity)), sFG(sign_of(F.parity * G.parity));
    const int c1 = sp.chi[0], c2 = sp.chi[1];
    auto du = [&](const Poly<S>& f, int i) { return f.partial(sp.u[i]); };
    auto gamma = [&](const Poly<S>& A, const Poly<S>& B) {
        // A: alpha_s of F, B: beta_s of G
        Poly<S> r(sp.sig);
        for (int i = 0; i < 3; ++i) r += -(a.f[i] * du(B, i)) + (du(A, i) * b.f[i]).scaled(sG);
        r += a.alpha1 * B.partial(c1) + a.alpha2 * B.partial(c2);
        r -= (b.alpha1 * A.partial(c1) + b.alpha2 * A.partial(c2)).scaled(sFG);
        return r;
    };
    MbCollection<S> H = zero_collection<S>(sp, (F.parity + G.parity) & 1);
    H.alpha1 = gamma(a.alpha1, b.alpha1);
    H.alpha2 = gamma(a.alpha2, b.alpha2);
    for (auto [i, j, k] : cyclic0()) {
        Poly<S> h(sp.sig);
        for (int r = 0; r < 3; ++r) h += -(a.f[r] * du(b.f[i], r)) + du(a.f[i], r) * b.f[r];
        Poly<S> t = du(a.alpha2, j) * du(b.alpha1, k) - du(a.alpha2, k) * du(b.alpha1, j) -
                    du(a.alpha1, j) * du(b.alpha2, k) + du(a.alpha1, k) * du(b.alpha2, j);
        h -= t.scaled(sG);
        h += a.alpha1 * b.f[i].partial(c1) + a.alpha2 * b.f[i].partial(c2);
        h -= (b.alpha1 * a.f[i].partial(c1) + b.alpha2 * a.f[i].partial(c2)).scaled(sFG);
        H.f[i] = h;
    }
    return H;
}

// Random collection satisfying the constraint: alpha_1's chi_1-linear part absorbs the constraint.
template <class S, class Rng>
MbCollection<S> random_collection(const Mb38Space& sp, int parity, int udeg, Rng& rng) {
    std::uniform_int_distribution<int> coef(-3, 3);
    const int c1 = sp.chi[0], c2 = sp.chi[1];
    auto rnd = [&](int par) {
        Poly<S> f(sp.sig);
        for (int mask = 0; mask < 4; ++mask) {
            if (((mask & 1) + (mask >> 1)) % 2 != par) continue;
            for (int a = 0; a <= udeg; ++a)
                for (int b = 0; a + b <= udeg; ++b)
                    for (int c = 0; a + b + c <= udeg; ++c) {
                        int v = coef(rng);
                        if (!v || rng() % 3 == 0) continue;
                        Monomial m;
                        m.e[0] = a;
                        m.e[1] = b;
                        m.e[2] = c;
                        if (mask & 1) m.odd |= 1u << sp.sig->odd_slot(c1);
                        if (mask & 2) m.odd |= 1u << sp.sig->odd_slot(c2);
                        f.add_term(m, S(v));
                    }
        }
        return f;
    };
    MbCollection<S> c = zero_collection<S>(sp, parity);
    int pa = 1 - parity;  // alpha parity = p(F) = p(X) + 1
    c.alpha2 = rnd(pa);
    for (auto& f : c.f) f = rnd(parity);
    // alpha_1 without chi_1; the chi_1-dependent part of the divergence is moved into f_1, the rest into alpha_1
    c.alpha1 = rnd(pa).set_zero({c1});
    Poly<S> chi1 = Poly<S>::gen(sp.sig, c1);
    Poly<S> rest = collection_constraint(sp, c);
    c.f[0] -= (chi1 * rest.partial(c1).antiderivative(sp.u[0])).scaled(S(sign_of(parity)));
    rest = collection_constraint(sp, c);
    c.alpha1 -= Poly<S>::gen(sp.sig, c1) * rest;
    return c;
}

// ---------------- module-level brackets of mb(3|8) on V1..V5 ----------------

// Calculus on functions of u1, u2, u3: a 2-form sum w_i du_j du_k and a vector field sum w_i d_i share
// the component triple; 3-forms are functions times vol.
template <class S>
using Triple = std::array<Poly<S>, 3>;

template <class S>
struct MbModuleElement {
    explicit MbModuleElement(const SigPtr& sig)
        : v1{Poly<S>(sig), Poly<S>(sig), Poly<S>(sig)},
          v2{{{Poly<S>(sig), Poly<S>(sig)}, {Poly<S>(sig), Poly<S>(sig)}}},
          v3{Poly<S>(sig), Poly<S>(sig), Poly<S>(sig)},
          v4{Poly<S>(sig), Poly<S>(sig)},
          v5{{{Poly<S>(sig), Poly<S>(sig), Poly<S>(sig)}, {Poly<S>(sig), Poly<S>(sig), Poly<S>(sig)}}} {}
    Triple<S> v1;                          // closed 2-form
    std::array<std::array<Poly<S>, 2>, 2> v2;  // sl(2)-valued function
    Triple<S> v3;                          // vector field
    std::array<Poly<S>, 2> v4;             // alpha vol^{-1/2} (x) e_a
    std::array<Triple<S>, 2> v5;           // omega vol^{-1/2} (x) e_a
};

template <class S>
class MbModules {
public:
    explicit MbModules(S kappa = S(1)) : kappa_(kappa) { sig_ = make_signature(numbered("u", 3), {}); }

    const SigPtr& sig() const { return sig_; }
    Poly<S> zero() const { return Poly<S>(sig_); }
    Poly<S> u(int i) const { return Poly<S>::gen(sig_, i); }
    Triple<S> zero3() const { return {zero(), zero(), zero()}; }
    MbModuleElement<S> zero_element() const { return MbModuleElement<S>(sig_); }
    bool is_zero(const MbModuleElement<S>& e) const {
        for (int i = 0; i < 3; ++i)
            if (!e.v1[i].is_zero() || !e.v3[i].is_zero() || !e.v5[0][i].is_zero() || !e.v5[1][i].is_zero())
                return false;
        for (int a = 0; a < 2; ++a) {
            if (!e.v4[a].is_zero()) return false;
            for (int b = 0; b < 2; ++b)
                if (!e.v2[a][b].is_zero()) return false;
        }
        return true;
    }
    MbModuleElement<S> add(MbModuleElement<S> a, const MbModuleElement<S>& b, const S& s = S(1)) const {
        for (int i = 0; i < 3; ++i) {
            a.v1[i] += b.v1[i].scaled(s);
            a.v3[i] += b.v3[i].scaled(s);
            for (int e = 0; e < 2; ++e) a.v5[e][i] += b.v5[e][i].scaled(s);
        }
        for (int x = 0; x < 2; ++x) {
            a.v4[x] += b.v4[x].scaled(s);
            for (int y = 0; y < 2; ++y) a.v2[x][y] += b.v2[x][y].scaled(s);
        }
        return a;
    }
    std::string str(const MbModuleElement<S>& e) const {
        std::string r;
        auto put = [&](const std::string& n, const Poly<S>& p) {
            if (!p.is_zero()) r += (r.empty() ? "" : ", ") + n + "=" + p.str();
        };
        for (int i = 0; i < 3; ++i) put("V1[" + std::to_string(i + 1) + "]", e.v1[i]);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) put("V2[" + std::to_string(a) + std::to_string(b) + "]", e.v2[a][b]);
        for (int i = 0; i < 3; ++i) put("V3[" + std::to_string(i + 1) + "]", e.v3[i]);
        for (int a = 0; a < 2; ++a) put("V4[e" + std::to_string(a + 1) + "]", e.v4[a]);
        for (int a = 0; a < 2; ++a)
            for (int i = 0; i < 3; ++i) put("V5[e" + std::to_string(a + 1) + "," + std::to_string(i + 1) + "]", e.v5[a][i]);
        return r.empty() ? "0" : r;
    }

    // constructors
    MbModuleElement<S> two_form(const Triple<S>& w) const {
        auto e = zero_element();
        e.v1 = w;
        return e;
    }
    MbModuleElement<S> field(const Triple<S>& d) const {
        auto e = zero_element();
        e.v3 = d;
        return e;
    }
    MbModuleElement<S> sl2(const Poly<S>& f, const std::array<std::array<S, 2>, 2>& A) const {
        auto e = zero_element();
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) e.v2[a][b] = f.scaled(A[a][b]);
        return e;
    }
    MbModuleElement<S> density(const Poly<S>& alpha, int basis_vector) const {
        auto e = zero_element();
        e.v4[basis_vector] = alpha;
        return e;
    }
    MbModuleElement<S> form_density(const Triple<S>& w, int basis_vector) const {
        auto e = zero_element();
        e.v5[basis_vector] = w;
        return e;
    }

    // calculus
    Triple<S> grad(const Poly<S>& f) const { return {f.partial(0), f.partial(1), f.partial(2)}; }
    Triple<S> cross(const Triple<S>& a, const Triple<S>& b) const {
        return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
    }
    Poly<S> dot(const Triple<S>& a, const Triple<S>& b) const { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
    Poly<S> div(const Triple<S>& w) const { return w[0].partial(0) + w[1].partial(1) + w[2].partial(2); }
    Poly<S> apply(const Triple<S>& D, const Poly<S>& f) const { return dot(D, grad(f)); }
    Triple<S> scale(const Poly<S>& f, const Triple<S>& w) const { return {f * w[0], f * w[1], f * w[2]}; }
    Triple<S> plus(const Triple<S>& a, const Triple<S>& b, const S& s = S(1)) const {
        return {a[0] + b[0].scaled(s), a[1] + b[1].scaled(s), a[2] + b[2].scaled(s)};
    }
    Triple<S> commutator(const Triple<S>& D, const Triple<S>& E) const {
        Triple<S> r = zero3();
        for (int i = 0; i < 3; ++i) r[i] = apply(D, E[i]) - apply(E, D[i]);
        return r;
    }
    // L_D on 2-forms via omega = i_W vol: L_D omega <-> [D, W] + (Div D) W
    Triple<S> lie_two_form(const Triple<S>& D, const Triple<S>& w) const {
        return plus(commutator(D, w), scale(div(D), w));
    }

    // vectors of C^2
    static S wedge(int a, int b) { return a == b ? S(0) : (a == 0 ? S(1) : S(-1)); }  // det(e_a, e_b)
    static std::array<std::array<S, 2>, 2> sym(int a, int b) {
        // v.w -> (-v1w2-v2w1, 2v1w1; -2v2w2, v1w2+v2w1) for v = e_a, w = e_b
        S v1(a == 0), v2(a == 1), w1(b == 0), w2(b == 1);
        return {{{-(v1 * w2) - v2 * w1, S(2) * v1 * w1}, {S(-2) * v2 * w2, v1 * w2 + v2 * w1}}};
    }

    // bracket of homogeneous pieces; parity: V1, V2, V3 even, V4, V5 odd
    MbModuleElement<S> bracket(const MbModuleElement<S>& x, const MbModuleElement<S>& y) const {
        auto r = zero_element();
        auto X = split(x), Y = split(y);
        for (auto& a : X)
            for (auto& b : Y) r = add(r, bracket_piece(a, b));
        return r;
    }

    // [x,[y,z]] - [[x,y],z] - (-1)^{p(x)p(y)} [y,[x,z]] for homogeneous x, y, z
    MbModuleElement<S> jacobi(const MbModuleElement<S>& x, const MbModuleElement<S>& y,
                              const MbModuleElement<S>& z) const {
        int px = parity_of(x), py = parity_of(y);
        auto r = bracket(x, bracket(y, z));
        r = add(r, bracket(bracket(x, y), z), S(-1));
        return add(r, bracket(y, bracket(x, z)), S(-sign_of(px * py)));
    }

    int parity_of(const MbModuleElement<S>& e) const {
        bool ev = false, od = false;
        for (auto& p : split(e)) (p.kind >= 4 ? od : ev) = true;
        if (ev && od) throw std::invalid_argument("element is not homogeneous");
        return od ? 1 : 0;
    }

private:
    struct Piece {
        int kind;      // 1..5
        int e = 0;     // basis vector of C^2 for V4, V5
        Triple<S> w;   // V1, V3, V5
        Poly<S> f;     // V2 coefficient, V4
        std::array<std::array<S, 2>, 2> A{};  // V2 matrix unit
    };
    std::vector<Piece> split(const MbModuleElement<S>& x) const {
        std::vector<Piece> r;
        auto nz = [](const Triple<S>& t) { return !t[0].is_zero() || !t[1].is_zero() || !t[2].is_zero(); };
        if (nz(x.v1)) r.push_back({1, 0, x.v1, zero(), {}});
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                if (!x.v2[a][b].is_zero()) {
                    Piece p{2, 0, zero3(), x.v2[a][b], {}};
                    p.A[a][b] = S(1);
                    r.push_back(p);
                }
        if (nz(x.v3)) r.push_back({3, 0, x.v3, zero(), {}});
        for (int a = 0; a < 2; ++a)
            if (!x.v4[a].is_zero()) r.push_back({4, a, zero3(), x.v4[a], {}});
        for (int a = 0; a < 2; ++a)
            if (nz(x.v5[a])) r.push_back({5, a, x.v5[a], zero(), {}});
        return r;
    }
    // A e_b as a combination of e_0, e_1
    static std::array<S, 2> act(const std::array<std::array<S, 2>, 2>& A, int b) { return {A[0][b], A[1][b]}; }

    MbModuleElement<S> bracket_piece(const Piece& a, const Piece& b) const {
        int ka = a.kind, kb = b.kind;
        // reorder so that ka <= kb; [b, a] = -(-1)^{p(a)p(b)} [a, b]
        if (ka > kb) {
            int pa = ka >= 4, pb = kb >= 4;
            auto r = bracket_piece(b, a);
            auto z = zero_element();
            return add(z, r, S(-sign_of(pa * pb)));
        }
        auto r = zero_element();
        if (ka == 1 && (kb == 1 || kb == 2 || kb == 5)) return r;
        if (ka == 1 && kb == 3) {  // [omega, D] = -L_D omega
            r.v1 = plus(zero3(), lie_two_form(b.w, a.w), S(-1));
            return r;
        }
        if (ka == 1 && kb == 4) {  // alpha omega (x) v in V5
            r.v5[b.e] = scale(b.f, a.w);
            return r;
        }
        if (ka == 2 && kb == 2) {  // fg [A,B] + df dg tr AB
            std::array<std::array<S, 2>, 2> C{}, AB{};
            S tr(0);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    for (int k = 0; k < 2; ++k) {
                        C[i][j] += a.A[i][k] * b.A[k][j] - b.A[i][k] * a.A[k][j];
                        AB[i][j] += a.A[i][k] * b.A[k][j];
                    }
                }
            tr = AB[0][0] + AB[1][1];
            r = sl2(a.f * b.f, C);
            r.v1 = scale(Poly<S>(sig_, tr), cross(grad(a.f), grad(b.f)));
            return r;
        }
        if (ka == 2 && kb == 3) {  // [f A, D] = -D(f) A
            return sl2(apply(b.w, a.f).scaled(S(-1)), a.A);
        }
        if (ka == 2 && kb == 4) {  // (f alpha - df dalpha) (x) A v
            auto Av = act(a.A, b.e);
            for (int c = 0; c < 2; ++c) {
                if (Av[c].is_zero()) continue;
                r.v4[c] += (a.f * b.f).scaled(Av[c]);
                r.v5[c] = plus(r.v5[c], cross(grad(a.f), grad(b.f)), -Av[c]);
            }
            return r;
        }
        if (ka == 2 && kb == 5) {  // f omega (x) A v
            auto Av = act(a.A, b.e);
            for (int c = 0; c < 2; ++c)
                if (!Av[c].is_zero()) r.v5[c] = plus(r.v5[c], scale(a.f, b.w), Av[c]);
            return r;
        }
        if (ka == 3 && kb == 3) {  // [D, E] - 1/2 d(Div D) d(Div E)
            r.v3 = commutator(a.w, b.w);
            r.v1 = plus(zero3(), cross(grad(div(a.w)), grad(div(b.w))), S(-1) / S(2));
            return r;
        }
        if (ka == 3 && kb == 4) {  // (D(alpha) - 1/2 Div D alpha + 1/2 d(Div D) d alpha) (x) v
            Poly<S> dv = div(a.w);
            r.v4[b.e] = apply(a.w, b.f) - (dv * b.f).scaled(S(1) / S(2));
            r.v5[b.e] = plus(zero3(), cross(grad(dv), grad(b.f)), S(1) / S(2));
            return r;
        }
        if (ka == 3 && kb == 5) {  // (L_D omega - 1/2 Div D omega) (x) v
            r.v5[b.e] = plus(lie_two_form(a.w, b.w), scale(div(a.w), b.w), S(-1) / S(2));
            return r;
        }
        if (ka == 4 && kb == 4) {  // df dg / vol (x) v ^ w
            S det = wedge(a.e, b.e);
            if (!det.is_zero()) r.v3 = plus(zero3(), cross(grad(a.f), grad(b.f)), det);
            return r;
        }
        if (ka == 4 && kb == 5) {
            // f omega / vol (x) v^w - 1/2 (f d omega - omega ^ df) (x) v.w + kappa df ^ d(Div D_omega) (x) v^w
            S det = wedge(a.e, b.e);
            if (!det.is_zero()) {
                r.v3 = plus(zero3(), scale(a.f, b.w), det);
                r.v1 = plus(zero3(), cross(grad(a.f), grad(div(b.w))), kappa_ * det);
            }
            Poly<S> g = (a.f * div(b.w) - dot(b.w, grad(a.f))).scaled(S(-1) / S(2));
            auto M = sym(a.e, b.e);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) r.v2[i][j] += g.scaled(M[i][j]);
            return r;
        }
        if (ka == 5 && kb == 5) {  // (D_omega1(omega2) - Div D_omega1 omega2) v^w
            S det = wedge(a.e, b.e);
            if (!det.is_zero())
                r.v1 = plus(zero3(), plus(lie_two_form(a.w, b.w), scale(div(a.w), b.w), S(-1)), det);
            return r;
        }
        throw std::logic_error("unhandled module pair");
    }

    S kappa_;
    SigPtr sig_;
};

// The triple u3 du2^du3 in V1, u1 vol^{-1/2} (x) e1 and u2 vol^{-1/2} (x) e2 in V4.
template <class S>
struct LazhaResult {
    bool holds = false;
    std::string residual;
};

template <class S>
LazhaResult<S> lazha_jacobi(const S& kappa) {
    MbModules<S> M(kappa);
    auto omega = M.two_form({M.u(2), M.zero(), M.zero()});
    auto a = M.density(M.u(0), 0);
    auto b = M.density(M.u(1), 1);
    auto r = M.jacobi(omega, a, b);
    return {M.is_zero(r), M.str(r)};
}

// ---------------- kas inside k(1|6) ----------------

template <class S>
struct KasData {
    Algebra<S> k16;
    std::vector<VectorField<S>> g11_xi;  // g_0-module generated by K_{xi1 xi2 xi3}
    std::vector<VectorField<S>> g12;     // K_{t xi_i}, K_{t eta_i}
    GradedSubspace<S> kas;
};

// g_0-submodule of a component generated by v.
template <class S>
Component<S> submodule(const std::vector<VectorField<S>>& g0, const SpacePtr& sp, const VectorField<S>& v) {
    auto C = Component<S>::span(sp, {v});
    std::vector<VectorField<S>> frontier{v};
    while (!frontier.empty()) {
        std::vector<VectorField<S>> next, all = C.basis();
        for (auto& x : frontier)
            for (auto& a : g0) {
                auto y = bracket(a, x);
                if (y.is_zero() || C.contains(y)) continue;
                all.push_back(y);
                C = Component<S>::span(sp, all);
                next.push_back(y);
            }
        frontier = std::move(next);
    }
    return C;
}

template <class S>
KasData<S> kas_xi(int N) {
    KasData<S> K;
    K.k16 = make_algebra<S>(Series::k, 0, 6, {});
    auto s = K.k16.setup;
    auto w = K.k16.w;
    auto g = components(K.k16, 1, -2);
    auto sp1 = make_space(s.sig, w, 1);
    auto gen = [&](int x) { return Poly<S>::gen(s.sig, x); };
    auto top = field_K(s, gen(s.xi[0]) * gen(s.xi[1]) * gen(s.xi[2]));
    K.g11_xi = submodule(g.at(0).basis(), sp1, top).basis();
    for (auto x : s.xi) K.g12.push_back(field_K(s, gen(s.t) * gen(x)));
    for (auto x : s.eta) K.g12.push_back(field_K(s, gen(s.t) * gen(x)));
    ProlongSpec<S> spec{s.sig, w, {}, g.at(0).basis(), N};
    spec.negative[-2] = g.at(-2).basis();
    spec.negative[-1] = g.at(-1).basis();
    auto h1 = K.g11_xi;
    h1.insert(h1.end(), K.g12.begin(), K.g12.end());
    K.kas = partial_prolong(spec, h1, K.k16.model);
    return K;
}

}  // namespace superprolong
