#pragma once

#include "superprolong/fields.hpp"

#include <functional>
#include <string>
#include <vector>

namespace superprolong {

// Coordinates of a contact (K) or pericontact (M) superspace.
struct ContactSetup {
    enum class Kind { K, M };
    SigPtr sig;
    Kind kind = Kind::K;
    int t = -1;  // t for K, tau for M
    std::vector<int> p, q, xi, eta, theta;

    // All generators except t.
    std::vector<int> others() const {
        std::vector<int> r;
        for (int g = 0; g < sig->size(); ++g)
            if (g != t) r.push_back(g);
        return r;
    }
};

inline std::vector<std::string> numbered(const std::string& base, int n, int from = 1) {
    std::vector<std::string> r;
    for (int i = 0; i < n; ++i) r.push_back(base + std::to_string(i + from));
    return r;
}

// k(2n+1|m) with alpha_1 = dt + sum(p dq - q dp) + sum(xi deta + eta dxi) + sum theta dtheta.
// m odd generators split into [m/2] xi/eta pairs and m mod 2 thetas; all_theta uses m thetas instead.
inline ContactSetup k_setup(int n, int m, bool all_theta = false, std::vector<std::string> extra_odd = {}) {
    std::vector<std::string> ev{"t"};
    auto ps = numbered("p", n), qs = numbered("q", n);
    ev.insert(ev.end(), ps.begin(), ps.end());
    ev.insert(ev.end(), qs.begin(), qs.end());
    int pairs = all_theta ? 0 : m / 2;
    int thetas = m - 2 * pairs;
    std::vector<std::string> od;
    auto xs = numbered("xi", pairs), es = numbered("eta", pairs), ts = numbered("theta", thetas);
    od.insert(od.end(), xs.begin(), xs.end());
    od.insert(od.end(), es.begin(), es.end());
    od.insert(od.end(), ts.begin(), ts.end());
    od.insert(od.end(), extra_odd.begin(), extra_odd.end());
    ContactSetup s;
    s.sig = make_signature(ev, od);
    s.kind = ContactSetup::Kind::K;
    s.t = 0;
    for (int i = 0; i < n; ++i) {
        s.p.push_back(1 + i);
        s.q.push_back(1 + n + i);
    }
    int o = 1 + 2 * n;
    for (int i = 0; i < pairs; ++i) {
        s.xi.push_back(o + i);
        s.eta.push_back(o + pairs + i);
    }
    for (int i = 0; i < thetas; ++i) s.theta.push_back(o + 2 * pairs + i);
    return s;
}

// m(n) on (q_1..q_n | xi_1..xi_n, tau) with alpha_0 = dtau + sum(xi dq + q dxi).
inline ContactSetup m_setup(int n, int first_index = 1) {
    ContactSetup s;
    std::vector<std::string> od = numbered("xi", n, first_index);
    od.push_back("tau");
    s.sig = make_signature(numbered("q", n, first_index), od);
    s.kind = ContactSetup::Kind::M;
    for (int i = 0; i < n; ++i) {
        s.q.push_back(i);
        s.xi.push_back(n + i);
    }
    s.t = 2 * n;
    return s;
}

// Hamiltonian setup (p,q | xi,eta,theta) without t: same coordinates as k_setup minus t.
inline ContactSetup h_setup(int n, int m, bool all_theta = false) {
    int pairs = all_theta ? 0 : m / 2;
    int thetas = m - 2 * pairs;
    std::vector<std::string> ev;
    auto ps = numbered("p", n), qs = numbered("q", n);
    ev.insert(ev.end(), ps.begin(), ps.end());
    ev.insert(ev.end(), qs.begin(), qs.end());
    std::vector<std::string> od;
    auto xs = numbered("xi", pairs), es = numbered("eta", pairs), ts = numbered("theta", thetas);
    od.insert(od.end(), xs.begin(), xs.end());
    od.insert(od.end(), es.begin(), es.end());
    od.insert(od.end(), ts.begin(), ts.end());
    ContactSetup s;
    s.sig = make_signature(ev, od);
    s.kind = ContactSetup::Kind::K;
    s.t = -1;
    for (int i = 0; i < n; ++i) {
        s.p.push_back(i);
        s.q.push_back(n + i);
    }
    int o = 2 * n;
    for (int i = 0; i < pairs; ++i) {
        s.xi.push_back(o + i);
        s.eta.push_back(o + pairs + i);
    }
    for (int i = 0; i < thetas; ++i) s.theta.push_back(o + 2 * pairs + i);
    return s;
}

// Antibracket setup (q | xi) without tau.
inline ContactSetup le_setup(int n) {
    ContactSetup s;
    s.sig = make_signature(numbered("q", n), numbered("xi", n));
    s.kind = ContactSetup::Kind::M;
    for (int i = 0; i < n; ++i) {
        s.q.push_back(i);
        s.xi.push_back(n + i);
    }
    s.t = -1;
    return s;
}

namespace detail {

// Applies a parity-dependent linear rule to each parity component of f and sums.
template <class S, class R, class F>
R by_parity(const Poly<S>& f, R zero, F rule) {
    auto [e, o] = split_parity(f);
    R r = zero;
    if (!e.is_zero()) r += rule(e, 0);
    if (!o.is_zero()) r += rule(o, 1);
    return r;
}

template <class S>
S sgn(int p) {
    return (p & 1) ? S(-1) : S(1);
}

}  // namespace detail

template <class S>
Poly<S> euler_except_t(const ContactSetup& s, const Poly<S>& f) {
    return f.euler(s.others());
}

// (2 - E) f
template <class S>
Poly<S> two_minus_euler(const ContactSetup& s, const Poly<S>& f) {
    return f.scaled(S(2)) - euler_except_t(s, f);
}

// Euler field over all generators except t.
template <class S>
VectorField<S> euler_field(const ContactSetup& s) {
    VectorField<S> e(s.sig);
    for (int g : s.others()) e.set(g, Poly<S>::gen(s.sig, g));
    return e;
}

template <class S>
VectorField<S> field_H(const ContactSetup& s, const Poly<S>& f) {
    return detail::by_parity(f, VectorField<S>(s.sig), [&](const Poly<S>& h, int p) {
        VectorField<S> d(s.sig);
        for (size_t i = 0; i < s.p.size(); ++i) {
            d.set(s.q[i], d.coef(s.q[i]) + h.partial(s.p[i]));
            d.set(s.p[i], d.coef(s.p[i]) - h.partial(s.q[i]));
        }
        S sg = -detail::sgn<S>(p);
        for (size_t i = 0; i < s.xi.size(); ++i) {
            d.set(s.eta[i], d.coef(s.eta[i]) + h.partial(s.xi[i]).scaled(sg));
            d.set(s.xi[i], d.coef(s.xi[i]) + h.partial(s.eta[i]).scaled(sg));
        }
        for (int th : s.theta) d.set(th, d.coef(th) + h.partial(th).scaled(sg));
        return d;
    });
}

// K_f = (2-E)(f) d_t - H_f + f_t E
template <class S>
VectorField<S> field_K(const ContactSetup& s, const Poly<S>& f) {
    if (s.kind != ContactSetup::Kind::K || s.t < 0) throw std::invalid_argument("field_K needs a contact setup");
    VectorField<S> d = VectorField<S>::term(two_minus_euler(s, f), s.t);
    d -= field_H(s, f);
    Poly<S> ft = f.partial(s.t);
    if (!ft.is_zero()) d += ft * euler_field<S>(s);
    return d;
}

// Le_f = sum(f_q d_xi + (-1)^{p(f)} f_xi d_q)
template <class S>
VectorField<S> field_Le(const ContactSetup& s, const Poly<S>& f) {
    if (s.kind != ContactSetup::Kind::M) throw std::invalid_argument("field_Le needs a pericontact setup");
    return detail::by_parity(f, VectorField<S>(s.sig), [&](const Poly<S>& h, int p) {
        VectorField<S> d(s.sig);
        for (size_t i = 0; i < s.q.size(); ++i) {
            d.set(s.xi[i], h.partial(s.q[i]));
            d.set(s.q[i], h.partial(s.xi[i]).scaled(detail::sgn<S>(p)));
        }
        return d;
    });
}

// M_f = (2-E)(f) d_tau - Le_f - (-1)^{p(f)} f_tau E
template <class S>
VectorField<S> field_M(const ContactSetup& s, const Poly<S>& f) {
    if (s.kind != ContactSetup::Kind::M || s.t < 0) throw std::invalid_argument("field_M needs a pericontact setup");
    return detail::by_parity(f, VectorField<S>(s.sig), [&](const Poly<S>& h, int p) {
        VectorField<S> d = VectorField<S>::term(two_minus_euler(s, h), s.t);
        d -= field_Le(s, h);
        Poly<S> ft = h.partial(s.t);
        if (!ft.is_zero()) d -= ft.scaled(detail::sgn<S>(p)) * euler_field<S>(s);
        return d;
    });
}

// sum over i of d^2 f / dq_i dxi_i
template <class S>
Poly<S> delta(const ContactSetup& s, const Poly<S>& f) {
    Poly<S> r(s.sig);
    for (size_t i = 0; i < s.q.size(); ++i) r += f.partial(s.xi[i]).partial(s.q[i]);
    return r;
}

// Bilinear extension over the parity components of the first argument.
template <class S, class F>
Poly<S> bilinear_by_first(const Poly<S>& f, const Poly<S>& g, F rule) {
    return detail::by_parity(f, Poly<S>(f.sig()), [&](const Poly<S>& h, int p) { return rule(h, g, p); });
}

template <class S>
Poly<S> bracket_pb(const ContactSetup& s, const Poly<S>& f, const Poly<S>& g) {
    return bilinear_by_first(f, g, [&](const Poly<S>& a, const Poly<S>& b, int p) {
        Poly<S> r(s.sig);
        for (size_t i = 0; i < s.p.size(); ++i) {
            r += a.partial(s.p[i]) * b.partial(s.q[i]);
            r -= a.partial(s.q[i]) * b.partial(s.p[i]);
        }
        Poly<S> o(s.sig);
        for (size_t i = 0; i < s.xi.size(); ++i) {
            o += a.partial(s.xi[i]) * b.partial(s.eta[i]);
            o += a.partial(s.eta[i]) * b.partial(s.xi[i]);
        }
        for (int th : s.theta) o += a.partial(th) * b.partial(th);
        return r - o.scaled(detail::sgn<S>(p));
    });
}

template <class S>
Poly<S> bracket_bb(const ContactSetup& s, const Poly<S>& f, const Poly<S>& g) {
    return bilinear_by_first(f, g, [&](const Poly<S>& a, const Poly<S>& b, int p) {
        Poly<S> r(s.sig);
        for (size_t i = 0; i < s.q.size(); ++i) {
            r += a.partial(s.q[i]) * b.partial(s.xi[i]);
            r += (a.partial(s.xi[i]) * b.partial(s.q[i])).scaled(detail::sgn<S>(p));
        }
        return r;
    });
}

// (2-E)(f) g_t - f_t (2-E)(g) - {f,g}_P.b.
template <class S>
Poly<S> bracket_kb(const ContactSetup& s, const Poly<S>& f, const Poly<S>& g) {
    return two_minus_euler(s, f) * g.partial(s.t) - f.partial(s.t) * two_minus_euler(s, g) - bracket_pb(s, f, g);
}

// (2-E)(f) g_tau + (-1)^{p(f)} f_tau (2-E)(g) - {f,g}_B.b.
template <class S>
Poly<S> bracket_mb(const ContactSetup& s, const Poly<S>& f, const Poly<S>& g) {
    return bilinear_by_first(f, g, [&](const Poly<S>& a, const Poly<S>& b, int p) {
        return two_minus_euler(s, a) * b.partial(s.t) +
               (a.partial(s.t) * two_minus_euler(s, b)).scaled(detail::sgn<S>(p)) - bracket_bb(s, a, b);
    });
}

// Contact form preserved up to the factor 2 f_t by every K_f:
// dt - sum(p dq - q dp) - sum(xi deta + eta dxi) - sum theta dtheta.
template <class S>
OneForm<S> alpha1(const ContactSetup& s) {
    const auto& sig = s.sig;
    OneForm<S> a = OneForm<S>::dx(sig, s.t);
    for (size_t i = 0; i < s.p.size(); ++i) {
        a -= Poly<S>::gen(sig, s.p[i]) * OneForm<S>::dx(sig, s.q[i]);
        a += Poly<S>::gen(sig, s.q[i]) * OneForm<S>::dx(sig, s.p[i]);
    }
    for (size_t i = 0; i < s.xi.size(); ++i) {
        a -= Poly<S>::gen(sig, s.xi[i]) * OneForm<S>::dx(sig, s.eta[i]);
        a -= Poly<S>::gen(sig, s.eta[i]) * OneForm<S>::dx(sig, s.xi[i]);
    }
    for (int th : s.theta) a -= Poly<S>::gen(sig, th) * OneForm<S>::dx(sig, th);
    return a;
}

// The same form on a setup built with thetas only.
template <class S>
OneForm<S> alpha1_tilde(const ContactSetup& s) {
    if (!s.xi.empty()) throw std::invalid_argument("alpha1_tilde needs a setup with thetas only");
    return alpha1<S>(s);
}

// Pericontact form dtau - sum(xi dq + q dxi); L_{M_f} of it is -(-1)^{p(f)} 2 f_tau times itself.
template <class S>
OneForm<S> alpha0(const ContactSetup& s) {
    const auto& sig = s.sig;
    OneForm<S> a = OneForm<S>::dx(sig, s.t);
    for (size_t i = 0; i < s.q.size(); ++i) {
        a -= Poly<S>::gen(sig, s.xi[i]) * OneForm<S>::dx(sig, s.q[i]);
        a -= Poly<S>::gen(sig, s.q[i]) * OneForm<S>::dx(sig, s.xi[i]);
    }
    return a;
}

// (bn - aE) f_tau - a Delta f; zero exactly on the generating functions of b_{a,b}(n).
template <class S>
Poly<S> div_lambda(const ContactSetup& s, const Poly<S>& f, const S& a, const S& b) {
    const S n(static_cast<long>(s.q.size()));
    Poly<S> ft = f.partial(s.t);
    return ft.scaled(b * n) - euler_except_t(s, ft).scaled(a) - delta(s, f).scaled(a);
}

// (a, b) with 2a/(n(a-b)) = lambda; lambda = infinity is encoded by nullopt.
template <class S>
std::pair<S, S> ab_for_lambda(int n, const std::optional<S>& lambda) {
    if (!lambda) return {S(1), S(1)};
    S a = *lambda * S(n);
    return {a, a - S(2)};
}

enum class Series {
    vect, svect, svect_tilde, svect_prime, k, po, h, h_prime, m, b, le, sle, sle_prime, sm, b_ab, b_prime_1,
    b_prime_inf
};

// Generating-function residuals cutting each series out of its ambient k, m, h or le; empty means no condition.
template <class S>
std::vector<Poly<S>> series_condition(Series tag, const ContactSetup& s, const Poly<S>& f, const S& a = S(0),
                                      const S& b = S(1)) {
    const auto& sig = s.sig;
    switch (tag) {
        case Series::k:
        case Series::m:
        case Series::h:
        case Series::le:
            return {};
        case Series::po:
            return {f.partial(s.t)};
        case Series::b:
            return {f.partial(s.t)};
        case Series::sm: {
            Poly<S> ft = f.partial(s.t);
            return {ft - euler_except_t(s, ft) - delta(s, f)};
        }
        case Series::sle:
            return {delta(s, f)};
        case Series::sle_prime: {
            Monomial top;
            for (int x : s.xi) top.odd |= 1u << sig->odd_slot(x);
            return {delta(s, f), Poly<S>(sig, f.coeff(top))};
        }
        case Series::b_ab:
            return {div_lambda(s, f, a, b)};
        case Series::b_prime_1:
        case Series::b_prime_inf: {
            int n = static_cast<int>(s.q.size());
            S aa = tag == Series::b_prime_1 ? S(n) : S(1);
            S bb = tag == Series::b_prime_1 ? S(n - 2) : S(1);
            Monomial top;
            for (int x : s.xi) top.odd |= 1u << sig->odd_slot(x);
            if (tag == Series::b_prime_inf) top.odd |= 1u << sig->odd_slot(s.t);
            return {div_lambda(s, f, aa, bb), Poly<S>(sig, f.coeff(top))};
        }
        default:
            throw std::invalid_argument("series_condition: not a generating-function series");
    }
}

// First nonzero membership residual, or zero when f is a member.
template <class S>
Poly<S> member_residual(Series tag, const ContactSetup& s, const Poly<S>& f, const S& a = S(0), const S& b = S(1)) {
    for (auto& c : series_condition(tag, s, f, a, b))
        if (!c.is_zero()) return c;
    return Poly<S>(s.sig);
}

template <class S>
bool member(Series tag, const ContactSetup& s, const Poly<S>& f, const S& a = S(0), const S& b = S(1)) {
    for (auto& c : series_condition(tag, s, f, a, b))
        if (!c.is_zero()) return false;
    return true;
}

// Div((1 + mu * prod(thetas)) D) = 0 when mu is given; plain Div D = 0 otherwise.
template <class S>
Poly<S> svect_residual(const VectorField<S>& D, std::optional<int> mu = std::nullopt, std::vector<int> thetas = {}) {
    if (!mu) return divergence(D);
    const auto& sig = D.sig();
    Poly<S> w = Poly<S>::gen(sig, *mu);
    for (int t : thetas) w = w * Poly<S>::gen(sig, t);
    w += Poly<S>(sig, S(1));
    return divergence(w * D);
}

template <class S>
bool member_svect(const VectorField<S>& D, std::optional<int> mu = std::nullopt, std::vector<int> thetas = {}) {
    return svect_residual(D, mu, std::move(thetas)).is_zero();
}

}  // namespace superprolong
