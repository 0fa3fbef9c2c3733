#pragma once

#include "superprolong/linalg.hpp"
#include "superprolong/poly.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace superprolong {

// Integer weight per generator.
struct GradingVector {
    std::vector<int> w;
    int operator[](int i) const { return w[i]; }
    size_t size() const { return w.size(); }
    friend bool operator==(const GradingVector& a, const GradingVector& b) { return a.w == b.w; }
};

inline GradingVector standard_grading(const Signature& sig) { return {std::vector<int>(sig.size(), 1)}; }

// Splits a polynomial into its even and odd parts.
template <class S>
std::pair<Poly<S>, Poly<S>> split_parity(const Poly<S>& f) {
    return {f.filter([](const Monomial& m) { return m.parity() == 0; }),
            f.filter([](const Monomial& m) { return m.parity() == 1; })};
}

template <class S>
class VectorField {
public:
    explicit VectorField(SigPtr sig) : sig_(std::move(sig)), c_(sig_->size(), Poly<S>(sig_)) {}

    static VectorField partial(const SigPtr& sig, int g) {
        VectorField d(sig);
        d.c_[g] = Poly<S>(sig, S(1));
        return d;
    }
    static VectorField partial(const SigPtr& sig, const std::string& n) { return partial(sig, sig->index(n)); }
    // f * d/dx_g
    static VectorField term(const Poly<S>& f, int g) {
        VectorField d(f.sig());
        d.c_[g] = f;
        return d;
    }

    const SigPtr& sig() const { return sig_; }
    const Poly<S>& coef(int g) const { return c_[g]; }
    const Poly<S>& coef(const std::string& n) const { return c_[sig_->index(n)]; }
    void set(int g, Poly<S> f) {
        require_same(sig_, f.sig());
        c_[g] = std::move(f);
    }
    const std::vector<Poly<S>>& coefs() const { return c_; }

    bool is_zero() const {
        for (auto& c : c_)
            if (!c.is_zero()) return false;
        return true;
    }

    // 0/1 for homogeneous fields (zero counts as even), -1 when mixed.
    int parity() const {
        int p = -2;
        for (int g = 0; g < sig_->size(); ++g)
            for (auto& [m, c] : c_[g].terms()) {
                int q = (m.parity() + sig_->parity(g)) & 1;
                if (p == -2) p = q;
                else if (p != q) return -1;
            }
        return p == -2 ? 0 : p;
    }

    std::pair<VectorField, VectorField> split() const {
        VectorField ev(sig_), od(sig_);
        for (int g = 0; g < sig_->size(); ++g) {
            auto [e, o] = split_parity(c_[g]);
            if (sig_->is_odd(g)) std::swap(e, o);
            ev.c_[g] = std::move(e);
            od.c_[g] = std::move(o);
        }
        return {ev, od};
    }

    VectorField& operator+=(const VectorField& o) {
        require_same(sig_, o.sig_);
        for (int g = 0; g < sig_->size(); ++g) c_[g] += o.c_[g];
        return *this;
    }
    VectorField& operator-=(const VectorField& o) {
        require_same(sig_, o.sig_);
        for (int g = 0; g < sig_->size(); ++g) c_[g] -= o.c_[g];
        return *this;
    }
    friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
    friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
    VectorField operator-() const {
        VectorField r(sig_);
        for (int g = 0; g < sig_->size(); ++g) r.c_[g] = -c_[g];
        return r;
    }
    VectorField scaled(const S& s) const {
        VectorField r(sig_);
        for (int g = 0; g < sig_->size(); ++g) r.c_[g] = c_[g].scaled(s);
        return r;
    }
    friend VectorField operator*(const S& s, const VectorField& d) { return d.scaled(s); }
    // Left multiplication by a function.
    friend VectorField operator*(const Poly<S>& f, const VectorField& d) {
        VectorField r(d.sig_);
        for (int g = 0; g < d.sig_->size(); ++g) r.c_[g] = f * d.c_[g];
        return r;
    }

    // Sum of coef_i * df/dx_i.
    Poly<S> apply(const Poly<S>& f) const {
        require_same(sig_, f.sig());
        Poly<S> r(sig_);
        for (int g = 0; g < sig_->size(); ++g) {
            if (c_[g].is_zero()) continue;
            Poly<S> d = f.partial(g);
            if (!d.is_zero()) r += c_[g] * d;
        }
        return r;
    }
    Poly<S> operator()(const Poly<S>& f) const { return apply(f); }

    friend bool operator==(const VectorField& a, const VectorField& b) { return a.c_ == b.c_; }
    friend bool operator!=(const VectorField& a, const VectorField& b) { return !(a == b); }

    std::string str() const {
        std::string s;
        for (int g = 0; g < sig_->size(); ++g) {
            if (c_[g].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + c_[g].str() + ")*d_" + sig_->name(g);
        }
        return s.empty() ? "0" : s;
    }

private:
    SigPtr sig_;
    std::vector<Poly<S>> c_;
};

template <class S>
Poly<S> apply(const VectorField<S>& d, const Poly<S>& f) {
    return d.apply(f);
}

// [D1, D2] = D1 D2 - (-1)^{p1 p2} D2 D1, extended bilinearly over parity components.
template <class S>
VectorField<S> bracket(const VectorField<S>& a, const VectorField<S>& b) {
    require_same(a.sig(), b.sig());
    VectorField<S> r(a.sig());
    auto [a0, a1] = a.split();
    auto [b0, b1] = b.split();
    const VectorField<S>* as[2] = {&a0, &a1};
    const VectorField<S>* bs[2] = {&b0, &b1};
    const int n = a.sig()->size();
    for (int pa = 0; pa < 2; ++pa)
        for (int pb = 0; pb < 2; ++pb) {
            const auto& x = *as[pa];
            const auto& y = *bs[pb];
            if (x.is_zero() || y.is_zero()) continue;
            for (int g = 0; g < n; ++g) {
                Poly<S> c = x.apply(y.coef(g));
                Poly<S> d = y.apply(x.coef(g));
                if (pa & pb) c += d;
                else c -= d;
                if (!c.is_zero()) r.set(g, r.coef(g) + c);
            }
        }
    return r;
}

// Sum of d f_i/du_i over even generators plus sum of (-1)^{p(g_j)} d g_j/dtheta_j over odd ones.
template <class S>
Poly<S> divergence(const VectorField<S>& d) {
    const auto& sig = d.sig();
    Poly<S> r(sig);
    for (int g = 0; g < sig->size(); ++g) {
        const auto& c = d.coef(g);
        if (c.is_zero()) continue;
        if (!sig->is_odd(g)) {
            r += c.partial(g);
        } else {
            auto [e, o] = split_parity(c);
            r += e.partial(g);
            r -= o.partial(g);
        }
    }
    return r;
}

// Degree of a field under w, or nullopt when not homogeneous.
template <class S>
std::optional<int> field_degree(const VectorField<S>& d, const GradingVector& w) {
    std::optional<int> deg;
    const auto& sig = *d.sig();
    for (int g = 0; g < sig.size(); ++g)
        for (auto& [m, c] : d.coef(g).terms()) {
            int k = Poly<S>::monomial_weight(sig, m, w.w) - w[g];
            if (!deg) deg = k;
            else if (*deg != k) return std::nullopt;
        }
    return deg;
}

// One-form sum c_i dx_i, coefficients written on the left; p(dx_i) = p(x_i) + 1.
template <class S>
class OneForm {
public:
    explicit OneForm(SigPtr sig) : sig_(std::move(sig)), c_(sig_->size(), Poly<S>(sig_)) {}

    // dx_g
    static OneForm dx(const SigPtr& sig, int g) {
        OneForm w(sig);
        w.c_[g] = Poly<S>(sig, S(1));
        return w;
    }
    static OneForm dx(const SigPtr& sig, const std::string& n) { return dx(sig, sig->index(n)); }

    // df = sum dx_i df/dx_i, rewritten with coefficients on the left.
    static OneForm d(const Poly<S>& f) {
        const auto& sig = f.sig();
        OneForm w(sig);
        for (int g = 0; g < sig->size(); ++g) {
            Poly<S> h = f.partial(g);
            if (h.is_zero()) continue;
            if (sig->is_odd(g)) {
                w.c_[g] = h;
            } else {
                auto [e, o] = split_parity(h);
                w.c_[g] = e - o;
            }
        }
        return w;
    }

    const SigPtr& sig() const { return sig_; }
    const Poly<S>& coef(int g) const { return c_[g]; }
    const Poly<S>& coef(const std::string& n) const { return c_[sig_->index(n)]; }
    void set(int g, Poly<S> f) { c_[g] = std::move(f); }
    bool is_zero() const {
        for (auto& c : c_)
            if (!c.is_zero()) return false;
        return true;
    }

    OneForm& operator+=(const OneForm& o) {
        for (int g = 0; g < sig_->size(); ++g) c_[g] += o.c_[g];
        return *this;
    }
    OneForm& operator-=(const OneForm& o) {
        for (int g = 0; g < sig_->size(); ++g) c_[g] -= o.c_[g];
        return *this;
    }
    friend OneForm operator+(OneForm a, const OneForm& b) { return a += b; }
    friend OneForm operator-(OneForm a, const OneForm& b) { return a -= b; }
    friend OneForm operator*(const Poly<S>& f, const OneForm& w) {
        OneForm r(w.sig_);
        for (int g = 0; g < w.sig_->size(); ++g) r.c_[g] = f * w.c_[g];
        return r;
    }
    OneForm scaled(const S& s) const {
        OneForm r(sig_);
        for (int g = 0; g < sig_->size(); ++g) r.c_[g] = c_[g].scaled(s);
        return r;
    }
    friend bool operator==(const OneForm& a, const OneForm& b) { return a.c_ == b.c_; }

    std::string str() const {
        std::string s;
        for (int g = 0; g < sig_->size(); ++g) {
            if (c_[g].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + c_[g].str() + ")*d" + sig_->name(g);
        }
        return s.empty() ? "0" : s;
    }

private:
    SigPtr sig_;
    std::vector<Poly<S>> c_;
};

// L_D(sum c_i dx_i) = sum D(c_i) dx_i + (-1)^{p(D)p(c_i)} c_i L_D(dx_i), with L_D(dx_i) = (-1)^{p(D)} d(D x_i).
template <class S>
OneForm<S> lie_form(const VectorField<S>& D, const OneForm<S>& w) {
    const auto& sig = D.sig();
    OneForm<S> r(sig);
    auto [d0, d1] = D.split();
    const VectorField<S>* parts[2] = {&d0, &d1};
    for (int pd = 0; pd < 2; ++pd) {
        const auto& X = *parts[pd];
        if (X.is_zero()) continue;
        for (int g = 0; g < sig->size(); ++g) {
            const auto& c = w.coef(g);
            if (c.is_zero()) continue;
            Poly<S> dc = X.apply(c);
            if (!dc.is_zero()) r.set(g, r.coef(g) + dc);
            if (X.coef(g).is_zero()) continue;
            OneForm<S> ldx = OneForm<S>::d(X.coef(g));
            if (pd) ldx = ldx.scaled(S(-1));
            auto [ce, co] = split_parity(c);
            Poly<S> cc = pd ? ce - co : c;
            r += cc * ldx;
        }
    }
    return r;
}

// Pairing <f d_x, g dx> = (-1)^{p(g)} f g, extended additively.
template <class S>
Poly<S> pairing(const VectorField<S>& X, const OneForm<S>& w) {
    const auto& sig = X.sig();
    Poly<S> r(sig);
    for (int g = 0; g < sig->size(); ++g) {
        if (X.coef(g).is_zero() || w.coef(g).is_zero()) continue;
        auto [e, o] = split_parity(w.coef(g));
        r += X.coef(g) * (e - o);
    }
    return r;
}

// f vol^lambda, optionally with reversed parity.
template <class S>
struct WeightedDensity {
    Poly<S> f;
    S lambda;
    bool pi = false;
    int parity() const {
        int p = f.parity();
        return p < 0 ? -1 : (p + (pi ? 1 : 0)) & 1;
    }
};

// L_D(f vol^l) = (D f + (-1)^{p(f)p(D)} l f Div D) vol^l
template <class S>
WeightedDensity<S> lie_density(const VectorField<S>& D, const WeightedDensity<S>& v) {
    Poly<S> out = D.apply(v.f);
    if (!v.lambda.is_zero()) {
        auto [d0, d1] = D.split();
        auto [fe, fo] = split_parity(v.f);
        out += (v.f * divergence(d0)).scaled(v.lambda);
        out += ((fe - fo) * divergence(d1)).scaled(v.lambda);
    }
    return {out, v.lambda, v.pi};
}

// f with L_D(alpha) = f alpha, or nullopt when L_D(alpha) is not proportional to alpha.
template <class S>
std::optional<Poly<S>> conformal_factor(const VectorField<S>& D, const OneForm<S>& alpha) {
    const auto& sig = D.sig();
    OneForm<S> L = lie_form(D, alpha);
    int j = -1;
    for (int g = 0; g < sig->size(); ++g) {
        const auto& a = alpha.coef(g);
        if (!a.constant_term().is_zero() && a.parity() == 0) { j = g; break; }
    }
    if (j < 0) throw std::invalid_argument("conformal_factor: form has no coefficient with invertible constant term");
    const Poly<S>& a = alpha.coef(j);
    S c = a.constant_term();
    int bound = 0;
    for (int g = 0; g < sig->size(); ++g) bound = std::max(bound, L.coef(g).max_total_degree());
    // Power-series inverse of a, truncated above the degree bound.
    Poly<S> nil = a - Poly<S>(sig, c);
    Poly<S> inv(sig, S(1) / c), term(sig, S(1) / c);
    auto truncate = [&](const Poly<S>& p) {
        return p.filter([&](const Monomial& m) { return m.total_degree(sig->n_even()) <= bound; });
    };
    for (int k = 1; k <= bound; ++k) {
        term = truncate(term * nil).scaled(S(-1) / c);
        if (term.is_zero()) break;
        inv += term;
    }
    Poly<S> f = truncate(L.coef(j) * inv);
    if (f * alpha == L) return f;
    return std::nullopt;
}

}  // namespace superprolong
