#pragma once

#include "superprolong/scalar.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace superprolong {

constexpr int kMaxEven = 12;
constexpr int kMaxOdd = 32;

// Ordered generator names: even generators first (indices 0..m-1), then odd (m..m+n-1).
class Signature {
public:
    Signature(std::vector<std::string> even, std::vector<std::string> odd)
        : even_(std::move(even)), odd_(std::move(odd)) {
        if (static_cast<int>(even_.size()) > kMaxEven || static_cast<int>(odd_.size()) > kMaxOdd)
            throw std::invalid_argument("signature too large");
        std::vector<std::string> all = names();
        std::sort(all.begin(), all.end());
        if (std::adjacent_find(all.begin(), all.end()) != all.end())
            throw std::invalid_argument("duplicate generator name");
    }

    int n_even() const { return static_cast<int>(even_.size()); }
    int n_odd() const { return static_cast<int>(odd_.size()); }
    int size() const { return n_even() + n_odd(); }
    bool is_odd(int g) const { return g >= n_even(); }
    int parity(int g) const { return is_odd(g) ? 1 : 0; }
    int odd_slot(int g) const { return g - n_even(); }
    const std::string& name(int g) const { return g < n_even() ? even_[g] : odd_[g - n_even()]; }
    std::vector<std::string> names() const {
        std::vector<std::string> r = even_;
        r.insert(r.end(), odd_.begin(), odd_.end());
        return r;
    }
    const std::vector<std::string>& even_names() const { return even_; }
    const std::vector<std::string>& odd_names() const { return odd_; }

    int index(const std::string& n) const {
        for (int i = 0; i < size(); ++i)
            if (name(i) == n) return i;
        throw std::invalid_argument("unknown generator: " + n);
    }
    bool has(const std::string& n) const {
        for (int i = 0; i < size(); ++i)
            if (name(i) == n) return true;
        return false;
    }

    friend bool operator==(const Signature& a, const Signature& b) { return a.even_ == b.even_ && a.odd_ == b.odd_; }

private:
    std::vector<std::string> even_, odd_;
};

using SigPtr = std::shared_ptr<const Signature>;

inline SigPtr make_signature(std::vector<std::string> even, std::vector<std::string> odd) {
    return std::make_shared<const Signature>(std::move(even), std::move(odd));
}

inline void require_same(const SigPtr& a, const SigPtr& b) {
    if (a.get() != b.get() && !(*a == *b)) throw std::invalid_argument("signature mismatch");
}

// Even exponents plus a bitset of odd factors written in ascending order.
struct Monomial {
    std::array<uint8_t, kMaxEven> e{};
    uint32_t odd = 0;

    int odd_count() const { return std::popcount(odd); }
    int parity() const { return odd_count() & 1; }
    int total_degree(int n_even) const {
        int d = odd_count();
        for (int i = 0; i < n_even; ++i) d += e[i];
        return d;
    }
    bool is_one() const {
        if (odd) return false;
        for (auto x : e)
            if (x) return false;
        return true;
    }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.odd == b.odd && a.e == b.e; }
    friend bool operator<(const Monomial& a, const Monomial& b) {
        int c = std::memcmp(a.e.data(), b.e.data(), kMaxEven);
        if (c != 0) return c < 0;
        return a.odd < b.odd;
    }
};

// Sign and result of multiplying odd parts A·B into ascending order; nullopt when they overlap.
inline std::optional<int> odd_product_sign(uint32_t a, uint32_t b) {
    if (a & b) return std::nullopt;
    int swaps = 0;
    uint32_t bb = b;
    while (bb) {
        int j = std::countr_zero(bb);
        bb &= bb - 1;
        swaps += std::popcount(a >> (j + 1));
    }
    return (swaps & 1) ? -1 : 1;
}

template <class S>
class Poly {
public:
    using Terms = std::map<Monomial, S>;

    explicit Poly(SigPtr sig) : sig_(std::move(sig)) {}
    Poly(SigPtr sig, const S& c) : sig_(std::move(sig)) {
        if (!c.is_zero()) t_[Monomial{}] = c;
    }

    static Poly gen(const SigPtr& sig, int g) {
        Poly p(sig);
        Monomial m;
        if (sig->is_odd(g)) m.odd = 1u << sig->odd_slot(g);
        else m.e[g] = 1;
        p.t_[m] = S(1);
        return p;
    }
    static Poly gen(const SigPtr& sig, const std::string& n) { return gen(sig, sig->index(n)); }
    static Poly term(const SigPtr& sig, const Monomial& m, const S& c) {
        Poly p(sig);
        if (!c.is_zero()) p.t_[m] = c;
        return p;
    }

    const SigPtr& sig() const { return sig_; }
    const Terms& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    size_t size() const { return t_.size(); }

    S coeff(const Monomial& m) const {
        auto it = t_.find(m);
        return it == t_.end() ? S(0) : it->second;
    }
    S constant_term() const { return coeff(Monomial{}); }

    // 0 or 1 for homogeneous (zero counts as even), -1 when mixed.
    int parity() const {
        int p = -2;
        for (auto& [m, c] : t_) {
            int q = m.parity();
            if (p == -2) p = q;
            else if (p != q) return -1;
        }
        return p == -2 ? 0 : p;
    }
    bool is_homogeneous_parity() const { return parity() >= 0; }

    void add_term(const Monomial& m, const S& c) {
        if (c.is_zero()) return;
        auto it = t_.find(m);
        if (it == t_.end()) t_.emplace(m, c);
        else {
            it->second += c;
            if (it->second.is_zero()) t_.erase(it);
        }
    }

    Poly& operator+=(const Poly& o) {
        require_same(sig_, o.sig_);
        for (auto& [m, c] : o.t_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        require_same(sig_, o.sig_);
        for (auto& [m, c] : o.t_) add_term(m, -c);
        return *this;
    }
    Poly operator-() const {
        Poly r(sig_);
        for (auto& [m, c] : t_) r.t_.emplace_hint(r.t_.end(), m, -c);
        return r;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }

    Poly scaled(const S& s) const {
        Poly r(sig_);
        if (s.is_zero()) return r;
        for (auto& [m, c] : t_) {
            S v = c * s;
            if (!v.is_zero()) r.t_.emplace_hint(r.t_.end(), m, v);
        }
        return r;
    }
    friend Poly operator*(const S& s, const Poly& p) { return p.scaled(s); }

    friend Poly operator*(const Poly& a, const Poly& b) {
        require_same(a.sig_, b.sig_);
        Poly r(a.sig_);
        const int ne = a.sig_->n_even();
        for (auto& [ma, ca] : a.t_)
            for (auto& [mb, cb] : b.t_) {
                auto s = odd_product_sign(ma.odd, mb.odd);
                if (!s) continue;
                Monomial m;
                for (int i = 0; i < ne; ++i) m.e[i] = ma.e[i] + mb.e[i];
                m.odd = ma.odd | mb.odd;
                S v = ca * cb;
                if (*s < 0) v = -v;
                r.add_term(m, v);
            }
        return r;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly pow(int k) const {
        Poly r(sig_, S(1));
        for (int i = 0; i < k; ++i) r = r * *this;
        return r;
    }

    // Left partial derivative.
    Poly partial(int g) const {
        Poly r(sig_);
        if (sig_->is_odd(g)) {
            const int s = sig_->odd_slot(g);
            const uint32_t bit = 1u << s;
            for (auto& [m, c] : t_) {
                if (!(m.odd & bit)) continue;
                Monomial mm = m;
                mm.odd &= ~bit;
                int sign = (std::popcount(m.odd & (bit - 1)) & 1) ? -1 : 1;
                r.add_term(mm, sign < 0 ? -c : c);
            }
        } else {
            for (auto& [m, c] : t_) {
                if (m.e[g] == 0) continue;
                Monomial mm = m;
                mm.e[g] -= 1;
                r.add_term(mm, c * S(static_cast<long>(m.e[g])));
            }
        }
        return r;
    }
    Poly partial(const std::string& n) const { return partial(sig_->index(n)); }

    // Sum over y in subset of y * df/dy.
    Poly euler(const std::vector<int>& subset) const {
        Poly r(sig_);
        for (auto& [m, c] : t_) {
            long d = 0;
            for (int g : subset) {
                if (sig_->is_odd(g)) d += (m.odd >> sig_->odd_slot(g)) & 1u;
                else d += m.e[g];
            }
            if (d != 0) r.t_.emplace_hint(r.t_.end(), m, c * S(d));
        }
        return r;
    }

    // Antiderivative in an even generator with lower limit 0.
    Poly antiderivative(int g) const {
        if (sig_->is_odd(g)) throw std::invalid_argument("antiderivative in an odd generator");
        Poly r(sig_);
        for (auto& [m, c] : t_) {
            Monomial mm = m;
            if (mm.e[g] == 255) throw std::overflow_error("exponent overflow");
            mm.e[g] += 1;
            r.add_term(mm, c * S(Rational(1, static_cast<long>(mm.e[g]))));
        }
        return r;
    }

    // Number of odd factors; requires homogeneity in that count.
    int d_odd() const {
        int d = -1;
        for (auto& [m, c] : t_) {
            int k = m.odd_count();
            if (d < 0) d = k;
            else if (d != k) throw std::invalid_argument("d_odd: polynomial not homogeneous in odd degree");
        }
        return d < 0 ? 0 : d;
    }

    // Substitute zero for each listed generator.
    Poly set_zero(const std::vector<int>& gens) const {
        Poly r(sig_);
        for (auto& [m, c] : t_) {
            bool keep = true;
            for (int g : gens) {
                if (sig_->is_odd(g) ? ((m.odd >> sig_->odd_slot(g)) & 1u) : m.e[g] != 0) { keep = false; break; }
            }
            if (keep) r.t_.emplace_hint(r.t_.end(), m, c);
        }
        return r;
    }

    std::optional<int> weighted_degree(const std::vector<int>& w) const {
        std::optional<int> d;
        for (auto& [m, c] : t_) {
            int k = monomial_weight(*sig_, m, w);
            if (!d) d = k;
            else if (*d != k) return std::nullopt;
        }
        return d;
    }
    int max_total_degree() const {
        int d = 0;
        for (auto& [m, c] : t_) d = std::max(d, m.total_degree(sig_->n_even()));
        return d;
    }

    static int monomial_weight(const Signature& sig, const Monomial& m, const std::vector<int>& w) {
        int k = 0;
        for (int i = 0; i < sig.n_even(); ++i) k += w[i] * m.e[i];
        for (int j = 0; j < sig.n_odd(); ++j)
            if ((m.odd >> j) & 1u) k += w[sig.n_even() + j];
        return k;
    }

    // Keep only the terms whose monomial satisfies pred.
    template <class Pred>
    Poly filter(Pred pred) const {
        Poly r(sig_);
        for (auto& [m, c] : t_)
            if (pred(m)) r.t_.emplace_hint(r.t_.end(), m, c);
        return r;
    }

    template <class F>
    Poly map_coeffs(F f) const {
        Poly r(sig_);
        for (auto& [m, c] : t_) r.add_term(m, f(c));
        return r;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    std::string str() const { return monomials_str(*sig_, t_); }

    static std::string monomial_str(const Signature& sig, const Monomial& m) {
        std::string s;
        for (int i = 0; i < sig.n_even(); ++i) {
            if (!m.e[i]) continue;
            if (!s.empty()) s += "*";
            s += sig.name(i);
            if (m.e[i] > 1) s += "^" + std::to_string(m.e[i]);
        }
        for (int j = 0; j < sig.n_odd(); ++j) {
            if (!((m.odd >> j) & 1u)) continue;
            if (!s.empty()) s += "*";
            s += sig.name(sig.n_even() + j);
        }
        return s;
    }

private:
    static std::string monomials_str(const Signature& sig, const Terms& t) {
        if (t.empty()) return "0";
        std::string out;
        for (auto& [m, c] : t) {
            std::string cs = c.str();
            bool compound = cs.find_first_of("+-", 1) != std::string::npos || cs.find('/') != std::string::npos;
            bool neg = cs[0] == '-' && !compound;
            std::string mag = neg ? cs.substr(1) : cs;
            if (compound) mag = "(" + cs + ")";
            if (!out.empty()) out += neg ? " - " : " + ";
            else if (neg) out += "-";
            std::string ms = monomial_str(sig, m);
            if (ms.empty()) out += mag;
            else if (mag == "1") out += ms;
            else out += mag + "*" + ms;
        }
        return out;
    }

    SigPtr sig_;
    Terms t_;
};

template <class To, class From>
Poly<To> convert(const Poly<From>& p) {
    Poly<To> r(p.sig());
    for (auto& [m, c] : p.terms()) r.add_term(m, To(c));
    return r;
}

// All monomials of the given weighted degree. Even generators need positive weight.
inline std::vector<Monomial> monomials_of_weight(const Signature& sig, const std::vector<int>& w, int d) {
    const int ne = sig.n_even(), no = sig.n_odd();
    if (static_cast<int>(w.size()) != sig.size()) throw std::invalid_argument("weight vector size mismatch");
    for (int i = 0; i < ne; ++i)
        if (w[i] <= 0) throw std::invalid_argument("even generator with non-positive weight gives infinite components");
    std::vector<Monomial> out;
    for (uint32_t mask = 0; mask < (1u << no); ++mask) {
        int od = 0;
        for (int j = 0; j < no; ++j)
            if ((mask >> j) & 1u) od += w[ne + j];
        int rest = d - od;
        if (rest < 0) continue;
        Monomial m;
        m.odd = mask;
        std::function<void(int, int)> rec = [&](int i, int left) {
            if (i == ne) {
                if (left == 0) out.push_back(m);
                return;
            }
            for (int k = 0; k * w[i] <= left; ++k) {
                m.e[i] = static_cast<uint8_t>(k);
                rec(i + 1, left - k * w[i]);
            }
            m.e[i] = 0;
        };
        rec(0, rest);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<int> standard_weights(const Signature& sig) { return std::vector<int>(sig.size(), 1); }

// Random homogeneous polynomial with small integer coefficients.
template <class S, class Rng>
Poly<S> random_poly(const SigPtr& sig, const std::vector<int>& w, int degree, int parity, int nterms, Rng& rng) {
    auto mons = monomials_of_weight(*sig, w, degree);
    std::vector<Monomial> pool;
    for (auto& m : mons)
        if (parity < 0 || m.parity() == parity) pool.push_back(m);
    Poly<S> p(sig);
    if (pool.empty()) return p;
    std::uniform_int_distribution<int> pick(0, static_cast<int>(pool.size()) - 1);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int i = 0; i < nterms; ++i) {
        int c = coef(rng);
        if (c == 0) c = 1;
        p.add_term(pool[pick(rng)], S(c));
    }
    return p;
}

}  // namespace superprolong
