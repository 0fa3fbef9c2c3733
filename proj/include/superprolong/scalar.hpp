#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace superprolong {

// Exact rational number (GMP backed, always canonical).
class Rational {
public:
    Rational() : v_(0) {}
    template <class I, std::enable_if_t<std::is_integral_v<I>, int> = 0>
    Rational(I n) : v_(static_cast<long>(n)) {}
    Rational(long n, long d) : v_(n, d) {
        if (d == 0) throw std::domain_error("zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    static Rational parse(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
        if (q.get_den() == 0) throw std::invalid_argument("bad rational: " + s);
        q.canonicalize();
        return Rational(q);
    }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    int sign() const { return sgn(v_); }
    std::string str() const { return v_.get_str(); }
    const mpq_class& raw() const { return v_; }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("division by zero");
        v_ /= o.v_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class v_;
};

// Dense univariate polynomial over Q, coefficients low to high, no trailing zeros.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
    UPoly(const Rational& a) { if (!a.is_zero()) c_.push_back(a); }
    static UPoly x() { return UPoly({Rational(0), Rational(1)}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& lead() const { return c_.back(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : Rational(0); }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
        return UPoly(std::move(r));
    }
    UPoly operator-() const {
        UPoly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return UPoly(std::move(r));
    }
    UPoly scaled(const Rational& s) const {
        UPoly r = *this;
        for (auto& c : r.c_) c *= s;
        r.trim();
        return r;
    }
    static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<Rational> q(std::max(0, a.degree() - b.degree() + 1));
        std::vector<Rational> r = a.c_;
        for (int k = a.degree() - b.degree(); k >= 0; --k) {
            Rational f = r[k + b.degree()] / b.lead();
            q[k] = f;
            if (f.is_zero()) continue;
            for (int j = 0; j <= b.degree(); ++j) r[k + j] -= f * b.c_[j];
        }
        return {UPoly(std::move(q)), UPoly(std::move(r))};
    }
    UPoly monic() const { return is_zero() ? *this : scaled(Rational(1) / lead()); }
    static UPoly gcd(UPoly a, UPoly b) {
        while (!b.is_zero()) {
            auto r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }
    Rational eval(const Rational& x) const {
        Rational r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
        return r;
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    std::string str(const std::string& var) const {
        if (c_.empty()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            const Rational& c = c_[i];
            if (c.is_zero()) continue;
            std::string cs = c.str();
            bool neg = c.sign() < 0;
            if (!s.empty()) s += neg ? "-" : "+";
            else if (neg) s += "-";
            std::string mag = neg ? cs.substr(1) : cs;
            if (i == 0) s += mag;
            else {
                if (mag != "1") s += mag + "*";
                s += var;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

private:
    void trim() { while (!c_.empty() && c_.back().is_zero()) c_.pop_back(); }
    std::vector<Rational> c_;
};

// Element of Q(x): reduced fraction with monic denominator.
class RatFunc {
public:
    RatFunc() : num_(), den_(Rational(1)) {}
    template <class I, std::enable_if_t<std::is_integral_v<I>, int> = 0>
    RatFunc(I n) : num_(Rational(n)), den_(Rational(1)) {}
    RatFunc(const Rational& a) : num_(a), den_(Rational(1)) {}
    RatFunc(UPoly n, UPoly d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    static RatFunc param() { return RatFunc(UPoly::x(), UPoly(Rational(1))); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    const UPoly& num() const { return num_; }
    const UPoly& den() const { return den_; }
    int sign() const { return is_zero() ? 0 : (is_constant() ? num_.lead().sign() : 1); }

    // Value at a rational point; throws if the denominator vanishes there.
    Rational eval(const Rational& x) const {
        Rational d = den_.eval(x);
        if (d.is_zero()) throw std::domain_error("pole at evaluation point");
        return num_.eval(x) / d;
    }

    std::string str() const {
        const std::string var = "x";
        if (den_.degree() == 0) {
            if (num_.degree() <= 0) return num_.is_zero() ? "0" : num_.lead().str();
            return num_.str(var);
        }
        return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
    }

    RatFunc operator-() const { return RatFunc(-num_, den_, true); }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        if (a.is_zero() || b.is_zero()) return RatFunc();
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw std::domain_error("division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
    friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }
    friend std::ostream& operator<<(std::ostream& os, const RatFunc& r) { return os << r.str(); }

private:
    RatFunc(UPoly n, UPoly d, bool) : num_(std::move(n)), den_(std::move(d)) {}
    void normalize() {
        if (den_.is_zero()) throw std::domain_error("zero denominator");
        if (num_.is_zero()) { den_ = UPoly(Rational(1)); return; }
        if (den_.degree() > 0) {
            UPoly g = UPoly::gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = UPoly::divmod(num_, g).first;
                den_ = UPoly::divmod(den_, g).first;
            }
        }
        Rational l = den_.lead();
        if (!l.is_one()) {
            Rational inv = Rational(1) / l;
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }
    UPoly num_, den_;
};

// Uniform helpers used by generic code.
template <class S> inline bool is_zero(const S& s) { return s.is_zero(); }
template <class S> inline std::string to_string(const S& s) { return s.str(); }

template <class S> struct ScalarTraits;
template <> struct ScalarTraits<Rational> {
    static constexpr bool symbolic = false;
    static Rational from_rational(const Rational& r) { return r; }
};
template <> struct ScalarTraits<RatFunc> {
    static constexpr bool symbolic = true;
    static RatFunc from_rational(const Rational& r) { return RatFunc(r); }
};

}  // namespace superprolong
