#pragma once

#include "superprolong/prolong.hpp"
#include "superprolong/series.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace superprolong {

// Series tag with its setup, parameters and chosen grading, ready for component().
template <class S>
struct Algebra {
    std::string name;
    Series tag = Series::vect;
    SigPtr sig;
    ContactSetup setup;  // unused for vect-type series
    GradingVector w;
    ComponentModel<S> model;
    std::function<std::vector<Poly<S>>(const Poly<S>&)> cond;  // generating-function condition, if any
    int lo = -1;  // lowest possibly nonzero degree
};

// Lowest degree a monomial field can have in grading w.
inline int lowest_degree(const Signature& sig, const GradingVector& w, const std::vector<int>& frozen = {}) {
    int neg = 0, top = 0;
    for (int g = 0; g < sig.size(); ++g) {
        if (sig.is_odd(g) && w[g] < 0) neg += w[g];
        if (std::find(frozen.begin(), frozen.end(), g) == frozen.end()) top = std::max(top, w[g]);
    }
    return neg - top;
}

inline bool is_m_family(Series t) {
    switch (t) {
        case Series::m:
        case Series::b:
        case Series::sm:
        case Series::b_ab:
        case Series::b_prime_1:
        case Series::b_prime_inf:
            return true;
        default:
            return false;
    }
}
inline bool is_le_family(Series t) { return t == Series::le || t == Series::sle || t == Series::sle_prime; }
inline bool is_k_family(Series t) { return t == Series::k || t == Series::po; }
inline bool is_h_family(Series t) { return t == Series::h || t == Series::h_prime; }
inline bool is_vect_family(Series t) {
    return t == Series::vect || t == Series::svect || t == Series::svect_tilde || t == Series::svect_prime;
}

inline Series parse_series(const std::string& s) {
    static const std::vector<std::pair<std::string, Series>> names = {
        {"vect", Series::vect},     {"svect", Series::svect},         {"svect_tilde", Series::svect_tilde},
        {"k", Series::k},           {"po", Series::po},               {"h", Series::h},
        {"m", Series::m},           {"b", Series::b},                 {"le", Series::le},
        {"sle", Series::sle},       {"sle_prime", Series::sle_prime}, {"sm", Series::sm},
        {"b_ab", Series::b_ab},     {"b_lambda", Series::b_ab},       {"b_prime_1", Series::b_prime_1},
        {"b_prime_inf", Series::b_prime_inf}};
    for (auto& [n, t] : names)
        if (n == s) return t;
    throw std::invalid_argument("unknown series: " + s);
}

inline std::string series_name(Series t) {
    switch (t) {
        case Series::vect: return "vect";
        case Series::svect: return "svect";
        case Series::svect_tilde: return "svect_tilde";
        case Series::svect_prime: return "svect_prime";
        case Series::k: return "k";
        case Series::po: return "po";
        case Series::h: return "h";
        case Series::h_prime: return "h_prime";
        case Series::m: return "m";
        case Series::b: return "b";
        case Series::le: return "le";
        case Series::sle: return "sle";
        case Series::sle_prime: return "sle_prime";
        case Series::sm: return "sm";
        case Series::b_ab: return "b_ab";
        case Series::b_prime_1: return "b_prime_1";
        case Series::b_prime_inf: return "b_prime_inf";
    }
    return "?";
}

// Named regrading: "" or "standard", "r=<k>" (integer r), or "Reg_b".
struct Regrading {
    std::string name = "standard";
    int r = 0;
    static Regrading parse(const std::string& s) {
        if (s.empty() || s == "standard") return {"standard", 0};
        if (s.rfind("r=", 0) == 0) return {"r", std::stoi(s.substr(2))};
        if (s == "Reg_b") return {"Reg_b", 0};
        throw std::invalid_argument("unknown regrading: " + s);
    }
};

// Weight vector from the W-grading table for the given series and coordinates.
// allow_excluded permits m(n; n-1), which is not a W-grading, for the irreducibility counterexample.
inline GradingVector resolve(Series tag, const ContactSetup& s, const Regrading& g, bool allow_excluded = false) {
    const auto& sig = *s.sig;
    GradingVector w{std::vector<int>(sig.size(), 1)};
    if (is_vect_family(tag)) {
        if (g.name == "standard") return w;
        if (g.name != "r") throw std::invalid_argument("vect admits only r-regradings");
        if (g.r < 0 || g.r > sig.n_odd()) throw std::invalid_argument("r out of range for vect(n|m; r)");
        for (int j = 0; j < g.r; ++j) w.w[sig.n_even() + j] = 0;
        return w;
    }
    if (is_k_family(tag) || is_h_family(tag)) {
        if (s.t >= 0) w.w[s.t] = 2;
        if (g.name == "standard") return w;
        if (g.name != "r") throw std::invalid_argument("k admits only r-regradings");
        int pairs = static_cast<int>(s.xi.size());
        if (g.r < 0 || g.r > pairs) throw std::invalid_argument("r out of range for k(2n+1|m; r)");
        if (s.p.empty() && s.theta.empty() && g.r == pairs) {
            // k(1|2m; m)
            if (s.t >= 0) w.w[s.t] = 1;
            for (int i = 0; i < pairs; ++i) {
                w.w[s.xi[i]] = 1;
                w.w[s.eta[i]] = 0;
            }
            return w;
        }
        if (s.p.empty() && s.theta.empty() && g.r == pairs - 1 && !allow_excluded)
            throw std::invalid_argument("k(1|2m; m-1) is not a W-grading");
        for (int i = 0; i < g.r; ++i) {
            w.w[s.xi[i]] = 2;
            w.w[s.eta[i]] = 0;
        }
        return w;
    }
    if (is_m_family(tag) || is_le_family(tag)) {
        const int n = static_cast<int>(s.q.size());
        if (s.t >= 0) w.w[s.t] = 2;
        if (g.name == "standard") return w;
        if (g.name == "Reg_b") {
            if (tag != Series::b_ab || n != 2) throw std::invalid_argument("Reg_b is defined for b_{a,b}(2) only");
            w.w[s.t] = 0;
            for (int x : s.xi) w.w[x] = -1;
            for (int x : s.q) w.w[x] = 1;
            return w;
        }
        if (g.name != "r") throw std::invalid_argument("unknown regrading for m-type series");
        if (g.r < 0 || g.r > n) throw std::invalid_argument("r out of range for m(n; r)");
        if (g.r == n) {
            if (s.t >= 0) w.w[s.t] = 1;
            for (int i = 0; i < n; ++i) {
                w.w[s.q[i]] = 1;
                w.w[s.xi[i]] = 0;
            }
            return w;
        }
        if (g.r == n - 1 && !allow_excluded) throw std::invalid_argument("m(n; n-1) is not a W-grading");
        for (int i = 0; i < g.r; ++i) {
            w.w[s.q[i]] = 2;
            w.w[s.xi[i]] = 0;
        }
        return w;
    }
    throw std::invalid_argument("no grading table for series " + series_name(tag));
}

inline ContactSetup vect_setup(int n, int m) {
    ContactSetup s;
    s.sig = make_signature(numbered("x", n), numbered("xi", m));
    return s;
}

inline ContactSetup setup_for(Series tag, int n, int m) {
    if (is_vect_family(tag)) return vect_setup(n, m);
    if (is_k_family(tag)) return k_setup(n, m);
    if (is_h_family(tag)) return h_setup(n, m);
    if (is_m_family(tag)) return m_setup(n);
    if (is_le_family(tag)) return le_setup(n);
    throw std::invalid_argument("no setup for series " + series_name(tag));
}

// Membership model of a series in an explicit grading.
template <class S>
Algebra<S> build_algebra(Series tag, const ContactSetup& s, const GradingVector& w, const S& a = S(0), const S& b = S(1)) {
    if (static_cast<int>(w.w.size()) != s.sig->size()) throw std::invalid_argument("weight vector has the wrong length");
    Algebra<S> A;
    A.tag = tag;
    A.setup = s;
    A.sig = s.sig;
    A.w = w;
    A.name = series_name(tag);
    if (tag == Series::vect) A.model = vect_model<S>(A.sig, w);
    else if (tag == Series::svect) A.model = svect_model<S>(A.sig, w);
    else if (tag == Series::svect_tilde)
        throw std::invalid_argument("svect_tilde needs make_svect_tilde");
    else {
        GenKind kind = is_k_family(tag)   ? GenKind::K
                       : is_h_family(tag) ? GenKind::H
                       : is_m_family(tag) ? GenKind::M
                                          : GenKind::Le;
        std::function<std::vector<Poly<S>>(const Poly<S>&)> cond;
        if (tag != Series::k && tag != Series::h && tag != Series::m && tag != Series::le)
            cond = [s, tag, a, b](const Poly<S>& f) { return series_condition(tag, s, f, a, b); };
        A.model = generating_model<S>(kind, s, w, cond);
        A.cond = cond;
    }
    A.lo = lowest_degree(*A.sig, A.w);
    return A;
}

// Builds the membership model of a series; a, b are the b_{a,b} parameters.
template <class S>
Algebra<S> make_algebra(Series tag, int n, int m, const Regrading& g, const S& a = S(0), const S& b = S(1),
                        bool allow_excluded = false) {
    auto s = setup_for(tag, n, m);
    return build_algebra<S>(tag, s, resolve(tag, s, g, allow_excluded), a, b);
}

// svect~(n|m): Div((1 + mu * xi_1...xi_m) D) = 0 with mu an adjoined odd constant of weight -(sum of xi weights).
template <class S>
Algebra<S> make_svect_tilde(int n, int m) {
    Algebra<S> A;
    A.tag = Series::svect_tilde;
    auto odd = numbered("xi", m);
    odd.push_back("mu");
    A.sig = make_signature(numbered("x", n), odd);
    A.setup.sig = A.sig;
    A.w = GradingVector{std::vector<int>(A.sig->size(), 1)};
    int mu = A.sig->index("mu");
    A.w.w[mu] = -m;
    std::vector<int> thetas;
    for (int j = 0; j < m; ++j) thetas.push_back(n + j);
    A.model = svect_model<S>(A.sig, A.w, mu, thetas);
    A.name = "svect_tilde";
    A.lo = lowest_degree(*A.sig, A.w, {mu});
    return A;
}

template <class S>
GradedSubspace<S> components(const Algebra<S>& A, int hi, std::optional<int> lo = std::nullopt) {
    return graded_from_model<S>(A.sig, A.w, A.model, lo ? *lo : A.lo, hi);
}

// Smallest invariant subsuperspace containing each homogeneous basis vector; irreducible iff always everything.
template <class S>
struct IrreducibleResult {
    bool irreducible = true;
    int generator = -1;                // basis vector whose orbit is proper
    std::vector<Vec<S>> invariant;     // basis of that proper invariant subspace
};

template <class S>
IrreducibleResult<S> irreducible_check(const std::vector<Mat<S>>& action, int dim) {
    for (int i = 0; i < dim; ++i) {
        Mat<S> rows;
        Vec<S> e(dim, S(0));
        e[i] = S(1);
        rows.push_back(e);
        std::vector<Vec<S>> frontier{e};
        while (!frontier.empty()) {
            std::vector<Vec<S>> next;
            for (auto& v : frontier)
                for (auto& A : action) {
                    Vec<S> u(dim, S(0));
                    for (int r = 0; r < dim; ++r)
                        for (int c = 0; c < dim; ++c)
                            if (!A[r][c].is_zero() && !v[c].is_zero()) u[r] += A[r][c] * v[c];
                    Mat<S> test = rows;
                    test.push_back(u);
                    if (rank(test, dim) > static_cast<int>(rows.size())) {
                        rows.push_back(u);
                        next.push_back(u);
                    }
                }
            frontier = std::move(next);
        }
        if (static_cast<int>(rows.size()) < dim) {
            rref(rows, dim);
            return {false, i, rows};
        }
    }
    return {};
}

// g_0 acting on g_{-1}.
template <class S>
std::vector<Mat<S>> g0_action(const GradedSubspace<S>& g) {
    std::vector<Mat<S>> r;
    for (auto& D : g.at(0).basis()) {
        auto A = action_matrix(D, g.at(-1));
        if (!A) throw std::invalid_argument("g_0 does not preserve g_-1");
        r.push_back(std::move(*A));
    }
    return r;
}

struct WeisfeilerEvidence {
    CheckResult transitive;
    bool irreducible = true;
    std::string irreducible_witness;
    int depth = 0;
    bool all() const { return transitive.ok && irreducible; }
};

// Evidence only: maximality of g_{>=0} is not decided.
template <class S>
WeisfeilerEvidence weisfeiler_evidence(const GradedSubspace<S>& g) {
    WeisfeilerEvidence e;
    e.transitive = transitive_check(g);
    auto ir = irreducible_check(g0_action(g), g.at(-1).dim());
    e.irreducible = ir.irreducible;
    if (!ir.irreducible) {
        e.irreducible_witness = "orbit of basis vector " + std::to_string(ir.generator) + " of g_-1 spans " +
                                std::to_string(ir.invariant.size()) + " of " + std::to_string(g.at(-1).dim());
    }
    e.depth = g.depth();
    return e;
}

struct DimsResult {
    bool equal = true;
    int first_mismatch = 0;  // degree
    SDim left, right;
};

// Entry-wise comparison of dimension signatures starting at degree lo.
inline DimsResult dims_equal(const std::vector<SDim>& a, const std::vector<SDim>& b, int lo) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension signatures cover different degree ranges");
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return {false, lo + static_cast<int>(i), a[i], b[i]};
    return {};
}

}  // namespace superprolong
