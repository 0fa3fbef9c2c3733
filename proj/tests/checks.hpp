#pragma once

// Randomized identity checks shared by the property tests and the acceptance binary.

#include "superprolong/deform.hpp"
#include "superprolong/series.hpp"

#include <functional>
#include <random>
#include <string>

namespace superprolong::testing {

struct Tally {
    int cases = 0;
    CheckResult result;
    explicit operator bool() const { return result.ok; }
};

template <class S>
Poly<S> random_element(const SigPtr& sig, int max_degree, std::mt19937_64& rng, int parity = -1) {
    std::uniform_int_distribution<int> deg(0, max_degree), par(0, 1), nt(1, 4);
    auto w = standard_weights(*sig);
    for (int attempt = 0; attempt < 16; ++attempt) {
        int p = parity < 0 ? par(rng) : parity;
        auto f = random_poly<S>(sig, w, deg(rng), p, nt(rng), rng);
        if (!f.is_zero()) return f;
    }
    return Poly<S>::gen(sig, 0);
}

template <class S>
std::string show(const Poly<S>& f) {
    return f.str();
}

// F_{br(f,g)} = [F_f, F_g] on random parity-homogeneous pairs.
template <class S>
Tally intertwining(const ContactSetup& s, const std::function<VectorField<S>(const Poly<S>&)>& field,
                   const std::function<Poly<S>(const Poly<S>&, const Poly<S>&)>& br, int pairs, int max_degree,
                   uint64_t seed) {
    std::mt19937_64 rng(seed);
    Tally t;
    for (; t.cases < pairs; ++t.cases) {
        auto f = random_element<S>(s.sig, max_degree, rng), g = random_element<S>(s.sig, max_degree, rng);
        if (field(br(f, g)) != bracket(field(f), field(g))) {
            t.result = {false, "f = " + show(f) + ", g = " + show(g)};
            ++t.cases;
            break;
        }
    }
    return t;
}

template <class S>
Tally intertwining_k(int n, int m, int pairs, int max_degree, uint64_t seed) {
    auto s = k_setup(n, m);
    return intertwining<S>(
        s, [&](const Poly<S>& f) { return field_K(s, f); },
        [&](const Poly<S>& f, const Poly<S>& g) { return bracket_kb(s, f, g); }, pairs, max_degree, seed);
}

template <class S>
Tally intertwining_m(int n, int pairs, int max_degree, uint64_t seed) {
    auto s = m_setup(n);
    return intertwining<S>(
        s, [&](const Poly<S>& f) { return field_M(s, f); },
        [&](const Poly<S>& f, const Poly<S>& g) { return bracket_mb(s, f, g); }, pairs, max_degree, seed);
}

// Div K_f = (2n + 2 - m) f_t in k(2n+1|m).
template <class S>
Tally contact_divergence(int n, int m, int samples, int max_degree, uint64_t seed) {
    auto s = k_setup(n, m);
    std::mt19937_64 rng(seed);
    Tally t;
    const S c(2 * n + 2 - m);
    for (; t.cases < samples; ++t.cases) {
        auto f = random_element<S>(s.sig, max_degree, rng);
        if (divergence(field_K(s, f)) != f.partial(s.t).scaled(c)) {
            t.result = {false, "f = " + show(f)};
            ++t.cases;
            break;
        }
    }
    return t;
}

// Jacobi identity of a bracket of parity pi on random parity-homogeneous triples.
template <class S>
Tally bracket_jacobi(const SigPtr& sig, const std::function<Poly<S>(const Poly<S>&, const Poly<S>&)>& br, int pi,
                     int triples, int max_degree, uint64_t seed) {
    std::mt19937_64 rng(seed);
    Tally t;
    for (; t.cases < triples; ++t.cases) {
        auto f = random_element<S>(sig, max_degree, rng), g = random_element<S>(sig, max_degree, rng),
             h = random_element<S>(sig, max_degree, rng);
        auto r = jacobi_residual<S>(br, pi, f, g, h);
        if (!r.is_zero()) {
            t.result = {false, "(" + show(f) + ", " + show(g) + ", " + show(h) + ") -> " + show(r)};
            ++t.cases;
            break;
        }
    }
    return t;
}

// Div Le_f = 2 (-1)^{p(f)} Delta f.
template <class S>
Tally antibracket_divergence(int n, int samples, int max_degree, uint64_t seed) {
    auto s = le_setup(n);
    std::mt19937_64 rng(seed);
    Tally t;
    for (; t.cases < samples; ++t.cases) {
        auto f = random_element<S>(s.sig, max_degree, rng);
        S c(f.parity() ? -2 : 2);
        if (divergence(field_Le(s, f)) != delta(s, f).scaled(c)) {
            t.result = {false, "f = " + show(f)};
            ++t.cases;
            break;
        }
    }
    return t;
}

// [D_f, D_g] = D_{f,g}_P.b. + hbar D_{c(f,g)} and every D_f solves the h_lambda system.
template <class S>
Tally hamiltonian_deformation(const S& hbar, int pairs, int max_degree, uint64_t seed) {
    auto s = h22_setup();
    std::mt19937_64 rng(seed);
    S h = h_from_hbar(hbar);
    Tally t;
    for (; t.cases < pairs; ++t.cases) {
        auto f = random_element<S>(s.sig, max_degree, rng), g = random_element<S>(s.sig, max_degree, rng);
        auto lhs = bracket(field_D(s, f, hbar), field_D(s, g, hbar));
        auto rhs = field_D(s, bracket_pb(s, f, g), hbar) + field_D(s, c_sing(s, f, g), hbar).scaled(hbar);
        if (lhs != rhs) {
            t.result = {false, "bracket: f = " + show(f) + ", g = " + show(g)};
            ++t.cases;
            break;
        }
        for (auto& r : h_lambda_system(s, field_D(s, f, hbar), h))
            if (!r.is_zero()) {
                t.result = {false, "system: f = " + show(f) + " residual " + show(r)};
                ++t.cases;
                return t;
            }
    }
    return t;
}

}  // namespace superprolong::testing
