#pragma once

#include "superprolong/gradings.hpp"
#include "superprolong/matrix.hpp"
#include "superprolong/prolong.hpp"
#include "superprolong/series.hpp"

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace superprolong {

// Expresses vectors in a fixed (not necessarily echelon) list of independent vectors.
template <class S>
class Coordinatizer {
public:
    Coordinatizer() = default;
    Coordinatizer(const std::vector<SparseRow<S>>& vecs, int ncols) : n_(ncols), k_(static_cast<int>(vecs.size())) {
        ech_ = SparseEchelon<S>(n_ + k_);
        for (int i = 0; i < k_; ++i) {
            SparseRow<S> r = vecs[i];
            r.emplace_back(n_ + i, S(1));
            r = ech_.reduce(std::move(r));
            if (r.empty() || r.front().first >= n_) throw std::invalid_argument("vectors are linearly dependent");
            ech_.add(std::move(r));
        }
        ech_.finalize();
    }
    // nullopt when v is outside the span.
    std::optional<SparseRow<S>> operator()(const SparseRow<S>& v) const {
        auto r = ech_.reduce(v);
        SparseRow<S> c;
        for (auto& [j, x] : r) {
            if (j < n_) return std::nullopt;
            c.emplace_back(j - n_, -x);
        }
        return c;
    }

private:
    int n_ = 0, k_ = 0;
    SparseEchelon<S> ech_{0};
};

// Structure constants in a homogeneous basis; degrees are optional (truncations set max_degree).
template <class S>
struct FiniteLieSuperalgebra {
    std::vector<std::string> names;
    std::vector<int> parity;
    std::vector<int> degree;
    std::optional<int> max_degree;
    std::vector<std::vector<SparseRow<S>>> table;

    int dim() const { return static_cast<int>(parity.size()); }
    SDim sdim() const {
        SDim s;
        for (int p : parity) (p ? s.odd : s.even)++;
        return s;
    }
    const SparseRow<S>& bracket(int i, int j) const { return table[i][j]; }
    SparseRow<S> bracket(const SparseRow<S>& x, const SparseRow<S>& y) const {
        std::map<int, S> acc;
        for (auto& [i, a] : x)
            for (auto& [j, b] : y)
                for (auto& [k, c] : table[i][j]) acc[k] += a * b * c;
        SparseRow<S> r;
        for (auto& [k, v] : acc)
            if (!v.is_zero()) r.emplace_back(k, v);
        return r;
    }
    bool in_range(int d) const { return !max_degree || d <= *max_degree; }
};

template <class S>
SparseRow<S> unit_row(int i) {
    return {{i, S(1)}};
}

template <class S>
SparseRow<S> add_rows(const SparseRow<S>& a, const SparseRow<S>& b, const S& f = S(1)) {
    return axpy_sparse(a, -f, b);
}

inline int sign_of(int e) { return (e & 1) ? -1 : 1; }

// Triple filter for truncations: pair sums and the triple sum (each shifted by s) must stay in range.
template <class S>
bool triple_in_range(const FiniteLieSuperalgebra<S>& g, int i, int j, int k, int s = 0) {
    if (!g.max_degree) return true;
    if (g.degree.empty()) return true;
    int a = g.degree[i], b = g.degree[j], c = g.degree[k];
    for (int p : {a + b, a + c, b + c})
        if (!g.in_range(p) || !g.in_range(p + s)) return false;
    return g.in_range(a + b + c + s);
}

inline std::string triple_str(const std::vector<std::string>& n, int i, int j, int k) {
    return "(" + n[i] + ", " + n[j] + ", " + n[k] + ")";
}

// [x,y] = -(-1)^{p(x)p(y)} [y,x] on basis pairs.
template <class S>
CheckResult check_antisymmetry(const FiniteLieSuperalgebra<S>& g) {
    for (int i = 0; i < g.dim(); ++i)
        for (int j = i; j < g.dim(); ++j) {
            auto sum = add_rows(g.table[i][j], g.table[j][i], S(sign_of(g.parity[i] * g.parity[j])));
            if (!sum.empty()) return {false, "[" + g.names[i] + ", " + g.names[j] + "] not super antisymmetric"};
        }
    return {};
}

// [x,[y,z]] = [[x,y],z] + (-1)^{p(x)p(y)} [y,[x,z]] on all in-range basis triples.
template <class S>
CheckResult check_jacobi(const FiniteLieSuperalgebra<S>& g) {
    auto a = check_antisymmetry(g);
    if (!a) return a;
    const int n = g.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (!triple_in_range(g, i, j, k)) continue;
                auto lhs = g.bracket(unit_row<S>(i), g.table[j][k]);
                auto r1 = g.bracket(g.table[i][j], unit_row<S>(k));
                auto r2 = g.bracket(unit_row<S>(j), g.table[i][k]);
                auto d = add_rows(add_rows(lhs, r1, S(-1)), r2, S(-sign_of(g.parity[i] * g.parity[j])));
                if (!d.empty()) return {false, "Jacobi fails on " + triple_str(g.names, i, j, k)};
            }
    return {};
}

// Bracket of matrices in a basis, optionally modulo extra matrices (e.g. the identity for psl, psq).
template <class S>
FiniteLieSuperalgebra<S> algebra_from_matrices(const MatrixBasis<S>& basis, const MatrixBasis<S>& modulo = {},
                                               const std::string& prefix = "e") {
    FiniteLieSuperalgebra<S> g;
    const int n = static_cast<int>(basis.size());
    std::vector<SparseRow<S>> vecs;
    for (auto& x : basis) vecs.push_back(to_sparse(x.flat()));
    for (auto& x : modulo) vecs.push_back(to_sparse(x.flat()));
    int ncols = basis.empty() ? 0 : basis[0].fmt.size() * basis[0].fmt.size();
    Coordinatizer<S> coord(vecs, ncols);
    for (int i = 0; i < n; ++i) {
        g.names.push_back(prefix + std::to_string(i));
        g.parity.push_back(basis[i].parity);
    }
    g.table.assign(n, std::vector<SparseRow<S>>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto c = coord(to_sparse(supercommutator(basis[i], basis[j]).flat()));
            if (!c) throw std::invalid_argument("matrix basis is not closed under the bracket");
            SparseRow<S> r;
            for (auto& [k, v] : *c)
                if (k < n) r.emplace_back(k, v);
            g.table[i][j] = std::move(r);
        }
    return g;
}

// Elements encoded by polynomials with a bracket on them; brackets above max_degree are dropped and
// components along `modulo` (e.g. constants) are discarded.
template <class S>
struct PolyAlgebra {
    FiniteLieSuperalgebra<S> alg;
    std::vector<Poly<S>> basis;
    SigPtr sig;
    Coordinatizer<S> coord;
    std::map<Monomial, int> cols;
    int n_modulo = 0;

    SparseRow<S> poly_row(const Poly<S>& f) const {
        SparseRow<S> r;
        for (auto& [m, c] : f.terms()) {
            auto it = cols.find(m);
            if (it == cols.end()) throw std::out_of_range("monomial outside the truncation: " + f.str());
            r.emplace_back(it->second, c);
        }
        std::sort(r.begin(), r.end(), [](auto& a, auto& b) { return a.first < b.first; });
        return r;
    }
    // Coordinates of f in the basis; nullopt when f is not in the span (modulo discarded).
    std::optional<SparseRow<S>> coordinates(const Poly<S>& f) const {
        auto c = coord(poly_row(f));
        if (!c) return std::nullopt;
        SparseRow<S> r;
        for (auto& [k, v] : *c)
            if (k < alg.dim()) r.emplace_back(k, v);
        return r;
    }
    Poly<S> poly(const SparseRow<S>& x) const {
        Poly<S> f(sig);
        for (auto& [i, a] : x) f += basis[i].scaled(a);
        return f;
    }
};

// degree_of(f) gives the algebra degree of a homogeneous basis polynomial.
template <class S>
PolyAlgebra<S> algebra_from_polys(const SigPtr& sig, const std::vector<Poly<S>>& basis, const std::vector<int>& degrees,
                                  const std::function<Poly<S>(const Poly<S>&, const Poly<S>&)>& br,
                                  std::optional<int> max_degree, const std::vector<Poly<S>>& modulo = {},
                                  int bracket_parity = 0) {
    PolyAlgebra<S> A;
    A.sig = sig;
    A.basis = basis;
    const int n = static_cast<int>(basis.size());
    for (auto* list : {&basis, &modulo})
        for (auto& f : *list)
            for (auto& [m, c] : f.terms()) A.cols.emplace(m, 0);
    int c = 0;
    for (auto& [m, idx] : A.cols) idx = c++;
    std::vector<SparseRow<S>> vecs;
    for (auto& f : basis) vecs.push_back(A.poly_row(f));
    for (auto& f : modulo) vecs.push_back(A.poly_row(f));
    A.coord = Coordinatizer<S>(vecs, c);
    A.n_modulo = static_cast<int>(modulo.size());
    auto& g = A.alg;
    g.max_degree = max_degree;
    g.degree = degrees;
    for (int i = 0; i < n; ++i) {
        g.names.push_back(basis[i].str());
        g.parity.push_back((basis[i].parity() + bracket_parity) & 1);
    }
    g.table.assign(n, std::vector<SparseRow<S>>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!g.in_range(degrees[i] + degrees[j])) continue;
            auto v = br(basis[i], basis[j]);
            if (v.is_zero()) continue;
            auto r = A.coordinates(v);
            if (!r) throw std::invalid_argument("bracket leaves the algebra: {" + g.names[i] + ", " + g.names[j] + "}");
            g.table[i][j] = std::move(*r);
        }
    return A;
}

// Truncation of a graded subspace of vector fields: brackets above the top degree are zero.
template <class S>
FiniteLieSuperalgebra<S> truncate(const GradedSubspace<S>& G) {
    FiniteLieSuperalgebra<S> g;
    std::vector<std::pair<int, int>> where;  // (degree, index in component)
    std::map<int, int> offset;
    for (auto& [d, c] : G.components()) {
        offset[d] = static_cast<int>(where.size());
        for (int i = 0; i < c.dim(); ++i) {
            where.emplace_back(d, i);
            g.names.push_back("g" + std::to_string(d) + "_" + std::to_string(i));
            g.parity.push_back(c.parities()[i]);
            g.degree.push_back(d);
        }
    }
    g.max_degree = G.max_degree();
    const int n = static_cast<int>(where.size());
    g.table.assign(n, std::vector<SparseRow<S>>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int d = where[i].first + where[j].first;
            if (!G.has(d)) continue;
            auto br = bracket(G.at(where[i].first).basis()[where[i].second],
                              G.at(where[j].first).basis()[where[j].second]);
            auto c = G.at(d).coordinates(br);
            if (!c) throw std::invalid_argument("truncation is not closed under the bracket");
            SparseRow<S> r;
            for (int k = 0; k < static_cast<int>(c->size()); ++k)
                if (!(*c)[k].is_zero()) r.emplace_back(offset[d] + k, (*c)[k]);
            g.table[i][j] = std::move(r);
        }
    return g;
}

// Scalar-valued 2-cochain on basis pairs.
template <class S>
struct CentralCocycle {
    std::string name;
    int parity = 0;
    std::vector<std::vector<S>> value;
    S eval(const SparseRow<S>& x, const SparseRow<S>& y) const {
        S r(0);
        for (auto& [i, a] : x)
            for (auto& [j, b] : y)
                if (!value[i][j].is_zero()) r += a * b * value[i][j];
        return r;
    }
};

// Adjoint-valued 2-cochain on basis pairs.
template <class S>
struct AdjointCocycle {
    std::string name;
    int parity = 0;
    int shift = 0;  // degree of the cochain
    std::vector<std::vector<SparseRow<S>>> value;
    SparseRow<S> eval(const SparseRow<S>& x, const SparseRow<S>& y) const {
        SparseRow<S> r;
        for (auto& [i, a] : x)
            for (auto& [j, b] : y)
                if (!value[i][j].empty()) r = add_rows(r, value[i][j], a * b);
        return r;
    }
};

template <class S>
CentralCocycle<S> central_from_rule(const std::string& name, int dim, int parity,
                                    const std::function<S(int, int)>& rule) {
    CentralCocycle<S> c{name, parity, std::vector<std::vector<S>>(dim, std::vector<S>(dim, S(0)))};
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) c.value[i][j] = rule(i, j);
    return c;
}

// c(x,[y,z]) = c([x,y],z) + (-1)^{p(x)p(y)} c(y,[x,z]) on all in-range triples; also super antisymmetry.
template <class S>
CheckResult check_central_cocycle(const FiniteLieSuperalgebra<S>& g, const CentralCocycle<S>& c) {
    const int n = g.dim();
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (c.value[i][j] + S(sign_of(g.parity[i] * g.parity[j])) * c.value[j][i] != S(0))
                return {false, "cocycle not super antisymmetric on (" + g.names[i] + ", " + g.names[j] + ")"};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (!triple_in_range(g, i, j, k)) continue;
                S lhs = c.eval(unit_row<S>(i), g.table[j][k]);
                S r1 = c.eval(g.table[i][j], unit_row<S>(k));
                S r2 = c.eval(unit_row<S>(j), g.table[i][k]);
                if (lhs != r1 + S(sign_of(g.parity[i] * g.parity[j])) * r2)
                    return {false, "cocycle identity fails on " + triple_str(g.names, i, j, k)};
            }
    return {};
}

// First-order Jacobi for [x,y] + eps c(x,y) with p(eps) = p(c):
// c(x,[y,z]) + s_x [x,c(y,z)] = c([x,y],z) + [c(x,y),z] + (-1)^{p(x)p(y)} (c(y,[x,z]) + s_y [y,c(x,z)]),
// where s_x = (-1)^{p(x)p(c)} comes from moving eps past x.
template <class S>
CheckResult check_adjoint_cocycle(const FiniteLieSuperalgebra<S>& g, const AdjointCocycle<S>& c,
                                  bool require_antisymmetry = true) {
    const int n = g.dim();
    if (require_antisymmetry)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                auto s = add_rows(c.value[i][j], c.value[j][i], S(sign_of(g.parity[i] * g.parity[j])));
                if (!s.empty())
                    return {false, "cochain not super antisymmetric on (" + g.names[i] + ", " + g.names[j] + ")"};
            }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                if (!triple_in_range(g, i, j, k, c.shift)) continue;
                auto ei = unit_row<S>(i), ej = unit_row<S>(j), ek = unit_row<S>(k);
                S sx(sign_of(g.parity[i] * c.parity)), sy(sign_of(g.parity[j] * c.parity));
                auto lhs = add_rows(c.eval(ei, g.table[j][k]), g.bracket(ei, c.value[j][k]), sx);
                auto rhs = add_rows(c.eval(g.table[i][j], ek), g.bracket(c.value[i][j], ek));
                auto t = add_rows(c.eval(ej, g.table[i][k]), g.bracket(ej, c.value[i][k]), sy);
                rhs = add_rows(rhs, t, S(sign_of(g.parity[i] * g.parity[j])));
                if (!add_rows(lhs, rhs, S(-1)).empty())
                    return {false, "cocycle identity fails on " + triple_str(g.names, i, j, k)};
            }
    return {};
}

// ---- matrix superalgebras with central cocycles ----

template <class S>
S trace_product(const Mat<S>& a, const Mat<S>& b) {
    return mat_trace(mat_mul(a, b));
}

// C~_{ij} = C_{kl} for an even permutation (1234) -> (ijkl), extended linearly from C_{ij} = E_ij - E_ji.
// For n > 4 the same rule is applied on the indices 1..4 and is zero when another index occurs.
template <class S>
Mat<S> tilde(const Mat<S>& C) {
    const int n = static_cast<int>(C.size());
    Mat<S> r(n, Vec<S>(n, S(0)));
    if (n < 4) return r;
    auto perm_sign = [](std::array<int, 4> p) {
        int inv = 0;
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b)
                if (p[a] > p[b]) ++inv;
        return (inv & 1) ? -1 : 1;
    };
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            S c = C[i][j];  // coefficient of C_ij = E_ij - E_ji
            if (c.is_zero()) continue;
            int k = -1, l = -1;
            for (int x = 0; x < 4; ++x)
                if (x != i && x != j) (k < 0 ? k : l) = x;
            // (i j k l) with k < l; flip to make the permutation even
            if (perm_sign({i, j, k, l}) < 0) std::swap(k, l);
            r[k][l] += c;
            r[l][k] -= c;
        }
    return r;
}

template <class S>
CentralCocycle<S> matrix_cocycle(const std::string& name, const MatrixBasis<S>& basis, int parity,
                                 const std::function<S(const SuperMatrix<S>&, const SuperMatrix<S>&)>& rule) {
    const int n = static_cast<int>(basis.size());
    return central_from_rule<S>(name, n, parity, [&](int i, int j) { return rule(basis[i], basis[j]); });
}

template <class S>
S tr_BB(const SuperMatrix<S>& x, const SuperMatrix<S>& y) {
    return trace_product(block(x, 0, 1), block(y, 0, 1));
}
template <class S>
S tr_CC(const SuperMatrix<S>& x, const SuperMatrix<S>& y) {
    return trace_product(block(x, 1, 0), block(y, 1, 0));
}
// adj X = (tr X) 1 - X for 2x2 blocks.
template <class S>
Mat<S> adjugate2(const Mat<S>& x) {
    if (x.size() != 2) throw std::invalid_argument("adjugate2 needs a 2x2 block");
    return {{x[1][1], -x[0][1]}, {-x[1][0], x[0][0]}};
}
template <class S>
S tr_B_adjB(const SuperMatrix<S>& x, const SuperMatrix<S>& y) {
    return trace_product(block(x, 0, 1), adjugate2(block(y, 0, 1)));
}
template <class S>
S tr_C_adjC(const SuperMatrix<S>& x, const SuperMatrix<S>& y) {
    return trace_product(block(x, 1, 0), adjugate2(block(y, 1, 0)));
}
template <class S>
S tr_BC_CB(const SuperMatrix<S>& x, const SuperMatrix<S>& y) {
    return trace_product(block(x, 0, 1), block(y, 1, 0)) + trace_product(block(x, 1, 0), block(y, 0, 1));
}
template <class S>
S tr_C_tildeC(const SuperMatrix<S>& x, const SuperMatrix<S>& y) {
    return trace_product(block(x, 1, 0), tilde(block(y, 1, 0)));
}

// One named central extension from the finite-dimensional table, with its algebra.
template <class S>
struct MatrixCocycleCase {
    std::string name;
    MatrixBasis<S> basis;
    FiniteLieSuperalgebra<S> alg;
    CentralCocycle<S> cocycle;
};

template <class S>
MatrixCocycleCase<S> matrix_case(const std::string& name, MatrixBasis<S> basis, const MatrixBasis<S>& modulo,
                                 int parity, const std::function<S(const SuperMatrix<S>&, const SuperMatrix<S>&)>& rule) {
    // drop basis elements that lie in the span of `modulo`
    if (!modulo.empty()) {
        MatrixBasis<S> kept;
        std::vector<SparseRow<S>> rows;
        SparseEchelon<S> ech(basis[0].fmt.size() * basis[0].fmt.size());
        for (auto& z : modulo) ech.add(to_sparse(z.flat()));
        for (auto& x : basis)
            if (ech.add(to_sparse(x.flat()))) kept.push_back(x);
        basis = kept;
    }
    auto alg = algebra_from_matrices(basis, modulo);
    auto c = matrix_cocycle<S>(name, basis, parity, rule);
    return {name, basis, alg, c};
}

// psl(n|n) = sl(n|n) modulo the identity.
template <class S>
MatrixBasis<S> identity_list(Format f) {
    return {SuperMatrix<S>::identity(f)};
}

template <class S>
std::vector<MatrixCocycleCase<S>> finite_dimensional_cocycles() {
    std::vector<MatrixCocycleCase<S>> r;
    Format f22{2, 2}, f33{3, 3};
    r.push_back(matrix_case<S>("psl(2|2): tr(B adj B')", sl_basis<S>(f22), identity_list<S>(f22), 0, tr_B_adjB<S>));
    r.push_back(matrix_case<S>("psl(2|2): tr(BC'+CB')", sl_basis<S>(f22), identity_list<S>(f22), 0, tr_BC_CB<S>));
    r.push_back(matrix_case<S>("psl(2|2): tr(C adj C')", sl_basis<S>(f22), identity_list<S>(f22), 0, tr_C_adjC<S>));
    r.push_back(matrix_case<S>("psl(3|3): tr(BC'+CB')", sl_basis<S>(f33), identity_list<S>(f33), 0, tr_BC_CB<S>));
    r.push_back(matrix_case<S>("psq(3): tr BB'", q_basis<S>(3, true), identity_list<S>(f33), 0, tr_BB<S>));
    r.push_back(matrix_case<S>("spe(4): tr(C C~')", spe_basis<S>(4), {}, 0, tr_C_tildeC<S>));
    return r;
}

template <class S>
MatrixCocycleCase<S> spe5_analog() {
    return matrix_case<S>("spe(5): tr(C C~')", spe_basis<S>(5), {}, 0, tr_C_tildeC<S>);
}

// h'(0|n) spanned by H_f, f of degree 1..n-1 in theta; cocycle sum_j (df/dtheta_j)(dg/dtheta_j) at theta = 0.
template <class S>
struct PolyCocycleCase {
    std::string name;
    ContactSetup setup;
    PolyAlgebra<S> alg;
    CentralCocycle<S> cocycle;
};

template <class S>
PolyCocycleCase<S> h_prime_0n(int n) {
    auto s = h_setup(0, n, true);
    std::vector<Poly<S>> basis;
    std::vector<int> deg;
    GradingVector w = standard_grading(*s.sig);
    for (int d = 1; d < n; ++d)
        for (auto& m : monomials_of_weight(*s.sig, w.w, d)) {
            basis.push_back(Poly<S>::term(s.sig, m, S(1)));
            deg.push_back(d - 2);
        }
    std::vector<Poly<S>> modulo{Poly<S>(s.sig, S(1))};
    auto br = [s](const Poly<S>& f, const Poly<S>& g) { return bracket_pb(s, f, g); };
    auto A = algebra_from_polys<S>(s.sig, basis, deg, br, std::nullopt, modulo);
    auto c = central_from_rule<S>("h'(0|" + std::to_string(n) + ")", A.alg.dim(), 0, [&](int i, int j) {
        S r(0);
        for (int th : s.theta) r += (basis[i].partial(th) * basis[j].partial(th)).constant_term();
        return r;
    });
    return {"h'(0|" + std::to_string(n) + ")", s, std::move(A), std::move(c)};
}

// ---- truncated generating-function algebras ----

// Basis of generating functions of weight d + shift satisfying cond (kernel in echelon form).
template <class S>
std::vector<Poly<S>> generating_functions(const ContactSetup& s, const GradingVector& w, int weight,
                                          const std::function<std::vector<Poly<S>>(const Poly<S>&)>& cond = {}) {
    auto mons = monomials_of_weight(*s.sig, w.w, weight);
    std::vector<Poly<S>> out;
    if (!cond) {
        for (auto& m : mons) out.push_back(Poly<S>::term(s.sig, m, S(1)));
        return out;
    }
    using Key = std::pair<int, Monomial>;
    std::vector<std::vector<std::pair<Key, S>>> cols(mons.size());
    for (size_t j = 0; j < mons.size(); ++j) {
        auto rs = cond(Poly<S>::term(s.sig, mons[j], S(1)));
        for (int k = 0; k < static_cast<int>(rs.size()); ++k)
            for (auto& [m, c] : rs[k].terms()) cols[j].push_back({{k, m}, c});
    }
    auto ker = kernel_of_columns<S, Key>(cols);
    Mat<S> rows(ker.begin(), ker.end());
    rref(rows, static_cast<int>(mons.size()));
    for (auto& v : rows) {
        Poly<S> f(s.sig);
        for (size_t j = 0; j < mons.size(); ++j)
            if (!v[j].is_zero()) f.add_term(mons[j], v[j]);
        out.push_back(std::move(f));
    }
    return out;
}

// Truncation of a series at degree N on the level of generating functions, with its bracket.
template <class S>
PolyAlgebra<S> truncated_series(const Algebra<S>& A, int N, const std::vector<Poly<S>>& first = {}) {
    const auto& s = A.setup;
    GenKind kind = is_k_family(A.tag)   ? GenKind::K
                   : is_h_family(A.tag) ? GenKind::H
                   : is_m_family(A.tag) ? GenKind::M
                                        : GenKind::Le;
    int shift = generating_shift(kind, s, A.w);
    std::vector<Poly<S>> basis, modulo;
    std::vector<int> deg;
    std::function<Poly<S>(const Poly<S>&, const Poly<S>&)> br;
    int bp = 0;
    if (kind == GenKind::K) br = [s](const Poly<S>& f, const Poly<S>& g) { return bracket_kb(s, f, g); };
    if (kind == GenKind::H) br = [s](const Poly<S>& f, const Poly<S>& g) { return bracket_pb(s, f, g); };
    if (kind == GenKind::M) br = [s](const Poly<S>& f, const Poly<S>& g) { return bracket_mb(s, f, g); }, bp = 1;
    if (kind == GenKind::Le) br = [s](const Poly<S>& f, const Poly<S>& g) { return bracket_bb(s, f, g); }, bp = 1;
    if (kind == GenKind::H || kind == GenKind::Le) modulo.push_back(Poly<S>(s.sig, S(1)));
    for (int d = A.lo; d <= N; ++d) {
        auto fs = generating_functions<S>(s, A.w, d + shift, A.cond);
        // put requested functions first in their degree so rules can single them out
        std::vector<Poly<S>> ordered;
        for (auto& f : first)
            if (f.weighted_degree(A.w.w) == std::optional<int>(d + shift)) ordered.push_back(f);
        for (auto& f : fs) ordered.push_back(f);
        // keep an independent subset
        std::map<Monomial, int> cols;
        for (auto& f : ordered)
            for (auto& [m, c] : f.terms()) cols.emplace(m, 0);
        int c = 0;
        for (auto& [m, i] : cols) i = c++;
        SparseEchelon<S> e(c);
        for (auto& f : ordered) {
            if ((kind == GenKind::H || kind == GenKind::Le) && d + shift == 0) continue;
            SparseRow<S> r;
            for (auto& [m, x] : f.terms()) r.emplace_back(cols[m], x);
            std::sort(r.begin(), r.end(), [](auto& a, auto& b) { return a.first < b.first; });
            if (e.add(r)) {
                basis.push_back(f);
                deg.push_back(d);
            }
        }
    }
    return algebra_from_polys<S>(s.sig, basis, deg, br, N, modulo, bp);
}

// ---- the main deformation of the Buttin bracket ----

// Standard degree: q = xi = 1.
template <class S>
std::map<int, Poly<S>> split_total_degree(const Poly<S>& f) {
    std::map<int, Poly<S>> r;
    for (auto& [m, c] : f.terms()) {
        auto [it, ins] = r.try_emplace(m.total_degree(f.sig()->n_even()), f.sig());
        it->second.add_term(m, c);
    }
    return r;
}

// {f1,f2}_B.b. - lambda (c(f1,f2) f1 Delta f2 + (-1)^{p(f1)} c(f2,f1) (Delta f1) f2),
// c(f1,f2) = (deg f1 - 2) / (2 + lambda (deg f2 - n)). The minus sign matches bracket_bb's sign convention
// (the antibracket here is the negative of the one for which the correction enters with a plus).
template <class S>
Poly<S> bracket_main(const ContactSetup& s, const Poly<S>& f, const Poly<S>& g, const S& lambda) {
    const int n = static_cast<int>(s.q.size());
    Poly<S> r = bracket_bb(s, f, g);
    for (auto& [df, fd] : split_total_degree(f))
        for (auto& [dg, gd] : split_total_degree(g)) {
            auto [f0, f1] = split_parity(fd);
            for (int p = 0; p < 2; ++p) {
                const Poly<S>& a = p ? f1 : f0;
                if (a.is_zero()) continue;
                S den1 = S(2) + lambda * S(dg - n), den2 = S(2) + lambda * S(df - n);
                Poly<S> t(s.sig);
                if (df != 2) {
                    if (den1.is_zero()) throw std::domain_error("bracket_main: vanishing denominator");
                    t += (a * delta(s, gd)).scaled(S(df - 2) / den1);
                }
                if (dg != 2) {
                    if (den2.is_zero()) throw std::domain_error("bracket_main: vanishing denominator");
                    t += (delta(s, a) * gd).scaled(S(sign_of(p)) * S(dg - 2) / den2);
                }
                r -= t.scaled(lambda);
            }
        }
    return r;
}

// Jacobi residual for a bracket of parity pi on homogeneous generating functions:
// {f,{g,h}} - {{f,g},h} - (-1)^{(p(f)+pi)(p(g)+pi)} {g,{f,h}}.
template <class S, class Br>
Poly<S> jacobi_residual(const Br& br, int pi, const Poly<S>& f, const Poly<S>& g, const Poly<S>& h) {
    int pf = f.parity(), pg = g.parity();
    if (pf < 0 || pg < 0) throw std::invalid_argument("jacobi_residual needs homogeneous arguments");
    return br(f, br(g, h)) - br(br(f, g), h) - br(g, br(f, h)).scaled(S(sign_of((pf + pi) * (pg + pi))));
}

// ---- h_lambda(2|2): D_f = H_f + hbar W_f on (p, q | xi, eta) ----

inline ContactSetup h22_setup() { return h_setup(1, 2); }

// int_0^p of g dp
template <class S>
Poly<S> integrate_p(const ContactSetup& s, const Poly<S>& g) {
    return g.antiderivative(s.p[0]);
}

// W_f = (int_0^p d_eta d_xi f dp) d_p + (-1)^{p(f)} f_xi d_eta
template <class S>
VectorField<S> field_W(const ContactSetup& s, const Poly<S>& f) {
    int p = s.p[0], xi = s.xi[0], eta = s.eta[0];
    return detail::by_parity(f, VectorField<S>(s.sig), [&](const Poly<S>& h, int par) {
        VectorField<S> d(s.sig);
        d.set(p, integrate_p(s, h.partial(xi).partial(eta)));
        d.set(eta, h.partial(xi).scaled(S(sign_of(par))));
        return d;
    });
}

template <class S>
VectorField<S> field_D(const ContactSetup& s, const Poly<S>& f, const S& hbar) {
    return field_H(s, f) + field_W(s, f).scaled(hbar);
}

// D_f = H_f + hbar W_f on h(2|2).
template <class S>
VectorField<S> hfield(const ContactSetup& s, const Poly<S>& f, const S& hbar) {
    return field_D(s, f, hbar);
}

template <class S>
Poly<S> eval_at_zero(const Poly<S>& f, const std::vector<int>& gens) {
    return f.set_zero(gens);
}

// c(f, g) from the deformation of the Buttin bracket on h(2|2).
template <class S>
Poly<S> c_sing(const ContactSetup& s, const Poly<S>& f, const Poly<S>& g) {
    int p = s.p[0], q = s.q[0], xi = s.xi[0], eta = s.eta[0];
    return detail::by_parity(f, Poly<S>(s.sig), [&](const Poly<S>& a, int pa) {
        S sa(sign_of(pa));
        auto I = [&](const Poly<S>& h) { return integrate_p(s, h.partial(xi).partial(eta)); };
        Poly<S> r = -(a.partial(p) * I(g)) + g.partial(p) * I(a);
        Poly<S> inner = a.partial(xi).scaled(sa) * g.partial(eta) + a.partial(eta) * g.partial(xi);
        Poly<S> xi_gen = Poly<S>::gen(s.sig, xi);
        r += xi_gen * eval_at_zero(inner, {p, q}).partial(xi);
        Poly<S> along_p = (a.partial(p).scaled(sa) * g.partial(xi) - a.partial(xi) * g.partial(p)).antiderivative(p);
        Poly<S> along_q =
            eval_at_zero(a.partial(q).scaled(sa) * g.partial(xi) - a.partial(xi) * g.partial(q), {p}).antiderivative(q);
        r += (along_p + along_q).partial(eta);
        return r;
    });
}

// Residuals of the linear system (1)-(8) for D = P d_p + Q d_q + X d_xi + Y d_eta, with lambda = 1/2 + h.
template <class S>
std::vector<Poly<S>> h_lambda_system(const ContactSetup& s, const VectorField<S>& D, const S& h) {
    int p = s.p[0], q = s.q[0], xi = s.xi[0], eta = s.eta[0];
    int pd = D.parity();
    if (pd < 0) throw std::invalid_argument("h_lambda_system needs a homogeneous field");
    S sd(sign_of(pd));
    const auto &P = D.coef(p), &Q = D.coef(q), &X = D.coef(xi), &Y = D.coef(eta);
    S one(1), two(2);
    return {
        X.partial(eta),
        Y.partial(xi),
        X.partial(p) + Q.partial(eta).scaled(sd),
        X.partial(q) - P.partial(eta).scaled(sd),
        P.partial(p) + Q.partial(q) - (X.partial(xi) + Y.partial(eta)).scaled(sd),
        Y.partial(p).scaled(one + two * h) - Q.partial(xi).scaled((two * h - one) * sd),
        Y.partial(q).scaled(one + two * h) + P.partial(xi).scaled((two * h - one) * sd),
        (P.partial(p) + Q.partial(q)).scaled(one + two * h) - X.partial(xi).scaled(S(4) * h * sd),
    };
}

// hbar = 4h / (1 + 2h)  <=>  h = hbar / (4 - 2 hbar)
template <class S>
S h_from_hbar(const S& hbar) {
    return hbar / (S(4) - S(2) * hbar);
}

template <class S>
S hbar_from_lambda(const S& lambda) {
    if (lambda.is_zero()) throw std::domain_error("hbar undefined at lambda = 0");
    return (S(2) * lambda - S(1)) / lambda;
}

// Graded model of h_lambda(2|2) in the standard grading: span of D_f over monomials f.
template <class S>
ComponentModel<S> h_lambda_model(const ContactSetup& s, const S& hbar) {
    GradingVector w = standard_grading(*s.sig);
    return [=](int d) {
        std::vector<VectorField<S>> fs;
        for (auto& m : monomials_of_weight(*s.sig, w.w, d + 2)) {
            auto D = field_D(s, Poly<S>::term(s.sig, m, S(1)), hbar);
            if (!D.is_zero()) fs.push_back(std::move(D));
        }
        return Component<S>::span(make_space(s.sig, w, d), fs);
    };
}

// ---- Sergeev's extension as and the spinor representations T_lambda ----

template <class S>
struct AsAlgebra {
    MatrixBasis<S> spe;            // basis of spe(4); index dim is the center
    FiniteLieSuperalgebra<S> alg;  // spe(4) + C z
};

template <class S>
AsAlgebra<S> as_algebra() {
    AsAlgebra<S> r;
    r.spe = spe_basis<S>(4);
    auto base = algebra_from_matrices(r.spe);
    const int n = base.dim();
    auto& g = r.alg;
    g.names = base.names;
    g.names.push_back("z");
    g.parity = base.parity;
    g.parity.push_back(0);
    g.table.assign(n + 1, std::vector<SparseRow<S>>(n + 1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            g.table[i][j] = base.table[i][j];
            S c = tr_C_tildeC(r.spe[i], r.spe[j]);
            if (!c.is_zero()) g.table[i][j].emplace_back(n, c);
        }
    return r;
}

// T_lambda: (A B; C -A^t) + a z -> (A, B - lambda C~; C, -A^t) - (lambda / 2) a 1, on coordinates of as.
// The central element z of [x, y] = ... + tr(C C~') z goes to -1/2 1 at lambda = 1.
template <class S>
SuperMatrix<S> spin_rep(const AsAlgebra<S>& as, const SparseRow<S>& x, const S& lambda) {
    Format f{4, 4};
    auto m = SuperMatrix<S>::zero(f, 0);
    const int n = static_cast<int>(as.spe.size());
    int par = -1;
    for (auto& [i, a] : x) {
        if (i == n) {
            m = m + SuperMatrix<S>::identity(f).scaled(-lambda * a / S(2));
            par = 0;
            continue;
        }
        auto X = as.spe[i].scaled(a);
        auto Ct = tilde(block(X, 1, 0));
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) X.a[r][4 + c] -= lambda * Ct[r][c];
        m = m + X;
        par = as.spe[i].parity;
    }
    if (par >= 0) m.parity = par;
    return m;
}

// T([x,y]) = [T x, T y] on basis pairs.
template <class S>
CheckResult check_spin_homomorphism(const AsAlgebra<S>& as, const S& lambda) {
    const int n = as.alg.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto lhs = spin_rep(as, as.alg.table[i][j], lambda);
            auto rhs = supercommutator(spin_rep(as, unit_row<S>(i), lambda), spin_rep(as, unit_row<S>(j), lambda));
            if (!(lhs.a == rhs.a)) return {false, "T fails on (" + as.alg.names[i] + ", " + as.alg.names[j] + ")"};
        }
    return {};
}

// ---- central cocycles of infinite-dimensional vectorial algebras, on truncations ----

// h(2n|m): {f,g}_P.b. at p = q = theta = 0 (all odd indeterminates).
template <class S>
PolyCocycleCase<S> h_evaluation_cocycle(int n, int m, int N) {
    auto A = make_algebra<S>(Series::h, n, m, {});
    auto s = A.setup;
    auto P = truncated_series<S>(A, N);
    auto c = central_from_rule<S>("h evaluation", P.alg.dim(), 0, [&](int i, int j) {
        return bracket_pb(s, P.basis[i], P.basis[j]).constant_term();
    });
    return {"h(" + std::to_string(2 * n) + "|" + std::to_string(m) + ")", s, std::move(P), std::move(c)};
}

// le(n): {f,g}_B.b. at q = xi = 0; an odd cocycle.
template <class S>
PolyCocycleCase<S> le_evaluation_cocycle(int n, int N) {
    auto A = make_algebra<S>(Series::le, n, 0, {});
    auto s = A.setup;
    auto P = truncated_series<S>(A, N);
    auto c = central_from_rule<S>("le evaluation", P.alg.dim(), 1, [&](int i, int j) {
        return bracket_bb(s, P.basis[i], P.basis[j]).constant_term();
    });
    return {"le(" + std::to_string(n) + ")", s, std::move(P), std::move(c)};
}

template <class S>
PolyCocycleCase<S> vectorial_central_cocycles(Series series, int n, int m, int N) {
    if (series == Series::h) return h_evaluation_cocycle<S>(n, m, N);
    if (series == Series::le && m == 0) return le_evaluation_cocycle<S>(n, N);
    throw std::invalid_argument("no central evaluation cocycle for this series");
}

// ---- singular deformations of b_lambda(n) ----

template <class S>
int d_odd_of(const Monomial& m, const ContactSetup& s) {
    int k = 0;
    for (int x : s.xi)
        if ((m.odd >> s.sig->odd_slot(x)) & 1u) ++k;
    if (s.t >= 0 && ((m.odd >> s.sig->odd_slot(s.t)) & 1u)) ++k;
    return k;
}

// (d_od - 1) applied termwise.
template <class S>
Poly<S> d_odd_minus_one(const ContactSetup& s, const Poly<S>& f) {
    Poly<S> r(s.sig);
    for (auto& [m, c] : f.terms()) r.add_term(m, c * S(d_odd_of<S>(m, s) - 1));
    return r;
}

template <class S>
Monomial xi_product(const ContactSetup& s, bool with_tau) {
    Monomial m;
    for (int x : s.xi) m.odd |= 1u << s.sig->odd_slot(x);
    if (with_tau) m.odd |= 1u << s.sig->odd_slot(s.t);
    return m;
}

enum class PairReading { ordered, antisymmetric };

struct SingularCase {
    std::string name;
    int n = 2;
    std::optional<Rational> lambda;  // nullopt = infinity
    int parity = 0;
};

// The table of singular cocycles with the parity of each.
inline std::vector<SingularCase> singular_cases(int n) {
    return {
        {"b_0", n, Rational(0), 1},
        {"b_-1", n, Rational(-1), (n + 1) & 1},
        {"b_1", n, Rational(1), (n + 1) & 1},
        {"b_inf", n, std::nullopt, n & 1},
    };
}

template <class S>
struct SingularCheck {
    PolyAlgebra<S> alg;
    AdjointCocycle<S> cocycle;
};

// Builds the truncated b_lambda(n) (on generating functions, m.b. bracket) and the tabulated cocycle.
template <class S>
SingularCheck<S> singular_cocycle(const SingularCase& sc, int N, PairReading reading = PairReading::antisymmetric) {
    auto [a, b] = ab_for_lambda<S>(sc.n, sc.lambda ? std::optional<S>(S(*sc.lambda)) : std::nullopt);
    auto A = make_algebra<S>(Series::b_ab, sc.n, 0, {}, a, b);
    auto s = A.setup;
    std::vector<Poly<S>> first;
    Poly<S> special(s.sig);
    if (sc.name == "b_1") special = Poly<S>::term(s.sig, xi_product<S>(s, false), S(1));
    if (sc.name == "b_inf") special = Poly<S>::term(s.sig, xi_product<S>(s, true), S(1));
    if (!special.is_zero()) first.push_back(special);
    auto P = truncated_series<S>(A, N, first);
    const int dim = P.alg.dim();
    const int gen_shift = generating_shift(GenKind::M, s, A.w);
    AdjointCocycle<S> c{sc.name, sc.parity, 0, std::vector<std::vector<SparseRow<S>>>(dim, std::vector<SparseRow<S>>(dim))};
    std::optional<int> shift;
    // values above the truncation are dropped; the degree shift is read off the values
    auto put = [&](int i, int j, const Poly<S>& v) {
        if (v.is_zero()) return;
        auto wv = v.weighted_degree(A.w.w);
        if (!wv) throw std::invalid_argument("cocycle value is not homogeneous: " + v.str());
        int d = *wv - gen_shift;
        int sh = d - P.alg.degree[i] - P.alg.degree[j];
        if (shift && *shift != sh) throw std::invalid_argument("cocycle is not homogeneous");
        shift = sh;
        if (!P.alg.in_range(d)) return;
        auto r = P.coordinates(v);
        if (!r) throw std::invalid_argument("cocycle value outside the algebra: " + v.str());
        c.value[i][j] = std::move(*r);
    };
    int special_idx = -1;
    for (int i = 0; i < dim; ++i)
        if (!special.is_zero() && P.basis[i] == special) special_idx = i;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            const auto &f = P.basis[i], &g = P.basis[j];
            if (sc.name == "b_0") {
                put(i, j, (d_odd_minus_one(s, f) * d_odd_minus_one(s, g)).scaled(S(sign_of(f.parity()))));
            } else if (sc.name == "b_-1") {
                // only on pure powers of q
                auto pure_q = [&](const Poly<S>& h) {
                    return h.size() == 1 && h.terms().begin()->first.odd == 0 && h.terms().begin()->second == S(1);
                };
                if (!pure_q(f) || !pure_q(g)) continue;
                Poly<S> qq = f * g;
                int k = f.max_total_degree() + g.max_total_degree();
                Poly<S> top = qq * Poly<S>::term(s.sig, xi_product<S>(s, false), S(1));
                Poly<S> v = top.scaled(S(4 - k)) + Poly<S>::gen(s.sig, s.t) * delta(s, top);
                put(i, j, v);
            } else {
                if (i == special_idx && j == special_idx) {
                    bool even_case = sc.name == "b_1" ? (sc.n % 2 == 0) : (sc.n % 2 == 1);
                    if (even_case) put(i, j, f.scaled(sc.name == "b_1" ? S(2 * (sc.n - 1)) : S(2)));
                } else if (i == special_idx) {
                    put(i, j, d_odd_minus_one(s, g));
                } else if (j == special_idx && reading == PairReading::antisymmetric) {
                    put(i, j, d_odd_minus_one(s, f).scaled(S(-sign_of(P.alg.parity[i] * P.alg.parity[j]))));
                }
            }
        }
    c.shift = shift.value_or(0);
    return {std::move(P), std::move(c)};
}

}  // namespace superprolong
