#pragma once

#include "superprolong/fields.hpp"
#include "superprolong/linalg.hpp"
#include "superprolong/series.hpp"

#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

namespace superprolong {

// Superspace format (m|n): the first m basis vectors are even, the last n odd.
struct Format {
    int m = 0, n = 0;
    int size() const { return m + n; }
    int parity(int i) const { return i < m ? 0 : 1; }
};

template <class S>
struct SuperMatrix {
    Format fmt;
    Mat<S> a;
    int parity = 0;

    static SuperMatrix zero(Format f, int parity = 0) {
        return {f, Mat<S>(f.size(), Vec<S>(f.size(), S(0))), parity};
    }
    static SuperMatrix unit(Format f, int i, int j) {
        auto z = zero(f, (f.parity(i) + f.parity(j)) & 1);
        z.a[i][j] = S(1);
        return z;
    }
    static SuperMatrix identity(Format f) {
        auto z = zero(f, 0);
        for (int i = 0; i < f.size(); ++i) z.a[i][i] = S(1);
        return z;
    }
    const S& operator()(int i, int j) const { return a[i][j]; }
    S& operator()(int i, int j) { return a[i][j]; }
    bool is_zero() const {
        for (auto& r : a)
            if (!is_zero_vec(r)) return false;
        return true;
    }
    SuperMatrix operator+(const SuperMatrix& o) const {
        SuperMatrix r = *this;
        for (int i = 0; i < fmt.size(); ++i)
            for (int j = 0; j < fmt.size(); ++j) r.a[i][j] += o.a[i][j];
        if (is_zero()) r.parity = o.parity;
        return r;
    }
    SuperMatrix operator-(const SuperMatrix& o) const { return *this + o.scaled(S(-1)); }
    SuperMatrix scaled(const S& s) const {
        SuperMatrix r = *this;
        for (auto& row : r.a)
            for (auto& x : row) x *= s;
        return r;
    }
    SuperMatrix operator*(const SuperMatrix& o) const {
        SuperMatrix r = zero(fmt, (parity + o.parity) & 1);
        const int N = fmt.size();
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k) {
                if (a[i][k].is_zero()) continue;
                for (int j = 0; j < N; ++j)
                    if (!o.a[k][j].is_zero()) r.a[i][j] += a[i][k] * o.a[k][j];
            }
        return r;
    }
    friend bool operator==(const SuperMatrix& x, const SuperMatrix& y) { return x.a == y.a; }

    // Flattened entries, row-major.
    Vec<S> flat() const {
        Vec<S> v;
        for (auto& r : a) v.insert(v.end(), r.begin(), r.end());
        return v;
    }
    static SuperMatrix from_flat(Format f, const Vec<S>& v, int parity) {
        auto z = zero(f, parity);
        for (int i = 0; i < f.size(); ++i)
            for (int j = 0; j < f.size(); ++j) z.a[i][j] = v[i * f.size() + j];
        return z;
    }
};

template <class S>
SuperMatrix<S> supercommutator(const SuperMatrix<S>& x, const SuperMatrix<S>& y) {
    auto r = x * y - (y * x).scaled((x.parity & y.parity) ? S(-1) : S(1));
    r.parity = (x.parity + y.parity) & 1;
    return r;
}

template <class S>
S supertrace(const SuperMatrix<S>& x) {
    S r(0);
    for (int i = 0; i < x.fmt.size(); ++i) r += x.fmt.parity(i) ? -x.a[i][i] : x.a[i][i];
    return r;
}

template <class S>
S trace(const SuperMatrix<S>& x) {
    S r(0);
    for (int i = 0; i < x.fmt.size(); ++i) r += x.a[i][i];
    return r;
}

// (X^st)_ij = (-1)^{(p_i + p_j)(p_i + p(X))} X_ji
template <class S>
SuperMatrix<S> supertranspose(const SuperMatrix<S>& x) {
    auto r = SuperMatrix<S>::zero(x.fmt, x.parity);
    for (int i = 0; i < x.fmt.size(); ++i)
        for (int j = 0; j < x.fmt.size(); ++j) {
            int pi = x.fmt.parity(i), pj = x.fmt.parity(j);
            int e = ((pi + pj) * (pi + x.parity)) & 1;
            r.a[i][j] = e ? -x.a[j][i] : x.a[j][i];
        }
    return r;
}

// Block access for the standard format (A B; C D).
template <class S>
Mat<S> block(const SuperMatrix<S>& x, int bi, int bj) {
    int r0 = bi ? x.fmt.m : 0, c0 = bj ? x.fmt.m : 0;
    int nr = bi ? x.fmt.n : x.fmt.m, nc = bj ? x.fmt.n : x.fmt.m;
    Mat<S> b(nr, Vec<S>(nc, S(0)));
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) b[i][j] = x.a[r0 + i][c0 + j];
    return b;
}

template <class S>
Mat<S> mat_mul(const Mat<S>& x, const Mat<S>& y) {
    size_t n = x.size(), k = y.size(), m = k ? y[0].size() : 0;
    Mat<S> r(n, Vec<S>(m, S(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (x[i][l].is_zero()) continue;
            for (size_t j = 0; j < m; ++j) r[i][j] += x[i][l] * y[l][j];
        }
    return r;
}

template <class S>
S mat_trace(const Mat<S>& x) {
    S r(0);
    for (size_t i = 0; i < x.size(); ++i) r += x[i][i];
    return r;
}

template <class S>
using MatrixBasis = std::vector<SuperMatrix<S>>;

// Linear conditions on matrices of one parity, solved over matrix units; returns an echelon basis.
template <class S, class Cond>
MatrixBasis<S> solve_matrices(Format f, int parity, Cond cond) {
    std::vector<std::pair<int, int>> units;
    for (int i = 0; i < f.size(); ++i)
        for (int j = 0; j < f.size(); ++j)
            if (((f.parity(i) + f.parity(j)) & 1) == parity) units.emplace_back(i, j);
    std::vector<std::vector<std::pair<int, S>>> cols;
    for (auto [i, j] : units) {
        Vec<S> r = cond(SuperMatrix<S>::unit(f, i, j));
        std::vector<std::pair<int, S>> c;
        for (size_t k = 0; k < r.size(); ++k)
            if (!r[k].is_zero()) c.emplace_back(static_cast<int>(k), r[k]);
        cols.push_back(std::move(c));
    }
    auto ker = kernel_of_columns<S, int>(cols);
    // canonical order: echelon form of the kernel over the unit coordinates
    Mat<S> rows;
    for (auto& v : ker) rows.push_back(v);
    rref(rows, static_cast<int>(units.size()));
    MatrixBasis<S> out;
    for (auto& v : rows) {
        auto x = SuperMatrix<S>::zero(f, parity);
        for (size_t k = 0; k < units.size(); ++k) x.a[units[k].first][units[k].second] = v[k];
        out.push_back(std::move(x));
    }
    return out;
}

template <class S>
MatrixBasis<S> concat(MatrixBasis<S> a, const MatrixBasis<S>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

template <class S>
MatrixBasis<S> gl_basis(Format f) {
    auto none = [](const SuperMatrix<S>&) { return Vec<S>{}; };
    return concat(solve_matrices<S>(f, 0, none), solve_matrices<S>(f, 1, none));
}

template <class S>
MatrixBasis<S> sl_basis(Format f) {
    auto str = [](const SuperMatrix<S>& x) { return Vec<S>{supertrace(x)}; };
    return concat(solve_matrices<S>(f, 0, str), solve_matrices<S>(f, 1, str));
}

// Preserves the bilinear form with Gram matrix B: X^st B + (-1)^{p(X)p(B)} B X = 0.
template <class S>
MatrixBasis<S> aut_basis(const SuperMatrix<S>& B, bool traceless = false) {
    MatrixBasis<S> out;
    for (int p = 0; p < 2; ++p) {
        auto cond = [&](const SuperMatrix<S>& x) {
            auto r = supertranspose(x) * B + (B * x).scaled((p & B.parity) ? S(-1) : S(1));
            Vec<S> v = r.flat();
            if (traceless) v.push_back(supertrace(x));
            return v;
        };
        out = concat(out, solve_matrices<S>(B.fmt, p, cond));
    }
    return out;
}

// J_{2n} = (0 1; -1 0), Pi_{2k} = (0 1; 1 0), Pi_{2k+1} with a middle 1.
template <class S>
Mat<S> j_matrix(int n) {
    Mat<S> r(2 * n, Vec<S>(2 * n, S(0)));
    for (int i = 0; i < n; ++i) {
        r[i][n + i] = S(1);
        r[n + i][i] = S(-1);
    }
    return r;
}

template <class S>
Mat<S> pi_matrix(int m) {
    Mat<S> r(m, Vec<S>(m, S(0)));
    for (int i = 0; i < m; ++i) r[i][m - 1 - i] = S(1);
    if (m % 2 == 0) {
        for (auto& row : r) std::fill(row.begin(), row.end(), S(0));
        int k = m / 2;
        for (int i = 0; i < k; ++i) {
            r[i][k + i] = S(1);
            r[k + i][i] = S(1);
        }
    } else {
        for (auto& row : r) std::fill(row.begin(), row.end(), S(0));
        int k = m / 2;
        for (int i = 0; i < k; ++i) {
            r[i][k + 1 + i] = S(1);
            r[k + 1 + i][i] = S(1);
        }
        r[k][k] = S(1);
    }
    return r;
}

template <class S>
SuperMatrix<S> block_diag(Format f, const Mat<S>& a, const Mat<S>& d) {
    auto z = SuperMatrix<S>::zero(f, 0);
    for (int i = 0; i < f.m; ++i)
        for (int j = 0; j < f.m; ++j) z.a[i][j] = a[i][j];
    for (int i = 0; i < f.n; ++i)
        for (int j = 0; j < f.n; ++j) z.a[f.m + i][f.m + j] = d[i][j];
    return z;
}

// o(m) = aut(Pi_m) on (m|0).
template <class S>
MatrixBasis<S> o_basis(int m) {
    return aut_basis(block_diag<S>({m, 0}, pi_matrix<S>(m), {}));
}

// sp(2n) = aut(J_{2n}) on (2n|0).
template <class S>
MatrixBasis<S> sp_basis(int n) {
    return aut_basis(block_diag<S>({2 * n, 0}, j_matrix<S>(n), {}));
}

// osp(m|2n) preserving B_ev = diag(Pi_m, J_{2n}).
template <class S>
MatrixBasis<S> osp_basis(int m, int n) {
    return aut_basis(block_diag<S>({m, 2 * n}, pi_matrix<S>(m), j_matrix<S>(n)));
}

// osp^a(m|2n): the antisymmetric even form diag(J_{2n}, Pi_m) on (2n|m).
template <class S>
MatrixBasis<S> osp_a_basis(int m, int n) {
    return aut_basis(block_diag<S>({2 * n, m}, j_matrix<S>(n), pi_matrix<S>(m)));
}

// Odd Gram matrix with identity blocks: (0 1; s 1 0) for s = +-1.
template <class S>
SuperMatrix<S> odd_form(int n, int s) {
    Format f{n, n};
    auto z = SuperMatrix<S>::zero(f, 1);
    for (int i = 0; i < n; ++i) {
        z.a[i][n + i] = S(1);
        z.a[n + i][i] = S(s);
    }
    return z;
}

// pe^a(n) = aut(Pi_{2n}) = {(A B; C -A^t) : B = B^t, C = -C^t}
template <class S>
MatrixBasis<S> pe_a_basis(int n) {
    return aut_basis(odd_form<S>(n, 1));
}

// pe^sy(n) = aut(J_{2n}) = {(A B; C -A^t) : B = -B^t, C = C^t}
template <class S>
MatrixBasis<S> pe_sy_basis(int n) {
    return aut_basis(odd_form<S>(n, -1));
}

template <class S>
MatrixBasis<S> spe_basis(int n) {
    return aut_basis(odd_form<S>(n, 1), true);
}

// q(n) = {(A B; B A)}; sq(n) additionally tr B = 0.
template <class S>
MatrixBasis<S> q_basis(int n, bool special = false) {
    Format f{n, n};
    MatrixBasis<S> out;
    for (int p = 0; p < 2; ++p) {
        auto cond = [&](const SuperMatrix<S>& x) {
            Vec<S> v;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    v.push_back(x.a[i][j] - x.a[n + i][n + j]);
                    v.push_back(x.a[i][n + j] - x.a[n + i][j]);
                }
            if (special) {
                S t(0);
                for (int i = 0; i < n; ++i) t += x.a[i][n + i];
                v.push_back(t);
            }
            return v;
        };
        out = concat(out, solve_matrices<S>(f, p, cond));
    }
    return out;
}

// g plus the identity matrix.
template <class S>
MatrixBasis<S> with_center(MatrixBasis<S> g, Format f) {
    g.push_back(SuperMatrix<S>::identity(f));
    return g;
}

// spe(n) plus C(aD + bz), D = diag(1_n, -1_n), z = 1_{2n}.
template <class S>
MatrixBasis<S> spe_ab_basis(int n, const S& a, const S& b) {
    auto g = spe_basis<S>(n);
    Format f{n, n};
    auto x = SuperMatrix<S>::identity(f).scaled(b);
    for (int i = 0; i < n; ++i) {
        x.a[i][i] += a;
        x.a[n + i][n + i] -= a;
    }
    g.push_back(x);
    return g;
}

template <class S>
std::pair<int, int> sdim(const MatrixBasis<S>& g) {
    int e = 0, o = 0;
    for (auto& x : g) (x.parity ? o : e)++;
    return {e, o};
}

template <class S>
struct NamedMatrixAlgebra {
    Format fmt;
    MatrixBasis<S> basis;
};

// Parses gl(m|n), sl(m|n), q(n), sq(n), o(m), sp(2n), osp(m|2n), osp_a(m|2n), pe_a(n), pe_sy(n), spe(n),
// spe_ab(n;a,b) and c(<any of these>).
template <class S>
NamedMatrixAlgebra<S> matrix_algebra(const std::string& name) {
    std::smatch m;
    if (std::regex_match(name, m, std::regex(R"(c\((.*)\))"))) {
        auto g = matrix_algebra<S>(m[1]);
        return {g.fmt, with_center(g.basis, g.fmt)};
    }
    if (std::regex_match(name, m, std::regex(R"((gl|sl|osp|osp_a)\((\d+)\|(\d+)\))"))) {
        int a = std::stoi(m[2]), b = std::stoi(m[3]);
        std::string k = m[1];
        if (k == "gl") return {{a, b}, gl_basis<S>({a, b})};
        if (k == "sl") {
            if (a == b) throw std::invalid_argument("sl(n|n) has a center; use psl via quotients");
            return {{a, b}, sl_basis<S>({a, b})};
        }
        if (b % 2) throw std::invalid_argument(k + ": the symplectic part must have even size");
        if (k == "osp") return {{a, b}, osp_basis<S>(a, b / 2)};
        return {{b, a}, osp_a_basis<S>(a, b / 2)};
    }
    if (std::regex_match(name, m, std::regex(R"((gl|sl|q|sq|o|sp|pe_a|pe_sy|spe)\((\d+)\))"))) {
        int n = std::stoi(m[2]);
        std::string k = m[1];
        if (n < 1) throw std::invalid_argument("empty format");
        if (k == "gl") return {{n, 0}, gl_basis<S>({n, 0})};
        if (k == "sl") return {{n, 0}, sl_basis<S>({n, 0})};
        if (k == "q" || k == "sq") return {{n, n}, q_basis<S>(n, k == "sq")};
        if (k == "o") return {{n, 0}, o_basis<S>(n)};
        if (k == "sp") {
            if (n % 2) throw std::invalid_argument("sp(n) needs n even");
            return {{n, 0}, sp_basis<S>(n / 2)};
        }
        if (k == "pe_a") return {{n, n}, pe_a_basis<S>(n)};
        if (k == "pe_sy") return {{n, n}, pe_sy_basis<S>(n)};
        return {{n, n}, spe_basis<S>(n)};
    }
    if (std::regex_match(name, m, std::regex(R"(spe_ab\((\d+);([-0-9/]+),([-0-9/]+)\))"))) {
        int n = std::stoi(m[1]);
        auto a = ScalarTraits<S>::from_rational(Rational::parse(m[2]));
        auto b = ScalarTraits<S>::from_rational(Rational::parse(m[3]));
        return {{n, n}, spe_ab_basis<S>(n, a, b)};
    }
    throw std::invalid_argument("unknown matrix algebra: " + name);
}

// Column: sum_{i,j} x_j X_ij d_{x_i}. Row: sum_{i,j} x_i X_ij d_{x_j}, i.e. the field of x -> xX.
enum class Realization { column, row };

template <class S>
VectorField<S> linear_field(const SigPtr& sig, const SuperMatrix<S>& x, Realization how = Realization::row) {
    if (sig->n_even() != x.fmt.m || sig->n_odd() != x.fmt.n) throw std::invalid_argument("format mismatch");
    VectorField<S> d(sig);
    const int N = x.fmt.size();
    for (int j = 0; j < N; ++j) {
        Poly<S> c(sig);
        for (int i = 0; i < N; ++i) {
            const S& v = how == Realization::row ? x.a[i][j] : x.a[j][i];
            if (!v.is_zero()) c += Poly<S>::gen(sig, i).scaled(v);
        }
        d.set(j, c);
    }
    return d;
}

template <class S>
std::vector<VectorField<S>> linear_fields(const SigPtr& sig, const MatrixBasis<S>& g,
                                          Realization how = Realization::row) {
    std::vector<VectorField<S>> r;
    for (auto& x : g) r.push_back(linear_field(sig, x, how));
    return r;
}

inline SigPtr format_signature(Format f, const std::string& ev = "u", const std::string& od = "th") {
    return make_signature(numbered(ev, f.m), numbered(od, f.n));
}

}  // namespace superprolong
