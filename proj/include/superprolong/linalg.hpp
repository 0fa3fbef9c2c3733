#pragma once

#include "superprolong/scalar.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace superprolong {

template <class S> using Vec = std::vector<S>;
template <class S> using Mat = std::vector<Vec<S>>;

template <class S>
bool is_zero_vec(const Vec<S>& v) {
    for (auto& x : v)
        if (!x.is_zero()) return false;
    return true;
}

// In-place reduced row echelon form; drops zero rows and returns pivot columns.
template <class S>
std::vector<int> rref(Mat<S>& a, int ncols) {
    std::vector<int> piv;
    size_t r = 0;
    for (int c = 0; c < ncols && r < a.size(); ++c) {
        size_t p = r;
        while (p < a.size() && a[p][c].is_zero()) ++p;
        if (p == a.size()) continue;
        std::swap(a[r], a[p]);
        S inv = S(1) / a[r][c];
        if (!(inv == S(1)))
            for (int j = c; j < ncols; ++j)
                if (!a[r][j].is_zero()) a[r][j] *= inv;
        for (size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            S f = a[i][c];
            for (int j = c; j < ncols; ++j)
                if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    a.resize(r);
    return piv;
}

template <class S>
int rank(Mat<S> a, int ncols) {
    return static_cast<int>(rref(a, ncols).size());
}

// Basis of {x : A x = 0}; one vector per free column, with a 1 in that column.
template <class S>
Mat<S> nullspace(Mat<S> a, int ncols) {
    auto piv = rref(a, ncols);
    std::vector<char> is_piv(ncols, 0);
    for (int c : piv) is_piv[c] = 1;
    Mat<S> out;
    for (int f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        Vec<S> v(ncols, S(0));
        v[f] = S(1);
        for (size_t i = 0; i < piv.size(); ++i)
            if (!a[i][f].is_zero()) v[piv[i]] = -a[i][f];
        out.push_back(std::move(v));
    }
    return out;
}

// Echelon basis of a row space with reduction of arbitrary vectors against it.
template <class S>
class RowSpace {
public:
    RowSpace() = default;
    RowSpace(Mat<S> rows, int ncols) : ncols_(ncols), rows_(std::move(rows)) { piv_ = rref(rows_, ncols_); }

    int dim() const { return static_cast<int>(rows_.size()); }
    int ncols() const { return ncols_; }
    const Mat<S>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return piv_; }

    Vec<S> reduce(Vec<S> v) const {
        for (size_t i = 0; i < rows_.size(); ++i) {
            const S& f = v[piv_[i]];
            if (f.is_zero()) continue;
            S ff = f;
            for (int j = 0; j < ncols_; ++j)
                if (!rows_[i][j].is_zero()) v[j] -= ff * rows_[i][j];
        }
        return v;
    }
    bool contains(const Vec<S>& v) const { return is_zero_vec(reduce(v)); }

    // Coefficients c with v = sum c_i rows_i, or nullopt.
    std::optional<Vec<S>> coordinates(const Vec<S>& v) const {
        if (!contains(v)) return std::nullopt;
        Vec<S> c(rows_.size());
        for (size_t i = 0; i < rows_.size(); ++i) c[i] = v[piv_[i]];
        return c;
    }

private:
    int ncols_ = 0;
    Mat<S> rows_;
    std::vector<int> piv_;
};

// Assigns dense column indices to arbitrary ordered keys.
template <class K>
class KeyIndex {
public:
    int get(const K& k) {
        auto it = idx_.find(k);
        if (it != idx_.end()) return it->second;
        int i = static_cast<int>(keys_.size());
        idx_.emplace(k, i);
        keys_.push_back(k);
        return i;
    }
    std::optional<int> find(const K& k) const {
        auto it = idx_.find(k);
        if (it == idx_.end()) return std::nullopt;
        return it->second;
    }
    int size() const { return static_cast<int>(keys_.size()); }
    const std::vector<K>& keys() const { return keys_; }

    // Reorders indices to follow key order; returns old index to new index map.
    std::vector<int> sort_keys() {
        std::vector<int> remap(keys_.size());
        int i = 0;
        for (auto& [k, old] : idx_) {
            remap[old] = i;
            keys_[i] = k;
            ++i;
        }
        for (auto& [k, v] : idx_) v = remap[v];
        return remap;
    }

private:
    std::map<K, int> idx_;
    std::vector<K> keys_;
};

// Sparse row: (column, value) pairs sorted by column, no zeros.
template <class S> using SparseRow = std::vector<std::pair<int, S>>;

template <class S>
SparseRow<S> to_sparse(const Vec<S>& v) {
    SparseRow<S> r;
    for (size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero()) r.emplace_back(static_cast<int>(i), v[i]);
    return r;
}

template <class S>
Vec<S> to_dense(const SparseRow<S>& r, int n) {
    Vec<S> v(n, S(0));
    for (auto& [c, x] : r) v[c] = x;
    return v;
}

// a - f*b on sparse rows.
template <class S>
SparseRow<S> axpy_sparse(const SparseRow<S>& a, const S& f, const SparseRow<S>& b) {
    SparseRow<S> r;
    r.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            r.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            S v = -(f * b[j].second);
            if (!v.is_zero()) r.emplace_back(b[j].first, v);
            ++j;
        } else {
            S v = a[i].second - f * b[j].second;
            if (!v.is_zero()) r.emplace_back(a[i].first, v);
            ++i;
            ++j;
        }
    }
    return r;
}

template <class S>
S sparse_at(const SparseRow<S>& r, int c) {
    auto it = std::lower_bound(r.begin(), r.end(), c, [](const auto& e, int k) { return e.first < k; });
    return (it != r.end() && it->first == c) ? it->second : S(0);
}

// Incrementally built echelon basis of sparse rows. After finalize() rows are fully reduced.
template <class S>
class SparseEchelon {
public:
    explicit SparseEchelon(int ncols = 0) : ncols_(ncols) {}

    int ncols() const { return ncols_; }
    int dim() const { return static_cast<int>(rows_.size()); }

    SparseRow<S> reduce(SparseRow<S> v) const {
        size_t pos = 0;
        while (pos < v.size()) {
            int c = v[pos].first;
            auto it = by_pivot_.find(c);
            if (it == by_pivot_.end()) { ++pos; continue; }
            S f = v[pos].second;
            v = axpy_sparse(v, f, rows_[it->second]);
            // entries before pos are unchanged because pivot rows start at their pivot
        }
        return v;
    }
    bool contains(const SparseRow<S>& v) const { return reduce(v).empty(); }

    // Returns true when v was independent of the current rows.
    bool add(SparseRow<S> v) {
        v = reduce(std::move(v));
        if (v.empty()) return false;
        S inv = S(1) / v.front().second;
        if (!(inv == S(1)))
            for (auto& e : v) e.second *= inv;
        int p = v.front().first;
        by_pivot_[p] = rows_.size();
        rows_.push_back(std::move(v));
        reduced_ = false;
        return true;
    }

    // Back-substitution to reduced row echelon form, rows ordered by pivot.
    void finalize() {
        if (reduced_) return;
        std::vector<SparseRow<S>> sorted;
        sorted.reserve(rows_.size());
        for (auto& [p, i] : by_pivot_) sorted.push_back(std::move(rows_[i]));
        for (int i = static_cast<int>(sorted.size()) - 1; i >= 0; --i) {
            int p = sorted[i].front().first;
            for (int j = 0; j < i; ++j) {
                S f = sparse_at(sorted[j], p);
                if (!f.is_zero()) sorted[j] = axpy_sparse(sorted[j], f, sorted[i]);
            }
        }
        rows_ = std::move(sorted);
        by_pivot_.clear();
        for (size_t i = 0; i < rows_.size(); ++i) by_pivot_[rows_[i].front().first] = i;
        reduced_ = true;
    }

    const std::vector<SparseRow<S>>& rows() const { return rows_; }
    std::vector<int> pivots() const {
        std::vector<int> r;
        for (auto& [p, i] : by_pivot_) r.push_back(p);
        return r;
    }

    // Coefficients expressing v in the finalized rows, or nullopt.
    std::optional<Vec<S>> coordinates(const SparseRow<S>& v) const {
        if (!reduced_) throw std::logic_error("coordinates on unfinalized echelon");
        if (!contains(v)) return std::nullopt;
        Vec<S> c(rows_.size(), S(0));
        for (auto& [col, x] : v) {
            auto it = by_pivot_.find(col);
            if (it != by_pivot_.end()) c[it->second] = x;
        }
        return c;
    }

    // Basis of {x : sum_j x_j col_j = 0} where the rows are equations in ncols unknowns.
    std::vector<Vec<S>> nullspace() {
        finalize();
        std::vector<char> is_piv(ncols_, 0);
        for (auto& r : rows_) is_piv[r.front().first] = 1;
        std::vector<Vec<S>> out;
        std::vector<std::vector<std::pair<int, S>>> col_entries(ncols_);
        for (auto& r : rows_)
            for (auto& [c, x] : r)
                if (c != r.front().first) col_entries[c].emplace_back(r.front().first, x);
        for (int f = 0; f < ncols_; ++f) {
            if (is_piv[f]) continue;
            Vec<S> v(ncols_, S(0));
            v[f] = S(1);
            for (auto& [p, x] : col_entries[f]) v[p] = -x;
            out.push_back(std::move(v));
        }
        return out;
    }

private:
    int ncols_;
    std::vector<SparseRow<S>> rows_;
    std::map<int, size_t> by_pivot_;
    bool reduced_ = true;
};

// Kernel of a linear map given column by column: column j is a sparse image vector keyed by K.
template <class S, class K>
std::vector<Vec<S>> kernel_of_columns(const std::vector<std::vector<std::pair<K, S>>>& columns) {
    KeyIndex<K> keys;
    const int n = static_cast<int>(columns.size());
    std::map<int, SparseRow<S>> rowmap;
    for (int j = 0; j < n; ++j)
        for (auto& [k, x] : columns[j])
            if (!x.is_zero()) rowmap[keys.get(k)].emplace_back(j, x);
    SparseEchelon<S> ech(n);
    for (auto& [r, row] : rowmap) ech.add(row);
    return ech.nullspace();
}

}  // namespace superprolong
