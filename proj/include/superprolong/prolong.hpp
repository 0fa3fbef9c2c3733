#pragma once

#include "superprolong/fields.hpp"
#include "superprolong/linalg.hpp"
#include "superprolong/matrix.hpp"
#include "superprolong/series.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace superprolong {

// Monomial field m * d/dx_gen.
struct FieldKey {
    int gen = 0;
    Monomial m;
    friend bool operator<(const FieldKey& a, const FieldKey& b) {
        if (a.gen != b.gen) return a.gen < b.gen;
        return a.m < b.m;
    }
    friend bool operator==(const FieldKey& a, const FieldKey& b) { return a.gen == b.gen && a.m == b.m; }
};

// All monomial fields of one degree in a grading.
class FieldSpace {
public:
    // Generators in `frozen` are constants: no d/dx along them.
    FieldSpace(SigPtr sig, GradingVector w, int degree, std::vector<int> frozen = {})
        : sig_(std::move(sig)), w_(std::move(w)), d_(degree) {
        if (static_cast<int>(w_.size()) != sig_->size()) throw std::invalid_argument("grading size mismatch");
        for (int g = 0; g < sig_->size(); ++g)
            if (std::find(frozen.begin(), frozen.end(), g) == frozen.end())
                for (auto& m : monomials_of_weight(*sig_, w_.w, degree + w_[g])) keys_.push_back({g, m});
        for (size_t i = 0; i < keys_.size(); ++i) idx_.emplace(keys_[i], static_cast<int>(i));
    }

    const SigPtr& sig() const { return sig_; }
    const GradingVector& grading() const { return w_; }
    int degree() const { return d_; }
    int size() const { return static_cast<int>(keys_.size()); }
    const std::vector<FieldKey>& keys() const { return keys_; }
    int parity(int col) const { return (keys_[col].m.parity() + sig_->parity(keys_[col].gen)) & 1; }
    std::optional<int> index(const FieldKey& k) const {
        auto it = idx_.find(k);
        if (it == idx_.end()) return std::nullopt;
        return it->second;
    }

    // Coordinates of a field; nullopt when it has terms outside this degree.
    template <class S>
    std::optional<SparseRow<S>> row(const VectorField<S>& D) const {
        std::vector<std::pair<int, S>> r;
        for (int g = 0; g < sig_->size(); ++g)
            for (auto& [m, c] : D.coef(g).terms()) {
                auto i = index({g, m});
                if (!i) return std::nullopt;
                r.emplace_back(*i, c);
            }
        std::sort(r.begin(), r.end(), [](auto& a, auto& b) { return a.first < b.first; });
        return r;
    }

    template <class S>
    VectorField<S> field(const SparseRow<S>& r) const {
        std::vector<Poly<S>> c(sig_->size(), Poly<S>(sig_));
        for (auto& [i, x] : r) c[keys_[i].gen].add_term(keys_[i].m, x);
        VectorField<S> D(sig_);
        for (int g = 0; g < sig_->size(); ++g) D.set(g, std::move(c[g]));
        return D;
    }

private:
    SigPtr sig_;
    GradingVector w_;
    int d_;
    std::vector<FieldKey> keys_;
    std::map<FieldKey, int> idx_;
};

using SpacePtr = std::shared_ptr<const FieldSpace>;

inline SpacePtr make_space(const SigPtr& sig, const GradingVector& w, int d, const std::vector<int>& frozen = {}) {
    return std::make_shared<FieldSpace>(sig, w, d, frozen);
}

// Superdimension pair.
struct SDim {
    int even = 0, odd = 0;
    friend bool operator==(const SDim& a, const SDim& b) { return a.even == b.even && a.odd == b.odd; }
    friend bool operator!=(const SDim& a, const SDim& b) { return !(a == b); }
    int total() const { return even + odd; }
    std::string str() const { return std::to_string(even) + "|" + std::to_string(odd); }
};

// A homogeneous component: a subspace of one FieldSpace in reduced row-echelon form.
template <class S>
class Component {
public:
    Component() = default;
    explicit Component(SpacePtr sp) : sp_(std::move(sp)), ech_(sp_->size()) {}

    static Component span(SpacePtr sp, const std::vector<VectorField<S>>& fields) {
        Component c(sp);
        for (auto& f : fields) {
            auto r = sp->row(f);
            if (!r) throw std::invalid_argument("field is not homogeneous of degree " + std::to_string(sp->degree()));
            c.ech_.add(*r);
        }
        c.finish();
        return c;
    }
    static Component from_rows(SpacePtr sp, const std::vector<SparseRow<S>>& rows) {
        Component c(sp);
        for (auto& r : rows) c.ech_.add(r);
        c.finish();
        return c;
    }

    const SpacePtr& space() const { return sp_; }
    int degree() const { return sp_->degree(); }
    int dim() const { return ech_.dim(); }
    bool empty() const { return dim() == 0; }
    const std::vector<VectorField<S>>& basis() const { return basis_; }
    const std::vector<int>& parities() const { return par_; }
    const std::vector<SparseRow<S>>& rows() const { return ech_.rows(); }
    SDim sdim() const {
        SDim s;
        for (int p : par_) (p ? s.odd : s.even)++;
        return s;
    }

    // Residual of a field after reduction; nullopt when the field leaves this degree.
    std::optional<SparseRow<S>> residual(const VectorField<S>& D) const {
        auto r = sp_->row(D);
        if (!r) return std::nullopt;
        return ech_.reduce(std::move(*r));
    }
    bool contains(const VectorField<S>& D) const {
        if (D.is_zero()) return true;
        auto r = residual(D);
        return r && r->empty();
    }
    std::optional<Vec<S>> coordinates(const VectorField<S>& D) const {
        auto r = sp_->row(D);
        if (!r) return std::nullopt;
        return ech_.coordinates(*r);
    }
    bool operator==(const Component& o) const { return ech_.rows() == o.ech_.rows(); }
    bool subset_of(const Component& o) const {
        for (auto& b : basis_)
            if (!o.contains(b)) return false;
        return true;
    }

private:
    void finish() {
        ech_.finalize();
        basis_.clear();
        par_.clear();
        for (auto& r : ech_.rows()) {
            basis_.push_back(sp_->template field<S>(r));
            par_.push_back(sp_->parity(r.front().first));
        }
    }

    SpacePtr sp_;
    SparseEchelon<S> ech_{0};
    std::vector<VectorField<S>> basis_;
    std::vector<int> par_;
};

template <class S>
class GradedSubspace {
public:
    GradedSubspace() = default;
    GradedSubspace(SigPtr sig, GradingVector w) : sig_(std::move(sig)), w_(std::move(w)) {}

    const SigPtr& sig() const { return sig_; }
    const GradingVector& grading() const { return w_; }
    bool has(int d) const { return comps_.count(d) > 0; }
    const Component<S>& at(int d) const {
        auto it = comps_.find(d);
        if (it == comps_.end()) throw std::out_of_range("no component of degree " + std::to_string(d));
        return it->second;
    }
    void set(int d, Component<S> c) { comps_[d] = std::move(c); }
    const std::map<int, Component<S>>& components() const { return comps_; }
    int min_degree() const { return comps_.empty() ? 0 : comps_.begin()->first; }
    int max_degree() const { return comps_.empty() ? -1 : comps_.rbegin()->first; }
    SDim sdim(int d) const { return has(d) ? at(d).sdim() : SDim{}; }
    std::vector<SDim> signature(int lo, int hi) const {
        std::vector<SDim> r;
        for (int d = lo; d <= hi; ++d) r.push_back(sdim(d));
        return r;
    }
    // Depth: the largest d with nonzero g_{-d}.
    int depth() const {
        int r = 0;
        for (auto& [d, c] : comps_)
            if (d < 0 && !c.empty()) r = std::max(r, -d);
        return r;
    }

private:
    SigPtr sig_;
    GradingVector w_;
    std::map<int, Component<S>> comps_;
};

// Produces the degree-d component of an algebra in a fixed grading.
template <class S>
using ComponentModel = std::function<Component<S>(int)>;

template <class S>
Component<S> full_component(const SpacePtr& sp) {
    std::vector<SparseRow<S>> rows;
    for (int i = 0; i < sp->size(); ++i) rows.push_back({{i, S(1)}});
    return Component<S>::from_rows(sp, rows);
}

// Fields of degree d satisfying linear conditions given as polynomials in the field.
template <class S>
Component<S> constrained_component(const SpacePtr& sp,
                                   const std::function<std::vector<Poly<S>>(const VectorField<S>&)>& cond) {
    using Key = std::pair<int, Monomial>;
    std::vector<std::vector<std::pair<Key, S>>> cols(sp->size());
    for (int j = 0; j < sp->size(); ++j) {
        auto D = VectorField<S>::term(Poly<S>::term(sp->sig(), sp->keys()[j].m, S(1)), sp->keys()[j].gen);
        auto rs = cond(D);
        for (int k = 0; k < static_cast<int>(rs.size()); ++k)
            for (auto& [m, c] : rs[k].terms()) cols[j].push_back({{k, m}, c});
    }
    std::vector<SparseRow<S>> rows;
    for (auto& v : kernel_of_columns<S, Key>(cols)) rows.push_back(to_sparse(v));
    return Component<S>::from_rows(sp, rows);
}

template <class S>
ComponentModel<S> vect_model(const SigPtr& sig, const GradingVector& w) {
    return [=](int d) { return full_component<S>(make_space(sig, w, d)); };
}

template <class S>
ComponentModel<S> svect_model(const SigPtr& sig, const GradingVector& w, std::optional<int> mu = std::nullopt,
                              std::vector<int> thetas = {}) {
    std::vector<int> frozen;
    if (mu) frozen.push_back(*mu);
    return [=](int d) {
        return constrained_component<S>(make_space(sig, w, d, frozen), [&](const VectorField<S>& D) {
            return std::vector<Poly<S>>{svect_residual(D, mu, thetas)};
        });
    };
}

// Which vectorization a generating-function series uses.
enum class GenKind { K, M, H, Le };

template <class S>
VectorField<S> generated_field(GenKind kind, const ContactSetup& s, const Poly<S>& f) {
    switch (kind) {
        case GenKind::K: return field_K(s, f);
        case GenKind::M: return field_M(s, f);
        case GenKind::H: return field_H(s, f);
        case GenKind::Le: return field_Le(s, f);
    }
    throw std::logic_error("bad kind");
}

// Weight of f minus the degree of its field.
inline int generating_shift(GenKind kind, const ContactSetup& s, const GradingVector& w) {
    switch (kind) {
        case GenKind::K:
        case GenKind::M: return w[s.t];
        case GenKind::H:
            if (!s.p.empty()) return w[s.p[0]] + w[s.q[0]];
            if (!s.theta.empty()) return 2 * w[s.theta[0]];
            if (!s.xi.empty()) return w[s.xi[0]] + w[s.eta[0]];
            return 0;
        case GenKind::Le: return w[s.q[0]] + w[s.xi[0]];
    }
    return 0;
}

// Generating functions of weight d + shift satisfying cond, vectorized into degree-d fields.
template <class S>
Component<S> generating_component(GenKind kind, const ContactSetup& s, const GradingVector& w, int d,
                                  const std::function<std::vector<Poly<S>>(const Poly<S>&)>& cond = {}) {
    auto sp = make_space(s.sig, w, d);
    int fw = d + generating_shift(kind, s, w);
    auto mons = monomials_of_weight(*s.sig, w.w, fw);
    std::vector<Vec<S>> ker;
    if (cond) {
        using Key = std::pair<int, Monomial>;
        std::vector<std::vector<std::pair<Key, S>>> cols(mons.size());
        for (size_t j = 0; j < mons.size(); ++j) {
            auto rs = cond(Poly<S>::term(s.sig, mons[j], S(1)));
            for (int k = 0; k < static_cast<int>(rs.size()); ++k)
                for (auto& [m, c] : rs[k].terms()) cols[j].push_back({{k, m}, c});
        }
        ker = kernel_of_columns<S, Key>(cols);
    } else {
        for (size_t j = 0; j < mons.size(); ++j) {
            Vec<S> v(mons.size(), S(0));
            v[j] = S(1);
            ker.push_back(std::move(v));
        }
    }
    std::vector<VectorField<S>> fields;
    for (auto& v : ker) {
        Poly<S> f(s.sig);
        for (size_t j = 0; j < mons.size(); ++j)
            if (!v[j].is_zero()) f.add_term(mons[j], v[j]);
        auto D = generated_field(kind, s, f);
        if (!D.is_zero()) fields.push_back(std::move(D));
    }
    return Component<S>::span(sp, fields);
}

template <class S>
ComponentModel<S> generating_model(GenKind kind, ContactSetup s, GradingVector w,
                                   std::function<std::vector<Poly<S>>(const Poly<S>&)> cond = {}) {
    return [=](int d) { return generating_component<S>(kind, s, w, d, cond); };
}

template <class S>
GradedSubspace<S> graded_from_model(const SigPtr& sig, const GradingVector& w, const ComponentModel<S>& model, int lo,
                                    int hi) {
    GradedSubspace<S> g(sig, w);
    for (int d = lo; d <= hi; ++d) g.set(d, model(d));
    return g;
}

// Elements D of `candidates` such that [D, X] lies in target(i) for all X in tests(i).
template <class S>
struct BracketConstraint {
    const Component<S>* tests;
    const Component<S>* target;
};

template <class S>
Component<S> solve_constraints(const Component<S>& candidates, const std::vector<BracketConstraint<S>>& cons) {
    using Key = std::pair<int, int>;
    const auto& cand = candidates.basis();
    std::vector<std::vector<std::pair<Key, S>>> cols(cand.size());
    for (size_t j = 0; j < cand.size(); ++j) {
        int slot = 0;
        for (auto& c : cons) {
            for (auto& X : c.tests->basis()) {
                auto br = bracket(cand[j], X);
                auto res = c.target->residual(br);
                if (!res) throw std::logic_error("bracket left the expected degree");
                for (auto& [i, x] : *res) cols[j].push_back({{slot, i}, x});
                ++slot;
            }
        }
    }
    std::vector<VectorField<S>> sol;
    for (auto& v : kernel_of_columns<S, Key>(cols)) {
        VectorField<S> D(candidates.space()->sig());
        for (size_t j = 0; j < cand.size(); ++j)
            if (!v[j].is_zero()) D += cand[j].scaled(v[j]);
        sol.push_back(std::move(D));
    }
    return Component<S>::span(candidates.space(), sol);
}

// Optional witness: a description of the first failure.
struct CheckResult {
    bool ok = true;
    std::string witness;
    explicit operator bool() const { return ok; }
};

// [g_i, g_j] ⊆ g_{i+j} for all computed degrees with i + j in range.
template <class S>
CheckResult closure_check(const GradedSubspace<S>& g, std::optional<int> hi = std::nullopt) {
    int top = hi ? *hi : g.max_degree();
    for (auto& [i, ci] : g.components())
        for (auto& [j, cj] : g.components()) {
            if (j < i || i + j > top || !g.has(i + j)) continue;
            const auto& target = g.at(i + j);
            for (size_t a = 0; a < ci.basis().size(); ++a)
                for (size_t b = 0; b < cj.basis().size(); ++b) {
                    auto br = bracket(ci.basis()[a], cj.basis()[b]);
                    if (!target.contains(br))
                        return {false, "[g_" + std::to_string(i) + "[" + std::to_string(a) + "], g_" +
                                           std::to_string(j) + "[" + std::to_string(b) + "]] = " + br.str() +
                                           " not in g_" + std::to_string(i + j)};
                }
        }
    return {};
}

// Fields spanning the negative part and the degree-0 part.
template <class S>
struct ProlongSpec {
    SigPtr sig;
    GradingVector w;
    std::map<int, std::vector<VectorField<S>>> negative;
    std::vector<VectorField<S>> g0;
    int max_degree = 3;
};

template <class S>
GradedSubspace<S> nonpositive_part(const ProlongSpec<S>& spec) {
    GradedSubspace<S> g(spec.sig, spec.w);
    int lo = spec.negative.empty() ? -1 : spec.negative.begin()->first;
    for (int d = lo; d < 0; ++d) {
        auto it = spec.negative.find(d);
        g.set(d, Component<S>::span(make_space(spec.sig, spec.w, d),
                                    it == spec.negative.end() ? std::vector<VectorField<S>>{} : it->second));
    }
    g.set(0, Component<S>::span(make_space(spec.sig, spec.w, 0), spec.g0));
    auto c = closure_check(g, 0);
    if (!c) throw std::invalid_argument("non-positive part not closed under bracket: " + c.witness);
    return g;
}

// Full prolong: g_k = {D in ambient_k | [D, g_i] ⊆ g_{k+i} for all i < 0}; ambient defaults to vect.
template <class S>
GradedSubspace<S> cartan_prolong(const ProlongSpec<S>& spec, ComponentModel<S> ambient = {}) {
    if (!ambient) ambient = vect_model<S>(spec.sig, spec.w);
    auto g = nonpositive_part(spec);
    int lo = g.min_degree();
    for (int k = 1; k <= spec.max_degree; ++k) {
        std::vector<BracketConstraint<S>> cons;
        for (int i = lo; i < 0; ++i) cons.push_back({&g.at(i), &g.at(k + i)});
        g.set(k, solve_constraints(ambient(k), cons));
    }
    return g;
}

// Partial prolong from h_1: h_k = {D in ambient_k | [D, g_{-1}] ⊆ h_{k-1}} for k ≥ 2.
template <class S>
GradedSubspace<S> partial_prolong(const ProlongSpec<S>& spec, const std::vector<VectorField<S>>& h1,
                                  ComponentModel<S> ambient = {}) {
    if (!ambient) ambient = vect_model<S>(spec.sig, spec.w);
    auto g = nonpositive_part(spec);
    auto c1 = Component<S>::span(make_space(spec.sig, spec.w, 1), h1);
    for (auto& D : c1.basis())
        for (auto& X : g.at(-1).basis())
            if (!g.at(0).contains(bracket(D, X)))
                throw std::invalid_argument("[g_-1, h_1] is not contained in g_0");
    g.set(1, c1);
    for (int k = 2; k <= spec.max_degree; ++k) g.set(k, solve_constraints(ambient(k), {{&g.at(-1), &g.at(k - 1)}}));
    return g;
}

// Prolong inside a contact-type ambient: the negative part is the ambient's, g_0 is given.
template <class S>
GradedSubspace<S> mk_prolong(const ComponentModel<S>& ambient, const SigPtr& sig, const GradingVector& w,
                             const std::vector<VectorField<S>>& g0, int depth, int N) {
    ProlongSpec<S> spec{sig, w, {}, g0, N};
    for (int d = -depth; d < 0; ++d) spec.negative[d] = ambient(d).basis();
    auto amb0 = ambient(0);
    for (auto& D : g0)
        if (!amb0.contains(D)) throw std::invalid_argument("g_0 element is not in the ambient degree-0 part");
    return cartan_prolong(spec, ambient);
}

// Action matrix of D on a component: column j holds the coordinates of [D, X_j].
template <class S>
std::optional<Mat<S>> action_matrix(const VectorField<S>& D, const Component<S>& V) {
    const int n = V.dim();
    Mat<S> A(n, Vec<S>(n, S(0)));
    for (int j = 0; j < n; ++j) {
        auto c = V.coordinates(bracket(D, V.basis()[j]));
        if (!c) return std::nullopt;
        for (int i = 0; i < n; ++i) A[i][j] = (*c)[i];
    }
    return A;
}

// Matrices of a degree-0 element acting on the coordinates of g_{-1}: solve for D in ambient_0 with a given action.
template <class S>
std::optional<VectorField<S>> realize_action(const Component<S>& ambient0, const Component<S>& gm1, const Mat<S>& X) {
    const int n = gm1.dim();
    using Key = std::pair<int, int>;
    const auto& cand = ambient0.basis();
    std::vector<std::vector<std::pair<Key, S>>> cols(cand.size() + 1);
    for (size_t j = 0; j < cand.size(); ++j) {
        auto A = action_matrix(cand[j], gm1);
        if (!A) return std::nullopt;
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                if (!(*A)[r][c].is_zero()) cols[j].push_back({{r, c}, (*A)[r][c]});
    }
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if (!X[r][c].is_zero()) cols.back().push_back({{r, c}, -X[r][c]});
    for (auto& v : kernel_of_columns<S, Key>(cols)) {
        if (v.back().is_zero()) continue;
        VectorField<S> D(ambient0.space()->sig());
        for (size_t j = 0; j < cand.size(); ++j)
            if (!v[j].is_zero()) D += cand[j].scaled(v[j] / v.back());
        return D;
    }
    return std::nullopt;
}

// Basis of g_{-1} reordered with even vectors first: the format in which matrices of g_0 are read.
template <class S>
std::vector<int> format_order(const Component<S>& V) {
    std::vector<int> ord;
    for (int p = 0; p < 2; ++p)
        for (int i = 0; i < V.dim(); ++i)
            if (V.parities()[i] == p) ord.push_back(i);
    return ord;
}

template <class S>
Format component_format(const Component<S>& V) {
    auto s = V.sdim();
    return {s.even, s.odd};
}

// Degree-0 elements of the ambient acting on g_{-1} by the given matrices, plus the grading center.
template <class S>
std::vector<VectorField<S>> realize_matrices(const Component<S>& ambient0, const Component<S>& gm1,
                                             const MatrixBasis<S>& g, bool with_center = true) {
    auto ord = format_order(gm1);
    const int n = gm1.dim();
    // the action of the row realization of X on the partials: d_k -> -(-1)^{p(X)p(k)} sum_j X_kj d_j
    Format f = component_format(gm1);
    auto to_basis = [&](const SuperMatrix<S>& X) {
        Mat<S> A(n, Vec<S>(n, S(0)));
        for (int k = 0; k < n; ++k)
            for (int j = 0; j < n; ++j) {
                S v = X.a[k][j];
                A[ord[j]][ord[k]] = (X.parity & f.parity(k)) ? v : -v;
            }
        return A;
    };
    MatrixBasis<S> all = g;
    if (with_center) all.push_back(SuperMatrix<S>::identity(component_format(gm1)));
    std::vector<VectorField<S>> out;
    for (auto& X : all) {
        if (X.fmt.m != f.m || X.fmt.n != f.n)
            throw std::invalid_argument("matrix format does not match g_-1");
        auto D = realize_action(ambient0, gm1, to_basis(X));
        if (!D) throw std::invalid_argument("g_0 does not preserve the bracket on g_-1 up to scalars");
        out.push_back(std::move(*D));
    }
    return out;
}

// g_0 acts faithfully on g_{-1} in every nonnegative degree, and g_{-1} generates the negative part.
template <class S>
CheckResult transitive_check(const GradedSubspace<S>& g) {
    if (!g.has(-1)) return {false, "no degree -1 component"};
    const auto& gm1 = g.at(-1);
    for (auto& [k, ck] : g.components()) {
        if (k < 0 || !g.has(k - 1)) continue;
        auto zero = Component<S>::from_rows(g.at(k - 1).space(), {});
        auto ker = solve_constraints(ck, {{&gm1, &zero}});
        if (!ker.empty())
            return {false, "degree " + std::to_string(k) + " element annihilating g_-1: " + ker.basis()[0].str()};
    }
    // generation of g_- by g_-1
    std::map<int, Component<S>> gen;
    gen[-1] = gm1;
    for (int d = -2; d >= g.min_degree(); --d) {
        std::vector<VectorField<S>> fs;
        for (int i = -1; i > d; --i) {
            int j = d - i;
            if (j > i || !gen.count(i) || !gen.count(j)) continue;
            for (auto& a : gen.at(i).basis())
                for (auto& b : gen.at(j).basis()) fs.push_back(bracket(a, b));
        }
        gen[d] = Component<S>::span(g.at(d).space(), fs);
        if (gen[d].dim() != g.at(d).dim())
            return {false, "g_-1 does not generate degree " + std::to_string(d) + ": " +
                               gen[d].sdim().str() + " of " + g.at(d).sdim().str()};
    }
    return {};
}

// rank A = 1 and its row space is supported on even coordinates.
template <class S>
bool rank1_verify(const Mat<S>& A, const std::vector<int>& parities) {
    if (A.empty() || rank(A, static_cast<int>(A[0].size())) != 1) return false;
    for (auto& row : A)
        for (size_t j = 0; j < row.size(); ++j)
            if (!row[j].is_zero() && parities[j] != 0) return false;
    return true;
}

template <class S>
struct Rank1Result {
    std::optional<VectorField<S>> element;
    std::string stage;  // basis, pairwise, random, or NOT_FOUND
};

// Semi-decision search for a rank-1 operator with even covector among homogeneous combinations.
template <class S>
Rank1Result<S> rank1_search(const std::vector<VectorField<S>>& g0, const Component<S>& gm1, uint64_t seed = 1,
                            int random_trials = 400) {
    std::vector<Mat<S>> mats;
    std::vector<int> par;
    for (auto& D : g0) {
        auto A = action_matrix(D, gm1);
        if (!A) throw std::invalid_argument("g_0 element does not preserve g_-1");
        mats.push_back(std::move(*A));
        par.push_back(D.parity());
    }
    const auto& vp = gm1.parities();
    auto combo = [&](const std::vector<std::pair<int, int>>& cs) {
        const int n = gm1.dim();
        Mat<S> A(n, Vec<S>(n, S(0)));
        VectorField<S> D(gm1.space()->sig());
        for (auto [i, c] : cs) {
            for (int r = 0; r < n; ++r)
                for (int k = 0; k < n; ++k) A[r][k] += S(c) * mats[i][r][k];
            D += g0[i].scaled(S(c));
        }
        return std::make_pair(A, D);
    };
    for (size_t i = 0; i < g0.size(); ++i)
        if (rank1_verify(mats[i], vp)) return {g0[i], "basis"};
    for (size_t i = 0; i < g0.size(); ++i)
        for (size_t j = i + 1; j < g0.size(); ++j) {
            if (par[i] != par[j]) continue;
            for (int a = -2; a <= 2; ++a)
                for (int b = 1; b <= 2; ++b) {
                    if (a == 0) continue;
                    auto [A, D] = combo({{static_cast<int>(i), a}, {static_cast<int>(j), b}});
                    if (rank1_verify(A, vp)) return {D, "pairwise"};
                }
        }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coef(-2, 2);
    for (int t = 0; t < random_trials; ++t) {
        int p = t & 1;
        std::vector<std::pair<int, int>> cs;
        for (size_t i = 0; i < g0.size(); ++i)
            if (par[i] == p) cs.push_back({static_cast<int>(i), coef(rng)});
        if (cs.empty()) continue;
        auto [A, D] = combo(cs);
        if (rank1_verify(A, vp)) return {D, "random"};
    }
    return {std::nullopt, "NOT_FOUND"};
}

// First k ≥ 1 with g_k = 0, certified by transitivity.
template <class S>
std::optional<int> termination_degree(const GradedSubspace<S>& g) {
    for (auto& [k, c] : g.components())
        if (k >= 1 && c.empty()) return transitive_check(g) ? std::optional<int>(k) : std::nullopt;
    return std::nullopt;
}

}  // namespace superprolong
