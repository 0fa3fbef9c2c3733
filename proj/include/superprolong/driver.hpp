#pragma once

// Batch driver behind the superprolong command: algebra spec files in, dimension tables and reports out.

#include "superprolong/deform.hpp"
#include "superprolong/gradings.hpp"
#include "superprolong/mb.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <semaphore>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

namespace superprolong {

using ojson = nlohmann::ordered_json;

// Input error; line is 0 when no position is known.
struct SpecError : std::runtime_error {
    int line = 0;
    SpecError(const std::string& what, int line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line(line) {}
};

struct AlgebraSpec {
    std::string path, text, label;
    std::string kind;  // series, h_lambda, svect_tilde, prolong, mk_prolong, matrix, as, mb45, mb38, kas
    std::string series;
    int n = 0, m = 0;
    std::optional<std::string> a, b, lambda;
    std::variant<std::string, std::vector<int>> grading = std::string("standard");
    std::optional<int> N;
    uint64_t seed = 1;
    std::string g0, realization = "row", contact = "k";
    bool allow_excluded = false;

    bool symbolic() const {
        for (auto* p : {&a, &b, &lambda})
            if (*p && **p == "symbolic") return true;
        return false;
    }
    int line_of(const std::string& key) const {
        auto pos = text.find("\"" + key + "\"");
        if (pos == std::string::npos) return 0;
        return 1 + static_cast<int>(std::count(text.begin(), text.begin() + pos, '\n'));
    }
    [[noreturn]] void fail(const std::string& key, const std::string& what) const { throw SpecError(what, line_of(key)); }
};

namespace detail {

inline int line_at_byte(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + byte, '\n'));
}

inline std::string scalar_token(const AlgebraSpec& sp, const ojson& j, const std::string& key) {
    const auto& v = j.at(key);
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_string()) {
        auto s = v.get<std::string>();
        if (s == "symbolic" || s == "inf") return s;
        try {
            Rational::parse(s);
        } catch (const std::exception&) {
            sp.fail(key, "\"" + key + "\" must be an exact rational, \"inf\" or \"symbolic\"");
        }
        return s;
    }
    sp.fail(key, "\"" + key + "\" must be an integer or a string");
}

}  // namespace detail

inline AlgebraSpec parse_spec(const std::string& text, const std::string& path = "<spec>") {
    AlgebraSpec sp;
    sp.path = path;
    sp.text = text;
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SpecError(std::string("invalid JSON: ") + e.what(), detail::line_at_byte(text, e.byte ? e.byte - 1 : 0));
    }
    if (!j.is_object()) throw SpecError("spec must be a JSON object", 1);
    if (!j.contains("schema")) throw SpecError("missing \"schema\"", 1);
    if (!j["schema"].is_number_integer() || j["schema"].get<int>() != 1) sp.fail("schema", "unsupported schema version");
    static const std::vector<std::string> known = {"schema", "name",   "kind",  "series",      "n",
                                                   "m",      "a",      "b",     "lambda",      "grading",
                                                   "N",      "seed",   "g0",    "realization", "contact",
                                                   "allow_excluded",   "mu"};
    for (auto& [k, v] : j.items())
        if (std::find(known.begin(), known.end(), k) == known.end()) sp.fail(k, "unknown key \"" + k + "\"");
    auto get_int = [&](const std::string& k, int lo, int hi) {
        if (!j[k].is_number_integer()) sp.fail(k, "\"" + k + "\" must be an integer");
        long long v = j[k].get<long long>();
        if (v < lo || v > hi) sp.fail(k, "\"" + k + "\" out of range");
        return static_cast<int>(v);
    };
    auto get_str = [&](const std::string& k) {
        if (!j[k].is_string()) sp.fail(k, "\"" + k + "\" must be a string");
        return j[k].get<std::string>();
    };
    if (j.contains("kind")) sp.kind = get_str("kind");
    else if (j.contains("series")) sp.kind = "series";
    else throw SpecError("missing \"kind\" or \"series\"", 1);
    static const std::vector<std::string> kinds = {"series", "h_lambda", "svect_tilde", "prolong", "mk_prolong",
                                                   "matrix", "as",       "mb45",        "mb38",    "kas"};
    if (std::find(kinds.begin(), kinds.end(), sp.kind) == kinds.end()) sp.fail("kind", "unknown kind \"" + sp.kind + "\"");
    if (j.contains("series")) sp.series = get_str("series");
    if (j.contains("n")) sp.n = get_int("n", 0, 16);
    if (j.contains("m")) sp.m = get_int("m", 0, 16);
    for (auto [k, dst] : {std::pair{"a", &sp.a}, std::pair{"b", &sp.b}, std::pair{"lambda", &sp.lambda}})
        if (j.contains(k)) *dst = detail::scalar_token(sp, j, k);
    if (j.contains("grading")) {
        if (j["grading"].is_string()) sp.grading = j["grading"].get<std::string>();
        else if (j["grading"].is_array()) {
            std::vector<int> w;
            for (auto& x : j["grading"]) {
                if (!x.is_number_integer()) sp.fail("grading", "weights must be integers");
                w.push_back(x.get<int>());
            }
            sp.grading = w;
        } else sp.fail("grading", "\"grading\" must be a name or a weight list");
    }
    if (j.contains("N")) sp.N = get_int("N", -8, 64);
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) sp.fail("seed", "\"seed\" must be a nonnegative integer");
        sp.seed = j["seed"].get<uint64_t>();
    }
    if (j.contains("g0")) sp.g0 = get_str("g0");
    if (j.contains("realization")) {
        sp.realization = get_str("realization");
        if (sp.realization != "row" && sp.realization != "column") sp.fail("realization", "realization is row or column");
    }
    if (j.contains("contact")) {
        sp.contact = get_str("contact");
        if (sp.contact != "k" && sp.contact != "m") sp.fail("contact", "contact is k or m");
    }
    if (j.contains("allow_excluded")) {
        if (!j["allow_excluded"].is_boolean()) sp.fail("allow_excluded", "\"allow_excluded\" must be a boolean");
        sp.allow_excluded = j["allow_excluded"].get<bool>();
    }
    if (j.contains("mu") && !(j["mu"].is_string() && j["mu"] == "odd")) sp.fail("mu", "only an odd mu is supported");
    sp.label = j.contains("name") ? get_str("name") : sp.kind + (sp.series.empty() ? "" : ":" + sp.series);

    // consistency
    if (sp.kind == "series") {
        if (sp.series.empty()) sp.fail("kind", "kind \"series\" needs \"series\"");
        try {
            parse_series(sp.series);
        } catch (const std::invalid_argument& e) {
            sp.fail("series", e.what());
        }
        if (sp.series != "b_ab" && sp.series != "b_lambda" && (sp.a || sp.b || sp.lambda))
            sp.fail(sp.a ? "a" : sp.b ? "b" : "lambda", "parameters are only meaningful for b_ab");
        if (sp.lambda && (sp.a || sp.b)) sp.fail("lambda", "give either lambda or a, b");
    }
    if (sp.kind == "h_lambda" && !sp.lambda) sp.fail("kind", "h_lambda needs \"lambda\"");
    if ((sp.kind == "prolong" || sp.kind == "mk_prolong" || sp.kind == "matrix") && sp.g0.empty())
        sp.fail("kind", "kind \"" + sp.kind + "\" needs \"g0\"");
    bool exact_only = sp.kind != "series" && sp.kind != "h_lambda";
    if (exact_only && sp.symbolic()) sp.fail("kind", "symbolic parameters are supported for series and h_lambda only");
    if (sp.lambda && *sp.lambda == "inf" && sp.kind == "h_lambda") sp.fail("lambda", "h_lambda needs a finite lambda");
    return sp;
}

inline AlgebraSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open spec file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str(), path);
}

// Degree range and superdimensions.
struct DimTable {
    int lo = 0;
    std::vector<SDim> dims;
};

struct TargetResult {
    std::string target;
    bool pass = false;
    std::string witness;
    ojson details = ojson::object();
    double seconds = 0;
};

template <class S>
class Driver {
public:
    explicit Driver(AlgebraSpec spec) : sp_(std::move(spec)) {}

    const AlgebraSpec& spec() const { return sp_; }
    int degree(std::optional<int> deg, int fallback) const { return deg ? *deg : sp_.N ? *sp_.N : fallback; }

    S scalar(const std::string& tok) const {
        if (tok == "symbolic") {
            if constexpr (ScalarTraits<S>::symbolic) return S::param();
            else throw SpecError("symbolic parameter needs the rational-function field");
        }
        return ScalarTraits<S>::from_rational(Rational::parse(tok));
    }

    std::pair<S, S> ab() const {
        if (sp_.lambda) {
            if (*sp_.lambda == "inf") return ab_for_lambda<S>(sp_.n, std::nullopt);
            return ab_for_lambda<S>(sp_.n, scalar(*sp_.lambda));
        }
        return {sp_.a ? scalar(*sp_.a) : S(0), sp_.b ? scalar(*sp_.b) : S(1)};
    }

    Algebra<S> algebra() const {
        Series tag = parse_series(sp_.series);
        auto [a, b] = ab();
        if (tag == Series::svect_tilde) return make_svect_tilde<S>(sp_.n, sp_.m);
        if (auto* w = std::get_if<std::vector<int>>(&sp_.grading))
            return build_algebra<S>(tag, setup_for(tag, sp_.n, sp_.m), GradingVector{*w}, a, b);
        return make_algebra<S>(tag, sp_.n, sp_.m, Regrading::parse(std::get<std::string>(sp_.grading)), a, b,
                               sp_.allow_excluded);
    }

    // Graded algebra of vector fields through degree hi.
    GradedSubspace<S> graded(int hi) const {
        const auto& k = sp_.kind;
        if (k == "series") {
            auto A = algebra();
            return components(A, hi);
        }
        if (k == "svect_tilde") {
            auto A = make_svect_tilde<S>(sp_.n, sp_.m);
            return components(A, hi);
        }
        if (k == "h_lambda") {
            auto s = h_setup(sp_.n ? sp_.n : 1, sp_.m ? sp_.m : 2);
            S hb = hbar_from_lambda(scalar(*sp_.lambda));
            return graded_from_model<S>(s.sig, standard_grading(*s.sig), h_lambda_model<S>(s, hb), -2, hi);
        }
        if constexpr (!ScalarTraits<S>::symbolic) {
            if (k == "prolong") {
                auto g = matrix_algebra<S>(sp_.g0);
                auto sig = format_signature(g.fmt);
                GradingVector w = standard_grading(*sig);
                auto how = sp_.realization == "row" ? Realization::row : Realization::column;
                ProlongSpec<S> ps{sig, w, {}, linear_fields(sig, g.basis, how), hi};
                for (int i = 0; i < sig->size(); ++i) ps.negative[-1].push_back(VectorField<S>::partial(sig, i));
                return cartan_prolong(ps);
            }
            if (k == "mk_prolong") {
                auto s = sp_.contact == "k" ? k_setup(sp_.n, sp_.m) : m_setup(sp_.n);
                GradingVector w{std::vector<int>(s.sig->size(), 1)};
                w.w[s.t] = 2;
                auto amb = generating_model<S>(sp_.contact == "k" ? GenKind::K : GenKind::M, s, w);
                auto g = matrix_algebra<S>(sp_.g0);
                bool center = sp_.g0.rfind("c(", 0) == 0;
                auto basis = g.basis;
                if (center) basis.pop_back();  // realize_matrices adds the grading element itself
                auto g0 = realize_matrices(amb(0), amb(-1), basis, center);
                return mk_prolong<S>(amb, s.sig, w, g0, 2, hi);
            }
            if (k == "mb45") return mb45_graded<S>(hi);
            if (k == "kas") return kas_xi<S>(hi).kas;
            if (k == "mb38") {
                auto Fr = mb38_frames<S>();
                GradedSubspace<S> g(Fr.sp.sig, Fr.sp.w);
                for (int d = -3; d <= hi; ++d) {
                    auto pc = mb38_component(Fr, d);
                    std::vector<VectorField<S>> fs;
                    for (size_t i = 0; i < pc.basis.size(); ++i)
                        fs.push_back(field_from_pair(Fr, pc.basis[i].first, pc.basis[i].second, pc.parity[i]));
                    g.set(d, Component<S>::span(make_space(Fr.sp.sig, Fr.sp.w, d), fs));
                }
                return g;
            }
        }
        throw SpecError("kind \"" + k + "\" has no graded model");
    }

    DimTable dims(int hi) const {
        const auto& k = sp_.kind;
        if constexpr (!ScalarTraits<S>::symbolic) {
            if (k == "matrix" || k == "as") {
                auto f = finite();
                return {0, {f.sdim()}};
            }
            if (k == "mb38") {
                // pairs only; the fields are not needed for dimensions
                auto Fr = mb38_frames<S>();
                DimTable t{-3, {}};
                for (int d = -3; d <= hi; ++d) t.dims.push_back(mb38_component(Fr, d).sdim());
                return t;
            }
        }
        auto g = graded(hi);
        int lo = g.min_degree();
        while (lo < 0 && lo < hi && g.sdim(lo).total() == 0) ++lo;
        return {lo, g.signature(lo, hi)};
    }

    // Finite-dimensional algebra for Jacobi: generating functions for series, fields otherwise.
    FiniteLieSuperalgebra<S> finite(int N = 3) const {
        const auto& k = sp_.kind;
        if (k == "series") {
            auto A = algebra();
            if (!is_vect_family(A.tag)) return truncated_series<S>(A, N).alg;
        }
        if constexpr (!ScalarTraits<S>::symbolic) {
            if (k == "matrix") return algebra_from_matrices<S>(matrix_algebra<S>(sp_.g0).basis);
            if (k == "as") return as_algebra<S>().alg;
        }
        return truncate(graded(N));
    }

    TargetResult check(const std::string& target, int N) const;

private:
    TargetResult cocycle(const std::string& name, int N) const;
    TargetResult mb_suite() const;

    AlgebraSpec sp_;
};

inline ojson sdim_json(const SDim& s) { return ojson{{"even", s.even}, {"odd", s.odd}}; }

inline ojson dims_json(const DimTable& t) {
    ojson rows = ojson::array();
    for (size_t i = 0; i < t.dims.size(); ++i)
        rows.push_back({{"degree", t.lo + static_cast<int>(i)}, {"sdim", t.dims[i].str()}});
    return rows;
}

inline std::string dims_tsv(const DimTable& t) {
    std::string r;
    for (size_t i = 0; i < t.dims.size(); ++i)
        r += std::to_string(t.lo + static_cast<int>(i)) + ": " + t.dims[i].str() + "\n";
    return r;
}

template <class S>
TargetResult Driver<S>::check(const std::string& target, int N) const {
    TargetResult r;
    r.target = target;
    auto from = [&](const CheckResult& c) {
        r.pass = c.ok;
        r.witness = c.witness;
    };
    if (target == "jacobi") {
        auto g = finite(N);
        r.details["sdim"] = g.sdim().str();
        from(check_jacobi(g));
        return r;
    }
    if (target == "membership") {
        auto g = graded(N);
        from(closure_check(g));
        r.details["degrees"] = ojson{g.min_degree(), N};
        if constexpr (!ScalarTraits<S>::symbolic) {
            if (r.pass && sp_.kind == "mb38") {
                auto Fr = mb38_frames<S>();
                for (int d = -3; d <= N && r.pass; ++d)
                    for (auto& D : g.at(d).basis())
                        if (auto c = preserves_distribution(Fr, D); !c) {
                            from(c);
                            break;
                        }
            }
        }
        return r;
    }
    if (target == "weisfeiler") {
        auto g = graded(std::max(N, 1));
        auto e = weisfeiler_evidence(g);
        r.pass = e.all();
        r.witness = !e.transitive.ok ? e.transitive.witness : e.irreducible_witness;
        r.details = {{"transitive", e.transitive.ok}, {"irreducible", e.irreducible}, {"depth", e.depth},
                     {"evidence_only", true}};
        return r;
    }
    if (target.rfind("iso-dims:", 0) == 0) {
        namespace fs = std::filesystem;
        fs::path other = target.substr(9);
        if (other.is_relative() && !fs::exists(other)) other = fs::path(sp_.path).parent_path() / other;
        auto osp = load_spec(other.string());
        auto mine = dims(N);
        DimTable theirs;
        if (osp.symbolic()) theirs = Driver<RatFunc>(osp).dims(N);
        else theirs = Driver<Rational>(osp).dims(N);
        int lo = std::min(mine.lo, theirs.lo);
        auto pad = [&](DimTable t) {
            std::vector<SDim> v(static_cast<size_t>(t.lo - lo), SDim{});
            v.insert(v.end(), t.dims.begin(), t.dims.end());
            return v;
        };
        auto a = pad(mine), b = pad(theirs);
        auto d = dims_equal(a, b, lo);
        r.pass = d.equal;
        if (!d.equal)
            r.witness = "degree " + std::to_string(d.first_mismatch) + ": " + d.left.str() + " vs " + d.right.str();
        r.details = {{"other", osp.label}, {"lo", lo}, {"hi", N}, {"evidence_only", true}};
        return r;
    }
    if (target.rfind("cocycle:", 0) == 0) return cocycle(target.substr(8), N);
    if (target == "mb") {
        if constexpr (!ScalarTraits<S>::symbolic) {
            auto res = mb_suite();
            res.target = target;
            return res;
        }
    }
    throw SpecError("unknown check target \"" + target + "\"");
}

template <class S>
TargetResult Driver<S>::cocycle(const std::string& name, int N) const {
    TargetResult r;
    r.target = "cocycle:" + name;
    if constexpr (ScalarTraits<S>::symbolic) {
        throw SpecError("cocycle checks run over the rationals");
    } else {
        auto central = [&](const FiniteLieSuperalgebra<S>& g, const CentralCocycle<S>& c, const std::string& what) {
            auto res = check_central_cocycle(g, c);
            r.pass = res.ok;
            r.witness = res.witness;
            r.details = {{"case", what}, {"sdim", g.sdim().str()}, {"parity", c.parity}};
        };
        static const std::vector<std::pair<std::string, int>> fd = {
            {"psl22-adjB", 0}, {"psl22-BC", 1}, {"psl22-adjC", 2}, {"psl33", 3}, {"psq3", 4}, {"spe4", 5}};
        for (auto& [n, i] : fd)
            if (n == name) {
                auto c = finite_dimensional_cocycles<S>()[i];
                central(c.alg, c.cocycle, c.name);
                return r;
            }
        if (name == "spe5-analog") {
            auto c = spe5_analog<S>();
            central(c.alg, c.cocycle, c.name);
            return r;
        }
        if (name == "h05") {
            auto c = h_prime_0n<S>(5);
            central(c.alg.alg, c.cocycle, c.name);
            return r;
        }
        if (name == "bezN2-h" || name == "bezN2-le") {
            auto c = name == "bezN2-h" ? h_evaluation_cocycle<S>(sp_.n ? sp_.n : 1, sp_.n ? sp_.m : 2, N)
                                       : le_evaluation_cocycle<S>(sp_.n ? sp_.n : 2, N);
            central(c.alg.alg, c.cocycle, c.name);
            return r;
        }
        if (name.rfind("thdefb-", 0) == 0) {
            int n = sp_.n ? sp_.n : 2;
            for (auto& sc : singular_cases(n)) {
                if (sc.name != name.substr(7)) continue;
                ojson readings = ojson::object();
                bool any = false;
                std::string witness;
                for (auto rd : {PairReading::antisymmetric, PairReading::ordered}) {
                    auto c = singular_cocycle<S>(sc, N, rd);
                    auto res = check_adjoint_cocycle(c.alg.alg, c.cocycle, rd == PairReading::antisymmetric);
                    readings[rd == PairReading::antisymmetric ? "antisymmetric" : "ordered"] = res.ok;
                    if (res.ok && !any) {
                        any = true;
                        r.details["reading"] = rd == PairReading::antisymmetric ? "antisymmetric" : "ordered";
                    }
                    if (!res.ok && witness.empty()) witness = res.witness;
                    r.details["sdim"] = c.alg.alg.sdim().str();
                    r.details["shift"] = c.cocycle.shift;
                }
                r.details["readings"] = readings;
                r.details["parity"] = sc.parity;
                r.details["n"] = n;
                r.pass = any;
                if (!any) r.witness = witness;
                return r;
            }
        }
        throw SpecError("unknown cocycle \"" + name + "\"");
    }
}

template <class S>
TargetResult Driver<S>::mb_suite() const {
    TargetResult r;
    ojson d = ojson::object();
    std::string witness;
    auto require = [&](bool ok, const std::string& what) {
        if (!ok && witness.empty()) witness = what;
    };
    auto m4 = m4_component<S>(0).sdim(), mb0 = mb45_component<S>(0).sdim();
    d["m(4)_0"] = m4.str();
    d["mb(4|5)_0"] = mb0.str();
    require(m4 == SDim{17, 16} && mb0 == SDim{13, 12}, "degree-0 dimensions");
    auto Fr = mb38_frames<S>();
    ojson neg = ojson::object();
    for (int k = -3; k <= -1; ++k) neg[std::to_string(k)] = mb38_component(Fr, k).sdim().str();
    d["mb(3|8)_negative"] = neg;
    require(neg["-3"] == "0|2" && neg["-2"] == "3|0" && neg["-1"] == "0|6", "mb(3|8) negative dimensions");
    std::mt19937_64 rng(sp_.seed);
    int bad = 0;
    const int pairs = 6;
    for (int it = 0; it < pairs; ++it) {
        auto a = random_collection<S>(Fr.sp, static_cast<int>(rng() % 2), 2, rng);
        auto b = random_collection<S>(Fr.sp, static_cast<int>(rng() % 2), 2, rng);
        auto lhs = bracket(field_from_collection(Fr, a), field_from_collection(Fr, b));
        if (lhs != field_from_collection(Fr, bracket_collections(Fr.sp, a, b))) ++bad;
    }
    d["collection_morphism"] = {{"pairs", pairs}, {"failures", bad}};
    require(bad == 0, "collection bracket does not match the field bracket");
    auto l1 = lazha_jacobi(S(1)), l2 = lazha_jacobi(S(1) / S(2));
    d["jacobi_coefficient"] = {{"1", l1.holds}, {"1/2", l2.holds}, {"residual_1/2", l2.residual}};
    require(l1.holds && !l2.holds, "Jacobi coefficient test");
    r.details = d;
    r.pass = witness.empty();
    r.witness = witness;
    return r;
}

inline int thread_cap() {
    if (const char* e = std::getenv("SUPERPROLONG_THREADS")) {
        int n = std::atoi(e);
        if (n >= 1) return n;
    }
    unsigned h = std::thread::hardware_concurrency();
    return h ? static_cast<int>(h) : 1;
}

// Runs the targets concurrently (at most thread_cap() at a time); results keep the input order.
template <class S>
std::vector<TargetResult> run_checks(const Driver<S>& drv, const std::vector<std::string>& targets, int N) {
    std::counting_semaphore<> slots(thread_cap());
    std::vector<std::future<TargetResult>> fut;
    for (auto& t : targets)
        fut.push_back(std::async(std::launch::async, [&, t] {
            slots.acquire();
            auto t0 = std::chrono::steady_clock::now();
            try {
                auto r = drv.check(t, N);
                r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                slots.release();
                return r;
            } catch (...) {
                slots.release();
                throw;
            }
        }));
    std::vector<TargetResult> out;
    std::exception_ptr err;
    for (auto& f : fut) {
        try {
            out.push_back(f.get());
        } catch (...) {
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
    return out;
}

inline ojson report_json(const std::string& command, const AlgebraSpec& sp, int N, const std::vector<TargetResult>& rs,
                         bool timings) {
    ojson j;
    j["schema"] = 1;
    j["command"] = command;
    j["algebra"] = sp.label;
    j["degree"] = N;
    j["seed"] = sp.seed;
    bool all = true;
    ojson arr = ojson::array();
    for (auto& r : rs) {
        ojson e;
        e["target"] = r.target;
        e["pass"] = r.pass;
        e["witness"] = r.witness.empty() ? ojson(nullptr) : ojson(r.witness);
        e["details"] = r.details;
        if (timings) e["seconds"] = r.seconds;
        arr.push_back(e);
        all = all && r.pass;
    }
    j["results"] = arr;
    j["pass"] = all;
    return j;
}

// prolong: components, bracket closure, transitivity, termination and a rank-1 search on g_0.
template <class S>
std::pair<ojson, bool> prolong_report(const Driver<S>& drv, int N, bool timings) {
    auto t0 = std::chrono::steady_clock::now();
    auto g = drv.graded(N);
    int lo = g.min_degree();
    while (lo < 0 && g.sdim(lo).total() == 0) ++lo;
    DimTable t{lo, g.signature(lo, N)};
    auto closed = closure_check(g);
    auto trans = transitive_check(g);
    ojson j;
    j["schema"] = 1;
    j["command"] = "prolong";
    j["algebra"] = drv.spec().label;
    j["degree"] = N;
    j["seed"] = drv.spec().seed;
    j["dims"] = dims_json(t);
    j["closed"] = closed.ok;
    j["closed_witness"] = closed.ok ? ojson(nullptr) : ojson(closed.witness);
    j["transitive"] = trans.ok;
    j["transitive_witness"] = trans.ok ? ojson(nullptr) : ojson(trans.witness);
    auto term = termination_degree(g);
    j["terminates_at"] = term ? ojson(*term) : ojson(nullptr);
    if (g.has(0) && g.has(-1) && g.at(-1).dim() > 0) {
        auto rk = rank1_search(g.at(0).basis(), g.at(-1), drv.spec().seed);
        j["rank1"] = rk.stage;
    }
    if (timings) j["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool ok = closed.ok && trans.ok;
    j["pass"] = ok;
    return {j, ok};
}

}  // namespace superprolong
