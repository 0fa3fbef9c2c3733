#include "superprolong/driver.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace superprolong;

namespace {

struct Options {
    std::string command, spec_path, out;
    std::vector<std::string> targets;
    std::optional<int> deg;
    std::optional<uint64_t> seed;
    bool timings = false;
};

template <class S>
int run(const Options& o, AlgebraSpec sp) {
    if (o.seed) sp.seed = *o.seed;
    Driver<S> drv(sp);
    if (o.command == "dims") {
        int N = drv.degree(o.deg, 0);
        auto t = drv.dims(N);
        if (o.out == "json") {
            ojson j;
            j["schema"] = 1;
            j["command"] = "dims";
            j["algebra"] = sp.label;
            j["degree"] = N;
            j["dims"] = dims_json(t);
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << dims_tsv(t);
        }
        return 0;
    }
    if (o.command == "prolong") {
        int N = drv.degree(o.deg, 3);
        auto [j, ok] = prolong_report(drv, N, o.timings);
        if (o.out == "tsv") {
            for (auto& row : j["dims"]) std::cout << row["degree"].template get<int>() << ": " << row["sdim"].template get<std::string>() << "\n";
            std::cout << "closed\t" << (j["closed"].template get<bool>() ? "PASS" : "FAIL") << "\n";
            std::cout << "transitive\t" << (j["transitive"].template get<bool>() ? "PASS" : "FAIL") << "\n";
        } else {
            std::cout << j.dump(2) << "\n";
        }
        return ok ? 0 : 1;
    }
    int N = drv.degree(o.deg, 3);
    if (o.targets.empty()) throw SpecError("check needs at least one target");
    auto rs = run_checks(drv, o.targets, N);
    auto j = report_json("check", sp, N, rs, o.timings);
    if (o.out == "tsv") {
        for (auto& r : rs) std::cout << r.target << "\t" << (r.pass ? "PASS" : "FAIL") << "\t" << r.witness << "\n";
    } else {
        std::cout << j.dump(2) << "\n";
    }
    return j["pass"].template get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lie superalgebras of vector fields: dimensions, prolongs and checks"};
    Options o;
    app.add_option("command", o.command, "dims | prolong | check")->required()->check(CLI::IsMember({"dims", "prolong", "check"}));
    app.add_option("targets", o.targets,
                   "check targets: jacobi, cocycle:<name>, membership, iso-dims:<spec>, weisfeiler, mb");
    app.add_option("--spec", o.spec_path, "algebra spec (JSON)")->required();
    app.add_option("--deg", o.deg, "truncation degree N");
    app.add_option("--seed", o.seed, "seed for randomized checks");
    app.add_option("--out", o.out, "json | tsv")->check(CLI::IsMember({"json", "tsv"}));
    app.add_flag("--timings", o.timings, "include wall-clock timings in reports");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (o.out.empty()) o.out = o.command == "dims" ? "tsv" : "json";
    try {
        auto sp = load_spec(o.spec_path);
        return sp.symbolic() ? run<RatFunc>(o, sp) : run<Rational>(o, sp);
    } catch (const SpecError& e) {
        std::cerr << o.spec_path << ": " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << o.spec_path << ": " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << o.spec_path << ": " << e.what() << "\n";
        return 2;
    }
}
