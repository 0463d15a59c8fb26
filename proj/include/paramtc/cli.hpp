#pragma once

// Command-line front end. execute() never touches std::cout directly so it can
// be driven from tests.

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "paramtc/bounds.hpp"
#include "paramtc/bundle.hpp"
#include "paramtc/io.hpp"
#include "paramtc/planner.hpp"
#include "paramtc/verify.hpp"

namespace paramtc::cli {

enum Exit { kOk = 0, kUsage = 1, kVerificationFailed = 2 };

/// Bad flag values or inputs that CLI11 cannot catch on its own.
struct UsageError : Error {
    using Error::Error;
};

inline constexpr int kMaxN = 64;

inline std::string label(Quantity q) {
    switch (q) {
        case Quantity::SecatSphereBundle: return "secat";
        case Quantity::SecatDdot: return "secat(ddot)";
        case Quantity::ParametrizedTC: return "TC";
    }
    return "?";
}

inline std::string join(const std::vector<std::string>& items, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
    return out;
}

inline std::string interval(const TCReport& r) {
    if (r.exact()) return std::to_string(r.lower) + " (exact)";
    return "in [" + std::to_string(r.lower) + ", " + (r.upper ? std::to_string(*r.upper) + "]" : "+inf)");
}

/// "TC = 4 (exact) [R3; R4]" followed by the full provenance chain and notes.
inline void render_human(const TCReport& r, std::ostream& out) {
    const std::string head = label(r.quantity) + (r.exact() ? " = " : " ") + interval(r);
    out << head << " [" << join(r.decisive_rules(), "; ") << "]\n";
    for (const auto& p : r.provenance)
        out << "  " << p.rule << " (" << to_string(p.side) << "): " << p.contribution << "  {" << p.citation << "}\n";
    if (r.sharper_than_published) out << "  flag: stronger than the published range\n";
    for (const auto& n : r.notes) out << "  note: " << n << "\n";
}

inline void render_tsv_header(std::ostream& out) { out << "quantity\tlower\tupper\texact\tsharper\trules\n"; }

inline void render_tsv(const TCReport& r, std::ostream& out) {
    out << to_string(r.quantity) << '\t' << r.lower << '\t' << (r.upper ? std::to_string(*r.upper) : "inf") << '\t'
        << (r.exact() ? "yes" : "no") << '\t' << (r.sharper_than_published ? "yes" : "no") << '\t'
        << join(r.decisive_rules(), ",") << '\n';
}

inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("PARAMTC_SEED"); env && *env) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used, 0);
            if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            throw UsageError(std::string("PARAMTC_SEED is not an unsigned integer: '") + env + "'");
        }
    }
    return kDefaultSeed;
}

inline void require_range(const char* flag, int value, int lo, int hi) {
    if (value < lo || value > hi)
        throw UsageError(std::string(flag) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                         "], got " + std::to_string(value));
}

inline BundleDescriptor family_bundle(const std::string& family, int n, int k) {
    require_range("--n", n, 1, kMaxN);
    const auto base = BaseSpace::projective_space(n);
    const auto eta = BundleDescriptor::canonical_line(base);
    if (family == "eta") return eta;
    if (family == "k-eta") {
        require_range("--k", k, 1, kMaxN);
        return k_fold_sum(eta, k);
    }
    if (family == "eta-plus-eps") return whitney_sum(eta, BundleDescriptor::trivial_line(base));
    throw UsageError("unknown family '" + family + "' (expected eta, k-eta or eta-plus-eps)");
}

inline std::vector<TCReport> reports_for(const BundleDescriptor& xi, const std::string& quantity) {
    std::vector<TCReport> out;
    const bool all = quantity == "all";
    if (all || quantity == "secat") out.push_back(secat_sphere_bundle(xi));
    if (all || quantity == "ddot") {
        if (xi.rank() >= 2)
            out.push_back(secat_ddot(ddot_of(xi)));
        else if (!all)
            throw UsageError("--quantity ddot needs a bundle of rank >= 2");
    }
    if (all || quantity == "tc") out.push_back(tc_sphere_bundle(xi));
    return out;
}

inline void render_reports(const std::vector<TCReport>& reports, const std::string& format, std::ostream& out) {
    if (format == "json") {
        if (reports.size() == 1) {
            out << to_json(reports.front()).dump(2) << '\n';
        } else {
            Json arr = Json::array();
            for (const auto& r : reports) arr.push_back(to_json(r));
            out << arr.dump(2) << '\n';
        }
    } else if (format == "tsv") {
        render_tsv_header(out);
        for (const auto& r : reports) render_tsv(r, out);
    } else {
        for (const auto& r : reports) render_human(r, out);
    }
}

inline void render_outcome(const VerificationOutcome& o, std::ostream& out) {
    out << (o.passed() ? "PASS " : "FAIL ") << o.suite << ": " << o.cases << " cases, " << o.failures.size()
        << " failures\n";
    for (const auto& [k, v] : o.maxima) out << "  max " << k << " = " << std::setprecision(6) << v << '\n';
    if (!o.pieces_witnessed.empty()) {
        std::vector<std::string> ps;
        for (int p : o.pieces_witnessed) ps.push_back(std::to_string(p));
        out << "  pieces witnessed: " << join(ps, " ") << '\n';
    }
    const std::size_t shown = std::min<std::size_t>(o.failures.size(), 10);
    for (std::size_t i = 0; i < shown; ++i)
        out << "  failure: " << o.failures[i].input << ": " << o.failures[i].invariant << " (measured "
            << o.failures[i].measured << ")\n";
    if (o.failures.size() > shown) out << "  ... " << o.failures.size() - shown << " more\n";
}

inline void render_table(const std::string& family, int n_max, const std::string& format, std::ostream& out) {
    require_range("--n-max", n_max, 1, kMaxN);
    struct Row {
        std::vector<std::string> cells;
        TCReport report;
    };
    std::vector<std::string> header;
    std::vector<Row> rows;
    auto bound_cells = [](const TCReport& r) {
        return std::vector<std::string>{std::to_string(r.lower), r.upper ? std::to_string(*r.upper) : "inf",
                                        r.exact() ? "yes" : "no"};
    };
    if (family == "k-eta") {
        header = {"n", "k", "secat_lower", "secat_upper", "exact", "rules"};
        for (int n = 1; n <= n_max; ++n)
            for (int k = 1; k <= n_max; ++k) {
                auto r = secat_sphere_bundle(family_bundle("k-eta", n, k));
                auto c = bound_cells(r);
                c.insert(c.begin(), {std::to_string(n), std::to_string(k)});
                c.push_back(join(r.decisive_rules(), ","));
                rows.push_back({c, r});
            }
    } else if (family == "eta" || family == "eta-plus-eps") {
        header = {"n", "tc_lower", "tc_upper", "exact", "sharper", "rules"};
        for (int n = 1; n <= n_max; ++n) {
            auto r = tc_sphere_bundle(family_bundle(family, n, 1));
            auto c = bound_cells(r);
            c.insert(c.begin(), std::to_string(n));
            c.push_back(r.sharper_than_published ? "yes" : "no");
            c.push_back(join(r.decisive_rules(), ","));
            rows.push_back({c, r});
        }
    } else {
        throw UsageError("unknown family '" + family + "' (expected eta, k-eta or eta-plus-eps)");
    }

    if (format == "json") {
        Json arr = Json::array();
        for (const auto& row : rows) {
            Json j;
            j["cell"] = Json::object();
            j["cell"]["n"] = std::stoi(row.cells[0]);
            if (family == "k-eta") j["cell"]["k"] = std::stoi(row.cells[1]);
            j["report"] = to_json(row.report);
            arr.push_back(std::move(j));
        }
        out << arr.dump(2) << '\n';
        return;
    }
    const std::string sep = format == "tsv" ? "\t" : "  ";
    out << join(header, sep) << '\n';
    for (const auto& row : rows) out << join(row.cells, sep) << '\n';
}

inline Tolerances tolerances(double anti, double cell) {
    if (!(anti > 0.0 && anti < 1.0)) throw UsageError("--tol-anti must lie in (0, 1)");
    if (!(cell > 0.0 && cell < 1.0)) throw UsageError("--tol-cell must lie in (0, 1)");
    return {anti, cell};
}

inline void render_plan(const PlannedPath& path, int samples, const std::string& format, std::ostream& out) {
    const auto check = check_path(path);
    const bool constant = path.start().vec().distance(path.end().vec()) == 0.0;
    std::vector<std::string> kinds;
    for (const auto& s : path.segments()) kinds.push_back(to_string(s.kind()));
    if (format == "json") {
        Json j;
        j["piece"] = path.piece();
        j["constant"] = constant;
        j["segments"] = kinds;
        j["length"] = path.length();
        j["start"] = to_json(path.start());
        j["end"] = to_json(path.end());
        Json checks = Json::object();
        for (const auto& [k, v] : check.maxima) checks[k] = v;
        j["checks"] = checks;
        j["checks_passed"] = check.passed();
        Json pts = Json::array();
        for (int i = 0; i < samples; ++i) {
            const double t = samples == 1 ? 0.0 : double(i) / (samples - 1);
            Json p = to_json(path.at(t));
            p["t"] = t;
            pts.push_back(std::move(p));
        }
        j["samples"] = std::move(pts);
        out << j.dump(2) << '\n';
        return;
    }
    out << "piece = " << path.piece() << (constant ? " (constant path)" : "") << '\n';
    out << "segments: " << join(kinds, ", ") << '\n';
    out << std::setprecision(12) << "length = " << path.length() << '\n';
    for (const auto& [k, v] : check.maxima) out << "check " << k << " = " << std::setprecision(6) << v << '\n';
    out << "checks " << (check.passed() ? "passed" : "FAILED") << '\n';
    if (samples > 0) {
        out << "t\ts\t|w|\n" << std::setprecision(10);
        for (int i = 0; i < samples; ++i) {
            const double t = samples == 1 ? 0.0 : double(i) / (samples - 1);
            const auto p = path.at(t);
            out << t << '\t' << p.s << '\t' << p.w.norm() << '\n';
        }
    }
}

/// Runs one command line (without the program name). Returns the exit code.
inline int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bounds, motion planners and checks for parametrized topological complexity of sphere bundles",
                 "paramtc"};
    app.require_subcommand(1, 1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    std::string family, descriptor, quantity = "all", format = "human", suite = "all", pair;
    int n = 2, k = 1, samples = 0;
    std::optional<int> n_max;
    long long trials = 10000;
    std::optional<std::uint64_t> seed;
    double tol_anti = Tolerances{}.anti, tol_cell = Tolerances{}.cell;
    const std::vector<std::string> families{"eta", "k-eta", "eta-plus-eps"};

    auto* bounds = app.add_subcommand("bounds", "Bound report for a bundle family or descriptor file");
    auto* fam = bounds->add_option("--family", family, "eta | k-eta | eta-plus-eps");
    auto* desc = bounds->add_option("--descriptor", descriptor, "JSON bundle descriptor (file or inline)");
    fam->excludes(desc);
    bounds->add_option("--n", n, "base CP^n")->capture_default_str();
    bounds->add_option("--k", k, "number of copies for k-eta")->capture_default_str();
    bounds->add_option("--quantity", quantity, "secat | ddot | tc | all")
        ->check(CLI::IsMember({"secat", "ddot", "tc", "all"}))
        ->capture_default_str();
    bounds->add_option("--format", format, "human | json | tsv")
        ->check(CLI::IsMember({"human", "json", "tsv"}))
        ->capture_default_str();

    auto* plan_cmd = app.add_subcommand("plan", "Plan a fiberwise motion between two points");
    std::string plan_family = "eta-plus-eps";
    std::optional<int> plan_n;
    plan_cmd->add_option("--family", plan_family, "eta-plus-eps | eta")
        ->check(CLI::IsMember({"eta-plus-eps", "eta"}))
        ->capture_default_str();
    plan_cmd->add_option("--n", plan_n, "base CP^n (checked against the pair)");
    plan_cmd->add_option("--pair", pair, "JSON pair {x, y} (file or inline)")->required();
    plan_cmd->add_option("--samples", samples, "number of sampled points to print")->capture_default_str();
    plan_cmd->add_option("--tol-anti", tol_anti, "antipodality tolerance")->capture_default_str();
    plan_cmd->add_option("--tol-cell", tol_cell, "cell membership tolerance")->capture_default_str();
    plan_cmd->add_option("--format", format, "human | json")->check(CLI::IsMember({"human", "json"}));

    auto* verify_cmd = app.add_subcommand("verify", "Run verification suites");
    std::optional<int> verify_n;
    verify_cmd->add_option("--suite", suite, "ring | partition | paths | tables | all")
        ->check(CLI::IsMember({"ring", "partition", "paths", "tables", "all"}))
        ->capture_default_str();
    verify_cmd->add_option("--n", verify_n, "base CP^n for planner suites (default 1, 2, 3)");
    verify_cmd->add_option("--trials", trials, "random pairs per n")->capture_default_str();
    verify_cmd->add_option("--n-max", n_max, "largest n for ring and table suites");
    verify_cmd->add_option("--seed", seed, "seed (overrides PARAMTC_SEED)");

    auto* table_cmd = app.add_subcommand("table", "Tables of bounds over CP^1 .. CP^n-max");
    table_cmd->add_option("--family", family, "k-eta | eta | eta-plus-eps")->required();
    table_cmd->add_option("--n-max", n_max, "largest n (default 8)");
    table_cmd->add_option("--format", format, "tsv | human | json")
        ->check(CLI::IsMember({"human", "json", "tsv"}));

    std::vector<std::string> argv_store{"paramtc"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (bounds->parsed()) {
            if (family.empty() && descriptor.empty()) throw UsageError("bounds needs --family or --descriptor");
            const BundleDescriptor xi =
                descriptor.empty() ? family_bundle(family, n, k) : bundle_from_json(read_json_argument(descriptor));
            render_reports(reports_for(xi, quantity), format, out);
            return kOk;
        }
        if (plan_cmd->parsed()) {
            require_range("--samples", samples, 0, 100000);
            const Tolerances tol = tolerances(tol_anti, tol_cell);
            const Json doc = read_json_argument(pair);
            auto check_n = [&](int got) {
                if (plan_n && *plan_n != got)
                    throw UsageError("--n " + std::to_string(*plan_n) + " does not match the pair (CP^" +
                                     std::to_string(got) + ")");
            };
            if (plan_family == "eta") {
                const auto [z, z_end] = hopf_pair_from_json(doc);
                check_n(static_cast<int>(z.size()) - 1);
                try {
                    render_plan(plan_hopf(z, z_end, tol), samples, format, out);
                } catch (const DomainError& e) {
                    throw FormatError(e.what());
                }
            } else {
                const auto [x, y] = bundle_pair_from_json(doc);
                check_n(x.n());
                render_plan(plan(x, y, tol), samples, format, out);
            }
            return kOk;
        }
        if (verify_cmd->parsed()) {
            if (trials < 0) throw UsageError("--trials must be non-negative");
            const std::uint64_t s = resolve_seed(seed);
            std::vector<int> ns{1, 2, 3};
            if (verify_n) {
                require_range("--n", *verify_n, 1, kMaxN);
                ns = {*verify_n};
            }
            std::vector<VerificationOutcome> outcomes;
            const bool all = suite == "all";
            if (all || suite == "ring") {
                const int m = n_max.value_or(6);
                require_range("--n-max", m, 1, 24);
                outcomes.push_back(check_leray_hirsch(m));
            }
            if (all || suite == "partition")
                for (int v : ns) outcomes.push_back(check_partition(v, trials, s));
            if (all || suite == "paths")
                for (int v : ns) outcomes.push_back(check_hopf_paths(v, trials, s));
            if (all || suite == "tables") {
                const int m = n_max.value_or(8);
                require_range("--n-max", m, 2, kMaxN);
                outcomes.push_back(check_bounds_tables(m));
            }
            out << "seed = " << s << '\n';
            bool ok = true;
            for (const auto& o : outcomes) {
                render_outcome(o, out);
                ok = ok && o.passed();
            }
            return ok ? kOk : kVerificationFailed;
        }
        if (table_cmd->parsed()) {
            render_table(family, n_max.value_or(8), format == "human" && !table_cmd->count("--format") ? "tsv" : format,
                         out);
            return kOk;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const FormatError& e) {
        err << "input error: " << e.what() << '\n';
        return kUsage;
    } catch (const NotSameFiber& e) {
        err << "input error: points lie in different fibers: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace paramtc::cli
