#pragma once

// Independent oracles and property suites. The Leray-Hirsch oracle rewrites
// words in {x, U} with plain string rules and dense int64 arrays, sharing no
// arithmetic with ring.hpp.

#include <cmath>
#include <concepts>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "paramtc/bounds.hpp"
#include "paramtc/bundle.hpp"
#include "paramtc/planner.hpp"
#include "paramtc/ring.hpp"

namespace paramtc {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED'2024'0917ULL;

struct Failure {
    std::string input;
    std::string invariant;
    double measured = 0.0;
};

struct VerificationOutcome {
    std::string suite;
    long long cases = 0;
    std::vector<Failure> failures;
    std::map<std::string, double> maxima;  // worst measured value per invariant
    std::set<int> pieces_witnessed;

    explicit VerificationOutcome(std::string name = {}) : suite(std::move(name)) {}

    bool passed() const { return failures.empty(); }

    void record(const std::string& invariant, double value) {
        auto [it, inserted] = maxima.try_emplace(invariant, value);
        if (!inserted && value > it->second) it->second = value;
    }

    void fail(std::string input, std::string invariant, double measured) {
        failures.push_back({std::move(input), std::move(invariant), measured});
    }

    void merge(const VerificationOutcome& o) {
        cases += o.cases;
        failures.insert(failures.end(), o.failures.begin(), o.failures.end());
        for (const auto& [k, v] : o.maxima) record(k, v);
        pieces_witnessed.insert(o.pieces_witnessed.begin(), o.pieces_witnessed.end());
    }
};

// ---------------------------------------------------------------------------
// Leray-Hirsch rewrite oracle

struct OracleTerm {
    long long coefficient = 1;
    std::string word;  // letters 'x' and 'U'
};

using OracleSum = std::vector<OracleTerm>;

/// Dense normal form a + b*U, indexed by the power of x (size n + 1).
struct OracleNormalForm {
    std::vector<long long> a, b;
    bool operator==(const OracleNormalForm&) const = default;
};

namespace detail {
inline long long checked_mul(long long p, long long q) {
    long long r;
    if (__builtin_mul_overflow(p, q, &r)) throw DomainError("oracle coefficient overflow");
    return r;
}
inline long long checked_add(long long p, long long q) {
    long long r;
    if (__builtin_add_overflow(p, q, &r)) throw DomainError("oracle coefficient overflow");
    return r;
}
}  // namespace detail

/// Expands the product of formal sums and rewrites each word with
/// Ux -> xU, UU -> c x^m U (m = (q-1)/2, i.e. e(eta) = c x^m), x^{n+1} -> 0.
inline OracleNormalForm lh_rewrite_oracle(const std::vector<OracleSum>& product, int n, int q,
                                          long long euler_coefficient = 1) {
    if (n < 1) throw DomainError("oracle needs n >= 1");
    if (q < 3 || q % 2 == 0) throw DomainError("oracle models e(eta) = c x^{(q-1)/2}; q must be odd >= 3");
    const std::size_t m = static_cast<std::size_t>((q - 1) / 2);

    std::vector<OracleTerm> expanded{{1, ""}};
    for (const auto& factor : product) {
        std::vector<OracleTerm> next;
        for (const auto& lhs : expanded)
            for (const auto& rhs : factor)
                next.push_back({detail::checked_mul(lhs.coefficient, rhs.coefficient), lhs.word + rhs.word});
        expanded = std::move(next);
    }

    OracleNormalForm out{std::vector<long long>(n + 1, 0), std::vector<long long>(n + 1, 0)};
    for (auto [coef, word] : expanded) {
        for (char ch : word)
            if (ch != 'x' && ch != 'U') throw DomainError(std::string("oracle word has letter ") + ch);
        bool changed = true;
        while (changed && coef != 0) {
            changed = false;
            if (auto p = word.find("Ux"); p != std::string::npos) {
                word.replace(p, 2, "xU");
                changed = true;
            } else if (auto p2 = word.find("UU"); p2 != std::string::npos) {
                word.replace(p2, 2, std::string(m, 'x') + "U");
                coef = detail::checked_mul(coef, euler_coefficient);
                changed = true;
            }
        }
        if (coef == 0) continue;
        std::size_t xs = 0, us = 0;
        for (char ch : word) (ch == 'x' ? xs : us)++;
        if (xs > static_cast<std::size_t>(n)) continue;
        auto& slot = us == 0 ? out.a[xs] : out.b[xs];
        slot = detail::checked_add(slot, coef);
    }
    return out;
}

inline OracleNormalForm lh_rewrite_oracle(const std::string& word, int n, int q, long long euler_coefficient = 1) {
    return lh_rewrite_oracle({OracleSum{{1, word}}}, n, q, euler_coefficient);
}

/// Dense coefficient vector of a class in Z[x]/(x^{n+1}), grouping by the power of x.
inline std::vector<long long> dense_coefficients(const RingElement& e, int n) {
    if (e.ring().size() != 1) throw DomainError("dense_coefficients expects a one-generator ring");
    std::vector<long long> out(n + 1, 0);
    for (const auto& [exp, c] : e.terms()) out.at(exp[0]) = static_cast<long long>(c);
    return out;
}

inline OracleNormalForm dense_form(const LHElement& p, int n) {
    return {dense_coefficients(p.base(), n), dense_coefficients(p.fiber(), n)};
}

/// The module element of a basis word x^a U^b built through ring.hpp.
inline LHElement lh_basis_word(int a, int b, const RingElement& euler_eta, int u_degree) {
    const auto& ring = euler_eta.ring();
    LHElement r = LHElement::from_base(RingElement::generator(ring, 0, a), euler_eta, u_degree);
    const LHElement u = LHElement::fundamental(euler_eta, u_degree);
    for (int i = 0; i < b; ++i) r = r * u;
    return r;
}

/// Cross-checks lh_multiply and lh_height against the rewrite oracle on
/// H*(CP^n){1, U} with U^2 = xU, q = 3, for 1 <= n <= n_max.
inline VerificationOutcome check_leray_hirsch(int n_max) {
    VerificationOutcome out{"leray-hirsch"};
    for (int n = 1; n <= n_max; ++n) {
        const auto ring = RingDescriptor::projective_space(n);
        const auto x = RingElement::generator(ring, 0);
        auto word = [](int a, int b) { return std::string(a, 'x') + std::string(b, 'U'); };
        for (int a1 = 0; a1 <= n; ++a1)
            for (int b1 = 0; b1 <= 2; ++b1)
                for (int a2 = 0; a2 <= n; ++a2)
                    for (int b2 = 0; b2 <= 2; ++b2) {
                        ++out.cases;
                        auto lhs = lh_basis_word(a1, b1, x, 2) * lh_basis_word(a2, b2, x, 2);
                        auto oracle = lh_rewrite_oracle(word(a1, b1) + word(a2, b2), n, 3);
                        if (!(dense_form(lhs, n) == oracle))
                            out.fail("n=" + std::to_string(n) + " " + word(a1, b1) + "*" + word(a2, b2),
                                     "lh_multiply == oracle", 1.0);
                    }
        // heights of U - x and -x + 2U from repeated oracle expansion
        const std::pair<OracleSum, LHElement> classes[] = {
            {OracleSum{{1, "U"}, {-1, "x"}}, LHElement(-x, RingElement::one(ring), x, 2)},
            {OracleSum{{-1, "x"}, {2, "U"}}, LHElement(-x, RingElement::constant(ring, 2), x, 2)},
        };
        for (const auto& [sum, element] : classes) {
            ++out.cases;
            int oracle_height = 0;
            for (int k = 1;; ++k) {
                auto nf = lh_rewrite_oracle(std::vector<OracleSum>(k, sum), n, 3);
                bool zero = std::all_of(nf.a.begin(), nf.a.end(), [](long long v) { return v == 0; }) &&
                            std::all_of(nf.b.begin(), nf.b.end(), [](long long v) { return v == 0; });
                if (zero) break;
                oracle_height = k;
            }
            const int h = lh_height(element);
            if (h != oracle_height)
                out.fail("n=" + std::to_string(n) + " " + element.str(), "lh_height == oracle height",
                         std::abs(h - oracle_height));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Path properties

template <class P>
concept FiberPath = requires(const P& p, double t) {
    { p.at(t) } -> std::convertible_to<FiberVector>;
    { p.start() } -> std::convertible_to<BundlePoint>;
    { p.end() } -> std::convertible_to<BundlePoint>;
    { p.line() } -> std::convertible_to<ProjectiveRep>;
};

struct PathCheckOptions {
    int samples = 201;
    double delta = 1e-4;
    double tolerance = 1e-9;
    double lipschitz = 2.0 * std::numbers::pi + 2.0;
};

/// Checks endpoints, fiber invariance, normalization and sampled continuity on
/// a uniform grid. Violations are reported, never thrown.
template <FiberPath P>
VerificationOutcome check_path(const P& path, const PathCheckOptions& opt = {}, const std::string& label = "path") {
    VerificationOutcome out{"check_path"};
    out.cases = 1;
    const int samples = std::max(opt.samples, 2);
    const CVector& z = path.line().z();

    auto base_drift = [&](const FiberVector& v) {
        const double wn = v.w.norm();
        if (wn <= 1e-6) return 0.0;
        return 1.0 - std::abs(z.dot(v.w / wn));
    };
    auto check = [&](const std::string& invariant, double value, double bound) {
        out.record(invariant, value);
        if (!(value <= bound)) out.fail(label, invariant, value);
    };

    check("endpoint", std::max(path.at(0.0).distance(path.start().vec()), path.at(1.0).distance(path.end().vec())),
          opt.tolerance);
    double worst_norm = 0.0, worst_base = 0.0, worst_lip = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t = double(i) / (samples - 1);
        const FiberVector p = path.at(t);
        worst_norm = std::max(worst_norm, std::abs(p.norm() - 1.0));
        worst_base = std::max(worst_base, base_drift(p));
        const double t2 = std::min(t + opt.delta, 1.0);
        if (t2 > t) worst_lip = std::max(worst_lip, path.at(t2).distance(p) / (t2 - t));
    }
    check("norm drift", worst_norm, opt.tolerance);
    check("base drift", worst_base, opt.tolerance);
    check("lipschitz", worst_lip, opt.lipschitz);
    return out;
}

// ---------------------------------------------------------------------------
// Random and boundary inputs

inline CVector random_unit_vector(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    CVector v(dim);
    do {
        for (int i = 0; i < dim; ++i) v[i] = Complex(g(rng), g(rng));
    } while (v.norm() < 1e-3);
    return v / v.norm();
}

inline ProjectiveRep random_line(int n, std::mt19937_64& rng) { return ProjectiveRep(random_unit_vector(n + 1, rng)); }

/// A generic line in the open cell e^{2j}: coordinates after j vanish.
inline ProjectiveRep random_cell_line(int n, int j, std::mt19937_64& rng) {
    CVector v = CVector::Zero(n + 1);
    v.head(j + 1) = random_unit_vector(j + 1, rng);
    return ProjectiveRep(v);
}

inline BundlePoint random_point(const ProjectiveRep& line, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    return BundlePoint::from_fiber_coordinates(line, Complex(g(rng), g(rng)), g(rng));
}

inline ProjectiveRep regauged(const ProjectiveRep& line, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
    return ProjectiveRep(line.z() * std::polar(1.0, phase(rng)));
}

/// Same-fiber pairs on every stratum boundary the partition has.
inline std::vector<std::pair<BundlePoint, BundlePoint>> boundary_pairs(int n, std::mt19937_64& rng) {
    std::vector<std::pair<BundlePoint, BundlePoint>> out;
    for (int j = 0; j <= n; ++j) {
        // the coordinate line e_j and a generic line of the same cell
        CVector e = CVector::Zero(n + 1);
        e[j] = 1.0;
        for (const auto& line : {ProjectiveRep(e), random_cell_line(n, j, rng)}) {
            auto sig = BundlePoint::sigma(line, 1);
            out.emplace_back(sig, -sig);
            out.emplace_back(-sig, sig);
            out.emplace_back(sig, sig);
            auto eq = BundlePoint::from_fiber_coordinates(line, Complex(0.6, -0.8), 0.0);
            out.emplace_back(eq, -eq);
            for (double tiny : {1e-6, 1e-3, 0.3}) {
                auto near_axis = BundlePoint::from_fiber_coordinates(line, Complex(tiny, 0.0), 1.0);
                out.emplace_back(near_axis, -near_axis);
                out.emplace_back(near_axis, sig);
            }
            // just inside and just outside the antipodal tolerance
            auto p = random_point(line, rng);
            for (double eps : {1e-10, 1e-6, 1e-3}) {
                auto q = BundlePoint::from_fiber_coordinates(line, -p.base().z().dot(p.w()) + Complex(eps, 0.0), -p.s());
                out.emplace_back(p, q);
            }
        }
    }
    return out;
}

/// Classifies and plans random same-fiber pairs plus all boundary pairs,
/// checking partition totality, piece ranges and path properties.
inline VerificationOutcome check_partition(int n, long long trials, std::uint64_t seed = kDefaultSeed,
                                           const Tolerances& tol = {}, const PathCheckOptions& opt = {}) {
    if (n < 1) throw DomainError("check_partition needs n >= 1");
    VerificationOutcome out{"partition n=" + std::to_string(n)};
    std::mt19937_64 rng(seed ^ static_cast<std::uint64_t>(n));

    auto run = [&](const BundlePoint& x, const BundlePoint& y, const std::string& label) {
        ++out.cases;
        int piece = -1;
        try {
            piece = classify_pair(x, y, tol);
            if (piece < 0 || piece > n + 2) {
                out.fail(label, "piece in range", piece);
                return;
            }
            if (piece >= 2 && x.w().norm() > tol.anti) out.fail(label, "pieces >= 2 only on the eps-axis", piece);
            out.pieces_witnessed.insert(piece);
            auto path = plan(x, y, tol);
            if (path.piece() != piece) out.fail(label, "plan uses the classified piece", path.piece());
            auto res = check_path(path, opt, label);
            for (auto& f : res.failures) f.input += " piece=" + std::to_string(piece);
            res.cases = 0;
            out.merge(res);
        } catch (const Error& e) {
            out.fail(label + ": " + e.what(), "plan succeeds", piece);
        }
    };

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (long long i = 0; i < trials; ++i) {
        const auto line = random_line(n, rng);
        const auto x = random_point(line, rng);
        const double kind = unit(rng);
        const std::string label = "trial " + std::to_string(i);
        if (kind < 0.6) {
            run(x, random_point(regauged(line, rng), rng), label);
        } else if (kind < 0.85) {
            run(x, (-x).with_base(regauged(line, rng)), label + " antipodal");
        } else {
            const int j = std::uniform_int_distribution<int>(0, n)(rng);
            const auto cell_line = random_cell_line(n, j, rng);
            const auto sig = BundlePoint::sigma(cell_line, unit(rng) < 0.5 ? 1 : -1);
            run(sig, -sig, label + " sigma cell " + std::to_string(j));
        }
    }
    int b = 0;
    for (const auto& [x, y] : boundary_pairs(n, rng)) run(x, y, "boundary " + std::to_string(b++));
    return out;
}

/// Hopf planner on random pairs z, lambda*z, including lambda near -1.
inline VerificationOutcome check_hopf_paths(int n, long long trials, std::uint64_t seed = kDefaultSeed,
                                            const Tolerances& tol = {}, const PathCheckOptions& opt = {}) {
    if (n < 1) throw DomainError("check_hopf_paths needs n >= 1");
    VerificationOutcome out{"hopf paths n=" + std::to_string(n)};
    std::mt19937_64 rng(seed ^ (static_cast<std::uint64_t>(n) << 32));
    std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
    std::uniform_real_distribution<double> jitter(-1e-9, 1e-9);
    for (long long i = 0; i < trials; ++i) {
        const CVector z = random_unit_vector(n + 1, rng);
        const double theta = i % 4 == 3 ? std::numbers::pi + jitter(rng) : phase(rng);
        const CVector z_end = std::polar(1.0, theta) * z;
        const std::string label = "hopf trial " + std::to_string(i);
        ++out.cases;
        try {
            const auto path = plan_hopf(z, z_end, tol);
            out.pieces_witnessed.insert(path.piece());
            auto res = check_path(path, opt, label);
            res.cases = 0;
            out.merge(res);
        } catch (const Error& e) {
            out.fail(label + ": " + e.what(), "plan succeeds", 0);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bound tables

inline VerificationOutcome check_bounds_tables(int n_max) {
    if (n_max < 2) throw DomainError("check_bounds_tables needs n_max >= 2");
    VerificationOutcome out{"bounds tables"};
    for (int n = 1; n <= n_max; ++n) {
        const auto base = BaseSpace::projective_space(n);
        const auto eta = BundleDescriptor::canonical_line(base);
        for (int k = 1; k <= n_max; ++k) {
            ++out.cases;
            auto rep = secat_sphere_bundle(k_fold_sum(eta, k));
            const int want = n / k;
            if (!rep.exact() || rep.lower != want)
                out.fail("secat(" + std::to_string(k) + "eta over CP^" + std::to_string(n) + ")",
                         "secat = floor(n/k)", rep.lower);
        }
        ++out.cases;
        auto hopf = tc_sphere_bundle(eta);
        if (!hopf.exact() || hopf.lower != 1)
            out.fail("TC(eta over CP^" + std::to_string(n) + ")", "TC = 1", hopf.lower);

        ++out.cases;
        auto split = tc_sphere_bundle(whitney_sum(eta, BundleDescriptor::trivial_line(base)));
        const std::string label = "TC(eta+eps over CP^" + std::to_string(n) + ")";
        if (n % 2 == 0) {
            if (!split.exact() || split.lower != n + 2) out.fail(label, "TC = n + 2", split.lower);
            if (!split.cites("R3")) out.fail(label, "cites R3", 0);
        } else {
            if (split.lower < n + 1) out.fail(label, "lower >= n + 1", split.lower);
            if (!split.upper || *split.upper > n + 2) out.fail(label, "upper <= n + 2", split.upper.value_or(-1));
            if (split.exact() && !split.sharper_than_published) out.fail(label, "exact claim is flagged", split.lower);
        }
    }
    return out;
}

}  // namespace paramtc
