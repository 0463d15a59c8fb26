#pragma once

// Rule engine for sectional category and parametrized topological complexity
// of sphere bundles. Every report is an interval [lower, upper] together with
// the chain of rules that produced it.

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "paramtc/bundle.hpp"
#include "paramtc/errors.hpp"
#include "paramtc/ring.hpp"

namespace paramtc {

enum class Quantity { SecatSphereBundle, SecatDdot, ParametrizedTC };

inline const char* to_string(Quantity q) {
    switch (q) {
        case Quantity::SecatSphereBundle: return "secat_sphere_bundle";
        case Quantity::SecatDdot: return "secat_ddot";
        case Quantity::ParametrizedTC: return "parametrized_tc";
    }
    return "?";
}

inline std::optional<Quantity> quantity_from_string(std::string_view s) {
    if (s == "secat_sphere_bundle") return Quantity::SecatSphereBundle;
    if (s == "secat_ddot") return Quantity::SecatDdot;
    if (s == "parametrized_tc") return Quantity::ParametrizedTC;
    return std::nullopt;
}

struct Rule {
    std::string_view id;
    std::string_view citation;
};

namespace rules {
// sectional category of the unit sphere bundle
inline constexpr Rule kSecatSW{"SEC-SW", "height of the top Stiefel-Whitney class is a lower bound for secat"};
inline constexpr Rule kSecatEuler{"SEC-EULER", "height of the Euler class is a lower bound for secat (orientable)"};
inline constexpr Rule kSecatDim{"SEC-DIM", "secat equals the Euler height when dim B <= q*h(e) + q (obstruction theory)"};
inline constexpr Rule kSecatSection{"SEC-SECTION", "a nowhere-zero section gives secat = 0"};
// sectional category of the ddot bundle over the sphere bundle
inline constexpr Rule kDdotComplex{"DDOT-COMPLEX", "complex structure: e -> i*e is a global orthogonal field, secat(ddot) = 0"};
inline constexpr Rule kDdotEuler{"DDOT-EULER", "height of e(ddot) is a lower bound for secat(ddot)"};
inline constexpr Rule kDdotDim{"DDOT-DIM", "secat(ddot) = h(e(ddot)) when dim B <= (q-1)*h(e(ddot))"};
// parametrized topological complexity
inline constexpr Rule kR1{"R1", "fiber restriction: TC(S^{q-1}) <= TC[p], with TC(S^m) = 1 (m odd), 2 (m even)"};
inline constexpr Rule kR2{"R2", "cup-length of the diagonal kernel: h(e(ddot)) + 1 <= TC"};
inline constexpr Rule kR3{"R3", "eta+eps with q odd: h(e(eta)) + 1 <= TC, and h(e(eta)) + 2 when h is even and H^{(q-1)h}(B) has no 2-torsion"};
inline constexpr Rule kR4{"R4", "antipodal pairs rotated along ddot sections: TC <= secat(ddot) + 1"};
inline constexpr Rule kR5{"R5", "TC = h(e(ddot)) + 1 when dim B <= (q-1)*h(e(ddot))"};
inline constexpr Rule kR6{"R6", "dimension/connectivity bound: TC < (2 dim X + dim B + 1)/(r + 1)"};
inline constexpr Rule kR7{"R7", "complex structure: TC = 1"};
inline constexpr Rule kR8{"R8", "splitting xi = eta + tau: TC <= secat(ddot tau) + secat(dot tau) + 2"};

inline constexpr Rule kAll[] = {kSecatSW, kSecatEuler, kSecatDim, kSecatSection, kDdotComplex,
                                kDdotEuler, kDdotDim, kR1, kR2, kR3, kR4, kR5, kR6, kR7, kR8};

inline std::optional<Rule> find(std::string_view id) {
    for (const auto& r : kAll)
        if (r.id == id) return r;
    return std::nullopt;
}
}  // namespace rules

enum class BoundSide { Lower, Upper, Exact };

inline const char* to_string(BoundSide s) {
    switch (s) {
        case BoundSide::Lower: return "lower";
        case BoundSide::Upper: return "upper";
        case BoundSide::Exact: return "exact";
    }
    return "?";
}

inline std::optional<BoundSide> bound_side_from_string(std::string_view s) {
    if (s == "lower") return BoundSide::Lower;
    if (s == "upper") return BoundSide::Upper;
    if (s == "exact") return BoundSide::Exact;
    return std::nullopt;
}

struct ProvenanceEntry {
    std::string rule;
    std::string citation;
    std::string contribution;
    BoundSide side = BoundSide::Lower;
    int value = 0;

    bool operator==(const ProvenanceEntry&) const = default;
};

struct TCReport {
    Quantity quantity = Quantity::ParametrizedTC;
    int lower = 0;
    std::optional<int> upper;  // nullopt means +infinity
    std::vector<ProvenanceEntry> provenance;
    /// The exact value is sharper than the range the source literature states.
    bool sharper_than_published = false;
    std::vector<std::string> notes;

    bool exact() const { return upper && *upper == lower; }

    bool cites(std::string_view rule) const {
        return std::any_of(provenance.begin(), provenance.end(),
                           [&](const auto& p) { return p.rule == rule; });
    }

    void raise_lower(int value, const Rule& rule, std::string contribution = {}) {
        if (upper && value > *upper)
            throw ContradictionError(std::string(rule.id) + " raises the lower bound to " +
                                     std::to_string(value) + " above the upper bound " +
                                     std::to_string(*upper));
        lower = std::max(lower, value);
        cite(rule, BoundSide::Lower, value, std::move(contribution));
    }

    void cap_upper(int value, const Rule& rule, std::string contribution = {}) {
        if (value < lower)
            throw ContradictionError(std::string(rule.id) + " lowers the upper bound to " +
                                     std::to_string(value) + " below the lower bound " +
                                     std::to_string(lower));
        upper = upper ? std::min(*upper, value) : value;
        cite(rule, BoundSide::Upper, value, std::move(contribution));
    }

    void pin(int value, const Rule& rule) {
        if (value < lower || (upper && value > *upper))
            throw ContradictionError(std::string(rule.id) + " claims exact value " + std::to_string(value) +
                                     " outside [" + std::to_string(lower) + ", " +
                                     (upper ? std::to_string(*upper) : "inf") + "]");
        lower = value;
        upper = value;
        cite(rule, BoundSide::Exact, value, {});
    }

    void cite(const Rule& rule, BoundSide side, int value, std::string detail) {
        const char* op = side == BoundSide::Lower ? ">= " : side == BoundSide::Upper ? "<= " : "= ";
        std::string contribution = op + std::to_string(value);
        if (!detail.empty()) contribution = detail + "; " + contribution;
        provenance.push_back({std::string(rule.id), std::string(rule.citation), std::move(contribution), side, value});
    }

    /// Rules whose contribution equals the final lower or upper bound.
    std::vector<std::string> decisive_rules() const {
        std::vector<std::string> out;
        for (const auto& p : provenance) {
            const bool hits_lower = p.side != BoundSide::Upper && p.value == lower;
            const bool hits_upper = p.side != BoundSide::Lower && upper && p.value == *upper;
            if ((hits_lower || hits_upper) && std::find(out.begin(), out.end(), p.rule) == out.end())
                out.push_back(p.rule);
        }
        return out;
    }

    bool operator==(const TCReport&) const = default;
};

/// Largest integer strictly below (2 dim X + dim B + 1)/(r + 1).
inline int tc_dimension_upper(int fiber_dim, int fiber_connectivity, int base_dim) {
    if (fiber_dim < 0 || fiber_connectivity < 0 || base_dim < 0)
        throw DomainError("tc_dimension_upper: arguments must be non-negative");
    const long long num = 2LL * fiber_dim + base_dim + 1;
    const long long den = fiber_connectivity + 1;
    return static_cast<int>((num + den - 1) / den - 1);
}

inline int tc_split_upper(int secat_tau_ddot, int secat_tau_dot) {
    if (secat_tau_ddot < 0 || secat_tau_dot < 0) throw DomainError("tc_split_upper: negative secat");
    return secat_tau_ddot + secat_tau_dot + 2;
}

/// TC of a fibration with contractible fiber is 0; the rule never fires for spheres.
inline std::optional<int> tc_trivial_fiber_rule(bool fiber_contractible) {
    if (fiber_contractible) return 0;
    return std::nullopt;
}

struct KernelCupLength {
    std::optional<int> integral;
    std::optional<int> mod2;
};

/// Cup-length of ker s* for a section s of a rank-q sphere bundle: one plus
/// the height of the Euler class (integral) or of w_{q-1} (mod 2) of the
/// orthogonal complement of the section.
inline KernelCupLength kernel_cuplength(int q, const std::optional<RingElement>& euler_eta,
                                        const std::optional<RingElement>& sw_top) {
    if (q < 2) throw DomainError("kernel_cuplength needs q >= 2");
    KernelCupLength out;
    auto check = [&](const RingElement& c, Coefficients want, const char* what) {
        if (c.ring().coefficients() != want)
            throw DomainError(std::string(what) + " has the wrong coefficients");
        if (auto d = c.degree(); d && *d != q - 1)
            throw DomainError(std::string(what) + " must have degree q-1 = " + std::to_string(q - 1) +
                              ", got " + std::to_string(*d));
    };
    if (euler_eta) {
        check(*euler_eta, Coefficients::Integer, "euler class");
        out.integral = height(*euler_eta) + 1;
    }
    if (sw_top) {
        check(*sw_top, Coefficients::ModTwo, "Stiefel-Whitney class");
        out.mod2 = height(*sw_top) + 1;
    }
    return out;
}

inline TCReport secat_sphere_bundle(const BundleDescriptor& xi) {
    TCReport r;
    r.quantity = Quantity::SecatSphereBundle;
    const int q = xi.rank();

    const int hw = height(xi.sw_top());
    r.raise_lower(hw, rules::kSecatSW, "h(w_" + std::to_string(q) + ") = " + std::to_string(hw));
    std::optional<int> he;
    if (xi.orientable()) {
        he = height(*xi.euler());
        r.raise_lower(*he, rules::kSecatEuler, "h(e) = " + std::to_string(*he));
    }
    if (xi.independent_sections() > 0 || xi.trivial_summands() > 0) {
        r.pin(0, rules::kSecatSection);
        return r;
    }
    if (he && xi.base().dimension() <= q * *he + q) {
        r.pin(*he, rules::kSecatDim);
        return r;
    }
    r.notes.push_back("no upper-bound rule applies; upper bound is +inf");
    return r;
}

inline TCReport secat_ddot(const DdotDescriptor& d) {
    TCReport r;
    r.quantity = Quantity::SecatDdot;
    if (d.secat_hint) {
        r.pin(*d.secat_hint, rules::kDdotComplex);
        return r;
    }
    if (d.euler_ddot) {
        const int h = lh_height(*d.euler_ddot);
        r.raise_lower(h, rules::kDdotEuler, "h(e(ddot)) = " + std::to_string(h));
        if (d.parent.base().dimension() <= (d.parent.rank() - 1) * h) r.pin(h, rules::kDdotDim);
        return r;
    }
    r.notes.push_back("ddot bundle has no symbolic model for " + d.parent.name() + "; upper bound is +inf");
    return r;
}

inline TCReport tc_sphere_bundle(const BundleDescriptor& xi) {
    const int q = xi.rank();
    if (q < 2) throw DomainError("tc_sphere_bundle needs rank >= 2");
    TCReport r;
    r.quantity = Quantity::ParametrizedTC;
    const int dim_b = xi.base().dimension();

    const int fiber_dim = q - 1;
    r.raise_lower(fiber_dim % 2 == 1 ? 1 : 2, rules::kR1,
                  "TC(S^" + std::to_string(fiber_dim) + ") = " + (fiber_dim % 2 == 1 ? "1" : "2"));

    const int dim_upper = tc_dimension_upper(fiber_dim, q - 2, dim_b);
    r.cap_upper(dim_upper, rules::kR6, "X = S^" + std::to_string(fiber_dim) + ", r = " + std::to_string(q - 2));

    if (xi.has_complex_structure()) r.pin(1, rules::kR7);

    const DdotDescriptor dd = ddot_of(xi);
    if (dd.secat_hint)
        r.cap_upper(*dd.secat_hint + 1, rules::kR4,
                    "secat(ddot) = " + std::to_string(*dd.secat_hint) + " (declared structure)");

    std::optional<int> published_lower;
    if (dd.euler_ddot) {
        const int h_module = lh_height(*dd.euler_ddot);
        const int h_rule = ddot_euler_height(dd);
        const int he = height(*dd.euler_complement);

        // The ring model is torsion-free; trust its power computation only when
        // the base has no declared 2-torsion where the parity rule looks.
        if (h_module == h_rule) {
            r.raise_lower(h_module + 1, rules::kR2, "h(e(ddot)) = " + std::to_string(h_module));
        } else {
            r.notes.push_back("R2 skipped: declared 2-torsion makes the torsion-free ring model unfaithful");
        }

        int cor_lower = he + 1;
        if (he % 2 == 0 && xi.base().has_no_two_torsion((q - 1) * he)) cor_lower = he + 2;
        r.raise_lower(cor_lower, rules::kR3, "h(e(eta)) = " + std::to_string(he));
        published_lower = cor_lower;

        if (dim_b <= (q - 1) * h_rule) {
            r.cap_upper(h_rule + 1, rules::kR4, "secat(ddot) = " + std::to_string(h_rule) + " since dim B = " +
                                                    std::to_string(dim_b) + " <= (q-1)*" + std::to_string(h_rule));
            r.pin(h_rule + 1, rules::kR5);
        }
    }

    // splittings xi = eta + tau with rank(tau) >= 2
    if (xi.independent_sections() >= 2)
        r.cap_upper(tc_split_upper(0, 0), rules::kR8, "tau = span of two independent sections");
    const auto parts = xi.parts();
    if (parts.size() > 1) {
        for (const auto& tau : parts) {
            if (tau.rank() < 2) continue;
            auto tau_ddot = ddot_of(tau);
            std::optional<int> s_ddot = tau_ddot.secat_hint;
            if (!s_ddot) {
                auto rep = secat_ddot(tau_ddot);
                if (rep.upper) s_ddot = rep.upper;
            }
            auto s_dot = secat_sphere_bundle(tau).upper;
            if (!s_ddot || !s_dot) continue;
            const int bound = tc_split_upper(*s_ddot, *s_dot);
            r.cap_upper(bound, rules::kR8, "tau = " + tau.name() + ": secat(ddot tau) = " +
                                               std::to_string(*s_ddot) + ", secat(dot tau) = " +
                                               std::to_string(*s_dot));
        }
    }

    // The literature's own conclusion for the eta+eps family is the interval
    // [R3 lower, R6 upper]; flag exact answers that go beyond it.
    if (published_lower && r.exact() && *published_lower != dim_upper) {
        r.sharper_than_published = true;
        r.notes.push_back("exact value " + std::to_string(r.lower) +
                          " is stronger than the published conclusion " + std::to_string(*published_lower) +
                          " <= TC <= " + std::to_string(dim_upper));
    }
    return r;
}

}  // namespace paramtc
