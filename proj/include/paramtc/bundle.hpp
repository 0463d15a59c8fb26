#pragma once

// Vector bundle descriptors: characteristic-class data plus declared
// structural flags, and the constructions performed on them.

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "paramtc/errors.hpp"
#include "paramtc/ring.hpp"

namespace paramtc {

enum class BaseFamily { Point, ProjectiveSpace, ProjectiveProduct, Custom };

class BaseSpace {
public:
    static BaseSpace point() {
        BaseSpace b;
        b.family_ = BaseFamily::Point;
        b.ring_ = RingDescriptor({}, Coefficients::Integer);
        b.dimension_ = 0;
        b.name_ = "pt";
        return b;
    }

    static BaseSpace projective_space(int n) {
        if (n < 1) throw DomainError("CP^n base needs n >= 1");
        BaseSpace b;
        b.family_ = BaseFamily::ProjectiveSpace;
        b.factors_ = {n};
        b.ring_ = RingDescriptor::projective_space(n);
        b.dimension_ = 2 * n;
        b.name_ = "CP^" + std::to_string(n);
        return b;
    }

    /// CP^{n_1} x ... x CP^{n_k}; generators x1..xk of degree 2.
    static BaseSpace projective_product(const std::vector<int>& dims) {
        if (dims.empty()) throw DomainError("product of zero projective spaces");
        BaseSpace b;
        b.family_ = BaseFamily::ProjectiveProduct;
        b.factors_ = dims;
        std::vector<Generator> gens;
        b.dimension_ = 0;
        for (std::size_t i = 0; i < dims.size(); ++i) {
            if (dims[i] < 1) throw DomainError("CP^n factor needs n >= 1");
            gens.push_back({"x" + std::to_string(i + 1), 2, dims[i] + 1});
            b.dimension_ += 2 * dims[i];
            b.name_ += (i ? " x CP^" : "CP^") + std::to_string(dims[i]);
        }
        b.ring_ = RingDescriptor(std::move(gens), Coefficients::Integer);
        return b;
    }

    /// A base described only by a cohomology model. The ring is torsion-free;
    /// degrees where the true integral cohomology has 2-torsion are declared.
    static BaseSpace custom(std::string name, RingDescriptor ring, int dimension,
                            std::set<int> two_torsion_degrees = {}) {
        if (ring.coefficients() != Coefficients::Integer)
            throw DomainError("base ring must have integer coefficients");
        if (dimension < ring.top_degree())
            throw DomainError("base dimension " + std::to_string(dimension) +
                              " is below the top degree of its cohomology ring");
        BaseSpace b;
        b.family_ = BaseFamily::Custom;
        b.ring_ = std::move(ring);
        b.dimension_ = dimension;
        b.two_torsion_ = std::move(two_torsion_degrees);
        b.name_ = std::move(name);
        return b;
    }

    BaseFamily family() const { return family_; }
    const std::vector<int>& factors() const { return factors_; }
    const RingDescriptor& ring() const { return ring_; }
    RingDescriptor mod2_ring() const { return ring_.with_coefficients(Coefficients::ModTwo); }
    int dimension() const { return dimension_; }
    const std::string& name() const { return name_; }
    bool has_no_two_torsion(int degree) const { return !two_torsion_.contains(degree); }

    bool operator==(const BaseSpace&) const = default;

private:
    BaseSpace() = default;

    BaseFamily family_ = BaseFamily::Point;
    std::vector<int> factors_;
    RingDescriptor ring_;
    int dimension_ = 0;
    std::set<int> two_torsion_;
    std::string name_;
};

struct BundleFlags {
    bool complex_structure = false;
    int trivial_summands = 0;
    int independent_sections = 0;

    bool operator==(const BundleFlags&) const = default;
};

class BundleDescriptor {
public:
    /// Validated constructor for an atomic bundle. `euler` must be present
    /// exactly when the bundle is orientable.
    static BundleDescriptor make(BaseSpace base, int rank, bool orientable,
                                 std::optional<RingElement> euler, RingElement sw_total,
                                 BundleFlags flags = {}, std::string name = "xi") {
        BundleDescriptor b(std::move(base));
        b.rank_ = rank;
        b.orientable_ = orientable;
        b.euler_ = std::move(euler);
        b.sw_total_ = std::move(sw_total);
        b.flags_ = flags;
        b.name_ = std::move(name);
        b.validate();
        return b;
    }

    /// The tautological complex line bundle over a projective factor, as a
    /// real rank-2 bundle: e = x, w = 1 + x.
    static BundleDescriptor canonical_line(const BaseSpace& base, std::size_t factor = 0) {
        if (base.family() != BaseFamily::ProjectiveSpace &&
            base.family() != BaseFamily::ProjectiveProduct)
            throw DomainError("canonical line bundle needs a projective base");
        if (factor >= base.ring().size()) throw DomainError("projective factor out of range");
        auto x = RingElement::generator(base.ring(), factor);
        auto sw = RingElement::one(base.mod2_ring()) + mod2_reduce(x);
        std::string name = base.factors().size() > 1 ? "eta" + std::to_string(factor + 1) : "eta";
        return make(base, 2, true, x, sw, BundleFlags{true, 0, 0}, name);
    }

    static BundleDescriptor trivial_line(const BaseSpace& base) {
        return make(base, 1, true, RingElement::zero(base.ring()),
                    RingElement::one(base.mod2_ring()), BundleFlags{false, 1, 1}, "eps");
    }

    const BaseSpace& base() const { return base_; }
    int rank() const { return rank_; }
    bool orientable() const { return orientable_; }
    const std::optional<RingElement>& euler() const { return euler_; }
    const RingElement& sw_total() const { return sw_total_; }
    RingElement sw_top() const { return sw_total_.homogeneous_part(rank_); }
    RingElement sw(int i) const { return sw_total_.homogeneous_part(i); }
    const BundleFlags& flags() const { return flags_; }
    bool has_complex_structure() const { return flags_.complex_structure; }
    int trivial_summands() const { return flags_.trivial_summands; }
    int independent_sections() const { return flags_.independent_sections; }
    const std::string& name() const { return name_; }

    /// Atomic summands this bundle was assembled from (itself when atomic).
    std::vector<BundleDescriptor> parts() const {
        if (parts_.empty()) return {*this};
        return parts_;
    }

    bool is_trivial_line() const { return rank_ == 1 && flags_.trivial_summands == 1; }

    /// Returns a copy with additional declared structure. Declaring a complex
    /// structure or extra sections is trusted, not checked against topology.
    BundleDescriptor with_declared(bool complex_structure, int independent_sections) const {
        BundleDescriptor b = *this;
        b.flags_.complex_structure = b.flags_.complex_structure || complex_structure;
        b.flags_.independent_sections = std::max(b.flags_.independent_sections, independent_sections);
        b.validate();
        return b;
    }

    /// Equality of characteristic data and flags; names and summand order are ignored.
    bool operator==(const BundleDescriptor& o) const {
        return base_ == o.base_ && rank_ == o.rank_ && orientable_ == o.orientable_ &&
               euler_ == o.euler_ && sw_total_ == o.sw_total_ && flags_ == o.flags_;
    }

    friend BundleDescriptor whitney_sum(const BundleDescriptor& a, const BundleDescriptor& b);

private:
    explicit BundleDescriptor(BaseSpace base) : base_(std::move(base)) {}

    void validate() const {
        auto fail = [&](const std::string& why) { throw DomainError("bundle " + name_ + ": " + why); };
        if (rank_ < 1) fail("rank must be >= 1");
        if (orientable_ != euler_.has_value()) fail("euler class present iff orientable");
        if (!(sw_total_.ring() == base_.mod2_ring())) fail("SW class not over the base's mod-2 ring");
        if (!(sw_total_.homogeneous_part(0) == RingElement::one(base_.mod2_ring())))
            fail("total SW class must start with 1");
        if (flags_.trivial_summands < 0 || flags_.independent_sections < 0) fail("negative count");
        if (flags_.trivial_summands > rank_ || flags_.independent_sections > rank_)
            fail("more sections or trivial summands than the rank");
        if (flags_.complex_structure && rank_ % 2 != 0) fail("complex structure needs even rank");
        RingElement top = sw_top();
        if (orientable_) {
            if (!(euler_->ring() == base_.ring())) fail("euler class not over the base ring");
            if (!euler_->is_homogeneous()) fail("euler class must be homogeneous");
            if (auto d = euler_->degree(); d && *d != rank_) fail("euler class must have degree = rank");
            if (!(mod2_reduce(*euler_) == top)) fail("mod-2 reduction of euler class differs from top SW class");
        }
        if (flags_.trivial_summands > 0 || flags_.independent_sections > 0) {
            if (orientable_ && !euler_->is_zero()) fail("a nowhere-zero section forces euler class 0");
            if (!top.is_zero()) fail("a nowhere-zero section forces top SW class 0");
        }
    }

    BaseSpace base_;
    int rank_ = 1;
    bool orientable_ = true;
    std::optional<RingElement> euler_;
    RingElement sw_total_;
    BundleFlags flags_;
    std::string name_;
    std::vector<BundleDescriptor> parts_;
};

inline BundleDescriptor whitney_sum(const BundleDescriptor& a, const BundleDescriptor& b) {
    if (!(a.base_ == b.base_)) throw DescriptorMismatch("whitney sum over different bases");
    BundleDescriptor s(a.base_);
    s.rank_ = a.rank_ + b.rank_;
    s.orientable_ = a.orientable_ && b.orientable_;
    if (s.orientable_) s.euler_ = *a.euler_ * *b.euler_;
    s.sw_total_ = a.sw_total_ * b.sw_total_;
    s.flags_.complex_structure = a.flags_.complex_structure && b.flags_.complex_structure;
    s.flags_.trivial_summands = a.flags_.trivial_summands + b.flags_.trivial_summands;
    s.flags_.independent_sections = a.flags_.independent_sections + b.flags_.independent_sections;
    s.name_ = a.name_ + "+" + b.name_;
    s.parts_ = a.parts();
    for (auto& p : b.parts()) s.parts_.push_back(std::move(p));
    s.validate();
    return s;
}

inline BundleDescriptor k_fold_sum(const BundleDescriptor& a, int k) {
    if (k < 1) throw DomainError("k_fold_sum needs k >= 1");
    BundleDescriptor s = a;
    for (int i = 1; i < k; ++i) s = whitney_sum(s, a);
    return s;
}

inline BundleDescriptor trivial_bundle(const BaseSpace& base, int rank) {
    return k_fold_sum(BundleDescriptor::trivial_line(base), rank);
}

/// The bundle of unit vectors orthogonal to a point of the unit sphere
/// bundle, over that sphere bundle.
struct DdotDescriptor {
    BundleDescriptor parent;
    /// Euler class in the Leray-Hirsch module of the sphere bundle, when the
    /// parent splits off a trivial line and has odd rank.
    std::optional<LHElement> euler_ddot;
    /// Euler class of the complement of the trivial line, when euler_ddot is set.
    std::optional<RingElement> euler_complement;
    std::optional<int> secat_hint;
};

inline DdotDescriptor ddot_of(const BundleDescriptor& parent) {
    if (parent.rank() < 2) throw DomainError("ddot bundle needs rank >= 2");
    DdotDescriptor d{parent, std::nullopt, std::nullopt, std::nullopt};
    // i*e is a nowhere-zero field orthogonal to e
    if (parent.has_complex_structure()) d.secat_hint = 0;

    const int q = parent.rank();
    if (q % 2 == 0 || parent.trivial_summands() < 1) return d;
    auto parts = parent.parts();
    auto eps = std::find_if(parts.begin(), parts.end(),
                            [](const BundleDescriptor& p) { return p.is_trivial_line(); });
    if (eps == parts.end()) return d;
    parts.erase(eps);
    if (!std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.orientable(); }))
        return d;
    RingElement e = RingElement::one(parent.base().ring());
    for (const auto& p : parts) e = e * *p.euler();
    const auto two = RingElement::constant(e.ring(), 2);
    d.euler_complement = e;
    d.euler_ddot = LHElement(-e, two, e, q - 1);
    return d;
}

/// Height of the ddot Euler class from the parity rule: h(e) + 1 when h(e) is
/// even and the base has no 2-torsion in degree (q-1)h(e), else h(e).
inline int ddot_euler_height(const DdotDescriptor& d) {
    if (!d.euler_ddot) throw DomainError("ddot Euler class is not modeled for " + d.parent.name());
    const int h = height(*d.euler_complement);
    const int q = d.parent.rank();
    if (h % 2 == 0 && d.parent.base().has_no_two_torsion((q - 1) * h)) return h + 1;
    return h;
}

}  // namespace paramtc
