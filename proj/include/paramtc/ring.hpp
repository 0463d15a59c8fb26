#pragma once

// Exact arithmetic in truncated graded rings Z[x_1..x_k]/(x_i^{t_i}) or their
// mod-2 counterparts, plus the rank-2 Leray-Hirsch module {1, U} over such a
// ring with U^2 = e * U.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "paramtc/errors.hpp"

namespace paramtc {

using Integer = boost::multiprecision::cpp_int;

enum class Coefficients { Integer, ModTwo };

inline const char* to_string(Coefficients c) {
    return c == Coefficients::Integer ? "Z" : "Z/2";
}

struct Generator {
    std::string name;
    int degree = 2;
    int truncation = 1;  // smallest vanishing power

    bool operator==(const Generator&) const = default;
};

class RingDescriptor {
public:
    RingDescriptor() = default;

    RingDescriptor(std::vector<Generator> generators, Coefficients coefficients)
        : generators_(std::move(generators)), coefficients_(coefficients) {
        for (const auto& g : generators_) {
            if (g.degree < 1) throw DomainError("generator " + g.name + ": degree must be >= 1");
            if (g.truncation < 1) throw DomainError("generator " + g.name + ": truncation must be >= 1");
            if (coefficients_ == Coefficients::Integer && g.degree % 2 != 0)
                throw DomainError("generator " + g.name +
                                  ": integer-coefficient rings need even-degree generators");
        }
    }

    /// H*(CP^n) = Z[x]/(x^{n+1}) with deg x = 2, or its mod-2 reduction.
    static RingDescriptor projective_space(int n, Coefficients c = Coefficients::Integer) {
        if (n < 0) throw DomainError("CP^n needs n >= 0");
        if (n == 0) return RingDescriptor({}, c);
        return RingDescriptor({Generator{"x", 2, n + 1}}, c);
    }

    const std::vector<Generator>& generators() const { return generators_; }
    Coefficients coefficients() const { return coefficients_; }
    std::size_t size() const { return generators_.size(); }

    /// Degree of the top monomial prod x_i^{t_i - 1}.
    int top_degree() const {
        int d = 0;
        for (const auto& g : generators_) d += g.degree * (g.truncation - 1);
        return d;
    }

    RingDescriptor with_coefficients(Coefficients c) const {
        RingDescriptor r;
        r.generators_ = generators_;
        r.coefficients_ = c;
        return r;
    }

    std::optional<std::size_t> index_of(const std::string& name) const {
        for (std::size_t i = 0; i < generators_.size(); ++i)
            if (generators_[i].name == name) return i;
        return std::nullopt;
    }

    bool operator==(const RingDescriptor&) const = default;

private:
    std::vector<Generator> generators_;
    Coefficients coefficients_ = Coefficients::Integer;
};

using Exponents = std::vector<int>;

/// A cohomology class, stored sparsely in canonical form (no zero
/// coefficients, no truncated monomials, mod-2 coefficients equal to 1).
class RingElement {
public:
    using Terms = std::map<Exponents, Integer>;

    RingElement() = default;
    explicit RingElement(RingDescriptor ring) : ring_(std::move(ring)) {}

    RingElement(RingDescriptor ring, Terms terms) : ring_(std::move(ring)) {
        for (auto& [e, c] : terms) add_term(e, std::move(c));
    }

    static RingElement zero(const RingDescriptor& ring) { return RingElement(ring); }

    static RingElement constant(const RingDescriptor& ring, Integer c) {
        RingElement r(ring);
        r.add_term(Exponents(ring.size(), 0), std::move(c));
        return r;
    }

    static RingElement one(const RingDescriptor& ring) { return constant(ring, 1); }

    static RingElement monomial(const RingDescriptor& ring, Exponents e, Integer c = 1) {
        if (e.size() != ring.size()) throw DomainError("exponent vector has wrong length");
        for (int v : e)
            if (v < 0) throw DomainError("negative exponent");
        RingElement r(ring);
        r.add_term(e, std::move(c));
        return r;
    }

    /// The i-th generator raised to `power`, times `c`.
    static RingElement generator(const RingDescriptor& ring, std::size_t i, int power = 1,
                                 Integer c = 1) {
        if (i >= ring.size()) throw DomainError("generator index out of range");
        Exponents e(ring.size(), 0);
        e[i] = power;
        return monomial(ring, std::move(e), std::move(c));
    }

    const RingDescriptor& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int monomial_degree(const Exponents& e) const {
        int d = 0;
        for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * ring_.generators()[i].degree;
        return d;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        const int d = monomial_degree(terms_.begin()->first);
        return std::all_of(terms_.begin(), terms_.end(),
                           [&](const auto& t) { return monomial_degree(t.first) == d; });
    }

    /// Degree of a homogeneous element; nullopt for zero.
    std::optional<int> degree() const {
        if (terms_.empty()) return std::nullopt;
        if (!is_homogeneous()) throw HomogeneityError("degree of a non-homogeneous class: " + str());
        return monomial_degree(terms_.begin()->first);
    }

    RingElement homogeneous_part(int d) const {
        RingElement r(ring_);
        for (const auto& [e, c] : terms_)
            if (monomial_degree(e) == d) r.terms_.emplace(e, c);
        return r;
    }

    Integer coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Integer(0) : it->second;
    }

    RingElement operator-() const {
        RingElement r(ring_);
        for (const auto& [e, c] : terms_) r.add_term(e, -c);
        return r;
    }

    RingElement& operator+=(const RingElement& o) {
        require_same_ring(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    RingElement& operator-=(const RingElement& o) { return *this += -o; }

    friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
    friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }

    friend RingElement operator*(const Integer& k, const RingElement& a) {
        RingElement r(a.ring_);
        for (const auto& [e, c] : a.terms_) r.add_term(e, k * c);
        return r;
    }

    friend RingElement operator*(const RingElement& a, const RingElement& b) {
        a.require_same_ring(b);
        RingElement r(a.ring_);
        const auto& gens = a.ring_.generators();
        Exponents e(gens.size());
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                bool vanishes = false;
                for (std::size_t i = 0; i < gens.size(); ++i) {
                    e[i] = ea[i] + eb[i];
                    if (e[i] >= gens[i].truncation) {
                        vanishes = true;
                        break;
                    }
                }
                if (!vanishes) r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    bool operator==(const RingElement& o) const { return ring_ == o.ring_ && terms_ == o.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        // highest degree first reads more naturally
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            Integer mag = c < 0 ? Integer(-c) : c;
            if (first)
                out << (c < 0 ? "-" : "");
            else
                out << (c < 0 ? " - " : " + ");
            first = false;
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += ring_.generators()[i].name;
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            if (mono.empty())
                out << mag;
            else if (mag == 1)
                out << mono;
            else
                out << mag << "*" << mono;
        }
        return out.str();
    }

    void require_same_ring(const RingElement& o) const {
        if (!(ring_ == o.ring_)) throw DescriptorMismatch("ring elements over different rings");
    }

private:
    void add_term(const Exponents& e, Integer c) {
        const auto& gens = ring_.generators();
        if (e.size() != gens.size()) throw DomainError("exponent vector has wrong length");
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] >= gens[i].truncation) return;
        auto [it, inserted] = terms_.try_emplace(e, 0);
        it->second += c;
        if (ring_.coefficients() == Coefficients::ModTwo) {
            Integer r = it->second % 2;
            it->second = r < 0 ? Integer(-r) : r;
        }
        if (it->second == 0) terms_.erase(it);
    }

    RingDescriptor ring_;
    Terms terms_;
};

inline RingElement cup(const RingElement& a, const RingElement& b) { return a * b; }

inline RingElement power(const RingElement& a, long long k) {
    if (k < 0) throw DomainError("negative exponent in power");
    RingElement result = RingElement::one(a.ring());
    RingElement base = a;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k == 0) break;
        base = base * base;
        // some remaining bit is set, so the zero square is still a factor
        if (base.is_zero()) return RingElement::zero(a.ring());
    }
    return result;
}

/// Largest k with a^k != 0; zero for the zero class.
inline int height(const RingElement& a) {
    if (a.is_zero()) return 0;
    if (!a.is_homogeneous()) throw HomogeneityError("height of a non-homogeneous class: " + a.str());
    const int d = *a.degree();
    if (d == 0) throw DomainError("height of a nonzero degree-0 class is unbounded");
    int k = 1;
    RingElement p = a;
    while (true) {
        RingElement next = p * a;
        if (next.is_zero()) return k;
        p = std::move(next);
        ++k;
    }
}

inline RingElement mod2_reduce(const RingElement& a) {
    if (a.ring().coefficients() == Coefficients::ModTwo)
        throw DomainError("mod2_reduce: class already has mod-2 coefficients");
    return RingElement(a.ring().with_coefficients(Coefficients::ModTwo), a.terms());
}

/// Element a + b*U of the Leray-Hirsch module H*(B){1, U} with
/// U^2 = euler_eta * U and deg U = u_degree.
class LHElement {
public:
    LHElement(RingElement base, RingElement fiber, RingElement euler_eta, int u_degree)
        : base_(std::move(base)), fiber_(std::move(fiber)), euler_eta_(std::move(euler_eta)),
          u_degree_(u_degree) {
        base_.require_same_ring(fiber_);
        base_.require_same_ring(euler_eta_);
        if (u_degree_ < 1) throw DomainError("degree of U must be >= 1");
        if (!euler_eta_.is_homogeneous())
            throw HomogeneityError("euler class of the module must be homogeneous");
        if (auto d = euler_eta_.degree(); d && *d != u_degree_)
            throw DomainError("euler class degree " + std::to_string(*d) +
                              " differs from deg U = " + std::to_string(u_degree_));
    }

    /// The class U itself.
    static LHElement fundamental(const RingElement& euler_eta, int u_degree) {
        const auto& r = euler_eta.ring();
        return {RingElement::zero(r), RingElement::one(r), euler_eta, u_degree};
    }

    /// A pulled-back base class a + 0*U.
    static LHElement from_base(const RingElement& a, const RingElement& euler_eta, int u_degree) {
        return {a, RingElement::zero(a.ring()), euler_eta, u_degree};
    }

    const RingElement& base() const { return base_; }
    const RingElement& fiber() const { return fiber_; }
    const RingElement& euler_eta() const { return euler_eta_; }
    int u_degree() const { return u_degree_; }
    bool is_zero() const { return base_.is_zero() && fiber_.is_zero(); }

    bool is_homogeneous() const {
        if (!base_.is_homogeneous() || !fiber_.is_homogeneous()) return false;
        auto db = base_.degree();
        auto df = fiber_.degree();
        return !db || !df || *db == *df + u_degree_;
    }

    /// Total degree; nullopt for zero.
    std::optional<int> degree() const {
        if (!is_homogeneous()) throw HomogeneityError("non-homogeneous module element: " + str());
        if (auto db = base_.degree()) return db;
        if (auto df = fiber_.degree()) return *df + u_degree_;
        return std::nullopt;
    }

    void require_compatible(const LHElement& o) const {
        if (!(base_.ring() == o.base_.ring()) || !(euler_eta_ == o.euler_eta_) ||
            u_degree_ != o.u_degree_)
            throw DescriptorMismatch("Leray-Hirsch elements over different modules");
    }

    friend LHElement operator+(const LHElement& p, const LHElement& q) {
        p.require_compatible(q);
        return {p.base_ + q.base_, p.fiber_ + q.fiber_, p.euler_eta_, p.u_degree_};
    }
    friend LHElement operator-(const LHElement& p, const LHElement& q) {
        p.require_compatible(q);
        return {p.base_ - q.base_, p.fiber_ - q.fiber_, p.euler_eta_, p.u_degree_};
    }

    // (a + bU)(a' + b'U) = aa' + (ab' + a'b + bb'e)U
    friend LHElement operator*(const LHElement& p, const LHElement& q) {
        p.require_compatible(q);
        return {p.base_ * q.base_, p.base_ * q.fiber_ + q.base_ * p.fiber_ + p.fiber_ * q.fiber_ * p.euler_eta_,
                p.euler_eta_, p.u_degree_};
    }

    bool operator==(const LHElement& o) const {
        return base_ == o.base_ && fiber_ == o.fiber_ && euler_eta_ == o.euler_eta_ &&
               u_degree_ == o.u_degree_;
    }

    std::string str() const {
        return "(" + base_.str() + ") + (" + fiber_.str() + ")*U";
    }

private:
    RingElement base_;
    RingElement fiber_;
    RingElement euler_eta_;
    int u_degree_;
};

inline LHElement lh_multiply(const LHElement& p, const LHElement& q) { return p * q; }

inline LHElement lh_power(const LHElement& p, int k) {
    if (k < 0) throw DomainError("negative exponent in lh_power");
    LHElement r = LHElement::from_base(RingElement::one(p.base().ring()), p.euler_eta(), p.u_degree());
    for (int i = 0; i < k && !r.is_zero(); ++i) r = r * p;
    return r;
}

inline int lh_height(const LHElement& p) {
    if (p.is_zero()) return 0;
    const int d = *p.degree();
    if (d == 0) throw DomainError("height of a nonzero degree-0 class is unbounded");
    int k = 1;
    LHElement cur = p;
    while (true) {
        LHElement next = cur * p;
        if (next.is_zero()) return k;
        cur = std::move(next);
        ++k;
    }
}

}  // namespace paramtc
