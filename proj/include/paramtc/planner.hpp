#pragma once

// Parametrized motion planners on the unit sphere bundle of eta + eps over
// CP^n (and on the Hopf bundle, its equator). A point of the total space is a
// line [z] in C^{n+1} together with a unit vector (w, s) in [z] + R.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "paramtc/errors.hpp"

namespace paramtc {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;

struct Tolerances {
    double anti = 1e-8;   // inner product within this of -1 counts as antipodal
    double cell = 1e-10;  // coordinates at or below this count as zero
};

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kFiberTolerance = 1e-9;

/// Unit representative z of a point [z] of CP^n.
class ProjectiveRep {
public:
    explicit ProjectiveRep(CVector z) : z_(std::move(z)) {
        if (z_.size() < 1) throw DomainError("projective representative needs at least one coordinate");
        if (std::abs(z_.norm() - 1.0) > kNormTolerance)
            throw DomainError("projective representative must be a unit vector (|z| = " +
                              std::to_string(z_.norm()) + ")");
    }

    static ProjectiveRep normalized(const CVector& z) {
        const double n = z.norm();
        if (n == 0.0) throw DegenerateRepresentative("zero vector has no line");
        return ProjectiveRep(z / n);
    }

    const CVector& z() const { return z_; }
    int n() const { return static_cast<int>(z_.size()) - 1; }

    bool same_line(const ProjectiveRep& o, double tol = kFiberTolerance) const {
        return z_.size() == o.z_.size() && std::abs(z_.dot(o.z_)) >= 1.0 - tol;
    }

private:
    CVector z_;
};

/// A vector (w, s) of the fiber [z] + R. Gauge-free: w is an honest vector of C^{n+1}.
struct FiberVector {
    CVector w;
    double s = 0.0;

    double inner(const FiberVector& o) const { return w.dot(o.w).real() + s * o.s; }
    double norm() const { return std::sqrt(w.squaredNorm() + s * s); }
    FiberVector operator-() const { return {-w, -s}; }
    FiberVector operator+(const FiberVector& o) const { return {w + o.w, s + o.s}; }
    FiberVector operator-(const FiberVector& o) const { return {w - o.w, s - o.s}; }
    friend FiberVector operator*(double a, const FiberVector& v) { return {a * v.w, a * v.s}; }
    FiberVector normalized() const { return (1.0 / norm()) * *this; }
    double distance(const FiberVector& o) const { return (*this - o).norm(); }
};

class BundlePoint {
public:
    BundlePoint(ProjectiveRep z, CVector w, double s) : z_(std::move(z)), v_{std::move(w), s} {
        if (v_.w.size() != z_.z().size()) throw DomainError("w and z have different dimensions");
        const CVector& zz = z_.z();
        if ((v_.w - zz * zz.dot(v_.w)).norm() > kFiberTolerance)
            throw DomainError("w must lie in the line [z]");
        if (std::abs(v_.w.squaredNorm() + s * s - 1.0) > kFiberTolerance)
            throw DomainError("|w|^2 + s^2 must be 1");
    }

    /// The point c*z + s for a fiber coordinate c; (c, s) need not be normalized.
    static BundlePoint from_fiber_coordinates(const ProjectiveRep& z, Complex c, double s) {
        const double n = std::sqrt(std::norm(c) + s * s);
        return BundlePoint(z, z.z() * (c / n), s / n);
    }

    /// The section +sigma(b) (sign > 0) or -sigma(b) of the trivial summand.
    static BundlePoint sigma(const ProjectiveRep& z, int sign = 1) {
        return BundlePoint(z, CVector::Zero(z.z().size()), sign >= 0 ? 1.0 : -1.0);
    }

    const ProjectiveRep& base() const { return z_; }
    const CVector& w() const { return v_.w; }
    double s() const { return v_.s; }
    const FiberVector& vec() const { return v_; }
    int n() const { return z_.n(); }

    BundlePoint operator-() const { return BundlePoint(z_, v_.w * -1.0, -v_.s, Unchecked{}); }

    BundlePoint with_base(ProjectiveRep z) const { return BundlePoint(std::move(z), v_.w, v_.s); }

private:
    struct Unchecked {};
    BundlePoint(ProjectiveRep z, CVector w, double s, Unchecked) : z_(std::move(z)), v_{std::move(w), s} {}

    ProjectiveRep z_;
    FiberVector v_;
};

inline void require_same_fiber(const ProjectiveRep& a, const ProjectiveRep& b) {
    if (!a.same_line(b)) throw NotSameFiber("points lie over different base points");
}

/// Scalar product in the fiber, orthogonal sum of the metrics on eta and eps.
inline double fiber_inner(const BundlePoint& x, const BundlePoint& y) {
    require_same_fiber(x.base(), y.base());
    return x.vec().inner(y.vec());
}

/// Index j of the cell e^{2j} containing [z]: the last coordinate above tolerance.
inline int cell_index(const ProjectiveRep& z, double tol_cell = Tolerances{}.cell) {
    for (int j = static_cast<int>(z.z().size()) - 1; j >= 0; --j)
        if (std::abs(z.z()[j]) > tol_cell) return j;
    throw DegenerateRepresentative("every coordinate is below the cell tolerance");
}

/// Unit vector of the line [z] whose j-th coordinate is real and positive;
/// continuous over the cell where z_j != 0.
inline CVector cell_section(const ProjectiveRep& z, int j, double tol_cell = Tolerances{}.cell) {
    if (j < 0 || j >= z.z().size()) throw DomainError("cell index out of range");
    const Complex zj = z.z()[j];
    if (std::abs(zj) <= tol_cell)
        throw DegenerateRepresentative("coordinate " + std::to_string(j) + " vanishes; no cell section");
    return z.z() * (std::conj(zj) / std::abs(zj));
}

/// Partition index: 0 non-antipodal, 1 antipodal off the eps-axis, 2 + j
/// antipodal on the eps-axis over the cell e^{2j}.
inline int classify_pair(const BundlePoint& x, const BundlePoint& y, const Tolerances& tol = {}) {
    const double c = fiber_inner(x, y);
    if (c > -1.0 + tol.anti) return 0;
    if (x.w().norm() > tol.anti) return 1;
    return 2 + cell_index(x.base(), tol.cell);
}

inline FiberVector alpha_deform(const FiberVector& x, double t) {
    if (x.w.norm() == 0.0) throw DomainError("alpha deformation undefined on the eps-axis");
    return FiberVector{x.w, (1.0 - t) * x.s}.normalized();
}

inline BundlePoint alpha_deform(const BundlePoint& x, double t) {
    if (t < 0.0 || t > 1.0) throw DomainError("alpha deformation parameter outside [0, 1]");
    auto v = alpha_deform(x.vec(), t);
    return BundlePoint(x.base(), v.w, v.s);
}

/// Retraction onto the equator s = 0.
inline FiberVector equatorial_projection(const FiberVector& x) { return alpha_deform(x, 1.0); }

// Segments are evaluated at a local parameter u in [0, 1] and move at constant
// speed, so the global time is split in proportion to their lengths.

/// Normalized linear interpolation a -> b, reparametrized by angle.
struct InterpolationSegment {
    FiberVector a, b;
    double angle = 0.0;

    InterpolationSegment(FiberVector from, FiberVector to) : a(std::move(from)), b(std::move(to)) {
        angle = 2.0 * std::atan2((a - b).norm(), (a + b).norm());
    }
    FiberVector at(double u) const {
        if (u <= 0.0) return a;
        if (u >= 1.0) return b;
        double tau = u;
        if (angle > 0.0) {
            const double phi = u * angle;
            tau = std::sin(phi) / (std::sin(phi) + std::sin(angle - phi));
        }
        return ((1.0 - tau) * a + tau * b).normalized();
    }
    double length() const { return angle; }
};

/// e^{i(phase0 + u(phase1 - phase0))} applied to the eta-component of an equatorial point.
struct PhaseRotationSegment {
    FiberVector p;
    double phase0 = 0.0, phase1 = 0.0;

    FiberVector at(double u) const {
        const double phase = phase0 + u * (phase1 - phase0);
        return {p.w * std::polar(1.0, phase), p.s};
    }
    double length() const { return std::abs(phase1 - phase0) * p.w.norm(); }
};

/// The retraction alpha_t(x), t from 0 to 1, traversed at constant angular speed
/// (reversed: from pr(x) back to x).
struct AlphaSegment {
    FiberVector x;
    bool reversed = false;
    double angle = 0.0;  // angle between x and pr(x)

    AlphaSegment(FiberVector point, bool rev) : x(std::move(point)), reversed(rev) {
        angle = std::atan2(std::abs(x.s), x.w.norm());
    }
    FiberVector at(double u) const {
        if (reversed) u = 1.0 - u;
        if (u <= 0.0) return x;
        if (angle == 0.0) return x;
        const double t = u >= 1.0 ? 1.0 : 1.0 - x.w.norm() * std::tan(angle - u * angle) / std::abs(x.s);
        return alpha_deform(x, t);
    }
    double length() const { return angle; }
};

/// cos(pi u) x + sin(pi u) phi with phi a unit vector orthogonal to x.
struct PolarSegment {
    FiberVector x, phi;

    FiberVector at(double u) const {
        if (u <= 0.0) return x;
        if (u >= 1.0) return -x;
        return std::cos(std::numbers::pi * u) * x + std::sin(std::numbers::pi * u) * phi;
    }
    double length() const { return std::numbers::pi; }
};

enum class SegmentKind { Interpolation, PhaseRotation, AlphaDeformation, PolarRotation };

inline const char* to_string(SegmentKind k) {
    switch (k) {
        case SegmentKind::Interpolation: return "interpolation";
        case SegmentKind::PhaseRotation: return "phase-rotation";
        case SegmentKind::AlphaDeformation: return "alpha-deformation";
        case SegmentKind::PolarRotation: return "polar-rotation";
    }
    return "?";
}

struct PathSegment {
    std::variant<InterpolationSegment, PhaseRotationSegment, AlphaSegment, PolarSegment> curve;
    double t0 = 0.0, t1 = 1.0;

    SegmentKind kind() const { return static_cast<SegmentKind>(curve.index()); }
    FiberVector at(double u) const {
        return std::visit([u](const auto& c) { return c.at(u); }, curve);
    }
    double length() const {
        return std::visit([](const auto& c) { return c.length(); }, curve);
    }
};

/// A path in a single fiber, tagged with the partition piece whose section produced it.
class PlannedPath {
public:
    PlannedPath(int piece, BundlePoint start, BundlePoint end, std::vector<PathSegment> segments)
        : piece_(piece), start_(std::move(start)), end_(std::move(end)), segments_(std::move(segments)) {
        double total = 0.0;
        for (const auto& s : segments_) total += s.length();
        double t = 0.0;
        for (std::size_t i = 0; i < segments_.size(); ++i) {
            const double share = total > 0.0 ? segments_[i].length() / total
                                             : 1.0 / static_cast<double>(segments_.size());
            segments_[i].t0 = t;
            t = i + 1 == segments_.size() ? 1.0 : t + share;
            segments_[i].t1 = t;
        }
    }

    int piece() const { return piece_; }
    const BundlePoint& start() const { return start_; }
    const BundlePoint& end() const { return end_; }
    const ProjectiveRep& line() const { return start_.base(); }
    const std::vector<PathSegment>& segments() const { return segments_; }

    double length() const {
        double total = 0.0;
        for (const auto& s : segments_) total += s.length();
        return total;
    }

    FiberVector at(double t) const {
        if (t < 0.0 || t > 1.0) throw DomainError("path parameter outside [0, 1]");
        for (const auto& s : segments_) {
            if (t <= s.t1 || &s == &segments_.back()) {
                const double span = s.t1 - s.t0;
                const double u = span > 0.0 ? (t - s.t0) / span : 0.0;
                return s.at(std::clamp(u, 0.0, 1.0));
            }
        }
        return end_.vec();
    }

    std::vector<FiberVector> sample(int count) const {
        std::vector<FiberVector> out;
        out.reserve(count);
        for (int i = 0; i < count; ++i) out.push_back(at(count == 1 ? 0.0 : double(i) / (count - 1)));
        return out;
    }

private:
    int piece_;
    BundlePoint start_, end_;
    std::vector<PathSegment> segments_;
};

namespace detail {
inline void append_snap(std::vector<PathSegment>& segs, const BundlePoint& x, const BundlePoint& y) {
    const FiberVector minus_x = -x.vec();
    if (minus_x.distance(y.vec()) > 1e-12)
        segs.push_back({InterpolationSegment(minus_x, y.vec()), 0, 0});
}
}  // namespace detail

/// Planner on the Hopf bundle S^{2n+1} -> CP^n: rotate z by the phase of z'/z.
/// Points are carried as equatorial bundle points (w = z, s = 0).
inline PlannedPath plan_hopf(const CVector& z, const CVector& z_end, const Tolerances& tol = {}) {
    if (z.size() != z_end.size()) throw NotSameFiber("vectors of different dimension");
    const ProjectiveRep line(z);
    ProjectiveRep line_end(z_end);
    const Complex lambda = z.dot(z_end);
    if ((z_end - lambda * z).norm() > kFiberTolerance)
        throw NotSameFiber("z' is not a unit multiple of z");
    int piece = 0;
    double phi = std::arg(lambda);
    if (lambda.real() <= -1.0 + tol.anti) {
        piece = 1;
        if (phi < 0.0) phi += 2.0 * std::numbers::pi;  // ~pi, continuous across the negative axis
    }
    BundlePoint a(line, z, 0.0);
    BundlePoint b(line, z_end, 0.0);
    std::vector<PathSegment> segs{{PhaseRotationSegment{a.vec(), 0.0, phi}, 0, 0}};
    return PlannedPath(piece, std::move(a), std::move(b), std::move(segs));
}

/// The (n+3)-piece planner for the unit sphere bundle of eta + eps over CP^n.
inline PlannedPath plan(const BundlePoint& x, const BundlePoint& y, const Tolerances& tol = {}) {
    const int piece = classify_pair(x, y, tol);
    std::vector<PathSegment> segs;
    if (piece == 0) {
        segs.push_back({InterpolationSegment(x.vec(), y.vec()), 0, 0});
    } else if (piece == 1) {
        const FiberVector minus_x = -x.vec();
        segs.push_back({AlphaSegment(x.vec(), false), 0, 0});
        segs.push_back({PhaseRotationSegment{equatorial_projection(x.vec()), 0.0, std::numbers::pi}, 0, 0});
        segs.push_back({AlphaSegment(minus_x, true), 0, 0});
        detail::append_snap(segs, x, y);
    } else {
        FiberVector phi{cell_section(x.base(), piece - 2, tol.cell), 0.0};
        // x may sit a hair off the eps-axis; keep phi exactly orthogonal to it
        phi = (phi - phi.inner(x.vec()) * x.vec()).normalized();
        segs.push_back({PolarSegment{x.vec(), phi}, 0, 0});
        detail::append_snap(segs, x, y);
    }
    return PlannedPath(piece, x, y, std::move(segs));
}

}  // namespace paramtc
