#pragma once

// Poincare-disk geometry: points, distances, (anti-)Moebius isometries,
// geodesic segments and lines, hyperbolic circles and triangles.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "hsteklov/error.hpp"

namespace hsteklov {

using Complex = std::complex<double>;

/// Two points closer than this (hyperbolic distance) are the same point.
inline constexpr double kPointTolerance = 1e-9;
/// Points with Euclidean radius at or beyond this are rejected.
inline constexpr double kDiskLimit = 1.0 - 1e-12;

class DiskPoint {
public:
    constexpr DiskPoint() = default;

    DiskPoint(double x, double y) : x_(x), y_(y)
    {
        if (!(x * x + y * y < kDiskLimit * kDiskLimit)) {
            std::ostringstream os;
            os << "point (" << x << ", " << y << ") is not inside the open unit disk";
            throw Error(ErrorKind::Geometry, os.str());
        }
    }

    explicit DiskPoint(Complex z) : DiskPoint(z.real(), z.imag()) {}

    double x() const noexcept { return x_; }
    double y() const noexcept { return y_; }
    Complex z() const noexcept { return {x_, y_}; }
    double norm2() const noexcept { return x_ * x_ + y_ * y_; }

private:
    double x_ = 0.0;
    double y_ = 0.0;
};

inline double hypDistance(const DiskPoint& p, const DiskPoint& q)
{
    const Complex a = p.z();
    const Complex b = q.z();
    const double num = std::abs(a - b);
    if (num == 0.0)
        return 0.0;
    const double den = std::abs(1.0 - std::conj(a) * b);
    return 2.0 * std::atanh(std::min(num / den, 1.0 - 1e-16));
}

inline bool samePoint(const DiskPoint& p, const DiskPoint& q, double tol = kPointTolerance)
{
    return hypDistance(p, q) < tol;
}

/// Euclidean radius of the point at hyperbolic distance `d` from the origin.
inline double radiusAtDistance(double d) { return std::tanh(0.5 * d); }

/// z -> (a z + b) / (conj(b) z + conj(a)), applied to conj(z) first when
/// `reversing()` is set. Stored normalized so that |a|^2 - |b|^2 = 1.
class HypIsometry {
public:
    HypIsometry() = default;

    HypIsometry(Complex a, Complex b, bool conj) : a_(a), b_(b), conj_(conj) { normalize(); }

    static HypIsometry identity() { return {}; }

    /// Rotation about the origin by `theta` radians.
    static HypIsometry rotation(double theta)
    {
        return {std::polar(1.0, 0.5 * theta), Complex(0.0), false};
    }

    /// The hyperbolic translation taking `p` to the origin.
    static HypIsometry toOrigin(const DiskPoint& p)
    {
        return {Complex(1.0), -p.z(), false};
    }

    /// Reflection across the diameter making angle `theta` with the x-axis.
    static HypIsometry diameterReflection(double theta)
    {
        return {std::polar(1.0, theta), Complex(0.0), true};
    }

    /// Reflection across the geodesic through `p` and `q`.
    static HypIsometry reflection(const DiskPoint& p, const DiskPoint& q)
    {
        if (samePoint(p, q))
            throw Error(ErrorKind::Geometry, "degenerate mirror");
        const HypIsometry t = toOrigin(p);
        const Complex w = t.apply(q.z());
        return t.inverse() * diameterReflection(std::arg(w)) * t;
    }

    Complex a() const noexcept { return a_; }
    Complex b() const noexcept { return b_; }
    bool reversing() const noexcept { return conj_; }

    Complex apply(Complex z) const
    {
        if (conj_)
            z = std::conj(z);
        return (a_ * z + b_) / (std::conj(b_) * z + std::conj(a_));
    }

    DiskPoint operator()(const DiskPoint& p) const { return DiskPoint(apply(p.z())); }

    /// Composition: (f * g)(z) = f(g(z)).
    friend HypIsometry operator*(const HypIsometry& f, const HypIsometry& g)
    {
        const Complex a2 = f.conj_ ? std::conj(g.a_) : g.a_;
        const Complex b2 = f.conj_ ? std::conj(g.b_) : g.b_;
        const Complex a = f.a_ * a2 + f.b_ * std::conj(b2);
        const Complex b = f.a_ * b2 + f.b_ * std::conj(a2);
        return {a, b, f.conj_ != g.conj_};
    }

    HypIsometry inverse() const
    {
        // Inverse of the matrix [[a, b], [conj b, conj a]] with unit determinant.
        Complex a = std::conj(a_);
        Complex b = -b_;
        if (conj_) {
            a = std::conj(a);
            b = std::conj(b);
        }
        return {a, b, conj_};
    }

private:
    void normalize()
    {
        const double det = std::norm(a_) - std::norm(b_);
        if (!(det > 0.0))
            throw Error(ErrorKind::Geometry, "isometry parameters do not preserve the disk");
        const double s = 1.0 / std::sqrt(det);
        a_ *= s;
        b_ *= s;
    }

    Complex a_{1.0, 0.0};
    Complex b_{0.0, 0.0};
    bool conj_ = false;
};

/// Euclidean unit direction of the geodesic from `p` towards `q`, seen in the
/// frame where `p` sits at the origin.
inline double directionAngle(const DiskPoint& p, const DiskPoint& q)
{
    return std::arg(HypIsometry::toOrigin(p).apply(q.z()));
}

/// Point at hyperbolic distance `d` from `p` leaving in direction `angle`
/// (angle measured in the frame where `p` is the origin).
inline DiskPoint pointAtDistance(const DiskPoint& p, double angle, double d)
{
    const Complex local = std::polar(radiusAtDistance(d), angle);
    return DiskPoint(HypIsometry::toOrigin(p).inverse().apply(local));
}

struct GeodesicSegment {
    DiskPoint p;
    DiskPoint q;

    double length() const { return hypDistance(p, q); }
};

/// Point r on [p, q] with d(p, r) = t * d(p, q).
inline DiskPoint pointAlongSegment(const GeodesicSegment& seg, double t)
{
    if (t < 0.0 || t > 1.0)
        throw Error(ErrorKind::InvalidArgument, "segment fraction outside [0, 1]");
    const double len = seg.length();
    if (len < kPointTolerance || t == 0.0)
        return seg.p;
    if (t == 1.0)
        return seg.q;
    return pointAtDistance(seg.p, directionAngle(seg.p, seg.q), t * len);
}

inline DiskPoint reflectAcross(const GeodesicSegment& mirror, const DiskPoint& p)
{
    return HypIsometry::reflection(mirror.p, mirror.q)(p);
}

/// Full geodesic through two points, as the zero set of
///   A (|z|^2 + 1) + B x + C y.
/// A == 0 for diameters; otherwise a circle orthogonal to the unit circle.
class GeodesicLine {
public:
    GeodesicLine(const DiskPoint& p, const DiskPoint& q)
    {
        if (samePoint(p, q))
            throw Error(ErrorKind::Geometry, "degenerate mirror");
        const double sp = p.norm2() + 1.0;
        const double sq = q.norm2() + 1.0;
        a_ = p.x() * q.y() - p.y() * q.x();
        b_ = -(sp * q.y() - p.y() * sq);
        c_ = sp * q.x() - p.x() * sq;
        const double scale = std::hypot(a_, b_, c_);
        a_ /= scale;
        b_ /= scale;
        c_ /= scale;
    }

    /// Signed side indicator; zero on the line, opposite signs on the two
    /// half-planes.
    double side(const DiskPoint& z) const { return side(z.z()); }
    double side(Complex z) const { return a_ * (std::norm(z) + 1.0) + b_ * z.real() + c_ * z.imag(); }

    bool isDiameter() const { return std::abs(a_) < 1e-14; }

    /// Euclidean circle carrying the geodesic (only when !isDiameter()).
    Complex circleCenter() const { return {-b_ / (2.0 * a_), -c_ / (2.0 * a_)}; }
    double circleRadius() const { return std::sqrt(std::max(0.0, std::norm(circleCenter()) - 1.0)); }

private:
    double a_ = 0.0;
    double b_ = 0.0;
    double c_ = 0.0;
};

/// Hyperbolic distance from `z` to the complete geodesic through `p` and `q`.
inline double distanceToLine(const DiskPoint& z, const DiskPoint& p, const DiskPoint& q)
{
    const HypIsometry t = HypIsometry::toOrigin(p);
    const Complex w = t.apply(q.z());
    const Complex local = t.apply(z.z()) * std::polar(1.0, -std::arg(w));
    // Line is now the real diameter; the foot of the perpendicular from `local`
    // is where the geodesic to its mirror image crosses the axis.
    const double dist = hypDistance(DiskPoint(local), DiskPoint(std::conj(local)));
    return 0.5 * dist;
}

/// Hyperbolic distance from `z` to the segment [p, q].
inline double distanceToSegment(const DiskPoint& z, const GeodesicSegment& seg)
{
    const double len = seg.length();
    if (len < kPointTolerance)
        return hypDistance(z, seg.p);
    const HypIsometry t = HypIsometry::toOrigin(seg.p);
    const Complex w = t.apply(seg.q.z());
    const Complex local = t.apply(z.z()) * std::polar(1.0, -std::arg(w));
    // Foot of the perpendicular: midpoint of local and its mirror, on the axis.
    const DiskPoint a(local);
    const DiskPoint b(std::conj(local));
    const DiskPoint foot = pointAlongSegment({a, b}, 0.5);
    const double along = std::copysign(hypDistance(DiskPoint(), DiskPoint(foot.x(), 0.0)), foot.x());
    if (along >= 0.0 && along <= len)
        return 0.5 * hypDistance(a, b);
    return std::min(hypDistance(z, seg.p), hypDistance(z, seg.q));
}

struct HypCircle {
    DiskPoint center;
    double radius = 0.0;

    /// Euclidean center and radius of the same curve in the disk model.
    std::pair<Complex, double> euclidean() const
    {
        const HypIsometry back = HypIsometry::toOrigin(center).inverse();
        const double r = radiusAtDistance(radius);
        const Complex z1 = back.apply(Complex(r, 0.0));
        const Complex z2 = back.apply(Complex(-r, 0.0));
        const Complex z3 = back.apply(Complex(0.0, r));
        // Circumcircle of three points.
        const double ax = z1.real(), ay = z1.imag();
        const double bx = z2.real(), by = z2.imag();
        const double cx = z3.real(), cy = z3.imag();
        const double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
        const double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
        const Complex c((a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d,
                        (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d);
        return {c, std::abs(z1 - c)};
    }
};

inline double circlePerimeter(const HypCircle& c)
{
    if (c.radius < 0.0)
        throw Error(ErrorKind::InvalidArgument, "negative circle radius");
    return 2.0 * std::numbers::pi * std::sinh(c.radius);
}

/// Interior angle at `v` of the geodesic corner u - v - w.
inline double cornerAngle(const DiskPoint& u, const DiskPoint& v, const DiskPoint& w)
{
    double a = std::abs(directionAngle(v, u) - directionAngle(v, w));
    if (a > std::numbers::pi)
        a = 2.0 * std::numbers::pi - a;
    return a;
}

struct HypTriangle {
    std::array<DiskPoint, 3> vertices;
    std::array<double, 3> angles{};

    static HypTriangle fromVertices(const DiskPoint& a, const DiskPoint& b, const DiskPoint& c)
    {
        HypTriangle t;
        t.vertices = {a, b, c};
        for (int i = 0; i < 3; ++i)
            t.angles[i] = cornerAngle(t.vertices[(i + 1) % 3], t.vertices[i], t.vertices[(i + 2) % 3]);
        return t;
    }

    /// Length of the side opposite vertex i.
    double side(int i) const { return hypDistance(vertices[(i + 1) % 3], vertices[(i + 2) % 3]); }

    double area() const { return std::numbers::pi - (angles[0] + angles[1] + angles[2]); }

    GeodesicSegment sideSegment(int i) const { return {vertices[(i + 1) % 3], vertices[(i + 2) % 3]}; }

    /// Closed containment with a small tolerance on the side tests.
    bool contains(const DiskPoint& z, double tol = 1e-12) const
    {
        for (int i = 0; i < 3; ++i) {
            const GeodesicLine line(vertices[(i + 1) % 3], vertices[(i + 2) % 3]);
            if (line.side(z) * line.side(vertices[i]) < -tol)
                return false;
        }
        return true;
    }

    HypTriangle mapped(const HypIsometry& f) const
    {
        HypTriangle t;
        t.angles = angles;
        for (int i = 0; i < 3; ++i)
            t.vertices[i] = f(vertices[i]);
        return t;
    }
};

inline bool isHyperbolicTriple(int p, int q, int r)
{
    return p >= 2 && q >= 2 && r >= 2 && (q * r + p * r + p * q) < p * q * r;
}

/// Triangle with angles pi/p, pi/q, pi/r at A1, A2, A3, with A1 at the origin,
/// A2 on the positive x-axis and A3 in the upper half (counter-clockwise).
inline HypTriangle triangleFromAngles(int p, int q, int r)
{
    if (p < 2 || q < 2 || r < 2)
        throw Error(ErrorKind::InvalidArgument, "triangle-group parameters must be >= 2");
    if (!isHyperbolicTriple(p, q, r))
        throw Error(ErrorKind::InvalidArgument, "not hyperbolic");
    const double pi = std::numbers::pi;
    const double alpha = pi / p, beta = pi / q, gamma = pi / r;
    // Law of cosines for angles.
    const double c = std::acosh((std::cos(gamma) + std::cos(alpha) * std::cos(beta)) /
                                (std::sin(alpha) * std::sin(beta)));
    const double b = std::acosh((std::cos(beta) + std::cos(alpha) * std::cos(gamma)) /
                                (std::sin(alpha) * std::sin(gamma)));
    HypTriangle t;
    t.vertices = {DiskPoint(), DiskPoint(radiusAtDistance(c), 0.0),
                  DiskPoint(std::polar(radiusAtDistance(b), alpha))};
    t.angles = {alpha, beta, gamma};
    return t;
}

struct Incircle {
    DiskPoint center;
    double radius = 0.0;
};

inline Incircle incenterAndInradius(const HypTriangle& t)
{
    const double a = t.side(0), b = t.side(1), c = t.side(2);
    if (a < kPointTolerance || b < kPointTolerance || c < kPointTolerance)
        throw Error(ErrorKind::Geometry, "degenerate triangle");
    const double alpha = cornerAngle(t.vertices[1], t.vertices[0], t.vertices[2]);
    if (alpha < 1e-12 || t.area() <= 0.0)
        throw Error(ErrorKind::Geometry, "degenerate triangle");
    // Tangent length from A1 is s - a; right triangle A1, foot, incenter.
    const double tangent = 0.5 * (a + b + c) - a;
    const double radius = std::atanh(std::sinh(tangent) * std::tan(0.5 * alpha));
    const double reach = std::acosh(std::cosh(tangent) * std::cosh(radius));
    const double d1 = directionAngle(t.vertices[0], t.vertices[1]);
    const double d2 = directionAngle(t.vertices[0], t.vertices[2]);
    // Bisector direction: halfway along the short way from d1 to d2.
    double delta = std::remainder(d2 - d1, 2.0 * std::numbers::pi);
    const double bisector = d1 + 0.5 * delta;
    return {pointAtDistance(t.vertices[0], bisector, reach), radius};
}

} // namespace hsteklov
