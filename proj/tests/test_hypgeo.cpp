#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hsteklov/hypgeo.hpp"
#include "oracles.hpp"

using namespace hsteklov;

namespace {

constexpr double kPi = std::numbers::pi;

DiskPoint randomPoint(std::mt19937_64& rng, double maxRadius = 0.95)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    return DiskPoint(std::polar(maxRadius * std::sqrt(u(rng)), 2.0 * kPi * u(rng)));
}

HypIsometry randomIsometry(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const HypIsometry move = HypIsometry::toOrigin(randomPoint(rng, 0.9));
    const HypIsometry turn = HypIsometry::rotation(2.0 * kPi * u(rng));
    HypIsometry f = turn * move;
    if (u(rng) < 0.5)
        f = HypIsometry::diameterReflection(2.0 * kPi * u(rng)) * f;
    return f;
}

} // namespace

TEST(DiskPoint, RejectsPointsOutsideTheDisk)
{
    EXPECT_THROW(DiskPoint(1.0, 0.0), Error);
    EXPECT_THROW(DiskPoint(0.8, 0.8), Error);
    EXPECT_NO_THROW(DiskPoint(0.7, 0.7));
}

TEST(HypDistance, IdentityIsZero)
{
    EXPECT_EQ(hypDistance(DiskPoint(), DiskPoint()), 0.0);
}

TEST(HypDistance, RadialValuesMatchMetricIntegral)
{
    for (double r : {0.1, 0.5, 0.9}) {
        const double d = hypDistance(DiskPoint(), DiskPoint(r, 0.0));
        EXPECT_NEAR(d, reference::radialDistance(r), 1e-9) << "r = " << r;
    }
    EXPECT_NEAR(hypDistance(DiskPoint(), DiskPoint(0.5, 0.0)), std::log(3.0), 1e-12);
    EXPECT_NEAR(hypDistance(DiskPoint(), DiskPoint(0.1, 0.0)), 0.2006707, 1e-7);
}

TEST(HypDistance, SymmetricAndTriangleInequality)
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        const DiskPoint a = randomPoint(rng), b = randomPoint(rng), c = randomPoint(rng);
        EXPECT_NEAR(hypDistance(a, b), hypDistance(b, a), 1e-12);
        EXPECT_LE(hypDistance(a, c), hypDistance(a, b) + hypDistance(b, c) + 1e-9);
    }
}

TEST(PointAlongSegment, EndpointsAndMidpoint)
{
    const GeodesicSegment seg{DiskPoint(), DiskPoint(0.5, 0.0)};
    EXPECT_TRUE(samePoint(pointAlongSegment(seg, 0.0), seg.p));
    EXPECT_TRUE(samePoint(pointAlongSegment(seg, 1.0), seg.q));
    const DiskPoint mid = pointAlongSegment(seg, 0.5);
    EXPECT_NEAR(mid.x(), std::tanh(std::log(3.0) / 4.0), 1e-12);
    EXPECT_NEAR(mid.x(), 0.2679, 1e-4);
    EXPECT_NEAR(mid.y(), 0.0, 1e-15);
    EXPECT_THROW(pointAlongSegment(seg, 1.5), Error);
}

TEST(PointAlongSegment, DistanceAgreesWithArcLengthQuadrature)
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        const GeodesicSegment seg{randomPoint(rng, 0.8), randomPoint(rng, 0.8)};
        const double quad =
            reference::metricLength([&](double t) { return pointAlongSegment(seg, t).z(); }, 20000);
        EXPECT_NEAR(quad, hypDistance(seg.p, seg.q), 1e-7);
    }
}

TEST(PointAlongSegment, FractionIsProportionalToDistance)
{
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const GeodesicSegment seg{randomPoint(rng), randomPoint(rng)};
        for (double t : {0.1, 0.37, 0.8})
            EXPECT_NEAR(hypDistance(seg.p, pointAlongSegment(seg, t)), t * seg.length(), 1e-9);
    }
}

TEST(Reflection, MirrorAxisAndInvolution)
{
    const GeodesicSegment xAxis{DiskPoint(-0.5, 0.0), DiskPoint(0.5, 0.0)};
    const DiskPoint img = reflectAcross(xAxis, DiskPoint(0.0, 0.3));
    EXPECT_NEAR(img.x(), 0.0, 1e-14);
    EXPECT_NEAR(img.y(), -0.3, 1e-14);

    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        const GeodesicSegment m{randomPoint(rng, 0.8), randomPoint(rng, 0.8)};
        const DiskPoint z = randomPoint(rng, 0.8);
        EXPECT_LT(hypDistance(reflectAcross(m, reflectAcross(m, z)), z), 1e-9);
        EXPECT_LT(hypDistance(reflectAcross(m, m.p), m.p), 1e-9);
        const DiskPoint onMirror = pointAlongSegment(m, 0.3);
        EXPECT_LT(hypDistance(reflectAcross(m, onMirror), onMirror), 1e-9);
        const DiskPoint ref = reflectAcross(m, z);
        const std::complex<double> oracleImage = reference::reflect(m.p.z(), m.q.z(), z.z());
        EXPECT_LT(std::abs(ref.z() - oracleImage), 1e-9);
    }
    EXPECT_THROW(reflectAcross({DiskPoint(0.2, 0.1), DiskPoint(0.2, 0.1)}, DiskPoint()), Error);
}

TEST(HypIsometry, PreservesDistanceOnRandomSamples)
{
    std::mt19937_64 rng(2024);
    int checked = 0;
    for (int i = 0; i < 1200; ++i) {
        const HypIsometry f = randomIsometry(rng);
        const DiskPoint a = randomPoint(rng, 0.9), b = randomPoint(rng, 0.9);
        const DiskPoint fa = f(a), fb = f(b);
        if (std::abs(fa.z()) > 0.999 || std::abs(fb.z()) > 0.999)
            continue;
        EXPECT_LT(std::abs(hypDistance(fa, fb) - hypDistance(a, b)), 1e-9);
        ++checked;
    }
    EXPECT_GE(checked, 1000);
}

TEST(HypIsometry, CompositionInverseAndNormalization)
{
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) {
        const HypIsometry f = randomIsometry(rng), g = randomIsometry(rng), h = randomIsometry(rng);
        EXPECT_NEAR(std::norm(f.a()) - std::norm(f.b()), 1.0, 1e-12);
        const DiskPoint z = randomPoint(rng, 0.5);
        EXPECT_LT(hypDistance(((f * g) * h)(z), (f * (g * h))(z)), 1e-9);
        EXPECT_LT(hypDistance(f.inverse()(f(z)), z), 1e-9);
        EXPECT_LT(hypDistance((f * f.inverse())(z), z), 1e-9);
    }
}

TEST(Triangle, AreaAndSidesFromAngles)
{
    const HypTriangle t = triangleFromAngles(2, 3, 7);
    EXPECT_NEAR(t.area(), kPi / 42.0, 1e-12);
    EXPECT_NEAR(t.area(), 0.0747998, 1e-7);
    EXPECT_NEAR(t.vertices[0].x(), 0.0, 1e-15);
    EXPECT_NEAR(t.vertices[0].y(), 0.0, 1e-15);
    EXPECT_NEAR(t.vertices[1].y(), 0.0, 1e-15);
    EXPECT_GT(t.vertices[1].x(), 0.0);

    const double a = kPi / 2, b = kPi / 3, c = kPi / 7;
    EXPECT_NEAR(reference::sideFromAngles(c, a, b), 0.2831, 1e-4);
    const double angles[3] = {a, b, c};
    for (int i = 0; i < 3; ++i) {
        const double expect =
            reference::sideFromAngles(angles[i], angles[(i + 1) % 3], angles[(i + 2) % 3]);
        EXPECT_NEAR(t.side(i), expect, 1e-9) << "side " << i;
        EXPECT_NEAR(t.angles[i], angles[i], 1e-12);
    }
    // The side opposite pi/7 equals arccosh(cos(pi/7) / sin(pi/3)).
    EXPECT_NEAR(t.side(2), std::acosh(std::cos(c) / std::sin(b)), 1e-9);
}

TEST(Triangle, RejectsNonHyperbolicTriples)
{
    EXPECT_THROW(triangleFromAngles(2, 3, 6), Error);
    EXPECT_THROW(triangleFromAngles(3, 3, 3), Error);
    EXPECT_THROW(triangleFromAngles(1, 5, 5), Error);
    EXPECT_FALSE(isHyperbolicTriple(2, 4, 4));
    EXPECT_TRUE(isHyperbolicTriple(3, 3, 4));
}

TEST(Triangle, CongruentUnderIsometries)
{
    std::mt19937_64 rng(17);
    const HypTriangle t = triangleFromAngles(3, 3, 4);
    for (int i = 0; i < 100; ++i) {
        const HypTriangle m = t.mapped(randomIsometry(rng));
        for (int s = 0; s < 3; ++s)
            EXPECT_NEAR(m.side(s), t.side(s), 1e-9);
    }
}

TEST(Incircle, EquidistantFromSides)
{
    for (auto [p, q, r] : {std::tuple{2, 3, 7}, std::tuple{3, 3, 4}, std::tuple{2, 4, 5}}) {
        const HypTriangle t = triangleFromAngles(p, q, r);
        const Incircle ic = incenterAndInradius(t);
        EXPECT_GT(ic.radius, 0.0);
        EXPECT_TRUE(t.contains(ic.center));
        for (int s = 0; s < 3; ++s) {
            const auto seg = t.sideSegment(s);
            EXPECT_NEAR(distanceToLine(ic.center, seg.p, seg.q), ic.radius, 1e-9);
        }
    }
}

TEST(Incircle, SymmetricTriangleCenteredAtSymmetryCenter)
{
    const HypTriangle t = triangleFromAngles(4, 4, 4);
    const Incircle ic = incenterAndInradius(t);
    const HypIsometry centre = HypIsometry::toOrigin(ic.center);
    const HypTriangle moved = t.mapped(centre);
    const Incircle moved_ic = incenterAndInradius(moved);
    EXPECT_LT(std::abs(moved_ic.center.z()), 1e-9);
    const double r0 = std::abs(moved.vertices[0].z());
    for (int i = 1; i < 3; ++i)
        EXPECT_NEAR(std::abs(moved.vertices[i].z()), r0, 1e-12);
    for (int i = 0; i < 3; ++i)
        EXPECT_NEAR(hypDistance(ic.center, t.vertices[i]), hypDistance(ic.center, t.vertices[(i + 1) % 3]), 1e-9);
}

TEST(Circle, Perimeter)
{
    EXPECT_EQ(circlePerimeter({DiskPoint(), 0.0}), 0.0);
    EXPECT_NEAR(circlePerimeter({DiskPoint(), 1.0}), 2.0 * kPi * std::sinh(1.0), 1e-12);
    EXPECT_NEAR(circlePerimeter({DiskPoint(), 1.0}), 7.3840, 1e-4);
    double prev = 0.0;
    for (double r = 0.1; r < 3.0; r += 0.1) {
        const double p = circlePerimeter({DiskPoint(0.2, 0.1), r});
        EXPECT_GT(p, prev);
        prev = p;
    }
    EXPECT_THROW(circlePerimeter({DiskPoint(), -0.1}), Error);
}

TEST(Circle, PerimeterMatchesQuadratureOfEuclideanImage)
{
    const HypCircle c{DiskPoint(0.3, -0.2), 0.7};
    const auto [centre, radius] = c.euclidean();
    const double quad = reference::metricLength(
        [&](double t) { return centre + std::polar(radius, 2.0 * kPi * t); }, 20000);
    EXPECT_NEAR(quad, circlePerimeter(c), 1e-6);
}
