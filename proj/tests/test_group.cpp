#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qheis/field.hpp"
#include "qheis/group.hpp"

using namespace qheis;
using Catch::Approx;

namespace {
std::mt19937_64 rng(17);
double rnd(double s = 1.0) {
    std::normal_distribution<double> d(0.0, s);
    return d(rng);
}
Quat rquat(double s = 1.0) { return {rnd(s), rnd(s), rnd(s), rnd(s)}; }
Vec3 rvec(double s = 1.0) { return {rnd(s), rnd(s), rnd(s)}; }
UnitQuat runit() { return UnitQuat::normalized(rquat()); }
GroupPoint rpoint(double s = 1.0) { return {rquat(s), rvec(s)}; }
AffinePoint raffine() {
    return {rquat(0.5), rvec(0.5), std::exp(rnd(0.3)), runit(), runit()};
}
double dist(const GroupPoint& a, const GroupPoint& b) {
    return std::sqrt((a.x - b.x).norm2() + (a.t - b.t).norm2());
}
} // namespace

TEST_CASE("group law of Q") {
    GroupPoint e{};
    GroupPoint p = rpoint();
    CHECK(dist(gmul(e, p), p) == 0.0);
    CHECK(dist(gmul(p, e), p) == 0.0);

    GroupPoint a{Quat{1, 0, 0, 0}, {}}, b{Quat{0, 1, 0, 0}, {}};
    GroupPoint ab = gmul(a, b);
    CHECK(dist(ab, GroupPoint{Quat{1, 1, 0, 0}, Vec3{2, 0, 0}}) < 1e-15);

    for (int i = 0; i < 1000; ++i) {
        GroupPoint x = rpoint(), y = rpoint(), z = rpoint();
        CHECK(dist(gmul(gmul(x, y), z), gmul(x, gmul(y, z))) < 1e-12);
        CHECK(dist(gmul(x, ginv(x)), e) < 1e-12);
        CHECK(dist(gmul(ginv(x), x), e) < 1e-12);
    }

    CHECK(dist(ginv(GroupPoint{Quat{1, 1, 0, 0}, Vec3{1, 0, 0}}),
               GroupPoint{Quat{-1, -1, 0, 0}, Vec3{-1, 0, 0}}) == 0.0);
}

TEST_CASE("dilation is an automorphism") {
    GroupPoint p = rpoint();
    CHECK(dist(dilate(1.0, p), p) == 0.0);
    GroupPoint d = dilate(4.0, GroupPoint{Quat{1, 2, 0, 1}, Vec3{0, 1, 2}});
    CHECK(dist(d, GroupPoint{Quat{2, 4, 0, 2}, Vec3{0, 4, 8}}) < 1e-15);
    CHECK_THROWS_AS(dilate(-1.0, p), NonPositiveScale);
    for (int i = 0; i < 200; ++i) {
        double rho = std::exp(rnd(0.5));
        GroupPoint x = rpoint(), y = rpoint();
        CHECK(dist(dilate(rho, gmul(x, y)), gmul(dilate(rho, x), dilate(rho, y))) < 1e-12);
    }
}

TEST_CASE("rotation is an automorphism") {
    GroupPoint p = rpoint();
    CHECK(dist(rotate(UnitQuat{}, UnitQuat{}, p), p) == 0.0);
    for (int i = 0; i < 200; ++i) {
        UnitQuat u = runit(), v = runit();
        GroupPoint x = rpoint(), y = rpoint();
        CHECK(dist(rotate(u, v, gmul(x, y)), gmul(rotate(u, v, x), rotate(u, v, y))) < 1e-12);
        GroupPoint lateral{rquat(), {}};
        CHECK(rotate(u, v, lateral).t.norm() < 1e-13);
    }
}

TEST_CASE("group law of P") {
    AffinePoint e = AffinePoint::identity();
    AffinePoint g = raffine();
    auto adist = [](const AffinePoint& a, const AffinePoint& b) {
        return std::sqrt((a.x - b.x).norm2() + (a.t - b.t).norm2()) + std::abs(a.rho - b.rho) +
               (a.u.q() - b.u.q()).norm() + (a.v.q() - b.v.q()).norm();
    };
    CHECK(adist(pmul(g, e), g) < 1e-14);
    CHECK(adist(pmul(e, g), g) < 1e-14);

    AffinePoint s1{{}, {}, 2.0, UnitQuat{}, UnitQuat{}};
    AffinePoint s2{{}, {}, 3.0, UnitQuat{}, UnitQuat{}};
    CHECK(pmul(s1, s2).rho == Approx(6.0));

    for (int i = 0; i < 1000; ++i) {
        AffinePoint a = raffine(), b = raffine(), c = raffine();
        CHECK(adist(pmul(pmul(a, b), c), pmul(a, pmul(b, c))) < 1e-12);
    }
    for (int i = 0; i < 200; ++i) {
        AffinePoint a = raffine();
        CHECK(adist(pmul(a, pinv(a)), e) < 1e-12);
    }
}

TEST_CASE("paction composes with pmul") {
    AffinePoint e = AffinePoint::identity();
    GroupPoint p = rpoint();
    CHECK(dist(paction(e, p), p) == 0.0);

    AffinePoint tr{Quat{0.3, -1, 0.2, 0}, Vec3{1, 2, -0.5}, 1.0, UnitQuat{}, UnitQuat{}};
    CHECK(dist(paction(tr, GroupPoint{}), GroupPoint{tr.x, tr.t}) == 0.0);

    for (int i = 0; i < 500; ++i) {
        AffinePoint g1 = raffine(), g2 = raffine();
        GroupPoint x = rpoint();
        CHECK(dist(paction(g1, paction(g2, x)), paction(pmul(g1, g2), x)) < 1e-12);
    }
}

TEST_CASE("haar densities") {
    AffinePoint g = AffinePoint::identity();
    CHECK(haar_density(g, HaarSide::Left) == 1.0);
    CHECK(haar_density(g, HaarSide::Right) == 1.0);
    g.rho = 2.0;
    CHECK(haar_density(g, HaarSide::Left) == Approx(1.0 / 64.0));
    CHECK(haar_density(g, HaarSide::Right) == Approx(0.5));
}

TEST_CASE("rep_U homomorphism and specializations") {
    Evaluator phi = [](const GroupPoint& p) {
        return cdouble(std::exp(-p.x.norm2() - 0.5 * p.t.norm2()), 0.0);
    };
    AffinePoint e = AffinePoint::identity();
    Evaluator id = rep_U(e, phi);
    GroupPoint p0 = rpoint();
    CHECK(std::abs(id(p0) - phi(p0)) < 1e-14);

    AffinePoint dil{{}, {}, 2.0, UnitQuat{}, UnitQuat{}};
    Evaluator d = rep_U(dil, phi);
    GroupPoint q = rpoint();
    cdouble expect = std::pow(2.0, -2.5) *
                     phi(GroupPoint{(1.0 / std::sqrt(2.0)) * q.x, 0.5 * q.t});
    CHECK(std::abs(d(q) - expect) < 1e-14);

    for (int trial = 0; trial < 20; ++trial) {
        AffinePoint g1 = raffine(), g2 = raffine();
        Evaluator lhs = rep_U(g1, rep_U(g2, phi));
        Evaluator rhs = rep_U(pmul(g1, g2), phi);
        for (int k = 0; k < 25; ++k) {
            GroupPoint x = rpoint(1.5);
            CHECK(std::abs(lhs(x) - rhs(x)) < 1e-10);
        }
    }
}

TEST_CASE("rep_U unitarity via grid quadrature") {
    // |phi|^2 must stay resolved on the lattice for the quadrature oracle:
    // widths are chosen so its spectrum is negligible at the alias distance.
    GridSpec g{4.0, 8, 8.0, 8};
    Evaluator phi = [](const GroupPoint& p) {
        return cdouble(std::exp(-0.5 * p.x.norm2() - 0.125 * p.t.norm2()), 0.0);
    };
    Field f = sample(phi, g);
    double n0 = l2norm(f);
    AffinePoint a{Quat{0.15, -0.2, 0.1, 0}, Vec3{0.3, 0, -0.2}, 1.25,
                  UnitQuat::normalized({1, 0.2, -0.1, 0.3}), UnitQuat::normalized({0.9, 0, 0.1, -0.2})};
    Field uf = sample(rep_U(a, phi), g);
    CHECK(l2norm(uf) / n0 == Approx(1.0).margin(2e-2));
}
