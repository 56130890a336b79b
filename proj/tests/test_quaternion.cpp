#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qheis/quaternion.hpp"

using namespace qheis;
using Catch::Approx;

namespace {
std::mt19937_64 rng(42);
Quat random_quat(double scale = 1.0) {
    std::normal_distribution<double> d(0.0, scale);
    return {d(rng), d(rng), d(rng), d(rng)};
}
UnitQuat random_unit() { return UnitQuat::normalized(random_quat()); }
double dist(const Quat& a, const Quat& b) { return (a - b).norm(); }
} // namespace

TEST_CASE("Hamilton product basics") {
    Quat i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1}, one{1, 0, 0, 0};
    CHECK(dist(i * j, k) == 0.0);
    CHECK(dist(j * k, i) == 0.0);
    CHECK(dist(i * i, -one) == 0.0);
    Quat q = random_quat();
    CHECK(dist(q * one, q) == 0.0);
    CHECK(dist(Quat{1, 1, 0, 0} * Quat{1, 0, 1, 0}, Quat{1, 1, 1, 1}) == 0.0);
}

TEST_CASE("conjugation and inverse") {
    CHECK(dist(conj(Quat{1, 1, 0, 0}), Quat{1, -1, 0, 0}) == 0.0);
    CHECK(dist(inverse(Quat{1, 1, 0, 0}), Quat{0.5, -0.5, 0, 0}) == 0.0);
    CHECK_THROWS_AS(inverse(Quat{}), ZeroQuaternion);
    Quat q = random_quat();
    CHECK(dist(q * inverse(q), Quat{1, 0, 0, 0}) < 1e-12);
}

TEST_CASE("algebra identities on random inputs") {
    for (int it = 0; it < 1000; ++it) {
        Quat q = random_quat(), h = random_quat(), g = random_quat();
        // associativity
        CHECK(dist((q * h) * g, q * (h * g)) <= 1e-12 * (q.norm() * h.norm() * g.norm() + 1));
        // anti-homomorphism of conjugation
        CHECK(dist(conj(q * h), conj(h) * conj(q)) <= 1e-12 * (q.norm() * h.norm() + 1));
        // multiplicativity of the norm
        CHECK((q * h).norm() == Approx(q.norm() * h.norm()).epsilon(1e-12));
    }
}

TEST_CASE("real and imaginary part product formulas") {
    for (int it = 0; it < 100; ++it) {
        Quat q = random_quat(), h = random_quat();
        Quat p = q * h;
        CHECK(p.re() == Approx(q.re() * h.re() - q.im().dot(h.im())).margin(1e-12));
        Vec3 im = q.re() * h.im() + h.re() * q.im() + q.im().cross(h.im());
        CHECK((p.im() - im).norm() < 1e-12);
    }
}

TEST_CASE("pair action is isometric and composes") {
    UnitQuat one;
    Quat q = random_quat();
    CHECK(dist(act_pair(one, one, q), q) == 0.0);
    for (int it = 0; it < 200; ++it) {
        UnitQuat u1 = random_unit(), u2 = random_unit(), v1 = random_unit(), v2 = random_unit();
        Quat x = random_quat();
        CHECK(act_pair(u1, v1, x).norm() == Approx(x.norm()).epsilon(1e-12));
        CHECK(dist(act_pair(u1 * u2, v1 * v2, x), act_pair(u1, v1, act_pair(u2, v2, x))) < 1e-12);
    }
}

TEST_CASE("conjugation action preserves Im Q") {
    for (int it = 0; it < 200; ++it) {
        UnitQuat v = random_unit();
        Quat r = act_pair(v, v, Quat{0, 1, 0, 0});
        CHECK(std::abs(r.re()) < 1e-13);
        Vec3 rot = rotate_im(v, Vec3{0.3, -0.7, 0.2});
        CHECK(rot.norm() == Approx(Vec3{0.3, -0.7, 0.2}.norm()).epsilon(1e-12));
    }
}

TEST_CASE("UnitQuat construction guards") {
    CHECK_THROWS_AS(UnitQuat(Quat{1.1, 0, 0, 0}), std::invalid_argument);
    CHECK_NOTHROW(UnitQuat(Quat{1.0, 0, 0, 0}));
    // long composition chains stay normalized
    UnitQuat u = random_unit(), acc;
    for (int i = 0; i < 100000; ++i) acc = acc * u;
    CHECK(acc.q().norm() == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sp1 haar nodes") {
    auto nodes = sp1_haar_nodes(1, 7);
    REQUIRE(nodes.size() == 1);
    CHECK(nodes[0].weight == 1.0);

    CHECK_THROWS_AS(sp1_haar_nodes(0, 7), std::invalid_argument);

    auto a = sp1_haar_nodes(64, 123);
    auto b = sp1_haar_nodes(64, 123);
    double wsum = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(dist(a[i].u.q(), b[i].u.q()) == 0.0);
        wsum += a[i].weight;
    }
    CHECK(wsum == Approx(1.0).epsilon(1e-12));

    // E[Re(u)^2] = 1/4 on S^3; allow 3 sigma of the Monte Carlo error
    const std::size_t n = 100000;
    auto big = sp1_haar_nodes(n, 2024);
    double mean = 0, m2 = 0;
    for (const auto& wq : big) {
        double v = wq.u.q().re() * wq.u.q().re();
        mean += v;
        m2 += v * v;
    }
    mean /= double(n);
    double var = m2 / double(n) - mean * mean;
    double sigma = std::sqrt(var / double(n));
    CHECK(std::abs(mean - 0.25) < 3.0 * sigma);
}
