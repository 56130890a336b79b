#pragma once

// Quaternion arithmetic, the unit group Sp(1), and its rotation actions.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace qheis {

struct ZeroQuaternion : std::domain_error {
    ZeroQuaternion() : std::domain_error("inverse of zero quaternion") {}
};

// Element of Im Q identified with R^3.
struct Vec3 {
    double x = 0, y = 0, z = 0;

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    constexpr double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
};

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

// q = w + x i + y j + z k
struct Quat {
    double w = 0, x = 0, y = 0, z = 0;

    constexpr Quat() = default;
    constexpr Quat(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
    constexpr Quat(double real, const Vec3& im) : w(real), x(im.x), y(im.y), z(im.z) {}

    constexpr double re() const { return w; }
    constexpr Vec3 im() const { return {x, y, z}; }

    constexpr Quat operator+(const Quat& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
    constexpr Quat operator-(const Quat& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
    constexpr Quat operator-() const { return {-w, -x, -y, -z}; }
    constexpr Quat operator*(double s) const { return {w * s, x * s, y * s, z * s}; }

    // Hamilton product
    constexpr Quat operator*(const Quat& o) const {
        return {w * o.w - x * o.x - y * o.y - z * o.z,
                w * o.x + x * o.w + y * o.z - z * o.y,
                w * o.y - x * o.z + y * o.w + z * o.x,
                w * o.z + x * o.y - y * o.x + z * o.w};
    }

    constexpr double norm2() const { return w * w + x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
    // Euclidean pairing <q,h> = Re(conj(q) h)
    constexpr double dot(const Quat& o) const { return w * o.w + x * o.x + y * o.y + z * o.z; }
};

inline constexpr Quat operator*(double s, const Quat& q) { return q * s; }

inline constexpr Quat conj(const Quat& q) { return {q.w, -q.x, -q.y, -q.z}; }

inline Quat inverse(const Quat& q) {
    double n2 = q.norm2();
    if (n2 == 0.0) throw ZeroQuaternion{};
    return conj(q) * (1.0 / n2);
}

inline constexpr Quat as_quat(const Vec3& v) { return {0.0, v.x, v.y, v.z}; }

// Unit quaternion; |q| checked at construction, renormalized on demand.
class UnitQuat {
  public:
    UnitQuat() : q_{1, 0, 0, 0} {}
    explicit UnitQuat(const Quat& q) : q_(q) {
        if (std::abs(q.norm() - 1.0) > 1e-12)
            throw std::invalid_argument("UnitQuat: |q| deviates from 1 beyond 1e-12");
    }
    static UnitQuat normalized(const Quat& q) {
        double n = q.norm();
        if (n == 0.0) throw ZeroQuaternion{};
        return UnitQuat(q * (1.0 / n), 0);
    }
    const Quat& q() const { return q_; }
    UnitQuat operator*(const UnitQuat& o) const {
        UnitQuat r(q_ * o.q_, 0);
        if (++r.chain_ > kRenormEvery) {
            double n = r.q_.norm();
            r.q_ = r.q_ * (1.0 / n);
            r.chain_ = 0;
        }
        return r;
    }
    UnitQuat conjugated() const { return UnitQuat(conj(q_), 0); }

  private:
    UnitQuat(const Quat& q, int) : q_(q) {}
    Quat q_;
    int chain_ = 0;
    static constexpr int kRenormEvery = 64;
};

// A_{u,v}(q) = u q conj(v); norm preserving.
inline Quat act_pair(const UnitQuat& u, const UnitQuat& v, const Quat& q) {
    return u.q() * q * conj(v.q());
}

// B_v(r) = v r conj(v) on Im Q.
inline Vec3 rotate_im(const UnitQuat& v, const Vec3& r) {
    return (v.q() * as_quat(r) * conj(v.q())).im();
}

struct WeightedUnitQuat {
    UnitQuat u;
    double weight;
};

// Monte Carlo nodes for the normalized Haar measure of Sp(1) (uniform on S^3).
// Deterministic for a fixed seed; weights sum to 1.
inline std::vector<WeightedUnitQuat> sp1_haar_nodes(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("sp1_haar_nodes: n must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<WeightedUnitQuat> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Quat q;
        do {
            q = Quat{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
        } while (q.norm() < 1e-8);
        out.push_back({UnitQuat::normalized(q), 1.0 / double(n)});
    }
    return out;
}

} // namespace qheis
