#pragma once

// The group Q = R^4 x R^3 with twisted product, its affine group P
// (translations, anisotropic dilations, Sp(1)xSp(1) rotations), the two
// Haar densities of P, and the representation U acting on evaluators.

#include <complex>
#include <functional>

#include "qheis/quaternion.hpp"

namespace qheis {

struct NonPositiveScale : std::domain_error {
    NonPositiveScale() : std::domain_error("scale parameter must be positive") {}
};

struct GroupPoint {
    Quat x;
    Vec3 t;
};

// (x,t)(x',t') = (x + x', t + t' - 2 Im(conj(x') x))
inline GroupPoint gmul(const GroupPoint& p, const GroupPoint& q) {
    return {p.x + q.x, p.t + q.t - 2.0 * (conj(q.x) * p.x).im()};
}

inline GroupPoint ginv(const GroupPoint& p) { return {-p.x, -p.t}; }

// T_rho(x,t) = (sqrt(rho) x, rho t)
inline GroupPoint dilate(double rho, const GroupPoint& p) {
    if (!(rho > 0)) throw NonPositiveScale{};
    return {std::sqrt(rho) * p.x, rho * p.t};
}

// T_{u,v}(x,t) = (u x conj(v), v t conj(v))
inline GroupPoint rotate(const UnitQuat& u, const UnitQuat& v, const GroupPoint& p) {
    return {act_pair(u, v, p.x), rotate_im(v, p.t)};
}

struct AffinePoint {
    Quat x;
    Vec3 t;
    double rho = 1.0;
    UnitQuat u, v;

    static AffinePoint identity() { return {}; }
};

inline AffinePoint pmul(const AffinePoint& g1, const AffinePoint& g2) {
    if (!(g1.rho > 0) || !(g2.rho > 0)) throw NonPositiveScale{};
    double sr = std::sqrt(g1.rho);
    Quat x = g1.x + sr * act_pair(g1.u, g1.v, g2.x);
    Vec3 t = g1.t + g1.rho * rotate_im(g1.v, g2.t)
             - 2.0 * sr * (g1.v.q() * conj(g2.x) * conj(g1.u.q()) * g1.x).im();
    return {x, t, g1.rho * g2.rho, g1.u * g2.u, g1.v * g2.v};
}

// Action of g on Q: the map whose matrix part is T_{(x,t)} T_rho T_{u,v}.
inline GroupPoint paction(const AffinePoint& g, const GroupPoint& p) {
    double sr = std::sqrt(g.rho);
    Quat x = g.x + sr * act_pair(g.u, g.v, p.x);
    Vec3 t = g.t + g.rho * rotate_im(g.v, p.t)
             - 2.0 * sr * (g.v.q() * conj(p.x) * conj(g.u.q()) * g.x).im();
    return {x, t};
}

// Group inverse in P. The twist term of pmul(g, pinv(g)) is Im of a real
// quantity and drops out, which gives the closed form below.
inline AffinePoint pinv(const AffinePoint& g) {
    UnitQuat u = g.u.conjugated(), v = g.v.conjugated();
    Quat x = (-1.0 / std::sqrt(g.rho)) * act_pair(u, v, g.x);
    Vec3 t = (-1.0 / g.rho) * rotate_im(v, g.t);
    return {x, t, 1.0 / g.rho, u, v};
}

enum class HaarSide { Left, Right };

// dm_l = dx dt drho du dv / rho^6,  dm_r = ... / rho
inline double haar_density(const AffinePoint& g, HaarSide side) {
    return side == HaarSide::Left ? std::pow(g.rho, -6.0) : 1.0 / g.rho;
}

using Evaluator = std::function<std::complex<double>(const GroupPoint&)>;

// U(x,t,rho,u,v) f (x',t') =
//   rho^{-5/2} f( conj(u)(x'-x)v / sqrt(rho), conj(v)(t'-t+2Im(conj(x')x))v / rho )
inline Evaluator rep_U(const AffinePoint& g, Evaluator phi) {
    if (!(g.rho > 0)) throw NonPositiveScale{};
    double amp = std::pow(g.rho, -2.5);
    double isr = 1.0 / std::sqrt(g.rho), ir = 1.0 / g.rho;
    return [g, phi = std::move(phi), amp, isr, ir](const GroupPoint& p) {
        Quat xa = isr * (conj(g.u.q()) * (p.x - g.x) * g.v.q());
        Vec3 tw = p.t - g.t + 2.0 * (conj(p.x) * g.x).im();
        Vec3 ta = ir * rotate_im(g.v.conjugated(), tw);
        return amp * phi(GroupPoint{xa, ta});
    };
}

} // namespace qheis
