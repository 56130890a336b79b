#pragma once

// The Radon transform over the lateral subgroup and its inversions: direct
// quadrature at points, the FFT factorization through the mixing map, the
// mixing-map inverse route, the central-multiplier route with mu + nu = 2,
// and the operator-level spectral identity check.

#include "qheis/gft.hpp"

namespace qheis {

struct BadExponents : std::invalid_argument {
    BadExponents() : std::invalid_argument("multiplier route requires mu + nu = 2") {}
};

// R f(x,t) = \int f(y, t - 2 Im(conj(y) x)) dy by Riemann quadrature of the
// closed form over the grid's x-lattice. Validation-grade, per point.
inline cdouble radon_direct(const Evaluator& form, const GridSpec& g, const GroupPoint& p) {
    cdouble acc = 0.0;
    for (int j0 = 0; j0 < g.n_x; ++j0)
        for (int j1 = 0; j1 < g.n_x; ++j1)
            for (int j2 = 0; j2 < g.n_x; ++j2)
                for (int j3 = 0; j3 < g.n_x; ++j3) {
                    Quat y{g.xnode(j0), g.xnode(j1), g.xnode(j2), g.xnode(j3)};
                    Vec3 tw = p.t - 2.0 * (conj(y) * p.x).im();
                    acc += form(GroupPoint{y, tw});
                }
    double hx = g.hx();
    return acc * (hx * hx * hx * hx);
}

inline std::vector<cdouble> radon_direct(const Evaluator& form, const GridSpec& g,
                                         std::span<const GroupPoint> pts) {
    std::vector<cdouble> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) out[i] = radon_direct(form, g, pts[i]);
    return out;
}

struct RadonResult {
    Field field;
    std::string method;
    std::uint64_t clipped = 0;
};

// R = F2^{-1} Psi F
inline RadonResult radon_fft(const Field& f, int oversample = 4) {
    Field F = fourier_full(f, Direction::Forward);
    Field P = mixing_psi(F, Direction::Forward, oversample);
    Field out = fourier_central(P, Direction::Inverse);
    out.prov.method = "radon-fft";
    return {std::move(out), "fft", P.prov.clipped_targets};
}

// R^{-1} = F^{-1} Psi^{-1} F2
inline Field inv_radon_mixing(const Field& g, int oversample = 4) {
    Field F2 = fourier_central(g, Direction::Forward);
    Field P = mixing_psi(F2, Direction::Inverse, oversample);
    Field out = fourier_full(P, Direction::Inverse);
    out.prov = P.prov;
    out.prov.method = "radon-inverse-mixing";
    return out;
}

// R^{-1} = L^mu R L^nu with mu + nu = 2
inline Field inv_radon_lrl(const Field& g, double mu, double nu, int oversample = 4) {
    if (std::abs(mu + nu - 2.0) > 1e-12) throw BadExponents{};
    Field a = multiplier_L(g, nu);
    RadonResult r = radon_fft(a, oversample);
    Field out = multiplier_L(r.field, mu);
    out.prov.clipped_targets += r.clipped;
    out.prov.method = "radon-inverse-multiplier";
    return out;
}

// relative HS residual of \hat{R f}(a) against (pi/|a|)^2 \hat f(a) S
inline double spectral_radon_check(const Field& f, const Field& radon_f, const Vec3& a, int L,
                                   const GftOptions& opt = {}) {
    double s = a.norm();
    if (s == 0.0) throw ZeroFrequency{};
    Matrix lhs = gft_matrix(radon_f, a, L, opt);
    Matrix rhs = std::pow(kPi / s, 2.0) * apply_S(gft_matrix(f, a, L, opt), L);
    return (lhs - rhs).norm() / rhs.norm();
}

// Energy fraction of the central spectrum at and below |a| <= a_gate; the
// inversion routes are only valid on inputs where this vanishes.
struct CentralGateReport {
    double fraction = 0.0;
    bool flagged = false;
};

inline CentralGateReport lizorkin_gate(const Field& f, double a_gate, double tol = 1e-6) {
    Field F2 = fourier_central(f, Direction::Forward);
    const GridSpec& g = f.grid;
    const std::size_t nt3 = g.n_ttotal();
    std::vector<double> en(nt3, 0.0);
    for (std::size_t xi = 0; xi < g.n_xtotal(); ++xi) {
        const cdouble* base = &F2.values[xi * nt3];
        for (std::size_t k = 0; k < nt3; ++k) en[k] += std::norm(base[k]);
    }
    double low = 0.0, tot = 0.0;
    for_each_afreq(g, [&](const std::array<int, 3>& m, std::size_t flat) {
        Vec3 a{g.anode(m[0]), g.anode(m[1]), g.anode(m[2])};
        tot += en[flat];
        if (a.norm() <= a_gate) low += en[flat];
    });
    CentralGateReport rep;
    rep.fraction = tot > 0 ? low / tot : 0.0;
    rep.flagged = rep.fraction > tol;
    return rep;
}

} // namespace qheis
