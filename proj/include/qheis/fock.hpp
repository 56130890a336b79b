#pragma once

// Truncated Fock basis machinery for the operator-valued transform: the
// index layout, the frame adapted to a frequency direction, closed-form
// matrix coefficients of pi_a on the basis, projection characters, basis
// function evaluation, and Gauss-Hermite rules for the Gaussian-weighted
// integrals.
//
// With the orthonormal frame {e0=1, e1=a^, e2, e3=e2 a^} the coordinates
// z1 = <x,e0> + i<x,e1>, z2 = <x,e2> + i<x,e3> are holomorphic for the
// complex structure q -> q a^, and
//   pi_a(x,t) E_alpha (q) = E_alpha(q+x) e^{i<a,t>} e^{-s|x|^2} e^{-2s z.w~}
// with s = |a| and w the coordinates of x. The one-variable matrix element
// against normalized monomials has the finite closed form implemented in
// plane_m below.

#include <Eigen/Dense>

#include <complex>
#include <vector>

#include "qheis/quaternion.hpp"

namespace qheis {

using cdouble = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

struct ZeroFrequency : std::domain_error {
    ZeroFrequency() : std::domain_error("frequency node a must be nonzero") {}
};

struct FockIndex {
    int a1 = 0, a2 = 0;
    int degree() const { return a1 + a2; }
};

// Degree-major, first-entry-descending enumeration; d_l = l+1 per degree.
struct FockLayout {
    int L = 0;
    std::vector<FockIndex> idx;
    std::vector<int> degree;

    static const FockLayout& get(int L) {
        static std::vector<FockLayout> cache;
        if (int(cache.size()) <= L) {
            for (int l = int(cache.size()); l <= L; ++l) {
                FockLayout lay;
                lay.L = l;
                for (int d = 0; d <= l; ++d)
                    for (int a1 = d; a1 >= 0; --a1) {
                        lay.idx.push_back({a1, d - a1});
                        lay.degree.push_back(d);
                    }
                cache.push_back(std::move(lay));
            }
        }
        return cache[L];
    }

    int dim() const { return int(idx.size()); }
    int block_begin(int l) const { return l * (l + 1) / 2; }
    int block_dim(int l) const { return l + 1; }
};

struct AdaptedFrame {
    Vec3 ahat, e2, e3;

    static AdaptedFrame of(const Vec3& a) {
        double n = a.norm();
        if (n == 0.0) throw ZeroFrequency{};
        Vec3 ah = (1.0 / n) * a;
        // pick the coordinate axis least aligned with ahat, project, normalize
        int k = 0;
        double best = std::abs(ah.x);
        if (std::abs(ah.y) < best) { k = 1; best = std::abs(ah.y); }
        if (std::abs(ah.z) < best) k = 2;
        Vec3 e2{k == 0 ? 1.0 : 0.0, k == 1 ? 1.0 : 0.0, k == 2 ? 1.0 : 0.0};
        e2 = e2 - e2.dot(ah) * ah;
        e2 = (1.0 / e2.norm()) * e2;
        // e3 = e2 * ahat as quaternions; for orthogonal imaginaries the
        // product is the cross product
        return {ah, e2, e2.cross(ah)};
    }

    // holomorphic coordinates of x in this frame
    void zcoords(const Quat& x, cdouble& w1, cdouble& w2) const {
        Vec3 xi = x.im();
        w1 = {x.re(), xi.dot(ahat)};
        w2 = {xi.dot(e2), xi.dot(e3)};
    }

    Quat embed(double u0, double u1, double u2, double u3) const {
        return Quat{u0, 0, 0, 0} + u1 * as_quat(ahat) + u2 * as_quat(e2) + u3 * as_quat(e3);
    }
};

namespace fockdetail {

inline const std::vector<double>& factorials() {
    static std::vector<double> f = [] {
        std::vector<double> v(64);
        v[0] = 1.0;
        for (int k = 1; k < 64; ++k) v[k] = v[k - 1] * k;
        return v;
    }();
    return f;
}

inline double binom(int n, int k) {
    const auto& f = factorials();
    return f[n] / (f[k] * f[n - k]);
}

} // namespace fockdetail

// One-variable matrix element <pi(w) eps_alpha, eps_beta> for the plane with
// coordinate w; includes the factor e^{-s|w|^2}.
inline cdouble plane_m(int alpha, int beta, cdouble w, double s) {
    const auto& fact = fockdetail::factorials();
    cdouble acc = 0.0;
    cdouble wc = std::conj(w);
    for (int k = 0; k <= std::min(alpha, beta); ++k)
        acc += fockdetail::binom(alpha, k) * std::pow(w, alpha - k) *
               std::pow(-2.0 * s * wc, beta - k) / fact[beta - k];
    return std::exp(-s * std::norm(w)) * std::pow(2.0 * s, 0.5 * (alpha - beta)) *
           std::sqrt(fact[beta] / fact[alpha]) * acc;
}

// <pi_a(x,t) E_alpha, E_beta>
inline cdouble matcoef(const Vec3& a, const Quat& x, const Vec3& t, FockIndex alpha,
                       FockIndex beta) {
    double s = a.norm();
    if (s == 0.0) throw ZeroFrequency{};
    AdaptedFrame fr = AdaptedFrame::of(a);
    cdouble w1, w2;
    fr.zcoords(x, w1, w2);
    return std::polar(1.0, a.dot(t)) * plane_m(alpha.a1, beta.a1, w1, s) *
           plane_m(alpha.a2, beta.a2, w2, s);
}

// tr(pi_a(x,t) P_{a,l}) = sum over the degree-l diagonal
inline cdouble projection_character(const Vec3& a, const Quat& x, const Vec3& t, int l) {
    double s = a.norm();
    if (s == 0.0) throw ZeroFrequency{};
    AdaptedFrame fr = AdaptedFrame::of(a);
    cdouble w1, w2;
    fr.zcoords(x, w1, w2);
    std::vector<cdouble> d1(l + 1), d2(l + 1);
    for (int n = 0; n <= l; ++n) {
        d1[n] = plane_m(n, n, w1, s);
        d2[n] = plane_m(n, n, w2, s);
    }
    cdouble acc = 0.0;
    for (int a1 = l; a1 >= 0; --a1) acc += d1[a1] * d2[l - a1];
    return std::polar(1.0, a.dot(t)) * acc;
}

// Basis function E_alpha evaluated at q (for quadrature oracles and the
// intertwiner matrices).
inline cdouble eval_E(FockIndex alpha, const AdaptedFrame& fr, double s, const Quat& q) {
    const auto& fact = fockdetail::factorials();
    cdouble z1, z2;
    fr.zcoords(q, z1, z2);
    double norm = std::pow(2.0 * s, 0.5 * alpha.degree() + 1.0) /
                  (kPi * std::sqrt(fact[alpha.a1] * fact[alpha.a2]));
    return norm * std::pow(z1, alpha.a1) * std::pow(z2, alpha.a2);
}

// ---------------------------------------------------------------------------
// Gauss-Hermite rule for weight e^{-v^2} (orthonormal-recurrence Newton).

struct GaussHermite {
    std::vector<double> nodes, weights;

    static const GaussHermite& get(int n) {
        static std::vector<GaussHermite> cache(64);
        GaussHermite& r = cache.at(n);
        if (r.nodes.empty()) r = compute(n);
        return r;
    }

    static GaussHermite compute(int n) {
        GaussHermite r;
        r.nodes.resize(n);
        r.weights.resize(n);
        const double pim4 = 0.7511255444649425; // pi^{-1/4}
        double z = 0.0;
        for (int i = 0; i < (n + 1) / 2; ++i) {
            if (i == 0)
                z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
            else if (i == 1)
                z -= 1.14 * std::pow(n, 0.426) / z;
            else if (i == 2)
                z = 1.86 * z - 0.86 * r.nodes[0];
            else if (i == 3)
                z = 1.91 * z - 0.91 * r.nodes[1];
            else
                z = 2.0 * z - r.nodes[i - 2];
            double pp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p1 = pim4, p2 = 0.0;
                for (int j = 1; j <= n; ++j) {
                    double p3 = p2;
                    p2 = p1;
                    p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
                }
                pp = std::sqrt(2.0 * n) * p2;
                double z1 = z;
                z = z1 - p1 / pp;
                if (std::abs(z - z1) < 1e-15) break;
            }
            r.nodes[i] = z;
            r.nodes[n - 1 - i] = -z;
            r.weights[i] = 2.0 / (pp * pp);
            r.weights[n - 1 - i] = r.weights[i];
        }
        if (n % 2 == 1) r.nodes[n / 2] = 0.0;
        return r;
    }
};

// ---------------------------------------------------------------------------
// Plane tables: all one-variable elements m_{alpha,beta}(w) for alpha,beta<=L
// at a list of plane points. `deweighted` drops the e^{-s|w|^2} factor (used
// when that factor is carried by a Gauss-Hermite weight).

struct PlaneTables {
    int L = 0;
    std::size_t npts = 0;
    std::vector<cdouble> m; // [(alpha*(L+1)+beta) * npts + p]

    const cdouble* row(int alpha, int beta) const { return &m[(std::size_t(alpha) * (L + 1) + beta) * npts]; }

    static PlaneTables build(std::span<const cdouble> w, double s, int L, bool deweighted) {
        PlaneTables T;
        T.L = L;
        T.npts = w.size();
        T.m.assign(std::size_t(L + 1) * (L + 1) * w.size(), cdouble{0, 0});
        const auto& fact = fockdetail::factorials();
        std::vector<cdouble> wp((L + 1) * w.size()), wc((L + 1) * w.size());
        std::vector<double> gw(w.size());
        for (std::size_t p = 0; p < w.size(); ++p) {
            wp[p] = 1.0;
            wc[p] = 1.0;
            gw[p] = deweighted ? 1.0 : std::exp(-s * std::norm(w[p]));
        }
        for (int k = 1; k <= L; ++k)
            for (std::size_t p = 0; p < w.size(); ++p) {
                wp[k * w.size() + p] = wp[(k - 1) * w.size() + p] * w[p];
                wc[k * w.size() + p] = wc[(k - 1) * w.size() + p] * std::conj(w[p]);
            }
        for (int al = 0; al <= L; ++al)
            for (int be = 0; be <= L; ++be) {
                cdouble* dst = &T.m[(std::size_t(al) * (L + 1) + be) * w.size()];
                double pref = std::pow(2.0 * s, 0.5 * (al - be)) * std::sqrt(fact[be] / fact[al]);
                for (int k = 0; k <= std::min(al, be); ++k) {
                    double c = fockdetail::binom(al, k) * std::pow(-2.0 * s, be - k) / fact[be - k];
                    const cdouble* a = &wp[(al - k) * w.size()];
                    const cdouble* b = &wc[(be - k) * w.size()];
                    for (std::size_t p = 0; p < w.size(); ++p) dst[p] += c * a[p] * b[p];
                }
                for (std::size_t p = 0; p < w.size(); ++p) dst[p] *= pref * gw[p];
            }
        return T;
    }
};

// Matrix of gamma_{u,v} F(q) = F(u q conj(v)) on the truncated basis, via
// Gauss-Hermite quadrature of the Fock inner products. Block diagonal by
// degree; the source space is identified index-wise.
inline Matrix intertwiner_gamma(const UnitQuat& u, const UnitQuat& v, const Vec3& a, int L,
                                int ngh = 0) {
    double s = a.norm();
    if (s == 0.0) throw ZeroFrequency{};
    if (ngh <= 0) ngh = L + 2;
    const FockLayout& lay = FockLayout::get(L);
    const int D = lay.dim();
    AdaptedFrame fr = AdaptedFrame::of(a);
    // target structure: gamma maps functions adapted to b = v a conj(v)
    Vec3 b = rotate_im(v, a);
    AdaptedFrame frb = AdaptedFrame::of(b);
    const GaussHermite& gh = GaussHermite::get(ngh);
    const double scale = 1.0 / std::sqrt(2.0 * s);

    Matrix G = Matrix::Zero(D, D);
    std::vector<cdouble> Ea(D), Eb(D);
    for (int i0 = 0; i0 < ngh; ++i0)
        for (int i1 = 0; i1 < ngh; ++i1)
            for (int i2 = 0; i2 < ngh; ++i2)
                for (int i3 = 0; i3 < ngh; ++i3) {
                    Quat q = fr.embed(gh.nodes[i0] * scale, gh.nodes[i1] * scale,
                                      gh.nodes[i2] * scale, gh.nodes[i3] * scale);
                    double w = gh.weights[i0] * gh.weights[i1] * gh.weights[i2] * gh.weights[i3] /
                               (4.0 * s * s);
                    Quat qr = u.q() * q * conj(v.q());
                    for (int k = 0; k < D; ++k) {
                        Eb[k] = eval_E(lay.idx[k], frb, s, qr);
                        Ea[k] = eval_E(lay.idx[k], fr, s, q);
                    }
                    for (int bi = 0; bi < D; ++bi) {
                        cdouble cb = std::conj(Ea[bi]) * w;
                        for (int ai = 0; ai < D; ++ai) G(bi, ai) += Eb[ai] * cb;
                    }
                }
    return G;
}

} // namespace qheis
