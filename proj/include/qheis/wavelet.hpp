#pragma once

// Admissible wavelets: radial profiles with their Calderon constants, radial
// wavelet synthesis, the continuous wavelet transform against the affine
// group, scale calibration, reconstruction, and the wavelet route to the
// Radon inverse.
//
// Scale integrals are computed on log-spaced nodes; for a radial wavelet the
// per-degree scale sum c_l(a) = ∫ |eta((l+1) rho |a|)|^2 d rho / rho is
// scale invariant, which is what makes the per-degree admissibility values
// coincide and the reconstruction constant independent of the analyzed
// function.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <memory>

#include "qheis/radon.hpp"

namespace qheis {

struct NotAdmissible : std::runtime_error {
    explicit NotAdmissible(const std::string& m) : std::runtime_error(m) {}
};

struct RadialProfile {
    std::function<double(double)> eta;
    double C = 0.0;    // 4 pi ∫ |eta|^2 dr / r
    double m4 = 0.0;   // ∫ |eta|^2 r^4 dr
    double u_lo = 0.0, u_hi = 0.0; // support hints: central 99.9% of |eta|^2 dr/r mass
};

enum class ProfileKind { PolyExp, Bump };

struct ProfileParams {
    int k = 1;              // PolyExp: eta(r) = r^k e^{-r}
    double lo = 0.5, hi = 1.5, power = 1.0; // Bump band
};

inline RadialProfile make_profile(ProfileKind kind, ProfileParams prm = {}) {
    RadialProfile p;
    if (kind == ProfileKind::PolyExp) {
        int k = prm.k;
        p.eta = [k](double r) { return std::pow(r, double(k)) * std::exp(-r); };
        if (k <= 0) throw NotAdmissible("profile does not vanish fast enough at 0");
    } else {
        double lo = prm.lo, hi = prm.hi, pw = prm.power;
        if (!(lo >= 0) || !(hi > lo)) throw NotAdmissible("bad bump band");
        p.eta = [lo, hi, pw](double r) { return detail::bump_profile(r, lo, hi, pw); };
        if (lo <= 0.0) throw NotAdmissible("bump support touches 0");
    }
    namespace bq = boost::math::quadrature;
    bq::exp_sinh<double> es;
    auto eta = p.eta;
    // divergence probe for the Calderon integral near 0
    double probe = 0.0, prev = 0.0;
    for (double eps = 1e-2; eps > 1e-10; eps *= 0.1) {
        prev = probe;
        probe = bq::gauss_kronrod<double, 31>::integrate(
            [&](double r) { double e = eta(r); return e * e / r; }, eps, 1.0, 12, 1e-10);
        if (prev > 0 && probe > 4.0 * prev && probe > 1.0)
            throw NotAdmissible("Calderon integral diverges at 0");
    }
    p.C = 4.0 * kPi * es.integrate([&](double r) { double e = eta(r); return e * e / r; }, 1e-9);
    p.m4 = es.integrate([&](double r) { double e = eta(r); return e * e * r * r * r * r; }, 1e-9);
    if (!std::isfinite(p.C) || !std::isfinite(p.m4) || p.C <= 0 || p.m4 <= 0)
        throw NotAdmissible("profile integrals are not finite");
    // support hints: central mass of |eta|^2 dr/r
    double total = p.C / (4.0 * kPi);
    auto mass_below = [&](double u) {
        return bq::gauss_kronrod<double, 31>::integrate(
            [&](double r) { double e = eta(r); return e * e / r; }, 1e-12, u, 12, 1e-10);
    };
    double lo = 1e-6, hi = 1.0;
    while (mass_below(lo) > 5e-4 * total && lo > 1e-11) lo *= 0.5;
    while (mass_below(hi) < (1.0 - 5e-4) * total && hi < 1e6) hi *= 1.25;
    p.u_lo = lo;
    p.u_hi = hi;
    return p;
}

// 2-D lookup table of a radial evaluator over (|x|, |t|)
struct RadialTable {
    int nx = 0, nt = 0;
    double hx = 0, ht = 0;
    std::vector<double> v;

    double eval(double rx, double rt) const {
        double gx = rx / hx, gt = rt / ht;
        int ix = int(gx), it = int(gt);
        if (ix >= nx - 1 || it >= nt - 1) return 0.0;
        double fx = gx - ix, ft = gt - it;
        const double* b = &v[std::size_t(ix) * nt + it];
        return (1 - fx) * ((1 - ft) * b[0] + ft * b[1]) +
               fx * ((1 - ft) * b[nt] + ft * b[nt + 1]);
    }
};

struct Wavelet {
    int L = 8;
    std::shared_ptr<RadialProfile> profile;       // present iff built from one
    std::function<cdouble(double, int)> B;        // spectral blocks B(r, l)
    std::vector<double> per_degree_admissibility; // 4 pi ∫ |B(r,l)|^2 dr / r per l
    double C = 0.0;                               // common value for profile wavelets
    std::shared_ptr<RadialTable> table;           // (|x|,|t|) lookup of phi
    RadialDesign synth;                           // radial rule used for synthesis

    Evaluator evaluator() const {
        auto tb = table;
        return [tb](const GroupPoint& p) { return cdouble(tb->eval(p.x.norm(), p.t.norm()), 0.0); };
    }
};

namespace wdetail {

inline double admissibility_1d(const std::function<cdouble(double, int)>& B, int l) {
    namespace bq = boost::math::quadrature;
    bq::exp_sinh<double> es;
    double v = 4.0 * kPi *
               es.integrate([&](double r) { return std::norm(B(r, l)) / r; }, 1e-9);
    if (!std::isfinite(v)) throw NotAdmissible("per-degree admissibility integral diverges");
    return v;
}

// composite 16-point Gauss-Legendre on [0, hi]: resolves the sinc oscillation
// of the radial synthesis integral when panels stay under a few periods
inline RadialDesign gl_design(double hi, int n) {
    static const double gx[8] = {0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
                                 0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
                                 0.9445750230732326, 0.9894009349916499};
    static const double gw[8] = {0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
                                 0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
                                 0.0622535239386479, 0.0271524594117541};
    RadialDesign d;
    int panels = (n + 15) / 16;
    double len = hi / panels;
    for (int pnl = 0; pnl < panels; ++pnl) {
        double mid = (pnl + 0.5) * len, half = 0.5 * len;
        for (int k = 7; k >= 0; --k) {
            d.r.push_back(mid - half * gx[k]);
            d.w.push_back(half * gw[k]);
        }
        for (int k = 0; k < 8; ++k) {
            d.r.push_back(mid + half * gx[k]);
            d.w.push_back(half * gw[k]);
        }
    }
    return d;
}

// Radial synthesis on a product of radial abscissas: the same integral as
// inverse_radial, organized so the degree sums are shared down each |x|
// column and the sinc sweep is a plain inner product per |t|.
inline std::vector<double> radial_synthesis(const std::function<cdouble(double, int)>& B, int L,
                                            const RadialDesign& rd, std::span<const double> xs,
                                            std::span<const double> ts) {
    const std::size_t nr = rd.r.size(), nx = xs.size(), nt = ts.size();
    std::vector<double> out(nx * nt);
    std::vector<cdouble> Bv(nr * (L + 1));
    for (std::size_t i = 0; i < nr; ++i)
        for (int l = 0; l <= L; ++l) Bv[i * (L + 1) + l] = B(rd.r[i], l);
    const double cnorm = 2.0 / std::pow(kPi, 4.0);
    std::vector<cdouble> A(nr);
    std::vector<double> diag(L + 1);
    for (std::size_t ix = 0; ix < nx; ++ix) {
        double xi = xs[ix];
        for (std::size_t i = 0; i < nr; ++i) {
            double r = rd.r[i];
            // chi_l(r, x) = sum_{n <= l} m_nn(xi; r): the second plane factor
            // is 1 on the diagonal at the origin
            double run = 0.0;
            cdouble acc = 0.0;
            for (int n = 0; n <= L; ++n) {
                diag[n] = plane_m(n, n, cdouble{xi, 0.0}, r).real();
                run += diag[n];
                acc += Bv[i * (L + 1) + n] * run;
            }
            A[i] = rd.w[i] * std::pow(r, 4.0) * acc;
        }
        for (std::size_t jt = 0; jt < nt; ++jt) {
            double tv = ts[jt];
            cdouble s = 0.0;
            for (std::size_t i = 0; i < nr; ++i) {
                double arg = rd.r[i] * tv;
                double snc = arg < 1e-12 ? 1.0 : std::sin(arg) / arg;
                s += A[i] * snc;
            }
            out[ix * nt + jt] = cnorm * s.real();
        }
    }
    return out;
}

inline std::shared_ptr<RadialTable> build_table(const std::function<cdouble(double, int)>& B,
                                                int L, const RadialDesign& rd, double x_max,
                                                double t_max, int nx, int nt) {
    auto tb = std::make_shared<RadialTable>();
    tb->nx = nx;
    tb->nt = nt;
    tb->hx = x_max / (nx - 1);
    tb->ht = t_max / (nt - 1);
    std::vector<double> xs(nx), ts(nt);
    for (int i = 0; i < nx; ++i) xs[i] = i * tb->hx;
    for (int j = 0; j < nt; ++j) ts[j] = j * tb->ht;
    tb->v = radial_synthesis(B, L, rd, xs, ts);
    return tb;
}

} // namespace wdetail

struct WaveletBuildOptions {
    // synthesis rule: composite GL sized so the largest sinc argument stays
    // resolved and the spectral tail beyond r_hi is negligible
    double r_hi = 20.0;
    int n_r = 1280;
    double table_x_max = 24.0, table_t_max = 48.0;
    int table_nx = 481, table_nt = 641;
};

// phi with spectral blocks eta((l+1)|a|) on each degree
inline Wavelet build_phi_eta(std::shared_ptr<RadialProfile> profile, int L,
                             WaveletBuildOptions opt = {}) {
    Wavelet w;
    w.L = L;
    w.profile = profile;
    auto eta = profile->eta;
    w.B = [eta](double r, int l) { return cdouble(eta((l + 1) * r), 0.0); };
    w.synth = wdetail::gl_design(opt.r_hi, opt.n_r);
    for (int l = 0; l <= L; ++l)
        w.per_degree_admissibility.push_back(wdetail::admissibility_1d(w.B, l));
    w.C = profile->C;
    w.table = wdetail::build_table(w.B, L, w.synth, opt.table_x_max, opt.table_t_max,
                                   opt.table_nx, opt.table_nt);
    return w;
}

// spectral image of phi under the central-multiplier Radon inverse chain:
// blocks (r/pi)^2 (-1)^l B(r,l). The multiplier shifts spectral mass to
// larger radii, so the synthesis rule extends further out.
inline Wavelet lrl_wavelet(const Wavelet& w, WaveletBuildOptions opt = {}) {
    Wavelet out;
    out.L = w.L;
    auto B0 = w.B;
    out.B = [B0](double r, int l) {
        double sgn = (l % 2) ? -1.0 : 1.0;
        return sgn * (r / kPi) * (r / kPi) * B0(r, l);
    };
    out.synth = wdetail::gl_design(opt.r_hi + 8.0, opt.n_r + 512);
    for (int l = 0; l <= w.L; ++l)
        out.per_degree_admissibility.push_back(wdetail::admissibility_1d(out.B, l));
    out.C = out.per_degree_admissibility[0];
    out.table = wdetail::build_table(out.B, w.L, out.synth, opt.table_x_max, opt.table_t_max,
                                     opt.table_nx, opt.table_nt);
    return out;
}

// per-degree Calderon integrals of a general field via spectral blocks on a
// radial node set
struct AdmissibilityReport {
    std::vector<double> per_degree;
    std::vector<double> low_shell_share; // contribution of the smallest radius per degree
    bool divergent = false;
};

inline AdmissibilityReport admissibility(const Field& f, int L, const RadialDesign& rd,
                                         const Vec3& direction, const GftOptions& opt = {}) {
    const FockLayout& lay = FockLayout::get(L);
    AdmissibilityReport rep;
    rep.per_degree.assign(L + 1, 0.0);
    rep.low_shell_share.assign(L + 1, 0.0);
    for (std::size_t i = 0; i < rd.r.size(); ++i) {
        Matrix M = gft_matrix(f, rd.r[i] * direction, L, opt);
        for (int l = 0; l <= L; ++l) {
            int b = lay.block_begin(l);
            double hs = 0.0;
            for (int r_ = 0; r_ < lay.dim(); ++r_)
                for (int c = 0; c < lay.block_dim(l); ++c) hs += std::norm(M(r_, b + c));
            double contrib = 4.0 * kPi * rd.w[i] * hs /
                             (lay.block_dim(l) * std::pow(rd.r[i], 3.0)) * rd.r[i] * rd.r[i];
            rep.per_degree[l] += contrib;
            if (i == 0) rep.low_shell_share[l] = contrib;
        }
    }
    for (int l = 0; l <= L; ++l)
        if (rep.per_degree[l] > 0 && rep.low_shell_share[l] / rep.per_degree[l] > 0.25)
            rep.divergent = true;
    return rep;
}

inline AdmissibilityReport admissibility(const Wavelet& w) {
    AdmissibilityReport rep;
    rep.per_degree = w.per_degree_admissibility;
    rep.low_shell_share.assign(rep.per_degree.size(), 0.0);
    return rep;
}

// ---------------------------------------------------------------------------
// Pointwise wavelet transform W f(g) = <f, U(g) phi>.

enum class WMethod { Inner, Convolution };

inline cdouble wtransform(const Field& f, const Wavelet& w, const AffinePoint& g,
                          WMethod method = WMethod::Inner) {
    if (!f.has_values()) throw MissingValues{};
    const GridSpec& gr = f.grid;
    if (method == WMethod::Inner) {
        Evaluator ug = rep_U(g, w.evaluator());
        cdouble acc = 0.0;
        for_each_index(gr, [&](const std::array<int, 7>& j, std::size_t flat) {
            acc += f.values[flat] * std::conj(ug(gr.point(j)));
        });
        return acc * cell_volume(gr);
    }
    // rho^{5/2} (f * tilde(phi)_{rho,u,v})(x,t)
    auto tb = w.table;
    double rho = g.rho;
    double amp5 = std::pow(rho, -5.0), isr = 1.0 / std::sqrt(rho), ir = 1.0 / rho;
    UnitQuat uc = g.u.conjugated(), vc = g.v.conjugated();
    auto phi_ruv_tilde = [&](const GroupPoint& z) {
        // conj(phi_{rho,u,v}(-z)) with real phi
        Quat xa = isr * (uc.q() * (-z.x) * g.v.q());
        Vec3 ta = ir * rotate_im(vc, -z.t);
        return amp5 * tb->eval(xa.norm(), ta.norm());
    };
    GroupPoint target{g.x, g.t};
    cdouble acc = 0.0;
    for_each_index(gr, [&](const std::array<int, 7>& j, std::size_t flat) {
        GroupPoint ys = gr.point(j);
        acc += f.values[flat] * phi_ruv_tilde(gmul(ginv(ys), target));
    });
    return acc * cell_volume(gr) * std::pow(rho, 2.5);
}

// ---------------------------------------------------------------------------
// Scale quadrature

struct RhoDesign {
    std::vector<double> rho;
    double dln = 0.0;

    static RhoDesign logspaced(double lo, double hi, int n) {
        RhoDesign d;
        d.dln = std::log(hi / lo) / n;
        for (int i = 0; i < n; ++i) d.rho.push_back(lo * std::exp((i + 0.5) * d.dln));
        return d;
    }
    // cover eta((l+1) rho |a|) for the given frequency band up to degree L
    static RhoDesign for_band(const RadialProfile& p, double a_lo, double a_hi, int L,
                              int n = 32) {
        return logspaced(p.u_lo / ((L + 1) * a_hi), p.u_hi / a_lo, n);
    }

    // c_l(|a|) = ∫ |B(rho |a|, l)|^2 d rho / rho for diagonal-real B
    double scale_sum(const std::function<cdouble(double, int)>& B, double anorm, int l) const {
        double acc = 0.0;
        for (double r : rho) acc += std::norm(B(r * anorm, l));
        return acc * dln;
    }
};

// ---------------------------------------------------------------------------
// Spectral per-slice engine shared by the energy, reconstruction and Radon
// inversion paths. Walks the central-frequency lattice, analyzes each slice
// that carries energy, applies per-degree factors, and optionally
// resynthesizes.

struct SliceWeights {
    // factor applied to the degree-l column block at frequency a
    std::function<cdouble(const Vec3&, int)> factor;
};

namespace wdetail {

template <typename PerSlice>
void for_each_energetic_slice(const Field& f, double rel_threshold, PerSlice&& body) {
    Field F2 = fourier_central(f, Direction::Forward);
    const GridSpec& g = f.grid;
    const std::size_t nt3 = g.n_ttotal();
    std::vector<double> en(nt3, 0.0);
    for (std::size_t xi = 0; xi < g.n_xtotal(); ++xi) {
        const cdouble* base = &F2.values[xi * nt3];
        for (std::size_t k = 0; k < nt3; ++k) en[k] += std::norm(base[k]);
    }
    double emax = 0.0;
    for (double e : en) emax = std::max(emax, e);
    for_each_afreq(g, [&](const std::array<int, 3>& m, std::size_t flat) {
        Vec3 a{g.anode(m[0]), g.anode(m[1]), g.anode(m[2])};
        if (a.norm2() < 1e-28) return;
        if (en[flat] <= rel_threshold * emax) return;
        auto slice = detail::extract_slice(F2, m);
        body(m, a, slice, en[flat]);
    });
}

inline SliceFn slice_fn_of(std::span<const cdouble> slice, const GridSpec& g,
                           const GftOptions& opt) {
    const int n = g.n_x;
    const double h = g.hx();
    const double period = n * h;
    auto fine = dft::refine4(slice, n, opt.oversample);
    int nf = n * opt.oversample;
    double hf = h / opt.oversample;
    return [fine = std::move(fine), nf, hf, period](std::span<const Quat> pts,
                                                    std::span<cdouble> out) {
        for (std::size_t i = 0; i < pts.size(); ++i) {
            double pt[4] = {pts[i].w, pts[i].x, pts[i].y, pts[i].z};
            bool clip = false;
            out[i] = dft::interp4_periodic(fine, nf, hf, period, pt, clip);
        }
    };
}

} // namespace wdetail

// Wavelet-transform energy ∫ |W f|^2 dx dt d rho / rho^6 computed spectrally:
// per slice (1/2 pi^5)|a|^2 sum_l c_l(a) ||\hat f(a) P_l||_HS^2, integrated
// over the central-frequency lattice.
inline double wavelet_energy(const Field& f, const Wavelet& w, const RhoDesign& rho,
                             const GftOptions& opt = {}, double slice_threshold = 1e-10) {
    const FockLayout& lay = FockLayout::get(w.L);
    const GridSpec& g = f.grid;
    double E = 0.0;
    const double da3 = std::pow(g.da(), 3.0);
    wdetail::for_each_energetic_slice(
        f, slice_threshold, [&](const std::array<int, 3>&, const Vec3& a,
                                std::span<const cdouble> slice, double) {
            Matrix M = gft_slice(a, w.L, wdetail::slice_fn_of(slice, g, opt), opt.ngh);
            double an = a.norm();
            double acc = 0.0;
            for (int l = 0; l <= w.L; ++l) {
                int b = lay.block_begin(l);
                double hs = 0.0;
                for (int r_ = 0; r_ < lay.dim(); ++r_)
                    for (int c = 0; c < lay.block_dim(l); ++c) hs += std::norm(M(r_, b + c));
                acc += rho.scale_sum(w.B, an, l) * hs;
            }
            E += acc * an * an * da3 / (2.0 * std::pow(kPi, 5.0));
        });
    return E;
}

// kappa^ = [∫ |W f|^2 dm_l-reduced] / (C ||f||^2)
inline double calibrate_kappa(const Field& f, const Wavelet& w, const RhoDesign& rho,
                              const GftOptions& opt = {}) {
    double n2 = 0.0;
    for (const cdouble& v : f.values) n2 += std::norm(v);
    n2 *= cell_volume(f.grid);
    return wavelet_energy(f, w, rho, opt) / (w.C * n2);
}

// Coefficients of f against the wavelet over the (y,s) grid and scale nodes.
// Held spectrally (through the analyzed field) plus optional explicit point
// samples for dumps.
struct WaveletCoefficients {
    Field source;
    RhoDesign rho;
    struct Sample {
        GroupPoint p;
        double rho;
        cdouble value;
    };
    std::vector<Sample> samples;
};

inline WaveletCoefficients analyze(const Field& f, const Wavelet& w, const RhoDesign& rho,
                                   std::span<const std::pair<GroupPoint, double>> sample_at = {}) {
    WaveletCoefficients c;
    c.source = f;
    c.rho = rho;
    for (const auto& [p, r] : sample_at) {
        AffinePoint g{p.x, p.t, r, UnitQuat{}, UnitQuat{}};
        c.samples.push_back({p, r, wtransform(f, w, g, WMethod::Inner)});
    }
    return c;
}

// Discretization of the radial reconstruction formula with the measured
// constant kappa * C in place of the nominal one: per slice the degree-l
// block picks up c_l(a) / (kappa C).
inline Field reconstruct(const WaveletCoefficients& coeffs, const Wavelet& w, double kappa,
                         const GftOptions& opt = {}) {
    const Field& f = coeffs.source;
    const GridSpec& g = f.grid;
    const FockLayout& lay = FockLayout::get(w.L);
    Field F2out(g, DomainTag::Mixed);
    F2out.values.assign(g.size(), cdouble{0, 0});
    std::vector<Quat> xpts(g.n_xtotal());
    {
        std::size_t xi = 0;
        for (int j0 = 0; j0 < g.n_x; ++j0)
            for (int j1 = 0; j1 < g.n_x; ++j1)
                for (int j2 = 0; j2 < g.n_x; ++j2)
                    for (int j3 = 0; j3 < g.n_x; ++j3)
                        xpts[xi++] = Quat{g.xnode(j0), g.xnode(j1), g.xnode(j2), g.xnode(j3)};
    }
    std::vector<cdouble> synth(g.n_xtotal());
    wdetail::for_each_energetic_slice(
        f, 1e-10, [&](const std::array<int, 3>& m, const Vec3& a,
                      std::span<const cdouble> slice, double) {
            Matrix M = gft_slice(a, w.L, wdetail::slice_fn_of(slice, g, opt), opt.ngh);
            double an = a.norm();
            for (int l = 0; l <= w.L; ++l) {
                double fac = coeffs.rho.scale_sum(w.B, an, l) / (kappa * w.C);
                int b = lay.block_begin(l);
                for (int c = 0; c < lay.block_dim(l); ++c) M.col(b + c) *= fac;
            }
            synth_slice(a, w.L, M, xpts, synth);
            detail::insert_slice(F2out, m, synth);
        });
    Field out = fourier_central(F2out, Direction::Inverse);
    out.prov.method = "wavelet-reconstruct";
    return out;
}

// Radon inversion through the wavelet route: coefficients of g against the
// multiplier image of phi, reconstructed with the rho^{-8} measure. Per
// slice the degree-l block of \hat g(a) is scaled by
//   sum_i dln rho_i^{-2} conj(B_psi(rho_i |a|, l)) B_phi(rho_i |a|, l) / (kappa C).
inline Field radon_inv_wavelet(const Field& gfield, const Wavelet& phi, double kappa,
                               const RhoDesign& rho, const GftOptions& opt = {}) {
    // analysis wavelet: spectral blocks of the multiplier image of phi
    auto phiB = phi.B;
    auto psiB = [phiB](double r, int l) {
        double sgn = (l % 2) ? -1.0 : 1.0;
        return sgn * (r / kPi) * (r / kPi) * phiB(r, l);
    };
    const GridSpec& g = gfield.grid;
    const FockLayout& lay = FockLayout::get(phi.L);
    Field F2out(g, DomainTag::Mixed);
    F2out.values.assign(g.size(), cdouble{0, 0});
    std::vector<Quat> xpts(g.n_xtotal());
    {
        std::size_t xi = 0;
        for (int j0 = 0; j0 < g.n_x; ++j0)
            for (int j1 = 0; j1 < g.n_x; ++j1)
                for (int j2 = 0; j2 < g.n_x; ++j2)
                    for (int j3 = 0; j3 < g.n_x; ++j3)
                        xpts[xi++] = Quat{g.xnode(j0), g.xnode(j1), g.xnode(j2), g.xnode(j3)};
    }
    std::vector<cdouble> synth(g.n_xtotal());
    wdetail::for_each_energetic_slice(
        gfield, 1e-10, [&](const std::array<int, 3>& m, const Vec3& a,
                           std::span<const cdouble> slice, double) {
            Matrix M = gft_slice(a, phi.L, wdetail::slice_fn_of(slice, g, opt), opt.ngh);
            double an = a.norm();
            for (int l = 0; l <= phi.L; ++l) {
                cdouble fac = 0.0;
                for (double r : rho.rho)
                    fac += std::conj(psiB(r * an, l)) * phi.B(r * an, l) / (r * r);
                fac *= rho.dln / (kappa * phi.C);
                int b = lay.block_begin(l);
                for (int c = 0; c < lay.block_dim(l); ++c) M.col(b + c) *= fac;
            }
            synth_slice(a, phi.L, M, xpts, synth);
            detail::insert_slice(F2out, m, synth);
        });
    Field out = fourier_central(F2out, Direction::Inverse);
    out.prov.method = "radon-inverse-wavelet";
    return out;
}

} // namespace qheis
