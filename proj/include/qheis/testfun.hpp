#pragma once

// Test-function factory: Gaussians, monomial-weighted Gaussians, functions
// with all central moments vanishing (built from a compactly supported radial
// frequency profile), and a Lipschitz tent variant.

#include <functional>

#include "qheis/fourier.hpp"

namespace qheis {

struct BadParams : std::invalid_argument {
    explicit BadParams(const std::string& m) : std::invalid_argument(m) {}
};

struct TestFunction {
    Field field;
    bool lizorkin = false;
    double a_min = 0.0, a_max = 0.0;
    // x-separable closed form: field = xpart(x) * central(t)
    std::function<double(const Quat&)> xpart;
    // closed-form radial frequency profile of the central factor, if any
    std::function<double(double)> hhat_radial;
    // closed form of the full transform F f (y,a), if known
    std::function<cdouble(const Quat&, const Vec3&)> fourier_form;
};

namespace detail {

// composite Gauss-Legendre nodes on [a,b]
struct GL {
    std::vector<double> x, w;
    GL(double a, double b, int n) {
        // 16-point rule per panel
        static const double gx[8] = {0.0950125098376374, 0.2816035507792589,
                                     0.4580167776572274, 0.6178762444026438,
                                     0.7554044083550030, 0.8656312023878318,
                                     0.9445750230732326, 0.9894009349916499};
        static const double gw[8] = {0.1894506104550685, 0.1826034150449236,
                                     0.1691565193950025, 0.1495959888165767,
                                     0.1246289712555339, 0.0951585116824928,
                                     0.0622535239386479, 0.0271524594117541};
        int panels = (n + 15) / 16;
        double len = (b - a) / panels;
        for (int p = 0; p < panels; ++p) {
            double lo = a + p * len, mid = lo + 0.5 * len, half = 0.5 * len;
            for (int k = 0; k < 8; ++k) {
                x.push_back(mid - half * gx[k]);
                w.push_back(half * gw[k]);
                x.push_back(mid + half * gx[k]);
                w.push_back(half * gw[k]);
            }
        }
    }
};

inline double bump_profile(double r, double lo, double hi, double power) {
    double xi = (2.0 * r - (hi + lo)) / (hi - lo);
    if (std::abs(xi) >= 1.0) return 0.0;
    return std::exp(power - power / (1.0 - xi * xi));
}

// h(t) from a radial central-frequency profile:
// h(t) = (1/2 pi^2 |t|) \int hhat(r) r sin(r|t|) dr, with the |t|->0 limit.
inline std::function<double(double)> radial_profile_to_central(
    std::function<double(double)> hhat, double lo, double hi) {
    auto quad = std::make_shared<GL>(lo, hi, 256);
    return [hhat = std::move(hhat), quad](double tn) {
        double acc = 0.0;
        if (tn < 1e-12) {
            for (std::size_t i = 0; i < quad->x.size(); ++i)
                acc += quad->w[i] * hhat(quad->x[i]) * quad->x[i] * quad->x[i];
            return acc / (2.0 * kPi * kPi);
        }
        for (std::size_t i = 0; i < quad->x.size(); ++i)
            acc += quad->w[i] * hhat(quad->x[i]) * quad->x[i] * std::sin(quad->x[i] * tn);
        return acc / (2.0 * kPi * kPi * tn);
    };
}

// sample hhat(|a|) on the t-frequency grid, transform to t samples
inline std::vector<double> central_grid_from_profile(const GridSpec& g,
                                                     const std::function<double(double)>& hhat) {
    std::vector<cdouble> vals(g.n_ttotal());
    for_each_afreq(g, [&](const std::array<int, 3>& m, std::size_t flat) {
        Vec3 a{g.anode(m[0]), g.anode(m[1]), g.anode(m[2])};
        vals[flat] = hhat(a.norm());
    });
    int dims[3] = {g.n_t, g.n_t, g.n_t};
    int axes[3] = {0, 1, 2};
    double ht = g.ht();
    double steps[3] = {ht, ht, ht};
    dft::transform(vals.data(), dims, axes, steps, true);
    std::vector<double> out(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) out[i] = vals[i].real();
    return out;
}

// assemble values of xpart(x) * central[t] on the grid
inline void product_values(Field& f, const std::function<double(const Quat&)>& xpart,
                           const std::vector<double>& central) {
    const GridSpec& g = f.grid;
    f.values.resize(g.size());
    const std::size_t nt3 = g.n_ttotal();
    std::size_t xi = 0;
    for (int j0 = 0; j0 < g.n_x; ++j0)
        for (int j1 = 0; j1 < g.n_x; ++j1)
            for (int j2 = 0; j2 < g.n_x; ++j2)
                for (int j3 = 0; j3 < g.n_x; ++j3) {
                    double gv = xpart(Quat{g.xnode(j0), g.xnode(j1), g.xnode(j2), g.xnode(j3)});
                    cdouble* dst = &f.values[xi * nt3];
                    for (std::size_t k = 0; k < nt3; ++k) dst[k] = gv * central[k];
                    ++xi;
                }
}

} // namespace detail

struct GaussianParams {
    double p = 0.5; // x falloff
    double q = 0.125; // t falloff
};

inline TestFunction make_gaussian(const GridSpec& g, GaussianParams prm) {
    if (!(prm.p > 0) || !(prm.q > 0)) throw BadParams("gaussian: p,q must be positive");
    TestFunction tf;
    double p = prm.p, q = prm.q;
    Evaluator form = [p, q](const GroupPoint& pt) {
        return cdouble(std::exp(-p * pt.x.norm2() - q * pt.t.norm2()), 0.0);
    };
    tf.field = sample(form, g);
    tf.xpart = [p](const Quat& x) { return std::exp(-p * x.norm2()); };
    tf.hhat_radial = [q](double r) {
        return std::pow(kPi / q, 1.5) * std::exp(-r * r / (4.0 * q));
    };
    tf.fourier_form = [p, q](const Quat& y, const Vec3& a) {
        double amp = kPi * kPi / (p * p) * std::pow(kPi / q, 1.5);
        return cdouble(amp * std::exp(-y.norm2() / (4 * p) - a.norm2() / (4 * q)), 0.0);
    };
    return tf;
}

// x_axis-component monomial times a Gaussian; odd in that coordinate
inline TestFunction make_poly_gaussian(const GridSpec& g, int axis, GaussianParams prm) {
    if (axis < 0 || axis > 3) throw BadParams("polyGaussian: axis must be 0..3");
    if (!(prm.p > 0) || !(prm.q > 0)) throw BadParams("polyGaussian: p,q must be positive");
    TestFunction tf;
    double p = prm.p, q = prm.q;
    Evaluator form = [p, q, axis](const GroupPoint& pt) {
        const double c[4] = {pt.x.w, pt.x.x, pt.x.y, pt.x.z};
        return cdouble(c[axis] * std::exp(-p * pt.x.norm2() - q * pt.t.norm2()), 0.0);
    };
    tf.field = sample(form, g);
    tf.xpart = [p, axis](const Quat& x) {
        const double c[4] = {x.w, x.x, x.y, x.z};
        return c[axis] * std::exp(-p * x.norm2());
    };
    tf.hhat_radial = [q](double r) {
        return std::pow(kPi / q, 1.5) * std::exp(-r * r / (4.0 * q));
    };
    return tf;
}

struct LizorkinParams {
    double p = 1.0;      // x falloff
    double a_min = 0.42; // frequency band of the central factor
    double a_max = 0.92;
    double power = 1.0;  // bump steepness
    int poly_axis = -1;  // >= 0: multiply the x-part by that coordinate
};

// Gaussian x-factor times a central factor whose frequency profile is a
// smooth bump supported in [a_min, a_max]. Grid values are built in the
// frequency domain, so every central moment of the sampled field vanishes
// identically and the central transform is zero outside the band.
inline TestFunction make_lizorkin(const GridSpec& g, LizorkinParams prm) {
    if (!(prm.a_min > 0) || !(prm.a_max > prm.a_min))
        throw BadParams("lizorkin: need 0 < a_min < a_max");
    if (prm.a_max >= kPi / g.ht())
        throw BadParams("lizorkin: band exceeds the central Nyquist box");
    TestFunction tf;
    tf.lizorkin = true;
    tf.a_min = prm.a_min;
    tf.a_max = prm.a_max;
    double p = prm.p;
    tf.hhat_radial = [prm](double r) {
        return detail::bump_profile(r, prm.a_min, prm.a_max, prm.power);
    };
    auto hfun = detail::radial_profile_to_central(tf.hhat_radial, prm.a_min, prm.a_max);
    int ax = prm.poly_axis;
    std::function<double(const Quat&)> xpart;
    if (ax < 0)
        xpart = [p](const Quat& x) { return std::exp(-p * x.norm2()); };
    else
        xpart = [p, ax](const Quat& x) {
            const double c[4] = {x.w, x.x, x.y, x.z};
            return c[ax] * std::exp(-p * x.norm2());
        };
    Evaluator form = [xpart, hfun](const GroupPoint& pt) {
        return cdouble(xpart(pt.x) * hfun(pt.t.norm()), 0.0);
    };
    tf.field = Field(g, DomainTag::Spatial);
    tf.field.form = form;
    tf.xpart = xpart;
    auto central = detail::central_grid_from_profile(g, tf.hhat_radial);
    detail::product_values(tf.field, tf.xpart, central);
    tf.fourier_form = [p, hh = tf.hhat_radial](const Quat& y, const Vec3& a) {
        return cdouble(kPi * kPi / (p * p) * std::exp(-y.norm2() / (4 * p)) * hh(a.norm()), 0.0);
    };
    return tf;
}

// Lipschitz-but-not-smooth x-factor (radial tent) times the banded central
// factor; used to exercise reconstruction paths on non-smooth data.
inline TestFunction make_tent_lizorkin(const GridSpec& g, double radius, LizorkinParams prm) {
    if (!(radius > 0)) throw BadParams("tent: radius must be positive");
    TestFunction tf = make_lizorkin(g, prm);
    auto hfun = detail::radial_profile_to_central(tf.hhat_radial, prm.a_min, prm.a_max);
    auto tent = [radius](const Quat& x) { return std::max(0.0, 1.0 - x.norm() / radius); };
    tf.field = Field(g, DomainTag::Spatial);
    tf.field.form = [tent, hfun](const GroupPoint& pt) {
        return cdouble(tent(pt.x) * hfun(pt.t.norm()), 0.0);
    };
    tf.xpart = tent;
    auto central = detail::central_grid_from_profile(g, tf.hhat_radial);
    detail::product_values(tf.field, tent, central);
    tf.fourier_form = nullptr;
    return tf;
}

} // namespace qheis
