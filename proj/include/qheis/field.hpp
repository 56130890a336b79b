#pragma once

// Functions on Q held as sampled grids and/or closed-form evaluators:
// sampling, multilinear interpolation, Riemann quadrature, the involution
// f~(x,t) = conj f(-x,-t), function-level dilation/rotation, and the flat
// binary save/load format.

#include <atomic>
#include <complex>
#include <cstring>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "qheis/grid.hpp"

namespace qheis {

using cdouble = std::complex<double>;

struct GridMismatch : std::invalid_argument {
    GridMismatch() : std::invalid_argument("fields live on different grids") {}
};
struct NonFiniteSample : std::runtime_error {
    NonFiniteSample() : std::runtime_error("evaluator produced a non-finite sample") {}
};

enum class DomainTag { Spatial, Mixed, Frequency };

// bookkeeping carried along transform chains
struct Provenance {
    std::uint64_t clipped_targets = 0; // resample targets outside the fundamental box
    bool a0_zeroed = false;            // a=0 slice zeroed or negative-power factor suppressed
    std::string method;
};

class Field {
  public:
    GridSpec grid;
    DomainTag tag = DomainTag::Spatial;
    std::vector<cdouble> values;   // empty when form-only
    Evaluator form;                // may be null when sampled-only
    Provenance prov;

    Field() : oob_(std::make_shared<std::atomic<std::uint64_t>>(0)) {}
    explicit Field(GridSpec g, DomainTag d = DomainTag::Spatial)
        : grid(g), tag(d), oob_(std::make_shared<std::atomic<std::uint64_t>>(0)) {
        grid.validate();
    }

    bool has_values() const { return !values.empty(); }
    std::uint64_t out_of_domain_count() const { return oob_->load(); }
    void reset_out_of_domain_count() const { oob_->store(0); }
    void note_out_of_domain() const { oob_->fetch_add(1, std::memory_order_relaxed); }

    cdouble at(const std::array<int, 7>& j) const { return values[grid.index(j)]; }

  private:
    std::shared_ptr<std::atomic<std::uint64_t>> oob_;
};

inline Field sample(const Evaluator& form, const GridSpec& g, DomainTag tag = DomainTag::Spatial) {
    Field f(g, tag);
    f.values.resize(g.size());
    f.form = form;
    for_each_index(g, [&](const std::array<int, 7>& j, std::size_t flat) {
        cdouble v = form(g.point(j));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NonFiniteSample{};
        f.values[flat] = v;
    });
    return f;
}

// Separable multilinear interpolation (4-linear in x, 3-linear in t).
// Returns 0 outside the grid hull and bumps the out-of-domain tally.
inline cdouble interp_eval(const Field& f, const GroupPoint& p) {
    const GridSpec& g = f.grid;
    double gx[7] = {p.x.w, p.x.x, p.x.y, p.x.z, p.t.x, p.t.y, p.t.z};
    int i0[7];
    double fr[7];
    for (int k = 0; k < 7; ++k) {
        bool isx = k < 4;
        double h = isx ? g.hx() : g.ht();
        int n = isx ? g.n_x : g.n_t;
        double u = gx[k] / h + n / 2;
        double fl = std::floor(u);
        i0[k] = int(fl);
        fr[k] = u - fl;
        if (i0[k] < 0 || i0[k] > n - 2) {
            if (i0[k] == n - 1 && fr[k] < 1e-12) { // exactly on the last node
                i0[k] = n - 2;
                fr[k] = 1.0;
            } else {
                f.note_out_of_domain();
                return {0.0, 0.0};
            }
        }
    }
    cdouble acc = 0.0;
    for (int b = 0; b < 128; ++b) {
        double w = 1.0;
        std::array<int, 7> j;
        for (int k = 0; k < 7; ++k) {
            int bit = (b >> k) & 1;
            w *= bit ? fr[k] : 1.0 - fr[k];
            j[k] = i0[k] + bit;
        }
        if (w != 0.0) acc += w * f.values[f.grid.index(j)];
    }
    return acc;
}

inline double cell_volume(const GridSpec& g) {
    double hx = g.hx(), ht = g.ht();
    return hx * hx * hx * hx * ht * ht * ht;
}

inline cdouble integrate(const Field& f) {
    cdouble s = 0.0;
    for (const cdouble& v : f.values) s += v;
    return s * cell_volume(f.grid);
}

// <f,g> with the second argument conjugated
inline cdouble inner(const Field& f, const Field& g) {
    if (!f.grid.same_as(g.grid)) throw GridMismatch{};
    cdouble s = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i) s += f.values[i] * std::conj(g.values[i]);
    return s * cell_volume(f.grid);
}

inline double l2norm(const Field& f) {
    double s = 0.0;
    for (const cdouble& v : f.values) s += std::norm(v);
    return std::sqrt(s * cell_volume(f.grid));
}

// f~(x,t) = conj f(-x,-t). Uses the closed form when present; otherwise the
// index flip j -> (n-j) mod n, which wraps the lowest hyperplane periodically.
inline Field involution_tilde(const Field& f) {
    Field out(f.grid, f.tag);
    if (f.form) {
        Evaluator inner_form = f.form;
        out.form = [inner_form](const GroupPoint& p) {
            return std::conj(inner_form(GroupPoint{-p.x, -p.t}));
        };
    }
    if (f.has_values()) {
        out.values.resize(f.grid.size());
        for_each_index(f.grid, [&](const std::array<int, 7>& j, std::size_t flat) {
            std::array<int, 7> jr;
            for (int k = 0; k < 4; ++k) jr[k] = (f.grid.n_x - j[k]) % f.grid.n_x;
            for (int k = 4; k < 7; ++k) jr[k] = (f.grid.n_t - j[k]) % f.grid.n_t;
            out.values[flat] = std::conj(f.values[f.grid.index(jr)]);
        });
    }
    return out;
}

// f_rho(x,t) = rho^{-5} f(x/sqrt(rho), t/rho); preserves the integral.
inline Field func_dilate(const Field& f, double rho) {
    if (!(rho > 0)) throw NonPositiveScale{};
    Field out(f.grid, f.tag);
    double amp = std::pow(rho, -5.0), isr = 1.0 / std::sqrt(rho), ir = 1.0 / rho;
    if (f.form) {
        Evaluator inner_form = f.form;
        out.form = [inner_form, amp, isr, ir](const GroupPoint& p) {
            return amp * inner_form(GroupPoint{isr * p.x, ir * p.t});
        };
    }
    if (f.has_values()) {
        if (!out.form) throw std::invalid_argument("func_dilate on sampled-only field needs a form");
        out.values.resize(f.grid.size());
        for_each_index(f.grid, [&](const std::array<int, 7>& j, std::size_t flat) {
            out.values[flat] = out.form(f.grid.point(j));
        });
    }
    return out;
}

// f_{u,v}(x,t) = f(conj(u) x v, conj(v) t v); measure preserving.
inline Field func_rotate(const Field& f, const UnitQuat& u, const UnitQuat& v) {
    Field out(f.grid, f.tag);
    if (f.form) {
        Evaluator inner_form = f.form;
        out.form = [inner_form, u, v](const GroupPoint& p) {
            return inner_form(GroupPoint{conj(u.q()) * p.x * v.q(), rotate_im(v.conjugated(), p.t)});
        };
    }
    if (f.has_values()) {
        if (!out.form) throw std::invalid_argument("func_rotate on sampled-only field needs a form");
        out.values.resize(f.grid.size());
        for_each_index(f.grid, [&](const std::array<int, 7>& j, std::size_t flat) {
            out.values[flat] = out.form(f.grid.point(j));
        });
    }
    return out;
}

// ---------------------------------------------------------------------------
// Flat binary format: 64-byte header (magic "QHF1", grid parameters in
// GridSpec order), then little-endian f64 (re,im) pairs in row-major
// (x0,x1,x2,x3,t1,t2,t3) order. Round trip is bit exact.

struct IOError : std::runtime_error {
    explicit IOError(const std::string& m) : std::runtime_error(m) {}
};

inline void save_field(const Field& f, const std::string& path) {
    if (!f.has_values()) throw IOError("save_field: field has no values");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IOError("save_field: cannot open " + path);
    char header[64] = {};
    std::memcpy(header, "QHF1", 4);
    std::int32_t tag = int(f.tag);
    std::memcpy(header + 4, &tag, 4);
    std::memcpy(header + 8, &f.grid.half_extent_x, 8);
    std::int64_t nx = f.grid.n_x, nt = f.grid.n_t;
    std::memcpy(header + 16, &nx, 8);
    std::memcpy(header + 24, &f.grid.half_extent_t, 8);
    std::memcpy(header + 32, &nt, 8);
    os.write(header, 64);
    os.write(reinterpret_cast<const char*>(f.values.data()),
             std::streamsize(f.values.size() * sizeof(cdouble)));
    if (!os) throw IOError("save_field: write failed");
}

inline Field load_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IOError("load_field: cannot open " + path);
    char header[64];
    is.read(header, 64);
    if (!is || std::memcmp(header, "QHF1", 4) != 0) throw IOError("load_field: bad magic");
    std::int32_t tag;
    std::int64_t nx, nt;
    GridSpec g;
    std::memcpy(&tag, header + 4, 4);
    std::memcpy(&g.half_extent_x, header + 8, 8);
    std::memcpy(&nx, header + 16, 8);
    std::memcpy(&g.half_extent_t, header + 24, 8);
    std::memcpy(&nt, header + 32, 8);
    g.n_x = int(nx);
    g.n_t = int(nt);
    Field f(g, DomainTag(tag));
    f.values.resize(g.size());
    is.read(reinterpret_cast<char*>(f.values.data()),
            std::streamsize(f.values.size() * sizeof(cdouble)));
    if (!is) throw IOError("load_field: truncated data");
    return f;
}

} // namespace qheis
