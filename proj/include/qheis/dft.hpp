#pragma once

// Centered discrete transforms realized with FFTW, plus band-limited slice
// resampling: trigonometric upsampling, periodic multilinear interpolation,
// and nonuniform evaluation helpers.
//
// Conventions. Nodes x_j = (j - n/2) h, frequencies y_k = (k - n/2) dy with
// dy = 2 pi / (n h). The forward transform approximates the continuous
// integral with kernel e^{+i x y} and carries the factor h per axis; the
// inverse carries e^{-i x y} and 1/(n h) per axis, so inv(fwd(f)) = f.

#include <fftw3.h>

#include <complex>
#include <span>
#include <vector>

#include "qheis/grid.hpp"

namespace qheis::dft {

using cdouble = std::complex<double>;

// e^{s 2 pi i (j-n/2)(k-n/2)/n} = e^{s 2 pi i jk/n} (-1)^j (-1)^k i^{s n}
inline cdouble corner_phase(int n, int sign) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return sign > 0 ? cdouble{0, 1} : cdouble{0, -1};
        case 2: return {-1, 0};
        default: return sign > 0 ? cdouble{0, -1} : cdouble{0, 1};
    }
}

// One centered-DFT pass along `axis` of a row-major array with shape `dims`.
// sign=+1 applies kernel e^{+2 pi i (j-n/2)(k-n/2)/n}, sign=-1 its conjugate.
// `scale` multiplies the result.
inline void centered_pass(cdouble* data, std::span<const int> dims, int axis, int sign,
                          cdouble scale) {
    const int n = dims[axis];
    std::size_t inner = 1, outer = 1;
    for (std::size_t k = axis + 1; k < dims.size(); ++k) inner *= dims[k];
    for (int k = 0; k < axis; ++k) outer *= dims[k];

    // alternate-sign pre-phase
    for (std::size_t o = 0; o < outer; ++o)
        for (int j = 1; j < n; j += 2) {
            cdouble* row = data + (o * n + j) * inner;
            for (std::size_t i = 0; i < inner; ++i) row[i] = -row[i];
        }

    fftw_iodim64 tdim{n, std::int64_t(inner), std::int64_t(inner)};
    fftw_iodim64 loops[2] = {{std::int64_t(outer), std::int64_t(n * inner), std::int64_t(n * inner)},
                             {std::int64_t(inner), 1, 1}};
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_plan plan = fftw_plan_guru64_dft(1, &tdim, 2, loops, p, p,
                                          sign > 0 ? FFTW_BACKWARD : FFTW_FORWARD, FFTW_ESTIMATE);
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    cdouble cp = corner_phase(n, sign) * scale;
    for (std::size_t o = 0; o < outer; ++o)
        for (int k = 0; k < n; ++k) {
            cdouble f = (k % 2 ? -cp : cp);
            cdouble* row = data + (o * n + k) * inner;
            for (std::size_t i = 0; i < inner; ++i) row[i] *= f;
        }
}

// Continuous-normalization transform along the given axes.
// forward: per axis factor h and kernel e^{+i x y}
// inverse: per axis factor 1/(n h) and kernel e^{-i x y}
inline void transform(cdouble* data, std::span<const int> dims, std::span<const int> axes,
                      std::span<const double> steps, bool inverse) {
    for (std::size_t k = 0; k < axes.size(); ++k) {
        int ax = axes[k];
        double h = steps[k];
        double sc = inverse ? 1.0 / (dims[ax] * h) : h;
        centered_pass(data, dims, ax, inverse ? -1 : +1, cdouble{sc, 0});
    }
}

// ---------------------------------------------------------------------------
// 4-D slice helpers. A slice is an n^4 row-major array of samples with
// spacing h on the centered grid; its trig interpolant is periodic with
// period n h per axis.

// Trigonometric upsampling by an integer factor m (same extent, spacing h/m).
inline std::vector<cdouble> refine4(std::span<const cdouble> slice, int n, int m) {
    std::vector<cdouble> coeff(slice.begin(), slice.end());
    int dims[4] = {n, n, n, n};
    for (int ax = 0; ax < 4; ++ax)
        centered_pass(coeff.data(), dims, ax, -1, cdouble{1.0 / n, 0});
    const int n2 = n * m;
    std::vector<cdouble> pad(std::size_t(n2) * n2 * n2 * n2, cdouble{0, 0});
    const int s0 = (n2 - n) / 2;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const cdouble* src = &coeff[std::size_t(((a * n + b) * n + c)) * n];
                cdouble* dst = &pad[((std::size_t(a + s0) * n2 + (b + s0)) * n2 + (c + s0)) * n2 + s0];
                for (int d = 0; d < n; ++d) dst[d] = src[d];
            }
    int dims2[4] = {n2, n2, n2, n2};
    for (int ax = 0; ax < 4; ++ax)
        centered_pass(pad.data(), dims2, ax, +1, cdouble{1, 0});
    return pad;
}

// Periodic multilinear interpolation of a refined slice at a 4-vector point.
// Points inside the fundamental box (|coord| <= period/2) wrap across the
// asymmetric grid edge; points outside return 0 and report clipped=true.
inline cdouble interp4_periodic(std::span<const cdouble> fine, int n, double h, double period,
                                const double pt[4], bool& clipped) {
    double fr[4];
    int i0[4];
    for (int k = 0; k < 4; ++k) {
        if (std::abs(pt[k]) > 0.5 * period) {
            clipped = true;
            return {0, 0};
        }
        double u = pt[k] / h + n / 2;
        double fl = std::floor(u);
        i0[k] = int(fl) % n;
        if (i0[k] < 0) i0[k] += n;
        fr[k] = u - fl;
    }
    clipped = false;
    cdouble acc = 0.0;
    for (int b = 0; b < 16; ++b) {
        double w = 1.0;
        std::size_t idx = 0;
        for (int k = 0; k < 4; ++k) {
            int bit = (b >> k) & 1;
            w *= bit ? fr[k] : 1.0 - fr[k];
            int j = i0[k] + bit;
            if (j >= n) j -= n;
            idx = idx * n + j;
        }
        acc += w * fine[idx];
    }
    return acc;
}

// Centered spectral coefficients of a slice: v(x) = sum_k c_k e^{i x xi_k},
// xi_k = (k - n/2) * (2 pi / (n h)).
inline std::vector<cdouble> slice_coefficients(std::span<const cdouble> slice, int n) {
    std::vector<cdouble> coeff(slice.begin(), slice.end());
    int dims[4] = {n, n, n, n};
    for (int ax = 0; ax < 4; ++ax)
        centered_pass(coeff.data(), dims, ax, -1, cdouble{1.0 / n, 0});
    return coeff;
}

// Exact band-limited evaluation of a slice at a tensor product of per-axis
// node lists, via successive one-axis nonuniform contractions.
// Returns row-major values of shape (m0, m1, m2, m3).
inline std::vector<cdouble> nudft_tensor_eval(std::span<const cdouble> slice, int n, double h,
                                              const std::array<std::vector<double>, 4>& nodes) {
    std::vector<cdouble> cur = slice_coefficients(slice, n);
    std::array<std::size_t, 4> shape{std::size_t(n), std::size_t(n), std::size_t(n),
                                     std::size_t(n)};
    const double dxi = 2.0 * kPi / (n * h);
    for (int ax = 0; ax < 4; ++ax) {
        const auto& u = nodes[ax];
        const std::size_t m = u.size();
        // phase matrix B[i,k] = e^{i u_i xi_k}
        std::vector<cdouble> B(m * n);
        for (std::size_t i = 0; i < m; ++i)
            for (int k = 0; k < n; ++k)
                B[i * n + k] = std::polar(1.0, u[i] * (k - n / 2) * dxi);
        std::size_t inner = 1, outer = 1;
        for (int k = ax + 1; k < 4; ++k) inner *= shape[k];
        for (int k = 0; k < ax; ++k) outer *= shape[k];
        std::vector<cdouble> next(outer * m * inner);
        for (std::size_t o = 0; o < outer; ++o)
            for (std::size_t i = 0; i < m; ++i) {
                cdouble* dst = &next[(o * m + i) * inner];
                for (std::size_t q = 0; q < inner; ++q) dst[q] = 0;
                const cdouble* brow = &B[i * n];
                for (int k = 0; k < n; ++k) {
                    const cdouble bk = brow[k];
                    const cdouble* src = &cur[(o * n + k) * inner];
                    for (std::size_t q = 0; q < inner; ++q) dst[q] += bk * src[q];
                }
            }
        cur.swap(next);
        shape[ax] = m;
    }
    return cur;
}

// Direct nonuniform evaluation at arbitrary 4-D points (oracle-grade, O(N n^4)).
inline void nudft_eval_points(std::span<const cdouble> coeff, int n, double h,
                              std::span<const Quat> pts, std::span<cdouble> out) {
    const double dxi = 2.0 * kPi / (n * h);
    for (std::size_t p = 0; p < pts.size(); ++p) {
        const double c[4] = {pts[p].w, pts[p].x, pts[p].y, pts[p].z};
        std::array<std::vector<cdouble>, 4> ph;
        for (int ax = 0; ax < 4; ++ax) {
            ph[ax].resize(n);
            for (int k = 0; k < n; ++k) ph[ax][k] = std::polar(1.0, c[ax] * (k - n / 2) * dxi);
        }
        cdouble acc = 0.0;
        std::size_t idx = 0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int cc = 0; cc < n; ++cc) {
                    cdouble pabc = ph[0][a] * ph[1][b] * ph[2][cc];
                    for (int d = 0; d < n; ++d) acc += coeff[idx++] * pabc * ph[3][d];
                }
        out[p] = acc;
    }
}

} // namespace qheis::dft
