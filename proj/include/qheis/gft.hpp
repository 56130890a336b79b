#pragma once

// Operator-valued transform on the truncated Fock basis: slice analysis and
// synthesis, spectra over node designs, radial coefficients, the sign
// operator S, degree projections, the Hilbert-Schmidt cross-check, inverse
// synthesis of radial spectra, and the subLaplacian.
//
// Analysis quadrature: with the frame adapted to a^, the matrix element
// integrand factors as slice(x) * m(w1) * m(w2), and |m| carries the weight
// e^{-s(|w1|^2+|w2|^2)}. The x-integral is performed by tensor Gauss-Hermite
// in the rotated frame; the slice is evaluated there either from its closed
// form or band-limitedly from grid data.

#include <json.hpp>

#include <functional>

#include "qheis/fock.hpp"
#include "qheis/fourier.hpp"
#include "qheis/testfun.hpp"

namespace qheis {

struct NotRadial : std::runtime_error {
    explicit NotRadial(double resid)
        : std::runtime_error("spectrum off-block residual " + std::to_string(resid)) {}
};
struct TruncationBudgetExceeded : std::runtime_error {
    TruncationBudgetExceeded() : std::runtime_error("radial synthesis tail exceeds budget") {}
};

// batch evaluator of a central-transform slice at arbitrary x points
using SliceFn = std::function<void(std::span<const Quat>, std::span<cdouble>)>;

struct GftOptions {
    int ngh = 20;       // Gauss-Hermite nodes per axis
    int oversample = 4; // trig upsampling factor for grid-backed slices
    bool exact_eval = false; // nonuniform sums instead of interpolation (slow)
};

// slice of f^a from grid data, evaluable anywhere via the band-limited
// interpolant (periodic trig upsampling + multilinear, zero outside the box)
inline SliceFn slice_from_values(const Field& f, const Vec3& a, const GftOptions& opt) {
    auto slice = central_slice_at(f, a);
    const int n = f.grid.n_x;
    const double h = f.grid.hx();
    const double period = n * h;
    if (opt.exact_eval) {
        auto coeff = dft::slice_coefficients(slice, n);
        return [coeff = std::move(coeff), n, h](std::span<const Quat> pts, std::span<cdouble> out) {
            dft::nudft_eval_points(coeff, n, h, pts, out);
        };
    }
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

// exact central slice of an x-separable test function: xpart(x) * hhat(|a|)
inline SliceFn slice_from_testfun(const TestFunction& tf, const Vec3& a) {
    if (!tf.xpart || !tf.hhat_radial)
        throw std::invalid_argument("test function has no separable closed form");
    double hv = tf.hhat_radial(a.norm());
    auto xp = tf.xpart;
    return [xp, hv](std::span<const Quat> pts, std::span<cdouble> out) {
        for (std::size_t i = 0; i < pts.size(); ++i) out[i] = hv * xp(pts[i]);
    };
}

namespace gftdetail {

// shared back end: slice values on the plane-tensor nodes -> matrix
inline Matrix assemble_from_tensor_values(const Vec3& a, int L, int ngh,
                                          std::vector<cdouble>& vals) {
    const double s = a.norm();
    const FockLayout& lay = FockLayout::get(L);
    const int D = lay.dim();
    const GaussHermite& gh = GaussHermite::get(ngh);
    const int n2 = ngh * ngh;
    std::vector<cdouble> W(n2);
    std::vector<double> wgt(n2);
    const double isq = 1.0 / std::sqrt(s);
    for (int i = 0; i < ngh; ++i)
        for (int j = 0; j < ngh; ++j) {
            W[i * ngh + j] = cdouble{gh.nodes[i] * isq, gh.nodes[j] * isq};
            wgt[i * ngh + j] = gh.weights[i] * gh.weights[j] / s;
        }
    PlaneTables T = PlaneTables::build(W, s, L, /*deweighted=*/true);
    Eigen::Map<Matrix> VA(vals.data(), n2, n2); // VA(Q,P) column-major = vals[P*n2+Q]
    for (int P = 0; P < n2; ++P)
        for (int Q = 0; Q < n2; ++Q) VA(Q, P) *= wgt[P] * wgt[Q];
    const int R = (L + 1) * (L + 1);
    Matrix Tm(n2, R); // column r = (alpha*(L+1)+beta), rows = plane points
    for (int al = 0; al <= L; ++al)
        for (int be = 0; be <= L; ++be) {
            const cdouble* src = T.row(al, be);
            for (int p = 0; p < n2; ++p) Tm(p, al * (L + 1) + be) = src[p];
        }
    // M4[r1, r2] = sum_{P,Q} T[r1,P] VA~[P,Q] T[r2,Q]
    Matrix C = VA.transpose() * Tm;
    Matrix M4 = Tm.transpose() * C;
    Matrix M(D, D);
    for (int bi = 0; bi < D; ++bi)
        for (int ai = 0; ai < D; ++ai) {
            const FockIndex& A = lay.idx[ai];
            const FockIndex& B = lay.idx[bi];
            M(bi, ai) = M4(A.a1 * (L + 1) + B.a1, A.a2 * (L + 1) + B.a2);
        }
    return M;
}

} // namespace gftdetail

// Analysis: D x D matrix with entries M[beta,alpha] = <\hat f(a) E_alpha, E_beta>.
inline Matrix gft_slice(const Vec3& a, int L, const SliceFn& slice, int ngh) {
    double s = a.norm();
    if (s == 0.0) throw ZeroFrequency{};
    const AdaptedFrame fr = AdaptedFrame::of(a);
    const GaussHermite& gh = GaussHermite::get(ngh);
    const int n2 = ngh * ngh;
    const double isq = 1.0 / std::sqrt(s);
    std::vector<double> u(ngh);
    for (int i = 0; i < ngh; ++i) u[i] = gh.nodes[i] * isq;
    std::vector<Quat> pts(std::size_t(n2) * n2);
    for (int P = 0; P < n2; ++P)
        for (int Q = 0; Q < n2; ++Q)
            pts[std::size_t(P) * n2 + Q] =
                fr.embed(u[P / ngh], u[P % ngh], u[Q / ngh], u[Q % ngh]);
    std::vector<cdouble> vals(pts.size());
    slice(pts, vals);
    return gftdetail::assemble_from_tensor_values(a, L, ngh, vals);
}

// Exact analysis of a grid-backed slice at a frequency whose adapted frame is
// a signed permutation of the lattice axes: the quadrature nodes then form an
// axis tensor and the band-limited interpolant is evaluated without error.
inline Matrix gft_matrix_axis_exact(const Field& f, const Vec3& a, int L, int ngh) {
    double s = a.norm();
    if (s == 0.0) throw ZeroFrequency{};
    const AdaptedFrame fr = AdaptedFrame::of(a);
    const double Fv[4][4] = {{1, 0, 0, 0},
                             {0, fr.ahat.x, fr.ahat.y, fr.ahat.z},
                             {0, fr.e2.x, fr.e2.y, fr.e2.z},
                             {0, fr.e3.x, fr.e3.y, fr.e3.z}};
    int perm[4];
    double sgn[4];
    for (int k = 0; k < 4; ++k) {
        perm[k] = -1;
        for (int ax = 0; ax < 4; ++ax)
            if (std::abs(std::abs(Fv[k][ax]) - 1.0) < 1e-12) {
                perm[k] = ax;
                sgn[k] = Fv[k][ax] > 0 ? 1.0 : -1.0;
            }
        if (perm[k] < 0)
            throw std::invalid_argument("gft_matrix_axis_exact: frame is not axis-aligned");
    }
    const GaussHermite& gh = GaussHermite::get(ngh);
    const double isq = 1.0 / std::sqrt(s);
    std::array<std::vector<double>, 4> axis_nodes;
    for (int k = 0; k < 4; ++k) {
        auto& lst = axis_nodes[perm[k]];
        lst.resize(ngh);
        for (int i = 0; i < ngh; ++i) lst[i] = sgn[k] * gh.nodes[i] * isq;
    }
    auto slice = central_slice_at(f, a);
    auto tens = dft::nudft_tensor_eval(slice, f.grid.n_x, f.grid.hx(), axis_nodes);
    // tens is indexed in axis order; repack to (P,Q) = ((i0,i1),(i2,i3)) frame order
    const int n2 = ngh * ngh;
    std::vector<cdouble> vals(std::size_t(n2) * n2);
    std::array<std::size_t, 4> stride; // stride of axis ax in tens
    stride[3] = 1;
    for (int ax = 2; ax >= 0; --ax) stride[ax] = stride[ax + 1] * ngh;
    for (int i0 = 0; i0 < ngh; ++i0)
        for (int i1 = 0; i1 < ngh; ++i1)
            for (int i2 = 0; i2 < ngh; ++i2)
                for (int i3 = 0; i3 < ngh; ++i3) {
                    std::size_t src = stride[perm[0]] * i0 + stride[perm[1]] * i1 +
                                      stride[perm[2]] * i2 + stride[perm[3]] * i3;
                    vals[(std::size_t(i0) * ngh + i1) * n2 + (std::size_t(i2) * ngh + i3)] =
                        tens[src];
                }
    return gftdetail::assemble_from_tensor_values(a, L, ngh, vals);
}

// Analysis of a slice that factors over the two adapted planes:
// slice(x) = f1(w1(x)) f2(w2(x)). Each factor is evaluated once per plane
// node, which keeps oracle-grade factors affordable at high node counts.
using PlaneFn = std::function<void(std::span<const cdouble>, std::span<cdouble>)>;

inline Matrix gft_slice_tensor(const Vec3& a, int L, const PlaneFn& f1, const PlaneFn& f2,
                               int ngh) {
    double s = a.norm();
    if (s == 0.0) throw ZeroFrequency{};
    const FockLayout& lay = FockLayout::get(L);
    const int D = lay.dim();
    const GaussHermite& gh = GaussHermite::get(ngh);
    const int n2 = ngh * ngh;
    std::vector<cdouble> W(n2);
    std::vector<double> wgt(n2);
    const double isq = 1.0 / std::sqrt(s);
    for (int i = 0; i < ngh; ++i)
        for (int j = 0; j < ngh; ++j) {
            W[i * ngh + j] = cdouble{gh.nodes[i] * isq, gh.nodes[j] * isq};
            wgt[i * ngh + j] = gh.weights[i] * gh.weights[j] / s;
        }
    PlaneTables T = PlaneTables::build(W, s, L, true);
    std::vector<cdouble> v1(n2), v2(n2);
    f1(W, v1);
    f2(W, v2);
    Matrix VA(n2, n2);
    for (int P = 0; P < n2; ++P)
        for (int Q = 0; Q < n2; ++Q) VA(Q, P) = v1[P] * v2[Q] * wgt[P] * wgt[Q];
    const int R = (L + 1) * (L + 1);
    Matrix Tm(n2, R);
    for (int al = 0; al <= L; ++al)
        for (int be = 0; be <= L; ++be) {
            const cdouble* src = T.row(al, be);
            for (int p = 0; p < n2; ++p) Tm(p, al * (L + 1) + be) = src[p];
        }
    Matrix C = VA.transpose() * Tm;
    Matrix M4 = Tm.transpose() * C;
    Matrix M(D, D);
    for (int bi = 0; bi < D; ++bi)
        for (int ai = 0; ai < D; ++ai) {
            const FockIndex& A = lay.idx[ai];
            const FockIndex& B = lay.idx[bi];
            M(bi, ai) = M4(A.a1 * (L + 1) + B.a1, A.a2 * (L + 1) + B.a2);
        }
    return M;
}

// Synthesis: values of the slice represented by M at the given points,
// f^a(x) = (4/pi^2)|a|^2 tr(pi_a(x,0)^* M).
inline void synth_slice(const Vec3& a, int L, const Matrix& M, std::span<const Quat> pts,
                        std::span<cdouble> out) {
    double s = a.norm();
    if (s == 0.0) throw ZeroFrequency{};
    const FockLayout& lay = FockLayout::get(L);
    const int D = lay.dim();
    const AdaptedFrame fr = AdaptedFrame::of(a);
    const std::size_t N = pts.size();
    std::vector<cdouble> w1(N), w2(N);
    for (std::size_t i = 0; i < N; ++i) fr.zcoords(pts[i], w1[i], w2[i]);
    PlaneTables T1 = PlaneTables::build(w1, s, L, false);
    PlaneTables T2 = PlaneTables::build(w2, s, L, false);
    const int R = (L + 1) * (L + 1);
    Matrix M4 = Matrix::Zero(R, R);
    for (int bi = 0; bi < D; ++bi)
        for (int ai = 0; ai < D; ++ai) {
            const FockIndex& A = lay.idx[ai];
            const FockIndex& B = lay.idx[bi];
            M4(A.a1 * (L + 1) + B.a1, A.a2 * (L + 1) + B.a2) = M(bi, ai);
        }
    const double amp = 4.0 / (kPi * kPi) * s * s;
    using RowMat = Eigen::Matrix<cdouble, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMat> T1m(T1.m.data(), R, N), T2m(T2.m.data(), R, N);
    RowMat C = M4.transpose() * T1m.conjugate(); // (R x N)
    Eigen::RowVectorXcd res = (C.array() * T2m.conjugate().array()).colwise().sum();
    for (std::size_t i = 0; i < N; ++i) out[i] = amp * res(Eigen::Index(i));
}

// ---------------------------------------------------------------------------

inline Matrix gft_matrix(const Field& f, const Vec3& a, int L, const GftOptions& opt = {}) {
    if (!f.has_values()) throw MissingValues{};
    if (f.tag != DomainTag::Spatial) throw std::invalid_argument("gft_matrix wants a spatial field");
    return gft_slice(a, L, slice_from_values(f, a, opt), opt.ngh);
}

// closed-form central slices for x-separable factory functions
inline Matrix gft_matrix(const TestFunction& tf, const Vec3& a, int L,
                         const GftOptions& opt = {}) {
    return gft_slice(a, L, slice_from_testfun(tf, a), opt.ngh);
}

struct GroupSpectrum {
    int L = 0;
    std::vector<Vec3> nodes;
    std::vector<Matrix> mats;
};

// degree-l mean of the diagonal; reports the off-block residual
inline cdouble radial_coeff(const Matrix& M, int L, int l, double* residual = nullptr,
                            double tol = -1.0) {
    const FockLayout& lay = FockLayout::get(L);
    double off = 0.0, tot = 0.0;
    for (int i = 0; i < lay.dim(); ++i)
        for (int j = 0; j < lay.dim(); ++j) {
            double v = std::norm(M(i, j));
            tot += v;
            if (lay.degree[i] != lay.degree[j]) off += v;
        }
    double resid = tot > 0 ? std::sqrt(off / tot) : 0.0;
    if (residual) *residual = resid;
    if (tol > 0 && resid > tol) throw NotRadial(resid);
    cdouble tr = 0.0;
    int b = lay.block_begin(l);
    for (int k = 0; k < lay.block_dim(l); ++k) tr += M(b + k, b + k);
    return tr / double(lay.block_dim(l));
}

// right-multiplication by S = sum_l (-1)^l P_{a,l}: scales columns by parity
inline Matrix apply_S(const Matrix& M, int L) {
    const FockLayout& lay = FockLayout::get(L);
    Matrix out = M;
    for (int j = 0; j < lay.dim(); ++j)
        if (lay.degree[j] % 2) out.col(j) *= -1.0;
    return out;
}

inline Matrix project_Pl(const Matrix& M, int L, int l) {
    const FockLayout& lay = FockLayout::get(L);
    Matrix out = Matrix::Zero(M.rows(), M.cols());
    for (int j = 0; j < lay.dim(); ++j)
        if (lay.degree[j] == l) out.col(j) = M.col(j);
    return out;
}

inline GroupSpectrum apply_S(const GroupSpectrum& sp) {
    GroupSpectrum out{sp.L, sp.nodes, {}};
    out.mats.reserve(sp.mats.size());
    for (const auto& m : sp.mats) out.mats.push_back(apply_S(m, sp.L));
    return out;
}

inline GroupSpectrum project_Pl(const GroupSpectrum& sp, int l) {
    GroupSpectrum out{sp.L, sp.nodes, {}};
    out.mats.reserve(sp.mats.size());
    for (const auto& m : sp.mats) out.mats.push_back(project_Pl(m, sp.L, l));
    return out;
}

// (2|a|/pi)^2 ||\hat f(a)||_HS^2 against the slice energy int |f^a|^2 dx.
inline std::pair<double, double> hs_cross_check(const Field& f, const Vec3& a, int L,
                                                const GftOptions& opt = {}) {
    Matrix M = gft_matrix(f, a, L, opt);
    double lhs = std::pow(2.0 * a.norm() / kPi, 2.0) * M.squaredNorm();
    auto slice = central_slice_at(f, a);
    double rhs = 0.0;
    for (const cdouble& v : slice) rhs += std::norm(v);
    double hx = f.grid.hx();
    rhs *= hx * hx * hx * hx;
    return {lhs, rhs};
}

// ---------------------------------------------------------------------------
// Radial node designs

struct RadialDesign {
    std::vector<double> r, w; // nodes and quadrature weights for ∫ dr

    static RadialDesign linear(double lo, double hi, int n) {
        RadialDesign d;
        double h = (hi - lo) / n;
        for (int i = 0; i < n; ++i) {
            d.r.push_back(lo + (i + 0.5) * h);
            d.w.push_back(h);
        }
        return d;
    }
    static RadialDesign logspaced(double lo, double hi, int n) {
        RadialDesign d;
        double dl = std::log(hi / lo) / n;
        for (int i = 0; i < n; ++i) {
            double r = lo * std::exp((i + 0.5) * dl);
            d.r.push_back(r);
            d.w.push_back(r * dl); // dr = r dln r
        }
        return d;
    }
};

// twelve icosahedron vertices (six antipodal pairs), equal weights
inline std::vector<Vec3> icosahedral_directions() {
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    const double n = std::sqrt(1.0 + phi * phi);
    std::vector<Vec3> v;
    for (double s1 : {1.0, -1.0})
        for (double s2 : {1.0, -1.0}) {
            v.push_back({0, s1 / n, s2 * phi / n});
            v.push_back({s1 / n, s2 * phi / n, 0});
            v.push_back({s2 * phi / n, 0, s1 / n});
        }
    return v;
}

template <typename MatrixAt>
GroupSpectrum gft_spectrum(const RadialDesign& rd, const Vec3& direction, int L,
                           MatrixAt&& matrix_at) {
    GroupSpectrum sp;
    sp.L = L;
    for (double r : rd.r) {
        Vec3 a = r * direction;
        sp.nodes.push_back(a);
        sp.mats.push_back(matrix_at(a));
    }
    return sp;
}

// ---------------------------------------------------------------------------
// Inverse synthesis of a radial spectrum: given B(r,l) for l <= L,
//   f(x,t) = (1/2 pi^5) * 4 pi * ∫ sinc(r|t|) Σ_l B(r,l) conj(chi_l(r,x)) r^4 dr
// with chi_l(r,x) = projection_character at (r e^, x, 0, l); the angular
// integral over directions of a contributes 4 pi sinc(r|t|) and the radial
// Plancherel weight r^2 joins the spherical r^2.
inline Evaluator inverse_radial(std::function<cdouble(double, int)> B, int L,
                                const RadialDesign& rd, double tail_tol = 0.0) {
    if (tail_tol > 0 && !rd.r.empty()) {
        // crude tail estimate: last-node contribution against the total
        double tail = 0.0, tot = 0.0;
        for (std::size_t i = 0; i < rd.r.size(); ++i) {
            double c = 0.0;
            for (int l = 0; l <= L; ++l) c += std::abs(B(rd.r[i], l)) * (l + 1);
            c *= rd.w[i] * std::pow(rd.r[i], 4.0);
            tot += c;
            if (i + 1 == rd.r.size()) tail = c;
        }
        if (tot > 0 && tail / tot > tail_tol) throw TruncationBudgetExceeded{};
    }
    // cache B on the nodes
    auto Bv = std::make_shared<std::vector<cdouble>>();
    Bv->resize(rd.r.size() * (L + 1));
    for (std::size_t i = 0; i < rd.r.size(); ++i)
        for (int l = 0; l <= L; ++l) (*Bv)[i * (L + 1) + l] = B(rd.r[i], l);
    auto rs = std::make_shared<std::vector<double>>(rd.r);
    auto ws = std::make_shared<std::vector<double>>(rd.w);
    const Vec3 ehat{1, 0, 0};
    return [Bv, rs, ws, L, ehat](const GroupPoint& p) {
        double tn = p.t.norm();
        cdouble acc = 0.0;
        for (std::size_t i = 0; i < rs->size(); ++i) {
            double r = (*rs)[i];
            double arg = r * tn;
            double sinc = arg < 1e-12 ? 1.0 : std::sin(arg) / arg;
            cdouble inner = 0.0;
            for (int l = 0; l <= L; ++l) {
                cdouble bl = (*Bv)[i * (L + 1) + l];
                if (bl == cdouble{0, 0}) continue;
                inner += bl * std::conj(projection_character(r * ehat, p.x, Vec3{}, l));
            }
            acc += (*ws)[i] * sinc * inner * std::pow(r, 4.0);
        }
        return acc * (4.0 * kPi / (2.0 * std::pow(kPi, 5.0)));
    };
}

// ---------------------------------------------------------------------------
// subLaplacian: the sum of squares of the horizontal left-invariant fields,
// expanded as Delta_x + 4|x|^2 Delta_t + 2 sum_{ij} c_ij(x) d^2/dx_i dt_j.

inline void twist_coefficients(const Quat& x, double c[4][3]) {
    c[0][0] = -2 * x.x; c[0][1] = -2 * x.y; c[0][2] = -2 * x.z;
    c[1][0] =  2 * x.w; c[1][1] = -2 * x.z; c[1][2] =  2 * x.y;
    c[2][0] =  2 * x.z; c[2][1] =  2 * x.w; c[2][2] = -2 * x.x;
    c[3][0] = -2 * x.y; c[3][1] =  2 * x.x; c[3][2] =  2 * x.w;
}

inline Evaluator sublaplacian(Evaluator f, double step = 1e-3) {
    return [f = std::move(f), step](const GroupPoint& p) {
        const double h = step;
        auto at = [&](double dx[4], double dt[3]) {
            return f(GroupPoint{p.x + Quat{dx[0], dx[1], dx[2], dx[3]},
                                p.t + Vec3{dt[0], dt[1], dt[2]}});
        };
        double z4[4] = {0, 0, 0, 0}, z3[3] = {0, 0, 0};
        cdouble f0 = at(z4, z3);
        cdouble lap = 0.0;
        for (int i = 0; i < 4; ++i) {
            double dp[4] = {0, 0, 0, 0}, dm[4] = {0, 0, 0, 0};
            dp[i] = h;
            dm[i] = -h;
            lap += (at(dp, z3) - 2.0 * f0 + at(dm, z3)) / (h * h);
        }
        double xn2 = p.x.norm2();
        cdouble lt = 0.0;
        for (int j = 0; j < 3; ++j) {
            double dp[3] = {0, 0, 0}, dm[3] = {0, 0, 0};
            dp[j] = h;
            dm[j] = -h;
            lt += (at(z4, dp) - 2.0 * f0 + at(z4, dm)) / (h * h);
        }
        lap += 4.0 * xn2 * lt;
        double c[4][3];
        twist_coefficients(p.x, c);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 3; ++j) {
                if (c[i][j] == 0.0) continue;
                double xp[4] = {0, 0, 0, 0}, xm[4] = {0, 0, 0, 0};
                xp[i] = h;
                xm[i] = -h;
                double tp[3] = {0, 0, 0}, tm[3] = {0, 0, 0};
                tp[j] = h;
                tm[j] = -h;
                cdouble mixed =
                    (at(xp, tp) - at(xp, tm) - at(xm, tp) + at(xm, tm)) / (4.0 * h * h);
                lap += 2.0 * c[i][j] * mixed;
            }
        return lap;
    };
}

// slice form of the subLaplacian at central frequency a on a closed-form
// x-slice g: L_a g = Delta_x g + 2 i sum mu_i d_i g - 4|a|^2|x|^2 g with
// mu_i = sum_j c_ij a_j.
inline std::function<cdouble(const Quat&)> sublaplacian_slice(
    std::function<cdouble(const Quat&)> g, const Vec3& a, double step = 1e-3) {
    return [g = std::move(g), a, step](const Quat& x) {
        const double h = step;
        cdouble f0 = g(x);
        cdouble lap = 0.0, grad[4];
        for (int i = 0; i < 4; ++i) {
            Quat dp = x, dm = x;
            (&dp.w)[i] += h;
            (&dm.w)[i] -= h;
            cdouble fp = g(dp), fm = g(dm);
            lap += (fp - 2.0 * f0 + fm) / (h * h);
            grad[i] = (fp - fm) / (2.0 * h);
        }
        double c[4][3];
        twist_coefficients(x, c);
        const double av[3] = {a.x, a.y, a.z};
        cdouble tw = 0.0;
        for (int i = 0; i < 4; ++i) {
            double mu = c[i][0] * av[0] + c[i][1] * av[1] + c[i][2] * av[2];
            tw += mu * grad[i];
        }
        return lap + cdouble{0, 2.0} * tw - 4.0 * a.norm2() * x.norm2() * f0;
    };
}

// ---------------------------------------------------------------------------

inline nlohmann::json spectrum_to_json(const GroupSpectrum& sp) {
    nlohmann::json j;
    j["L"] = sp.L;
    j["dim"] = FockLayout::get(sp.L).dim();
    j["nodes"] = nlohmann::json::array();
    j["matrices"] = nlohmann::json::array();
    for (std::size_t k = 0; k < sp.nodes.size(); ++k) {
        j["nodes"].push_back({sp.nodes[k].x, sp.nodes[k].y, sp.nodes[k].z});
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < sp.mats[k].rows(); ++i)
            for (int c = 0; c < sp.mats[k].cols(); ++c)
                rows.push_back({sp.mats[k](i, c).real(), sp.mats[k](i, c).imag()});
        j["matrices"].push_back(std::move(rows));
    }
    return j;
}

} // namespace qheis
