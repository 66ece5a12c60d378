#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "alonginv/common.hpp"
#include "alonginv/matrix.hpp"

namespace alonginv {

namespace detail {

// Unitary 2x2 rotation diagonalizing the Hermitian block [[alpha, gamma],
// [conj(gamma), beta]]: columns (ci, cj) map to (c*ci - s*e^{-i phi}*cj,
// s*ci + c*e^{-i phi}*cj).
struct pair_rotation {
    double c;
    double s;
    cx phase; // e^{-i phi}, phi = arg(gamma)
};

inline pair_rotation hermitian_2x2_rotation(double alpha, double beta, const cx& gamma) {
    const double g = std::abs(gamma);
    pair_rotation r{1.0, 0.0, cx(1.0, 0.0)};
    if (g == 0.0) return r;
    r.phase = std::conj(gamma) / g;
    const double tau = (beta - alpha) / (2.0 * g);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    r.c = 1.0 / std::sqrt(1.0 + t * t);
    r.s = t * r.c;
    return r;
}

} // namespace detail

/// Thin SVD a = u * diag(sigma) * v^H with sigma sorted descending.
/// Columns of u belonging to zero singular values are left zero.
struct svd_result {
    cmatrix u;                 // rows(a) x min-dim
    std::vector<double> sigma; // min-dim, descending
    cmatrix v;                 // cols(a) x min-dim
};

/// One-sided Jacobi: rotations orthogonalize column pairs of a working copy,
/// driven by the 2x2 Gram blocks. Keeps full relative accuracy of small
/// singular values, which the relative rank cutoff depends on.
inline svd_result svd(const cmatrix& a, std::size_t max_sweeps = 40) {
    const std::size_t m = a.rows(), n = a.cols();
    if (m < n) {
        svd_result t = svd(adjoint(a), max_sweeps);
        return svd_result{std::move(t.v), std::move(t.sigma), std::move(t.u)};
    }
    cmatrix w = a;
    cmatrix v = cmatrix::identity(n);
    const double tol = 1e-15;
    for (std::size_t sweep = 0; sweep < max_sweeps && n > 1; ++sweep) {
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double alpha = 0.0, beta = 0.0;
                cx gamma = 0.0;
                for (std::size_t k = 0; k < m; ++k) {
                    alpha += std::norm(w(k, i));
                    beta += std::norm(w(k, j));
                    gamma += std::conj(w(k, i)) * w(k, j);
                }
                if (std::abs(gamma) <= tol * std::sqrt(alpha * beta)) continue;
                rotated = true;
                const auto rot = detail::hermitian_2x2_rotation(alpha, beta, gamma);
                for (std::size_t k = 0; k < m; ++k) {
                    const cx wi = w(k, i), wj = w(k, j);
                    w(k, i) = rot.c * wi - rot.s * rot.phase * wj;
                    w(k, j) = rot.s * wi + rot.c * rot.phase * wj;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cx vi = v(k, i), vj = v(k, j);
                    v(k, i) = rot.c * vi - rot.s * rot.phase * vj;
                    v(k, j) = rot.s * vi + rot.c * rot.phase * vj;
                }
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t k = 0; k < m; ++k) s += std::norm(w(k, j));
        sigma[j] = std::sqrt(s);
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    svd_result r;
    r.sigma.resize(n);
    r.u = cmatrix(m, n);
    r.v = cmatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        r.sigma[j] = sigma[src];
        for (std::size_t k = 0; k < n; ++k) r.v(k, j) = v(k, src);
        if (sigma[src] > 0.0)
            for (std::size_t k = 0; k < m; ++k) r.u(k, j) = w(k, src) / sigma[src];
    }
    return r;
}

/// Largest singular value (the C*-algebra operator norm).
inline double op_norm(const cmatrix& m) {
    if (m.empty()) return 0.0;
    return svd(m).sigma.front();
}

/// Count of singular values >= rank_tol * sigma_max; 0 for the zero matrix.
inline std::size_t rank(const cmatrix& m, const tolerance& tol = {}) {
    if (m.empty()) return 0;
    const auto s = svd(m).sigma;
    if (s.empty() || s.front() == 0.0) return 0;
    const double cut = tol.rank_tol * s.front();
    std::size_t r = 0;
    for (double x : s)
        if (x >= cut) ++r;
    return r;
}

/// sigma_max / sigma_min; infinity when numerically singular.
inline double cond_estimate(const cmatrix& m, const tolerance& tol = {}) {
    const auto s = svd(m).sigma;
    if (s.empty()) return 1.0;
    if (s.back() < tol.rank_tol * s.front() || s.back() == 0.0)
        return std::numeric_limits<double>::infinity();
    return s.front() / s.back();
}

namespace detail {

// LU with partial pivoting; solves in place for multiple right-hand sides.
inline cmatrix lu_solve(cmatrix a, cmatrix b) {
    const std::size_t n = a.rows();
    if (!a.is_square() || b.rows() != n)
        throw std::invalid_argument("lu_solve shape mismatch");
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        double best = std::abs(a(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > best) {
                best = std::abs(a(i, k));
                piv = i;
            }
        if (best == 0.0)
            throw error(errc::not_invertible, "exactly singular matrix in LU solve");
        if (piv != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(k, j), b(piv, j));
        }
        const cx pivot = a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cx f = a(i, k) / pivot;
            if (f == cx{}) continue;
            a(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
            for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) -= f * b(k, j);
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            cx s = b(k, j);
            for (std::size_t i = k + 1; i < n; ++i) s -= a(k, i) * b(i, j);
            b(k, j) = s / a(k, k);
        }
    }
    return b;
}

} // namespace detail

/// Inverse, gated by the relative singular-value cutoff.
inline cmatrix invert(const cmatrix& m, const tolerance& tol = {}) {
    if (!m.is_square())
        throw std::invalid_argument("invert requires a square matrix");
    if (m.empty()) return m;
    const auto s = svd(m).sigma;
    if (s.front() == 0.0 || s.back() < tol.rank_tol * s.front())
        throw error(errc::not_invertible, "singular value ratio below rank tolerance");
    return detail::lu_solve(m, cmatrix::identity(m.rows()));
}

inline bool is_invertible(const cmatrix& m, const tolerance& tol = {}) {
    if (!m.is_square() || m.empty()) return false;
    const auto s = svd(m).sigma;
    return s.front() > 0.0 && s.back() >= tol.rank_tol * s.front();
}

/// Eigendecomposition of a Hermitian matrix by two-sided Jacobi.
/// values ascending, a = vectors * diag(values) * vectors^H.
struct herm_eig_result {
    std::vector<double> values;
    cmatrix vectors;
};

inline herm_eig_result hermitian_eig(const cmatrix& a, std::size_t max_sweeps = 60) {
    if (!a.is_square())
        throw std::invalid_argument("hermitian_eig requires a square matrix");
    const std::size_t n = a.rows();
    cmatrix h = a;
    cmatrix v = cmatrix::identity(n);
    const double scale = std::max(fro_norm(h), 1e-300);
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += std::norm(h(i, j));
        if (std::sqrt(off) <= 1e-15 * scale) break;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (std::abs(h(i, j)) <= 1e-18 * scale) continue;
                const auto rot =
                    detail::hermitian_2x2_rotation(h(i, i).real(), h(j, j).real(), h(i, j));
                // h <- R^H h R, v <- v R
                for (std::size_t k = 0; k < n; ++k) {
                    const cx hki = h(k, i), hkj = h(k, j);
                    h(k, i) = rot.c * hki - rot.s * rot.phase * hkj;
                    h(k, j) = rot.s * hki + rot.c * rot.phase * hkj;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cx hik = h(i, k), hjk = h(j, k);
                    h(i, k) = rot.c * hik - rot.s * std::conj(rot.phase) * hjk;
                    h(j, k) = rot.s * hik + rot.c * std::conj(rot.phase) * hjk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cx vki = v(k, i), vkj = v(k, j);
                    v(k, i) = rot.c * vki - rot.s * rot.phase * vkj;
                    v(k, j) = rot.s * vki + rot.c * rot.phase * vkj;
                }
            }
        }
    }
    herm_eig_result r;
    r.values.resize(n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = h(i, i).real();
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });
    r.vectors = cmatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        r.values[j] = diag[order[j]];
        for (std::size_t k = 0; k < n; ++k) r.vectors(k, j) = v(k, order[j]);
    }
    return r;
}

namespace detail {

struct givens {
    double c;
    cx s;
};

inline givens make_givens(const cx& f, const cx& g, cx& r) {
    if (g == cx{}) {
        r = f;
        return {1.0, cx{}};
    }
    if (f == cx{}) {
        r = std::abs(g);
        return {0.0, std::conj(g) / std::abs(g)};
    }
    const double fa = std::abs(f), ga = std::abs(g);
    const double d = std::hypot(fa, ga);
    const double c = fa / d;
    const cx fs = f / fa;
    const cx s = fs * std::conj(g) / d;
    r = fs * d;
    return {c, s};
}

inline void eig_2x2(const cx& a, const cx& b, const cx& c, const cx& d, cx& l1, cx& l2) {
    const cx tr = a + d;
    const cx det = a * d - b * c;
    const cx disc = std::sqrt(tr * tr - 4.0 * det);
    l1 = (tr + disc) / 2.0;
    l2 = (tr - disc) / 2.0;
    // pick the stabler pair via the product when possible
    if (std::abs(l1) > std::abs(l2)) {
        if (l1 != cx{}) l2 = det / l1;
    } else if (l2 != cx{}) {
        l1 = det / l2;
    }
}

inline void to_hessenberg(cmatrix& h) {
    const std::size_t n = h.rows();
    if (n < 3) return;
    for (std::size_t k = 0; k + 2 < n; ++k) {
        std::vector<cx> x(n - k - 1);
        double norm = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = h(k + 1 + i, k);
            norm += std::norm(x[i]);
        }
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        cx alpha = -norm;
        if (x[0] != cx{}) alpha = -(x[0] / std::abs(x[0])) * norm;
        x[0] -= alpha;
        double vnorm2 = 0.0;
        for (const auto& e : x) vnorm2 += std::norm(e);
        if (vnorm2 == 0.0) continue;
        const double tau = 2.0 / vnorm2;
        // left: h <- (I - tau v v^H) h on rows k+1..n-1
        for (std::size_t j = k; j < n; ++j) {
            cx dot = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) dot += std::conj(x[i]) * h(k + 1 + i, j);
            dot *= tau;
            for (std::size_t i = 0; i < x.size(); ++i) h(k + 1 + i, j) -= dot * x[i];
        }
        // right: h <- h (I - tau v v^H) on cols k+1..n-1
        for (std::size_t i = 0; i < n; ++i) {
            cx dot = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j) dot += h(i, k + 1 + j) * x[j];
            dot *= tau;
            for (std::size_t j = 0; j < x.size(); ++j) h(i, k + 1 + j) -= dot * std::conj(x[j]);
        }
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = cx{};
        h(k + 1, k) = alpha;
    }
}

} // namespace detail

/// All eigenvalues with multiplicity, via Hessenberg reduction followed by
/// shifted QR. Throws eigen_not_converged instead of truncating.
inline std::vector<cx> spectrum(const cmatrix& a) {
    if (!a.is_square())
        throw std::invalid_argument("spectrum requires a square matrix");
    const std::size_t n = a.rows();
    std::vector<cx> eig;
    eig.reserve(n);
    if (n == 0) return eig;

    cmatrix h = a;
    detail::to_hessenberg(h);
    const double scale = std::max(fro_norm(h), 1e-300);

    std::size_t hi = n - 1;
    std::size_t stuck = 0;
    const std::size_t max_total = 40 * n + 100;
    std::size_t total = 0;

    while (true) {
        // deflate trivial subdiagonals
        for (std::size_t k = 1; k <= hi; ++k) {
            if (std::abs(h(k, k - 1)) <=
                1e-16 * (std::abs(h(k - 1, k - 1)) + std::abs(h(k, k)) + 1e-30 * scale))
                h(k, k - 1) = cx{};
        }
        while (hi > 0 && h(hi, hi - 1) == cx{}) {
            eig.push_back(h(hi, hi));
            --hi;
            stuck = 0;
        }
        if (hi == 0) {
            eig.push_back(h(0, 0));
            break;
        }
        std::size_t lo = hi;
        while (lo > 0 && h(lo, lo - 1) != cx{}) --lo;

        if (++total > max_total)
            throw error(errc::eigen_not_converged, "QR iteration did not converge");

        cx shift;
        {
            cx l1, l2;
            detail::eig_2x2(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi), l1, l2);
            shift = (std::abs(l1 - h(hi, hi)) < std::abs(l2 - h(hi, hi))) ? l1 : l2;
        }
        if (++stuck % 12 == 0) {
            // exceptional shift to break symmetric stagnation
            shift = h(hi, hi) + cx(std::abs(h(hi, hi - 1)), std::abs(h(hi, hi - 1)) * 0.5);
        }

        // explicit single-shift QR step on the active block [lo..hi]
        std::vector<detail::givens> rots(hi - lo);
        for (std::size_t k = lo; k < hi + 1; ++k) h(k, k) -= shift;
        for (std::size_t k = lo; k < hi; ++k) {
            cx r;
            const auto g = detail::make_givens(h(k, k), h(k + 1, k), r);
            rots[k - lo] = g;
            h(k, k) = r;
            h(k + 1, k) = cx{};
            for (std::size_t j = k + 1; j <= hi; ++j) {
                const cx t1 = h(k, j), t2 = h(k + 1, j);
                h(k, j) = g.c * t1 + g.s * t2;
                h(k + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
            }
        }
        for (std::size_t k = lo; k < hi; ++k) {
            const auto g = rots[k - lo];
            const std::size_t top = lo;
            for (std::size_t i = top; i <= std::min(hi, k + 1); ++i) {
                const cx t1 = h(i, k), t2 = h(i, k + 1);
                h(i, k) = g.c * t1 + std::conj(g.s) * t2;
                h(i, k + 1) = -g.s * t1 + g.c * t2;
            }
        }
        for (std::size_t k = lo; k < hi + 1; ++k) h(k, k) += shift;
    }
    return eig;
}

/// Matrix exponential by scaling-and-squaring with a [6/6] Pade approximant.
inline cmatrix expm(const cmatrix& a) {
    if (!a.is_square())
        throw std::invalid_argument("expm requires a square matrix");
    const std::size_t n = a.rows();
    if (n == 0) return a;
    require_finite(a, "expm");

    double norm = 0.0; // infinity norm
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row += std::abs(a(i, j));
        norm = std::max(norm, row);
    }
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    cmatrix x = a;
    if (squarings > 0) x *= cx(std::ldexp(1.0, -squarings), 0.0);

    constexpr int order = 6;
    double coeff[order + 1];
    coeff[0] = 1.0;
    for (int k = 1; k <= order; ++k)
        coeff[k] = coeff[k - 1] * double(order - k + 1) / double((2 * order - k + 1) * k);

    cmatrix num = cmatrix::identity(n) * cx(coeff[0], 0.0);
    cmatrix den = num;
    cmatrix pw = cmatrix::identity(n);
    for (int k = 1; k <= order; ++k) {
        pw = pw * x;
        num += pw * cx(coeff[k], 0.0);
        den += pw * cx(k % 2 == 0 ? coeff[k] : -coeff[k], 0.0);
    }
    cmatrix f = detail::lu_solve(den, num);
    for (int k = 0; k < squarings; ++k) f = f * f;
    return f;
}

} // namespace alonginv
