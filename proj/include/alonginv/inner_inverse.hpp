#pragma once

#include <cstdint>

#include "alonginv/decomp.hpp"
#include "alonginv/matrix.hpp"
#include "alonginv/random.hpp"

namespace alonginv {

/// An inner inverse g of d (d*g*d = d) together with recomputed Hermitian-ness
/// flags for the products d*g and g*d.
struct inner_inverse {
    cmatrix d;
    cmatrix g;
    bool dg_hermitian = false;
    bool gd_hermitian = false;
};

inline bool is_inner_inverse(const cmatrix& d, const cmatrix& g, const tolerance& tol = {}) {
    if (g.rows() != d.cols() || g.cols() != d.rows()) return false;
    return op_norm(d * g * d - d) <= tol.eq_tol * std::max(1.0, op_norm(d));
}

/// Validates d*g*d = d and recomputes the flags; never trusts caller flags.
inline inner_inverse make_inner_inverse(const cmatrix& d, const cmatrix& g,
                                        const tolerance& tol = {}) {
    if (!is_inner_inverse(d, g, tol))
        throw error(errc::bad_inner_inverse, "matrix is not an inner inverse of d");
    inner_inverse r{d, g, false, false};
    const cmatrix dg = d * g;
    const cmatrix gd = g * d;
    r.dg_hermitian = op_norm(dg - adjoint(dg)) <= tol.eq_tol * std::max(1.0, op_norm(dg));
    r.gd_hermitian = op_norm(gd - adjoint(gd)) <= tol.eq_tol * std::max(1.0, op_norm(gd));
    return r;
}

/// Moore-Penrose inverse via the SVD; the zero matrix maps to its transpose
/// shape of zeros.
inline cmatrix moore_penrose(const cmatrix& d, const tolerance& tol = {}) {
    const auto dec = svd(d);
    cmatrix pinv(d.cols(), d.rows());
    if (dec.sigma.empty() || dec.sigma.front() == 0.0) return pinv;
    const double cut = tol.rank_tol * dec.sigma.front();
    // pinv = v * diag(1/sigma) * u^H over the retained part
    for (std::size_t k = 0; k < dec.sigma.size(); ++k) {
        if (dec.sigma[k] < cut) continue;
        const double inv = 1.0 / dec.sigma[k];
        for (std::size_t i = 0; i < d.cols(); ++i)
            for (std::size_t j = 0; j < d.rows(); ++j)
                pinv(i, j) += dec.v(i, k) * inv * std::conj(dec.u(j, k));
    }
    return pinv;
}

inline inner_inverse moore_penrose_inner(const cmatrix& d, const tolerance& tol = {}) {
    return make_inner_inverse(d, moore_penrose(d, tol), tol);
}

/// Seeded general inner inverse g = d^+ + u - d^+ d u d d^+ with u drawn
/// i.i.d. from the complex unit disc. Generally neither product is Hermitian.
inline inner_inverse random_inner_inverse(const cmatrix& d, std::uint64_t seed,
                                          const tolerance& tol = {}) {
    const cmatrix pinv = moore_penrose(d, tol);
    rng gen(seed);
    cmatrix u(d.cols(), d.rows());
    for (std::size_t i = 0; i < u.rows(); ++i)
        for (std::size_t j = 0; j < u.cols(); ++j) u(i, j) = gen.unit_disc();
    const cmatrix g = pinv + u - pinv * d * u * d * pinv;
    return make_inner_inverse(d, g, tol);
}

} // namespace alonginv
