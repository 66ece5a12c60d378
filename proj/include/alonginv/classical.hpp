#pragma once

#include <optional>

#include "alonginv/along.hpp"

namespace alonginv {

/// Group inverse: the inverse of a along a itself; nullopt when it does not
/// exist (rank of a^2 drops below rank of a).
inline std::optional<cmatrix> group_inverse(const cmatrix& a, const tolerance& tol = {}) {
    const auto prob = make_problem(a, a, tol);
    if (!exists_along(prob).exists) return std::nullopt;
    return inverse_along_block(prob).b;
}

struct drazin_result {
    cmatrix ad;
    std::size_t index = 0;
};

/// Drazin inverse via rank stabilization: the index k is the least k with
/// rank(a^(k+1)) = rank(a^k) (a^0 = 1), and the inverse is the inverse of a
/// along a^k. Index 0 means a is invertible and ad = a^{-1}.
inline drazin_result drazin_inverse(const cmatrix& a, const tolerance& tol = {}) {
    if (!a.is_square())
        throw error(errc::precondition_violated, "drazin_inverse requires a square matrix");
    const std::size_t n = a.rows();
    drazin_result out;
    std::size_t prev_rank = n; // rank(a^0)
    cmatrix pw = cmatrix::identity(n);
    for (std::size_t k = 0; k <= n; ++k) {
        const cmatrix next = pw * a;
        const std::size_t r = rank(next, tol);
        if (r == prev_rank) {
            out.index = k;
            if (k == 0) {
                out.ad = invert(a, tol);
                return out;
            }
            out.ad = inverse_along_block(make_problem(a, pw, tol)).b;
            return out;
        }
        prev_rank = r;
        pw = next;
    }
    // ranks strictly decrease at most n times, so this is unreachable
    throw error(errc::precondition_violated, "rank sequence failed to stabilize");
}

/// Moore-Penrose inverse realized as the inverse of a along a^*.
inline cmatrix moore_penrose_via_along(const cmatrix& a, const tolerance& tol = {}) {
    return inverse_along_block(make_problem(a, adjoint(a), tol)).b;
}

/// Invertible positive Hermitian weights together with their Hermitian
/// square roots (from the eigendecomposition, eigenvalues clamped at
/// rank_tol). Positive definiteness is required, which keeps the square
/// roots unique.
struct weight_pair {
    cmatrix m;
    cmatrix n;
    cmatrix sqrt_m;
    cmatrix sqrt_n;
};

namespace detail {

inline cmatrix hermitian_sqrt(const cmatrix& w, const tolerance& tol, const char* label) {
    if (!w.is_square())
        throw error(errc::precondition_violated, std::string(label) + " must be square");
    const double scale = std::max(1.0, op_norm(w));
    if (op_norm(w - adjoint(w)) > tol.eq_tol * scale)
        throw error(errc::precondition_violated, std::string(label) + " must be Hermitian");
    auto eig = hermitian_eig(w);
    for (double& v : eig.values) {
        if (v < tol.rank_tol)
            throw error(errc::precondition_violated,
                        std::string(label) + " must be positive definite");
        v = std::sqrt(std::max(v, tol.rank_tol));
    }
    const cmatrix s = eig.vectors * diag_matrix(eig.values) * adjoint(eig.vectors);
    // symmetrize round-off
    return (s + adjoint(s)) * cx(0.5);
}

} // namespace detail

inline weight_pair make_weight_pair(cmatrix m, cmatrix n, const tolerance& tol = {}) {
    weight_pair w;
    w.sqrt_m = detail::hermitian_sqrt(m, tol, "weight m");
    w.sqrt_n = detail::hermitian_sqrt(n, tol, "weight n");
    w.m = std::move(m);
    w.n = std::move(n);
    return w;
}

/// Weighted Moore-Penrose inverse as the inverse of a along n^{-1} a^* m.
inline cmatrix weighted_mp(const cmatrix& a, const weight_pair& w, const tolerance& tol = {}) {
    if (!a.is_square() || a.rows() != w.m.rows() || a.rows() != w.n.rows())
        throw error(errc::precondition_violated, "weighted_mp shape mismatch");
    const cmatrix d = invert(w.n, tol) * adjoint(a) * w.m;
    return inverse_along_block(make_problem(a, d, tol)).b;
}

/// Invertibility characterization of the weighted Moore-Penrose inverse:
/// u = a^* m a n^{-1} + 1 - a^* z and v = m a n^{-1} a^* + 1 - z a^* for any
/// inner inverse z of a^*; when invertible they recover the inverse as
/// n^{-1} u^{-1} a^* m = n^{-1} a^* v^{-1} m.
struct uv_report {
    cmatrix u;
    cmatrix v;
    bool u_invertible = false;
    bool v_invertible = false;
    std::optional<cmatrix> x_from_u;
    std::optional<cmatrix> x_from_v;
};

inline uv_report weighted_mp_via_uv(const cmatrix& a, const weight_pair& w, const cmatrix& z,
                                    const tolerance& tol = {}) {
    const cmatrix astar = adjoint(a);
    if (!is_inner_inverse(astar, z, tol))
        throw error(errc::bad_inner_inverse, "z is not an inner inverse of a^*");
    const cmatrix one = cmatrix::identity(a.rows());
    const cmatrix ninv = invert(w.n, tol);
    uv_report rep;
    rep.u = astar * w.m * a * ninv + one - astar * z;
    rep.v = w.m * a * ninv * astar + one - z * astar;
    rep.u_invertible = is_invertible(rep.u, tol);
    rep.v_invertible = is_invertible(rep.v, tol);
    if (rep.u_invertible) rep.x_from_u = ninv * invert(rep.u, tol) * astar * w.m;
    if (rep.v_invertible) rep.x_from_v = ninv * astar * invert(rep.v, tol) * w.m;
    return rep;
}

/// Residuals of the four weighted Penrose equations for x against a.
struct weighted_residuals {
    double axa;       // ||a x a - a||
    double xax;       // ||x a x - x||
    double max_herm;  // ||m a x - (m a x)^*||
    double nxa_herm;  // ||n x a - (n x a)^*||
};

inline weighted_residuals weighted_mp_residuals(const cmatrix& a, const cmatrix& x,
                                                const weight_pair& w) {
    weighted_residuals r{};
    r.axa = op_norm(a * x * a - a);
    r.xax = op_norm(x * a * x - x);
    const cmatrix max = w.m * a * x;
    const cmatrix nxa = w.n * x * a;
    r.max_herm = op_norm(max - adjoint(max));
    r.nxa_herm = op_norm(nxa - adjoint(nxa));
    return r;
}

} // namespace alonginv
