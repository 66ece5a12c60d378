#pragma once

#include <optional>
#include <string>
#include <vector>

#include "alonginv/decomp.hpp"
#include "alonginv/inner_inverse.hpp"
#include "alonginv/matrix.hpp"

namespace alonginv {

enum class route {
    block,
    spectral,
    spectral_mirror,
    limit,
    limit_mirror,
    series,
    integral,
    integral_mirror,
};

inline const char* route_name(route r) {
    switch (r) {
    case route::block: return "block";
    case route::spectral: return "spectral";
    case route::spectral_mirror: return "spectral-mirror";
    case route::limit: return "limit";
    case route::limit_mirror: return "limit-mirror";
    case route::series: return "series";
    case route::integral: return "integral";
    case route::integral_mirror: return "integral-mirror";
    }
    return "unknown";
}

/// A pair (a, d) with a chosen inner inverse of d and the derived idempotent
/// p = d * d^-. Constructed through make_problem, which checks the
/// idempotency and p*d = d invariants.
struct along_problem {
    cmatrix a;
    cmatrix d;
    inner_inverse dinv;
    cmatrix p;
    tolerance tol;
};

inline along_problem make_problem(cmatrix a, cmatrix d, inner_inverse dinv,
                                  tolerance tol = {}) {
    tol.validate();
    if (!a.is_square() || !d.is_square() || a.rows() != d.rows())
        throw error(errc::precondition_violated, "a and d must be square of equal size");
    require_finite(a, "a");
    require_finite(d, "d");
    cmatrix p = d * dinv.g;
    if (op_norm(p * p - p) > tol.eq_tol * std::max(1.0, op_norm(p)))
        throw error(errc::precondition_violated, "p = d d^- is not idempotent");
    if (op_norm(p * d - d) > tol.eq_tol * std::max(1.0, op_norm(d)))
        throw error(errc::precondition_violated, "p d != d");
    return along_problem{std::move(a), std::move(d), std::move(dinv), std::move(p), tol};
}

/// Convenience: Moore-Penrose inner inverse.
inline along_problem make_problem(cmatrix a, cmatrix d, tolerance tol = {}) {
    inner_inverse g = moore_penrose_inner(d, tol);
    return make_problem(std::move(a), std::move(d), std::move(g), tol);
}

/// Computed candidate for the inverse along d. Diagnostics are recomputed
/// from b, never copied from intermediate state.
struct along_result {
    cmatrix b;
    route how = route::block;
    double outer_residual = 0.0;   // ||b a b - b||
    double eq_left_residual = 0.0; // ||b a d - d||
    double eq_right_residual = 0.0;// ||d a b - d||
    double cond_compressed = 0.0;  // condition estimate of d a p + (1-p)
    std::vector<double> history;   // per-step norms; empty for direct routes
};

/// Existence certificate: v = d a p + (1 - p). Relative to p the element v is
/// block diagonal with blocks (d a p, 1-p), so invertibility of v in the full
/// algebra is exactly invertibility of d a p in the corner pRp.
struct existence_report {
    bool exists = false;
    cmatrix v;
    double cond_v = 0.0;
    std::optional<cmatrix> w; // p v^{-1} p, the corner inverse of d a p
};

namespace detail {

// Invertibility cut for the compression element: sigma_min against
// rank_tol * max(sigma_max, 1). The floor at the unit scale keeps a
// mathematically-zero v (pure round-off) from passing a relative-only test.
inline bool corner_invertible(const cmatrix& v, const tolerance& tol, double& cond) {
    const auto s = svd(v).sigma;
    cond = (s.empty() || s.back() == 0.0) ? std::numeric_limits<double>::infinity()
                                          : s.front() / s.back();
    if (s.empty()) return false;
    return s.back() >= tol.rank_tol * std::max(s.front(), 1.0);
}

} // namespace detail

inline existence_report exists_along(const along_problem& prob) {
    const std::size_t n = prob.a.rows();
    const cmatrix one = cmatrix::identity(n);
    existence_report rep;
    rep.v = prob.d * prob.a * prob.p + (one - prob.p);
    rep.exists = detail::corner_invertible(rep.v, prob.tol, rep.cond_v);
    if (rep.exists) rep.w = prob.p * detail::lu_solve(rep.v, one) * prob.p;
    return rep;
}

namespace detail {

inline along_result finish_result(const along_problem& prob, cmatrix b, route how,
                                  double cond, std::vector<double> history = {}) {
    along_result r;
    r.how = how;
    r.outer_residual = op_norm(b * prob.a * b - b);
    r.eq_left_residual = op_norm(b * prob.a * prob.d - prob.d);
    r.eq_right_residual = op_norm(prob.d * prob.a * b - prob.d);
    r.cond_compressed = cond;
    r.history = std::move(history);
    r.b = std::move(b);
    return r;
}

} // namespace detail

/// Compression route: b = w d with w the corner inverse of d a p.
inline along_result inverse_along_block(const along_problem& prob) {
    const auto rep = exists_along(prob);
    if (!rep.exists)
        throw error(errc::not_invertible_along, "d a p is not invertible in the corner pRp");
    return detail::finish_result(prob, *rep.w * prob.d, route::block, rep.cond_v);
}

/// Group inverse of d*a through the corner inverse: (da)^# = w + w^2 da (1-p).
inline cmatrix group_inverse_da(const along_problem& prob) {
    const auto rep = exists_along(prob);
    if (!rep.exists)
        throw error(errc::not_invertible_along, "d a p is not invertible in the corner pRp");
    const cmatrix one = cmatrix::identity(prob.a.rows());
    const cmatrix da = prob.d * prob.a;
    return *rep.w + *rep.w * *rep.w * da * (one - prob.p);
}

/// Spectral idempotent of d*a: 1 - (da)(da)^#.
inline cmatrix spectral_idempotent_da(const along_problem& prob) {
    const cmatrix one = cmatrix::identity(prob.a.rows());
    const cmatrix da = prob.d * prob.a;
    return one - da * group_inverse_da(prob);
}

/// Resolvent route: b = (da + t (da)^pi)^{-1} d, any scalar t != 0.
inline along_result inverse_along_spectral(const along_problem& prob, cx t) {
    if (t == cx{})
        throw error(errc::precondition_violated, "t must be nonzero");
    const cmatrix pi = spectral_idempotent_da(prob); // throws when existence fails
    const cmatrix da = prob.d * prob.a;
    const cmatrix resolvent = da + t * pi;
    if (!is_invertible(resolvent, prob.tol))
        throw error(errc::singular_resolvent, "da + t (da)^pi failed to invert");
    const cmatrix b = detail::lu_solve(resolvent, prob.d);
    return detail::finish_result(prob, b, route::spectral, cond_estimate(resolvent, prob.tol));
}

namespace detail {

/// Mirrored compression data, from the opposite-product construction: the
/// idempotent is q = d^- d, the compressed element is q a d + (1 - q), and
/// the corner inverse w' gives b = d w' and (ad)^# = w' + (1-q)(ad) w'^2.
struct mirror_data {
    bool exists = false;
    cmatrix q;
    cmatrix v;
    double cond_v = 0.0;
    cmatrix w;
};

inline mirror_data mirror_compression(const along_problem& prob) {
    const std::size_t n = prob.a.rows();
    const cmatrix one = cmatrix::identity(n);
    mirror_data m;
    m.q = prob.dinv.g * prob.d;
    m.v = m.q * prob.a * prob.d + (one - m.q);
    m.exists = corner_invertible(m.v, prob.tol, m.cond_v);
    if (m.exists) m.w = m.q * lu_solve(m.v, one) * m.q;
    return m;
}

} // namespace detail

/// Group inverse of a*d through the mirrored corner inverse.
inline cmatrix group_inverse_ad(const along_problem& prob) {
    const auto m = detail::mirror_compression(prob);
    if (!m.exists)
        throw error(errc::not_invertible_along, "q a d is not invertible in the corner qRq");
    const cmatrix one = cmatrix::identity(prob.a.rows());
    const cmatrix ad = prob.a * prob.d;
    return m.w + (one - m.q) * ad * (m.w * m.w);
}

/// Mirrored resolvent route: b = d (ad + t (ad)^pi)^{-1}.
inline along_result inverse_along_spectral_mirror(const along_problem& prob, cx t) {
    if (t == cx{})
        throw error(errc::precondition_violated, "t must be nonzero");
    const auto m = detail::mirror_compression(prob);
    if (!m.exists)
        throw error(errc::not_invertible_along, "q a d is not invertible in the corner qRq");
    const std::size_t n = prob.a.rows();
    const cmatrix one = cmatrix::identity(n);
    const cmatrix ad = prob.a * prob.d;
    const cmatrix pi = one - ad * (m.w + (one - m.q) * ad * (m.w * m.w));
    const cmatrix resolvent = ad + t * pi;
    if (!is_invertible(resolvent, prob.tol))
        throw error(errc::singular_resolvent, "ad + t (ad)^pi failed to invert");
    // right division: b = d resolvent^{-1} solved through the adjoint system
    const cmatrix b = adjoint(detail::lu_solve(adjoint(resolvent), adjoint(prob.d)));
    return detail::finish_result(prob, b, route::spectral_mirror,
                                 cond_estimate(resolvent, prob.tol));
}

/// Rank-test equality of column spaces.
inline bool range_equal(const cmatrix& x, const cmatrix& y, const tolerance& tol = {}) {
    if (x.rows() != y.rows()) return false;
    const std::size_t rx = rank(x, tol);
    const std::size_t ry = rank(y, tol);
    return rx == ry && rank(hcat(x, y), tol) == rx;
}

/// Rank-test equality of row spaces.
inline bool row_range_equal(const cmatrix& x, const cmatrix& y, const tolerance& tol = {}) {
    if (x.cols() != y.cols()) return false;
    const std::size_t rx = rank(x, tol);
    const std::size_t ry = rank(y, tol);
    return rx == ry && rank(vcat(x, y), tol) == rx;
}

/// Column-space membership: every column of f lies in range(d).
inline bool in_range(const cmatrix& f, const cmatrix& d, const tolerance& tol = {}) {
    if (f.rows() != d.rows()) return false;
    return rank(hcat(d, f), tol) == rank(d, tol);
}

/// Row-space membership: every row of f lies in the row space of d.
inline bool in_row_range(const cmatrix& f, const cmatrix& d, const tolerance& tol = {}) {
    if (f.cols() != d.cols()) return false;
    return rank(vcat(d, f), tol) == rank(d, tol);
}

/// The defining predicate: b a b = b, column space of b equals column space
/// of d and likewise for row spaces.
inline bool definition_check(const cmatrix& a, const cmatrix& d, const cmatrix& b,
                             const tolerance& tol = {}) {
    if (!a.is_square() || b.rows() != a.rows() || b.cols() != a.cols() ||
        d.rows() != a.rows() || d.cols() != a.cols())
        return false;
    if (op_norm(b * a * b - b) > tol.eq_tol * std::max(1.0, op_norm(b))) return false;
    return range_equal(b, d, tol) && row_range_equal(b, d, tol);
}

} // namespace alonginv
