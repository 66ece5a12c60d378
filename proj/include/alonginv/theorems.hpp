#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "alonginv/classical.hpp"
#include "alonginv/along.hpp"

namespace alonginv {

/// Outcome of one executable theorem check. `holds` is recomputed from the
/// residuals/predicates; on failure the inputs are kept as a witness. `seed`
/// identifies the corpus draw in batch runs (0 for direct calls).
struct verdict_report {
    std::string theorem_id;
    bool holds = false;
    std::map<std::string, double> residuals;
    std::vector<cmatrix> witness;
    std::uint64_t seed = 0;
};

namespace detail {

inline double eq_scale(const tolerance& tol, double cond, double magnitude) {
    return tol.eq_tol * std::max(1.0, cond) * std::max(1.0, magnitude);
}

inline void attach_witness(verdict_report& rep, std::initializer_list<cmatrix> ms) {
    if (!rep.holds)
        for (const auto& m : ms) rep.witness.push_back(m);
}

} // namespace detail

/// Two-route check of the similarity transport rule: the inverse of
/// s a r^{-1} along r d s^{-1} equals r (a along d) s^{-1}.
inline verdict_report verify_transform(const cmatrix& a, const cmatrix& d, const cmatrix& s,
                                       const cmatrix& r, const tolerance& tol = {}) {
    verdict_report rep;
    rep.theorem_id = "similarity-transform";
    const cmatrix sinv = invert(s, tol);
    const cmatrix rinv = invert(r, tol);
    const auto base = make_problem(a, d, tol);
    const auto base_rep = exists_along(base);
    if (!base_rep.exists)
        throw error(errc::not_invertible_along, "verify_transform requires a invertible along d");
    const cmatrix b = inverse_along_block(base).b;

    const auto moved = make_problem(s * a * rinv, r * d * sinv, tol);
    const auto moved_rep = exists_along(moved);
    rep.residuals["transformed_exists"] = moved_rep.exists ? 0.0 : 1.0;
    double residual = std::numeric_limits<double>::infinity();
    if (moved_rep.exists) {
        const cmatrix lhs = inverse_along_block(moved).b;
        const cmatrix rhs = r * b * sinv;
        residual = op_norm(lhs - rhs);
        const double cond = std::max(base_rep.cond_v, moved_rep.cond_v);
        rep.holds = residual <= detail::eq_scale(tol, cond, op_norm(rhs));
    }
    rep.residuals["two_route_residual"] = residual;
    detail::attach_witness(rep, {a, d, s, r});
    return rep;
}

/// Moore-Penrose similarity: (i) the pseudoinverse of s^{-1} a r equals
/// r^{-1} (a along r r^* a^* (s s^*)^{-1}) s, compared against the SVD route;
/// (ii) the biconditional between (s^{-1}ar)^+ = r^{-1} a^+ s and the range
/// conditions s s^* a R = a r r^* R, R s s^* a = R a r r^*.
inline verdict_report verify_mp_similarity(const cmatrix& a, const cmatrix& s, const cmatrix& r,
                                           const tolerance& tol = {}) {
    verdict_report rep;
    rep.theorem_id = "mp-similarity";
    const cmatrix sinv = invert(s, tol);
    const cmatrix rinv = invert(r, tol);
    const cmatrix sstar = s * adjoint(s);
    const cmatrix rstar = r * adjoint(r);

    const cmatrix c = sinv * a * r;
    const cmatrix c_pinv = moore_penrose(c, tol);
    const cmatrix f = rstar * adjoint(a) * invert(sstar, tol);
    const auto prob = make_problem(a, f, tol);
    const auto prep = exists_along(prob);
    rep.residuals["along_f_exists"] = prep.exists ? 0.0 : 1.0;
    bool part_i = false;
    double res_i = std::numeric_limits<double>::infinity();
    if (prep.exists) {
        const cmatrix rhs = rinv * inverse_along_block(prob).b * s;
        res_i = op_norm(c_pinv - rhs);
        part_i = res_i <= detail::eq_scale(tol, prep.cond_v * cond_estimate(s, tol) *
                                                    cond_estimate(r, tol),
                                           op_norm(rhs));
    }
    rep.residuals["route_residual"] = res_i;

    const cmatrix direct = rinv * moore_penrose(a, tol) * s;
    const double equal_res = op_norm(c_pinv - direct);
    const bool pred_equal = equal_res <= detail::eq_scale(tol, cond_estimate(s, tol) *
                                                                   cond_estimate(r, tol),
                                                          op_norm(direct));
    const bool pred_range = range_equal(sstar * a, a * rstar, tol) &&
                            row_range_equal(sstar * a, a * rstar, tol);
    rep.residuals["equality_residual"] = equal_res;
    rep.residuals["pred_equal"] = pred_equal ? 1.0 : 0.0;
    rep.residuals["pred_range"] = pred_range ? 1.0 : 0.0;

    rep.holds = part_i && (pred_equal == pred_range);
    detail::attach_witness(rep, {a, s, r});
    return rep;
}

/// Group-inverse similarity: (i) (s^{-1} a r)^# = r^{-1} (a along
/// r s^{-1} a r s^{-1}) s; (ii) for group invertible a, the biconditional
/// between (s^{-1}ar)^# = r^{-1} a^# s and the module conditions.
inline verdict_report verify_group_similarity(const cmatrix& a, const cmatrix& s,
                                              const cmatrix& r, const tolerance& tol = {}) {
    verdict_report rep;
    rep.theorem_id = "group-similarity";
    const cmatrix sinv = invert(s, tol);
    const cmatrix rinv = invert(r, tol);
    const cmatrix c = sinv * a * r;
    const auto c_sharp = group_inverse(c, tol);
    if (!c_sharp)
        throw error(errc::precondition_violated, "s^{-1} a r is not group invertible");

    const cmatrix g = r * sinv * a * r * sinv;
    const auto prob = make_problem(a, g, tol);
    const auto prep = exists_along(prob);
    rep.residuals["along_g_exists"] = prep.exists ? 0.0 : 1.0;
    bool part_i = false;
    double res_i = std::numeric_limits<double>::infinity();
    if (prep.exists) {
        const cmatrix rhs = rinv * inverse_along_block(prob).b * s;
        res_i = op_norm(*c_sharp - rhs);
        part_i = res_i <= detail::eq_scale(tol, prep.cond_v * cond_estimate(s, tol) *
                                                    cond_estimate(r, tol),
                                           op_norm(rhs));
    }
    rep.residuals["route_residual"] = res_i;

    const auto a_sharp = group_inverse(a, tol);
    rep.residuals["a_group_invertible"] = a_sharp ? 1.0 : 0.0;
    bool part_ii = true;
    if (a_sharp) {
        const cmatrix direct = rinv * *a_sharp * s;
        const double equal_res = op_norm(*c_sharp - direct);
        const bool pred_equal =
            equal_res <= detail::eq_scale(tol, cond_estimate(s, tol) * cond_estimate(r, tol),
                                          op_norm(direct));
        const bool pred_range = row_range_equal(a * s * rinv, r * sinv * a, tol) &&
                                range_equal(s * rinv * a, a * r * sinv, tol);
        rep.residuals["equality_residual"] = equal_res;
        rep.residuals["pred_equal"] = pred_equal ? 1.0 : 0.0;
        rep.residuals["pred_range"] = pred_range ? 1.0 : 0.0;
        part_ii = (pred_equal == pred_range);
    }
    rep.holds = part_i && part_ii;
    detail::attach_witness(rep, {a, s, r});
    return rep;
}

/// Hermitian-product characterization with a Moore-Penrose inner inverse:
/// (a along d) a is Hermitian iff (d a)^* lies in the column space of d, and
/// a (a along d) is Hermitian iff a d lies in the column space of d^*.
inline verdict_report verify_hermitian_products(const cmatrix& a, const cmatrix& d,
                                                const tolerance& tol = {}) {
    verdict_report rep;
    rep.theorem_id = "hermitian-products";
    const auto prob = make_problem(a, d, tol);
    if (!exists_along(prob).exists)
        throw error(errc::not_invertible_along,
                    "verify_hermitian_products requires a invertible along d");
    const cmatrix b = inverse_along_block(prob).b;

    const cmatrix ba = b * a;
    const cmatrix ab = a * b;
    const double herm_left = op_norm(ba - adjoint(ba));
    const double herm_right = op_norm(ab - adjoint(ab));
    const bool h1 = herm_left <= tol.eq_tol * std::max(1.0, op_norm(ba));
    const bool h2 = herm_right <= tol.eq_tol * std::max(1.0, op_norm(ab));
    const bool m1 = in_range(adjoint(d * a), d, tol);
    const bool m2 = in_range(a * d, adjoint(d), tol);

    rep.residuals["herm_left"] = herm_left;
    rep.residuals["herm_right"] = herm_right;
    rep.residuals["pred_h1"] = h1 ? 1.0 : 0.0;
    rep.residuals["pred_m1"] = m1 ? 1.0 : 0.0;
    rep.residuals["pred_h2"] = h2 ? 1.0 : 0.0;
    rep.residuals["pred_m2"] = m2 ? 1.0 : 0.0;
    rep.holds = (h1 == m1) && (h2 == m2);
    detail::attach_witness(rep, {a, d});
    return rep;
}

/// Exact three-term perturbation identity relating the inverses of two
/// problems; holds for any valid inner inverses of d and e.
inline verdict_report perturbation_identity(const cmatrix& a, const cmatrix& d,
                                            const cmatrix& b_mat, const cmatrix& e,
                                            const inner_inverse& dinv,
                                            const inner_inverse& einv,
                                            const tolerance& tol = {}) {
    verdict_report rep;
    rep.theorem_id = "perturbation-identity";
    const auto prob_a = make_problem(a, d, dinv, tol);
    const auto prob_b = make_problem(b_mat, e, einv, tol);
    const auto rep_a = exists_along(prob_a);
    const auto rep_b = exists_along(prob_b);
    if (!rep_a.exists || !rep_b.exists)
        throw error(errc::not_invertible_along, "both pairs must be invertible along");
    const cmatrix xa = inverse_along_block(prob_a).b;
    const cmatrix xb = inverse_along_block(prob_b).b;
    const cmatrix one = cmatrix::identity(a.rows());

    const cmatrix lhs = xb - xa;
    const cmatrix rhs = xb * einv.g * (e - d) * (one - a * xa) +
                        (one - xb * b_mat) * (e - d) * dinv.g * xa +
                        xb * (a - b_mat) * xa;
    const double residual = op_norm(lhs - rhs);
    const double cond = std::max(rep_a.cond_v, rep_b.cond_v);
    rep.residuals["identity_residual"] = residual;
    rep.residuals["cond"] = cond;
    rep.holds = residual <= tol.eq_tol * (1.0 + cond);
    detail::attach_witness(rep, {a, d, b_mat, e});
    return rep;
}

inline verdict_report perturbation_identity(const cmatrix& a, const cmatrix& d,
                                            const cmatrix& b_mat, const cmatrix& e,
                                            const tolerance& tol = {}) {
    return perturbation_identity(a, d, b_mat, e, moore_penrose_inner(d, tol),
                                 moore_penrose_inner(e, tol), tol);
}

/// Resolvent-difference bound for invertible elements:
/// ||a^{-1} - b^{-1}|| <= ||a^{-1}||^2 ||b-a|| / (1 - ||b-a|| ||a^{-1}||).
inline verdict_report verify_inverse_bound(const cmatrix& a, const cmatrix& b,
                                           const tolerance& tol = {}) {
    verdict_report rep;
    rep.theorem_id = "inverse-bound";
    const cmatrix ainv = invert(a, tol);
    const cmatrix binv = invert(b, tol);
    const double gap = op_norm(b - a);
    const double na = op_norm(ainv);
    if (gap * na >= 1.0)
        throw error(errc::precondition_violated, "||b-a|| ||a^{-1}|| must be < 1");
    const double actual = op_norm(ainv - binv);
    const double bound = na * na * gap / (1.0 - gap * na);
    rep.residuals["actual"] = actual;
    rep.residuals["bound"] = bound;
    rep.holds = actual <= bound + tol.eq_tol;
    detail::attach_witness(rep, {a, b});
    return rep;
}

/// Finite-prefix instantiation of the continuity statement: when the
/// computed inverses stay bounded and the inner-inverse norms stay bounded,
/// the terminal error must fall below a declared 1/n envelope anchored at
/// the first prefix element. A finite prefix cannot verify a limit; this is
/// an envelope check and is reported as such.
inline verdict_report continuity_experiment(std::span<const cmatrix> a_seq,
                                            std::span<const cmatrix> d_seq, const cmatrix& a,
                                            const cmatrix& d, const tolerance& tol = {}) {
    if (a_seq.size() != d_seq.size() || a_seq.empty())
        throw error(errc::precondition_violated, "sequences must be nonempty and equal length");
    verdict_report rep;
    rep.theorem_id = "continuity";

    const cmatrix x = inverse_along_block(make_problem(a, d, tol)).b;
    std::vector<double> norms, dinv_norms, errors;
    norms.reserve(a_seq.size());
    for (std::size_t i = 0; i < a_seq.size(); ++i) {
        const auto prob = make_problem(a_seq[i], d_seq[i], tol);
        const cmatrix xi = inverse_along_block(prob).b;
        norms.push_back(op_norm(xi));
        dinv_norms.push_back(op_norm(prob.dinv.g));
        errors.push_back(op_norm(xi - x));
    }

    const auto half_growth = [](const std::vector<double>& v) {
        const std::size_t half = v.size() / 2;
        double first = 0.0, second = 0.0;
        for (std::size_t i = 0; i < half; ++i) first = std::max(first, v[i]);
        for (std::size_t i = half; i < v.size(); ++i) second = std::max(second, v[i]);
        return second <= 1.5 * std::max(first, 1e-300);
    };
    const bool bounded = a_seq.size() < 2 || half_growth(norms);
    const bool dinv_bounded = a_seq.size() < 2 || half_growth(dinv_norms);

    const double n0 = 1.0;
    const double nN = static_cast<double>(a_seq.size());
    const double envelope = 10.0 * std::max(errors.front(), tol.eq_tol) * n0 / nN;
    rep.residuals["max_norm"] = *std::max_element(norms.begin(), norms.end());
    rep.residuals["sup_dinv_norm"] = *std::max_element(dinv_norms.begin(), dinv_norms.end());
    rep.residuals["first_error"] = errors.front();
    rep.residuals["terminal_error"] = errors.back();
    rep.residuals["envelope"] = envelope;
    rep.residuals["bounded"] = bounded ? 1.0 : 0.0;
    rep.residuals["dinv_bounded"] = dinv_bounded ? 1.0 : 0.0;

    rep.holds = !(bounded && dinv_bounded) || errors.back() <= envelope;
    return rep;
}

} // namespace alonginv
