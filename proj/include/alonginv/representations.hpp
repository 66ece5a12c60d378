#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "alonginv/along.hpp"

namespace alonginv {

/// Decreasing positive resolvent parameters; default decades 1e-1 .. 1e-8.
struct limit_schedule {
    std::vector<double> t_values;
    bool extrapolate = false;

    static limit_schedule decades() {
        limit_schedule s;
        for (int k = 1; k <= 8; ++k) s.t_values.push_back(std::pow(10.0, -k));
        return s;
    }

    void validate() const {
        if (t_values.empty())
            throw error(errc::precondition_violated, "empty limit schedule");
        double prev = std::numeric_limits<double>::infinity();
        for (double t : t_values) {
            if (!(t > 0.0) || !(t < prev))
                throw error(errc::precondition_violated,
                            "schedule must be strictly decreasing and positive");
            prev = t;
        }
    }
};

struct series_params {
    double beta = 1.0;
    std::size_t max_terms = 100000;
    double conv_tol = 1e-12;

    void validate() const {
        if (beta == 0.0)
            throw error(errc::precondition_violated, "beta must be nonzero");
        if (!(conv_tol > 0.0))
            throw error(errc::precondition_violated, "conv_tol must be positive");
    }
};

struct quad_params {
    std::optional<double> horizon;   // nullopt: choose from the spectral abscissa
    std::size_t panels = 8;          // starting panel count; doubled to converge
    std::size_t nodes_per_panel = 12;
    std::size_t max_doublings = 8;

    void validate() const {
        if (horizon && !(*horizon > 0.0))
            throw error(errc::precondition_violated, "horizon must be positive");
        if (panels < 1 || nodes_per_panel < 2)
            throw error(errc::precondition_violated, "bad quadrature parameters");
    }
};

namespace detail {

inline along_result with_tail(along_result r, double tail) {
    r.history.push_back(tail);
    return r;
}

// One Richardson step (assuming O(t) error) on every consecutive schedule
// pair. Truncation shrinks with t while resolvent round-off grows like 1/t,
// so the extrapolant with the smallest change from its predecessor marks the
// usable optimum.
inline cmatrix richardson_pick(const std::vector<std::pair<double, cmatrix>>& iterates) {
    std::vector<cmatrix> ex;
    ex.reserve(iterates.size());
    for (std::size_t i = 0; i + 1 < iterates.size(); ++i) {
        const auto& [t1, x1] = iterates[i];
        const auto& [t2, x2] = iterates[i + 1];
        ex.push_back((cx(t1) * x2 - cx(t2) * x1) * (1.0 / cx(t1 - t2)));
    }
    if (ex.empty()) return iterates.back().second;
    if (ex.size() == 1) return ex.front();
    std::size_t best = 1;
    double best_diff = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < ex.size(); ++i) {
        const double diff = op_norm(ex[i] - ex[i - 1]);
        if (diff < best_diff) {
            best_diff = diff;
            best = i;
        }
    }
    return ex[best];
}

} // namespace detail

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
inline void gauss_legendre(std::size_t n, std::vector<double>& nodes,
                           std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const std::size_t m = (n + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            dp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

/// Resolvent limit (da + t)^{-1} d along the schedule. Singular resolvents at
/// individual t are skipped; it is an error only if every point fails.
inline along_result inverse_along_limit(const along_problem& prob, const limit_schedule& sched) {
    sched.validate();
    if (!exists_along(prob).exists)
        throw error(errc::not_invertible_along, "limit requires a invertible along d");
    const std::size_t n = prob.a.rows();
    const cmatrix da = prob.d * prob.a;
    const cmatrix one = cmatrix::identity(n);

    std::vector<double> history;
    std::vector<std::pair<double, cmatrix>> iterates;
    double cond = 0.0;
    for (double t : sched.t_values) {
        const cmatrix resolvent = da + cx(t) * one;
        if (!is_invertible(resolvent, prob.tol)) continue;
        cmatrix x = detail::lu_solve(resolvent, prob.d);
        if (!iterates.empty()) history.push_back(op_norm(x - iterates.back().second));
        cond = cond_estimate(resolvent, prob.tol);
        iterates.emplace_back(t, std::move(x));
    }
    if (iterates.empty())
        throw error(errc::singular_resolvent, "da + t failed to invert at every schedule point");

    cmatrix b = sched.extrapolate ? detail::richardson_pick(iterates) : iterates.back().second;
    // the exact limit satisfies p b = b and b d^- d = b; projecting onto both
    // identities strips the resolvent round-off lying outside the ranges of d
    b = prob.p * b * (prob.dinv.g * prob.d);
    return detail::finish_result(prob, std::move(b), route::limit, cond, std::move(history));
}

/// Mirror form d (ad + t)^{-1}.
inline along_result inverse_along_limit_mirror(const along_problem& prob,
                                              const limit_schedule& sched) {
    sched.validate();
    if (!exists_along(prob).exists)
        throw error(errc::not_invertible_along, "limit requires a invertible along d");
    const std::size_t n = prob.a.rows();
    const cmatrix ad = prob.a * prob.d;
    const cmatrix one = cmatrix::identity(n);

    std::vector<double> history;
    std::vector<std::pair<double, cmatrix>> iterates;
    double cond = 0.0;
    for (double t : sched.t_values) {
        const cmatrix resolvent = ad + cx(t) * one;
        if (!is_invertible(resolvent, prob.tol)) continue;
        cmatrix x = adjoint(detail::lu_solve(adjoint(resolvent), adjoint(prob.d)));
        if (!iterates.empty()) history.push_back(op_norm(x - iterates.back().second));
        cond = cond_estimate(resolvent, prob.tol);
        iterates.emplace_back(t, std::move(x));
    }
    if (iterates.empty())
        throw error(errc::singular_resolvent, "ad + t failed to invert at every schedule point");

    cmatrix b = sched.extrapolate ? detail::richardson_pick(iterates) : iterates.back().second;
    b = prob.p * b * (prob.dinv.g * prob.d);
    return detail::finish_result(prob, std::move(b), route::limit_mirror, cond,
                                 std::move(history));
}

/// Quantitative bound on ||(da+t)^{-1} d - b||: requires a Hermitian d d^-
/// and t ||b|| ||d^-|| < 1, where b is the inverse along d.
inline double limit_error_bound(const along_problem& prob, double t) {
    if (!prob.dinv.dg_hermitian)
        throw error(errc::precondition_violated, "bound requires Hermitian d d^-");
    if (!(t > 0.0))
        throw error(errc::precondition_violated, "bound requires t > 0");
    const along_result blk = inverse_along_block(prob);
    const double bn = op_norm(blk.b);
    const double gn = op_norm(prob.dinv.g);
    if (t * bn * gn >= 1.0)
        throw error(errc::precondition_violated, "t too large: t ||b|| ||d^-|| >= 1");
    return t * bn * bn * gn * gn / (1.0 - t * bn * gn) * op_norm(prob.d);
}

/// Both Neumann forms of the series representation with per-term norms.
struct series_sums {
    cmatrix left;   // beta * sum (1 - beta da)^n d
    cmatrix right;  // beta * sum d (1 - beta ad)^n
    std::vector<double> term_norms;
    double contraction = 0.0; // ||p - beta d a p||
    std::size_t terms = 0;
};

inline series_sums series_partial_sums(const along_problem& prob, const series_params& params) {
    params.validate();
    const std::size_t n = prob.a.rows();
    const cmatrix one = cmatrix::identity(n);
    const cmatrix da = prob.d * prob.a;
    const cmatrix ad = prob.a * prob.d;
    const double beta = params.beta;

    series_sums out;
    out.contraction = op_norm(prob.p - cx(beta) * (da * prob.p));
    if (out.contraction >= 1.0)
        throw error(errc::contraction_failed, "||p - beta d a p|| >= 1");

    const cmatrix left_step = one - cx(beta) * da;
    const cmatrix right_step = one - cx(beta) * ad;
    cmatrix lterm = prob.d;
    cmatrix rterm = prob.d;
    cmatrix lsum(n, n);
    cmatrix rsum(n, n);
    for (std::size_t k = 0;; ++k) {
        if (k >= params.max_terms)
            throw error(errc::max_terms_exceeded, "series did not meet conv_tol");
        lsum += lterm;
        rsum += rterm;
        const double tn = std::abs(beta) * std::max(fro_norm(lterm), fro_norm(rterm));
        out.term_norms.push_back(tn);
        if (tn < params.conv_tol) {
            out.terms = k + 1;
            break;
        }
        lterm = left_step * lterm;
        rterm = rterm * right_step;
    }
    out.left = cx(beta) * lsum;
    out.right = cx(beta) * rsum;
    return out;
}

/// Neumann series route; the contraction hypothesis itself certifies
/// existence, so no separate existence check is made.
inline along_result inverse_along_series(const along_problem& prob, const series_params& params) {
    auto sums = series_partial_sums(prob, params);
    return detail::finish_result(prob, std::move(sums.left), route::series,
                                 1.0 / (1.0 - sums.contraction), std::move(sums.term_norms));
}

namespace detail {

struct spectrum_gate {
    double abscissa; // smallest real part among nonzero eigenvalues
};

inline spectrum_gate check_right_half_plane(const cmatrix& x, const tolerance& tol,
                                            const char* label) {
    const auto eig = spectrum(x);
    double rho = 0.0;
    for (const auto& l : eig) rho = std::max(rho, std::abs(l));
    double alpha = std::numeric_limits<double>::infinity();
    bool any_nonzero = false;
    for (const auto& l : eig) {
        if (std::abs(l) <= tol.rank_tol * std::max(1.0, rho)) continue;
        any_nonzero = true;
        if (!(l.real() > tol.rank_tol))
            throw error(errc::spectrum_violation,
                        std::string(label) + ": nonzero eigenvalue outside the right half-plane");
        alpha = std::min(alpha, l.real());
    }
    if (!any_nonzero) alpha = 1.0; // x is nilpotent-free zero part only; integrand is d itself
    return {alpha};
}

template <typename Integrand>
cmatrix composite_gauss(const Integrand& f, double horizon, std::size_t panels,
                        std::size_t nodes, std::size_t rows, std::size_t cols) {
    std::vector<double> xs, ws;
    gauss_legendre(nodes, xs, ws);
    cmatrix acc(rows, cols);
    const double h = horizon / static_cast<double>(panels);
    for (std::size_t pnl = 0; pnl < panels; ++pnl) {
        const double a = h * static_cast<double>(pnl);
        for (std::size_t k = 0; k < nodes; ++k) {
            const double t = a + 0.5 * h * (xs[k] + 1.0);
            acc += cx(0.5 * h * ws[k]) * f(t);
        }
    }
    return acc;
}

} // namespace detail

/// Improper-integral route: integral of exp(-t da) d over [0, inf), valid when
/// the nonzero spectrum of da lies in the open right half-plane. The horizon
/// is cut where the integrand tail is below conv_tol and panels are doubled
/// until two successive composite rules agree.
inline along_result inverse_along_integral(const along_problem& prob, const quad_params& params) {
    params.validate();
    const auto rep = exists_along(prob);
    if (!rep.exists)
        throw error(errc::not_invertible_along, "integral requires a invertible along d");
    const cmatrix da = prob.d * prob.a;
    const auto gate = detail::check_right_half_plane(da, prob.tol, "spectrum(da)");
    const double horizon = params.horizon
                               ? *params.horizon
                               : 1.2 * std::log(1.0 / prob.tol.conv_tol) / gate.abscissa;

    const auto integrand = [&](double t) { return expm(cx(-t) * da) * prob.d; };
    std::size_t panels = params.panels;
    cmatrix prev = detail::composite_gauss(integrand, horizon, panels, params.nodes_per_panel,
                                           prob.d.rows(), prob.d.cols());
    std::vector<double> history;
    for (std::size_t step = 0;; ++step) {
        if (step >= params.max_doublings)
            throw error(errc::quadrature_not_converged, "panel doubling cap reached");
        panels *= 2;
        cmatrix cur = detail::composite_gauss(integrand, horizon, panels,
                                              params.nodes_per_panel, prob.d.rows(),
                                              prob.d.cols());
        const double diff = op_norm(cur - prev);
        history.push_back(diff);
        prev = std::move(cur);
        if (diff < prob.tol.conv_tol * std::max(1.0, op_norm(prev))) break;
    }
    // first-order tail certificate: ||integrand(T)|| / abscissa
    const double tail = op_norm(integrand(horizon)) / gate.abscissa;
    auto r = detail::finish_result(prob, std::move(prev), route::integral, rep.cond_v,
                                   std::move(history));
    return detail::with_tail(std::move(r), tail);
}

/// Mirror form: integral of d exp(-t ad), gated on the spectrum of ad.
inline along_result inverse_along_integral_mirror(const along_problem& prob,
                                                 const quad_params& params) {
    params.validate();
    const auto rep = exists_along(prob);
    if (!rep.exists)
        throw error(errc::not_invertible_along, "integral requires a invertible along d");
    const cmatrix ad = prob.a * prob.d;
    const auto gate = detail::check_right_half_plane(ad, prob.tol, "spectrum(ad)");
    const double horizon = params.horizon
                               ? *params.horizon
                               : 1.2 * std::log(1.0 / prob.tol.conv_tol) / gate.abscissa;

    const auto integrand = [&](double t) { return prob.d * expm(cx(-t) * ad); };
    std::size_t panels = params.panels;
    cmatrix prev = detail::composite_gauss(integrand, horizon, panels, params.nodes_per_panel,
                                           prob.d.rows(), prob.d.cols());
    std::vector<double> history;
    for (std::size_t step = 0;; ++step) {
        if (step >= params.max_doublings)
            throw error(errc::quadrature_not_converged, "panel doubling cap reached");
        panels *= 2;
        cmatrix cur = detail::composite_gauss(integrand, horizon, panels,
                                              params.nodes_per_panel, prob.d.rows(),
                                              prob.d.cols());
        const double diff = op_norm(cur - prev);
        history.push_back(diff);
        prev = std::move(cur);
        if (diff < prob.tol.conv_tol * std::max(1.0, op_norm(prev))) break;
    }
    const double tail = op_norm(integrand(horizon)) / gate.abscissa;
    auto r = detail::finish_result(prob, std::move(prev), route::integral_mirror, rep.cond_v,
                                   std::move(history));
    return detail::with_tail(std::move(r), tail);
}

/// Outcome of the resolvent limit against a general right-hand side f.
/// Convergence is decided by the range-membership rank test; the iterate
/// norms document the 1/t growth of the obstruction when f is outside.
struct rhs_limit_report {
    bool converges = false;
    std::optional<cmatrix> value;
    std::vector<double> norms;         // ||(da+t)^{-1} f|| along the schedule
    std::vector<double> growth_ratios; // successive norm ratios
};

inline rhs_limit_report limit_with_rhs(const along_problem& prob, const cmatrix& f,
                                       const limit_schedule& sched) {
    sched.validate();
    if (f.rows() != prob.d.rows())
        throw error(errc::precondition_violated, "f has incompatible row count");
    const cmatrix da = prob.d * prob.a;
    const cmatrix one = cmatrix::identity(prob.a.rows());

    rhs_limit_report rep;
    rep.converges = in_range(f, prob.d, prob.tol);
    std::vector<std::pair<double, cmatrix>> iterates;
    for (double t : sched.t_values) {
        const cmatrix resolvent = da + cx(t) * one;
        if (!is_invertible(resolvent, prob.tol)) continue;
        cmatrix z = detail::lu_solve(resolvent, f);
        rep.norms.push_back(op_norm(z));
        if (rep.norms.size() >= 2)
            rep.growth_ratios.push_back(rep.norms.back() / std::max(rep.norms[rep.norms.size() - 2],
                                                                    1e-300));
        iterates.emplace_back(t, std::move(z));
    }
    if (rep.converges && !iterates.empty())
        rep.value = sched.extrapolate ? detail::richardson_pick(iterates)
                                      : iterates.back().second;
    return rep;
}

/// Mirror: f (ad + t)^{-1} with row-space membership.
inline rhs_limit_report limit_with_lhs(const along_problem& prob, const cmatrix& f,
                                       const limit_schedule& sched) {
    sched.validate();
    if (f.cols() != prob.d.cols())
        throw error(errc::precondition_violated, "f has incompatible column count");
    const cmatrix ad = prob.a * prob.d;
    const cmatrix one = cmatrix::identity(prob.a.rows());

    rhs_limit_report rep;
    rep.converges = in_row_range(f, prob.d, prob.tol);
    std::vector<std::pair<double, cmatrix>> iterates;
    for (double t : sched.t_values) {
        const cmatrix resolvent = ad + cx(t) * one;
        if (!is_invertible(resolvent, prob.tol)) continue;
        cmatrix z = adjoint(detail::lu_solve(adjoint(resolvent), adjoint(f)));
        rep.norms.push_back(op_norm(z));
        if (rep.norms.size() >= 2)
            rep.growth_ratios.push_back(rep.norms.back() / std::max(rep.norms[rep.norms.size() - 2],
                                                                    1e-300));
        iterates.emplace_back(t, std::move(z));
    }
    if (rep.converges && !iterates.empty())
        rep.value = sched.extrapolate ? detail::richardson_pick(iterates)
                                      : iterates.back().second;
    return rep;
}

} // namespace alonginv
