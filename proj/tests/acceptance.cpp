// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Sizes 2..8, 100 seeded trials per property.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "alonginv/alonginv.hpp"
#include "alonginv/verify.hpp"

using namespace alonginv;

namespace {

struct criterion {
    int id;
    std::string name;
    bool pass;
    std::string detail;
};

std::vector<criterion> g_results;

void record(int id, const std::string& name, bool pass, const std::string& detail) {
    g_results.push_back({id, name, pass, detail});
}

template <typename Fn>
void run(int id, const std::string& name, Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& e) {
        record(id, name, false, std::string("exception: ") + e.what());
    }
}

double rel_diff(const cmatrix& x, const cmatrix& y) {
    return op_norm(x - y) / std::max({op_norm(x), op_norm(y), 1e-30});
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

const cmatrix kA1{{1.0, 1.0}, {0.0, 1.0}};
const cmatrix kD1 = diag_matrix(std::vector<double>{1.0, 0.0});

// --- criteria 1-3: route agreement, definition oracle, defining equations ---

void routes_and_definition() {
    const tolerance tol;
    auto sched = limit_schedule::decades();
    sched.extrapolate = true;
    const cx spectral_ts[] = {cx(1.0), cx(-1.0), cx(0.0, 2.0)};

    std::size_t instances = 0, series_run = 0, integral_run = 0;
    double worst_pair = 0.0, worst_eq = 0.0;
    bool all_defs = true;
    std::size_t outputs = 0;

    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        rng gen(1000 + trial * 7919);
        const std::size_t n = 2 + static_cast<std::size_t>(gen.next_u64() % 7); // 2..8
        const std::size_t r = 1 + static_cast<std::size_t>(gen.next_u64() % n);
        const bool rhp = trial % 2 == 0;
        const auto inst = random_along_instance(gen, n, r, rhp);
        const auto prob = make_problem(inst.a, inst.d, tol);
        ++instances;

        std::vector<cmatrix> outs;
        outs.push_back(inverse_along_block(prob).b);
        for (const cx& t : spectral_ts) outs.push_back(inverse_along_spectral(prob, t).b);
        outs.push_back(inverse_along_spectral_mirror(prob, cx(1.0)).b);
        outs.push_back(inverse_along_limit(prob, sched).b);

        series_params sp;
        sp.beta = 1.0 / op_norm(prob.d * prob.a * prob.p);
        try {
            outs.push_back(inverse_along_series(prob, sp).b);
            ++series_run;
        } catch (const error& e) {
            if (e.code() != errc::contraction_failed) throw;
        }
        if (rhp) {
            outs.push_back(inverse_along_integral(prob, quad_params{}).b);
            ++integral_run;
        }

        for (std::size_t i = 0; i < outs.size(); ++i)
            for (std::size_t j = i + 1; j < outs.size(); ++j)
                worst_pair = std::max(worst_pair, rel_diff(outs[i], outs[j]));

        const double d_scale = std::max(1.0, op_norm(inst.d));
        for (const auto& b : outs) {
            ++outputs;
            if (!definition_check(inst.a, inst.d, b, tol)) all_defs = false;
            worst_eq = std::max({worst_eq, op_norm(b * inst.a * inst.d - inst.d) / d_scale,
                                 op_norm(inst.d * inst.a * b - inst.d) / d_scale});
        }
    }

    record(1, "route agreement <= 1e-6 relative", worst_pair <= 1e-6,
           std::to_string(instances) + " instances (series on " + std::to_string(series_run) +
               ", integral on " + std::to_string(integral_run) + "), worst pairwise " +
               fmt(worst_pair));
    record(2, "definition oracle on every route output", all_defs,
           std::to_string(outputs) + " outputs through bab=b plus range/row-space rank tests");
    record(3, "defining-equation residuals <= 1e-8 * max(1, ||d||)", worst_eq <= 1e-8,
           "worst " + fmt(worst_eq));
}

// --- criterion 4: quantitative limit bound ---

void limit_bound() {
    const tolerance tol;
    const double ts[] = {1e-2, 1e-3, 1e-4};
    std::size_t checked = 0, skipped = 0;
    bool ok = true;
    double worst_margin = 0.0;

    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        rng gen(5000 + trial * 104729);
        const std::size_t n = 2 + static_cast<std::size_t>(gen.next_u64() % 7);
        const std::size_t r = 1 + static_cast<std::size_t>(gen.next_u64() % n);
        const auto inst = random_along_instance(gen, n, r, false);
        const auto prob = make_problem(inst.a, inst.d, tol); // Moore-Penrose inner inverse
        const cmatrix ref = inverse_along_block(prob).b;
        const cmatrix da = prob.d * prob.a;
        for (double t : ts) {
            double bound = 0.0;
            try {
                bound = limit_error_bound(prob, t);
            } catch (const error&) {
                ++skipped; // t not small enough for this draw
                continue;
            }
            const cmatrix x = detail::lu_solve(da + cx(t) * cmatrix::identity(n), prob.d);
            const double actual = op_norm(x - ref);
            if (actual > bound + tol.eq_tol) ok = false;
            worst_margin = std::max(worst_margin, actual / std::max(bound, 1e-300));
            ++checked;
        }
    }

    // closed-form fixture: actual = t/(1+t), bound = t/(1-t), both to 1e-12
    const auto fixture = make_problem(kA1, kD1, tol);
    bool fixture_ok = true;
    for (double t : ts) {
        const double bound = limit_error_bound(fixture, t);
        const cmatrix x = detail::lu_solve(fixture.d * fixture.a + cx(t) * cmatrix::identity(2),
                                           fixture.d);
        const double actual = op_norm(x - kD1);
        if (std::abs(bound - t / (1.0 - t)) > 1e-12) fixture_ok = false;
        if (std::abs(actual - t / (1.0 + t)) > 1e-12) fixture_ok = false;
    }

    record(4, "limit-route error bound (incl. closed-form fixture)", ok && fixture_ok,
           std::to_string(checked) + " (t, instance) pairs, " + std::to_string(skipped) +
               " outside the small-t precondition, worst actual/bound " + fmt(worst_margin));
}

// --- criterion 5: geometric decay of the series route ---

void series_decay() {
    const tolerance tol;
    bool ok = true;
    std::string detail;
    for (std::uint64_t trial = 0; trial < 10; ++trial) {
        rng gen(9000 + trial * 31);
        const std::size_t n = 3 + static_cast<std::size_t>(gen.next_u64() % 6);
        // normal d*a with modes {1, lambda2}: single surviving decay rate
        const double lambda2 = 0.25 + 0.05 * double(trial);
        const cmatrix u = random_unitary(gen, n);
        std::vector<cx> lam(n, cx{});
        lam[0] = 1.0;
        lam[1] = lambda2;
        const cmatrix da = u * diag_matrix(lam) * adjoint(u);
        const cmatrix a = random_invertible(gen, n);
        const cmatrix d = da * invert(a, tol);
        const auto prob = make_problem(a, d, tol);

        series_params sp;
        sp.beta = 1.0 / op_norm(prob.d * prob.a * prob.p);
        const auto sums = series_partial_sums(prob, sp);
        const double q = sums.contraction;
        const cmatrix ref = inverse_along_block(prob).b;

        // replay the partial sums, collecting log-errors above the fp floor
        std::vector<double> xs, ys;
        cmatrix partial(n, n);
        cmatrix term = prob.d;
        const cmatrix step = cmatrix::identity(n) - cx(sp.beta) * (prob.d * prob.a);
        for (std::size_t k = 0; k < sums.terms; ++k) {
            partial += term;
            const double err = op_norm(cx(sp.beta) * partial - ref);
            if (k >= 2 && err > 1e-12) {
                xs.push_back(double(k));
                ys.push_back(std::log(err));
            }
            term = step * term;
        }
        if (xs.size() < 5) {
            ok = false;
            detail = "too few usable terms";
            break;
        }
        // least-squares slope and intercept of log err vs n
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            sx += xs[i];
            sy += ys[i];
            sxx += xs[i] * xs[i];
            sxy += xs[i] * ys[i];
        }
        const double m = double(xs.size());
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        const double intercept = (sy - slope * sx) / m;
        if (std::abs(slope - std::log(q)) > 0.05 * std::abs(std::log(q))) {
            ok = false;
            detail = "slope " + fmt(slope) + " vs log q " + fmt(std::log(q));
            break;
        }
        const double c_fit = std::exp(intercept);
        for (std::size_t i = 0; i < xs.size(); ++i) {
            if (std::exp(ys[i]) > 1.1 * c_fit * std::pow(q, xs[i])) {
                ok = false;
                detail = "error above the fitted geometric envelope";
                break;
            }
        }
        if (!ok) break;
        detail = "10 fixtures, slope within 5% of log q (last q " + fmt(q) + ")";
    }
    record(5, "series error decays geometrically at rate q", ok, detail);
}

// --- criterion 6: weighted Moore-Penrose routes ---

void weighted_routes() {
    const tolerance tol;
    bool ok = true;
    double worst_rel = 0.0, worst_res = 0.0, worst_identity = 0.0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        rng gen(13000 + trial * 607);
        const std::size_t n = 2 + static_cast<std::size_t>(gen.next_u64() % 7);
        const std::size_t r = 1 + static_cast<std::size_t>(gen.next_u64() % n);
        const cmatrix a = random_rank(gen, n, r);
        const auto w = make_weight_pair(random_pd(gen, n), random_pd(gen, n), tol);
        const cmatrix x = weighted_mp(a, w, tol);

        const auto res = weighted_mp_residuals(a, x, w);
        worst_res = std::max({worst_res, res.axa, res.xax, res.max_herm, res.nxa_herm});
        if (worst_res > 1e-8) ok = false;

        const cmatrix z = (trial % 2 == 0)
                              ? moore_penrose(adjoint(a), tol)
                              : random_inner_inverse(adjoint(a), trial * 11 + 5, tol).g;
        const auto uv = weighted_mp_via_uv(a, w, z, tol);
        if (!uv.u_invertible || !uv.v_invertible) {
            ok = false;
            continue;
        }
        worst_rel = std::max({worst_rel, rel_diff(*uv.x_from_u, x), rel_diff(*uv.x_from_v, x)});
        if (worst_rel > 1e-6) ok = false;

        const auto eye = make_weight_pair(cmatrix::identity(n), cmatrix::identity(n), tol);
        worst_identity =
            std::max(worst_identity, op_norm(weighted_mp(a, eye, tol) - moore_penrose(a, tol)));
        if (worst_identity > 1e-8) ok = false;
    }
    record(6, "weighted Moore-Penrose: block route, u/v formulas, identity weights", ok,
           "worst route gap " + fmt(worst_rel) + ", worst equation residual " + fmt(worst_res) +
               ", worst identity-weight gap " + fmt(worst_identity));
}

// --- criterion 7: the six theorem verifiers at 100 trials each ---

void theorem_suites() {
    corpus_params cp;
    cp.seed = 20250808;
    cp.trials = 100;
    cp.n_min = 2;
    cp.n_max = 8;

    bool all_ok = true;
    std::string detail;
    for (const auto& name :
         {"similarity-transform", "mp-similarity", "group-similarity", "hermitian-products",
          "perturbation-identity", "inverse-bound"}) {
        const auto verdicts = run_suite_by_name(name, cp);
        std::size_t held = 0;
        for (const auto& v : verdicts) {
            if (v.holds) ++held;
            if (std::string(name) == "perturbation-identity") {
                const double res = v.residuals.at("identity_residual");
                const double cond = v.residuals.at("cond");
                if (res > 1e-8 * (1.0 + cond)) all_ok = false;
            }
        }
        if (held != verdicts.size()) all_ok = false;
        detail += std::string(name) + " " + std::to_string(held) + "/" +
                  std::to_string(verdicts.size()) + "; ";
    }
    record(7, "theorem verifiers 100/100 per theorem", all_ok, detail);
}

// --- criterion 8: exhaustive exact-ring agreement ---

void exact_ring() {
    bool ok = true;
    std::string detail;
    for (std::uint64_t mod : {2ULL, 3ULL}) {
        const auto verdicts = run_ring_suite(mod);
        for (const auto& v : verdicts) {
            if (!v.holds) ok = false;
            detail += v.theorem_id + " (" +
                      std::to_string(std::size_t(v.residuals.at("existing"))) +
                      " existing pairs); ";
        }
    }
    const auto roots = zn_square_roots(zn_scalar(4, 6));
    const bool roots_ok = roots.size() == 2 && roots[0].value == 2 && roots[1].value == 4;
    if (!roots_ok) ok = false;
    detail += roots_ok ? "Z_6 roots of [4] = {[2],[4]}" : "Z_6 square roots wrong";
    record(8, "exact-ring exhaustive agreement over M2(Z_2), M2(Z_3)", ok, detail);
}

// --- criterion 9: resolvent limits against a right-hand side ---

void rhs_membership() {
    const tolerance tol;
    auto sched = limit_schedule::decades();
    sched.extrapolate = true;
    bool ok = true;
    std::size_t in_cases = 0, out_cases = 0;
    double worst_gap = 0.0;

    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        rng gen(17000 + trial * 241);
        const std::size_t n = 2 + static_cast<std::size_t>(gen.next_u64() % 7);
        const std::size_t r = 1 + static_cast<std::size_t>(gen.next_u64() % n);
        const auto inst = random_along_instance(gen, n, r, false);
        const auto mp_prob = make_problem(inst.a, inst.d, tol);
        const auto alt_prob =
            make_problem(inst.a, inst.d, random_inner_inverse(inst.d, trial * 13 + 1, tol));

        // membership case: f = d x
        {
            const cmatrix f = inst.d * random_matrix(gen, n, 1 + trial % 2);
            const auto rep = limit_with_rhs(mp_prob, f, sched);
            if (!rep.converges || !rep.value) {
                ok = false;
                continue;
            }
            const cmatrix via_mp = inverse_along_block(mp_prob).b * mp_prob.dinv.g * f;
            const cmatrix via_alt = inverse_along_block(alt_prob).b * alt_prob.dinv.g * f;
            const double gap = std::max({rel_diff(*rep.value, via_mp),
                                         rel_diff(*rep.value, via_alt),
                                         rel_diff(via_mp, via_alt)});
            worst_gap = std::max(worst_gap, gap);
            if (gap > 1e-6) ok = false;
            ++in_cases;
        }
        // obstruction case: f with a component outside range(d)
        if (r < n) {
            const cmatrix one = cmatrix::identity(n);
            cmatrix f = (one - mp_prob.p) * random_matrix(gen, n, 1);
            if (op_norm(f) < 1e-3) continue;
            const auto rep = limit_with_rhs(mp_prob, f, sched);
            if (rep.converges) ok = false;
            if (rep.growth_ratios.empty() || rep.growth_ratios.back() < 5.0) ok = false;
            ++out_cases;
        }
    }
    record(9, "rhs limit: membership converges (d^- independent), obstruction diverges", ok,
           std::to_string(in_cases) + " in-range + " + std::to_string(out_cases) +
               " out-of-range cases, worst in-range gap " + fmt(worst_gap));
}

// --- criterion 10: continuity envelope and the unbounded counterexample ---

void continuity_envelope() {
    const tolerance tol;
    bool ok = true;
    std::string detail;

    rng gen(23000);
    const auto inst = random_along_instance(gen, 4, 2, false);
    const cmatrix e = random_matrix(gen, 4, 4);
    const cmatrix ref = inverse_along_block(make_problem(inst.a, inst.d, tol)).b;
    const auto err_at = [&](std::size_t k) {
        const cmatrix ak = inst.a + e * cx(1.0 / double(k));
        return op_norm(inverse_along_block(make_problem(ak, inst.d, tol)).b - ref);
    };
    const double err8 = err_at(8);
    const double err64 = err_at(64);
    if (err64 > 10.0 * err8 / 8.0) ok = false;
    detail = "err(64)=" + fmt(err64) + " vs envelope 10*err(8)/8=" + fmt(10.0 * err8 / 8.0);

    // rank-drop counterexample: inverses diag(1, k) blow up
    std::vector<cmatrix> as, ds;
    for (std::size_t k = 1; k <= 16; ++k) {
        const cmatrix dk = diag_matrix(std::vector<double>{1.0, 1.0 / double(k)});
        as.push_back(dk);
        ds.push_back(dk);
    }
    const auto rep = continuity_experiment(as, ds, kD1, kD1, tol);
    if (rep.residuals.at("bounded") != 0.0) ok = false;
    detail += "; counterexample max norm " + fmt(rep.residuals.at("max_norm")) +
              " flagged unbounded";
    record(10, "continuity: 1/n envelope and unbounded counterexample", ok, detail);
}

} // namespace

int main() {
    run(1, "routes/definition/equations", routes_and_definition);
    run(4, "limit bound", limit_bound);
    run(5, "series decay", series_decay);
    run(6, "weighted routes", weighted_routes);
    run(7, "theorem suites", theorem_suites);
    run(8, "exact ring", exact_ring);
    run(9, "rhs membership", rhs_membership);
    run(10, "continuity", continuity_envelope);

    std::sort(g_results.begin(), g_results.end(),
              [](const criterion& a, const criterion& b) { return a.id < b.id; });
    std::size_t passed = 0;
    for (const auto& c : g_results) {
        std::printf("[%2d] %-55s %s  (%s)\n", c.id, c.name.c_str(),
                    c.pass ? "PASS" : "FAIL", c.detail.c_str());
        if (c.pass) ++passed;
    }
    std::printf("ACCEPTANCE: %zu/%zu criteria passed\n", passed, g_results.size());
    return passed == g_results.size() ? 0 : 1;
}
