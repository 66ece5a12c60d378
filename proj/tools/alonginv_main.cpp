// alonginv: inverse-along-an-element calculator and theorem verifier.
//
// Exit codes: 0 success, 1 usage/input error, 2 mathematical non-existence,
// 3 numerical non-convergence.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "alonginv/alonginv.hpp"
#include "alonginv/json_io.hpp"
#include "alonginv/verify.hpp"

namespace {

using namespace alonginv;

int exit_code_for(errc code) {
    switch (code) {
    case errc::not_invertible:
    case errc::not_invertible_along:
        return 2;
    case errc::singular_resolvent:
    case errc::contraction_failed:
    case errc::max_terms_exceeded:
    case errc::spectrum_violation:
    case errc::quadrature_not_converged:
    case errc::eigen_not_converged:
        return 3;
    default:
        return 1;
    }
}

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

void emit(const json& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw error(errc::parse_error, "cannot open output file: " + out_path);
    out << payload.dump(2) << "\n";
}

struct common_options {
    double tol_rank = 1e-10;
    double tol_eq = 1e-8;
    double tol_conv = 1e-12;
    std::string out_path;

    tolerance tol() const {
        tolerance t{tol_rank, tol_eq, tol_conv};
        t.validate();
        return t;
    }
};

void add_common(CLI::App* cmd, common_options& opt) {
    cmd->add_option("--tol-rank", opt.tol_rank, "relative singular-value cutoff");
    cmd->add_option("--tol-eq", opt.tol_eq, "equality-check tolerance");
    cmd->add_option("--tol-conv", opt.tol_conv, "iteration stopping tolerance");
    cmd->add_option("--out", opt.out_path, "output file (stdout when omitted)");
}

limit_schedule parse_schedule(const std::string& spec_str, bool extrapolate) {
    if (spec_str.empty()) {
        auto s = limit_schedule::decades();
        s.extrapolate = extrapolate;
        return s;
    }
    limit_schedule s;
    s.extrapolate = extrapolate;
    std::stringstream ss(spec_str);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            s.t_values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw error(errc::parse_error, "bad --t-schedule entry: " + item);
        }
    }
    s.validate();
    return s;
}

struct compute_options {
    common_options common;
    std::string a_path, d_path;
    bool method_given = false;
    std::string method = "block";
    std::string inner = "mp";
    std::uint64_t seed = 0;
    double t_re = 1.0, t_im = 0.0;
    double beta = 0.0; // 0: auto 1/||dap||
    std::string schedule;
    bool extrapolate = false;
    std::size_t quad_panels = 8;
    std::size_t quad_nodes = 12;
    double horizon = 0.0; // 0: auto from the spectral abscissa
    std::uint64_t budget = 10'000'000;
};

json run_complex_compute(const compute_options& opt, const cmatrix& a, const cmatrix& d) {
    const tolerance tol = opt.common.tol();
    if (opt.inner != "random" && opt.inner != "mp")
        throw error(errc::parse_error, "--inner must be mp or random");
    inner_inverse dinv = (opt.inner == "random") ? random_inner_inverse(d, opt.seed, tol)
                                                 : moore_penrose_inner(d, tol);
    const auto prob = make_problem(a, d, std::move(dinv), tol);

    along_result res;
    if (opt.method == "block") {
        res = inverse_along_block(prob);
    } else if (opt.method == "spectral" || opt.method == "spectral-mirror") {
        const cx t(opt.t_re, opt.t_im);
        if (t == cx{})
            throw error(errc::parse_error, "t must be nonzero for the spectral route");
        res = (opt.method == "spectral") ? inverse_along_spectral(prob, t)
                                         : inverse_along_spectral_mirror(prob, t);
    } else if (opt.method == "limit" || opt.method == "limit-mirror") {
        const auto sched = parse_schedule(opt.schedule, opt.extrapolate);
        res = (opt.method == "limit") ? inverse_along_limit(prob, sched)
                                      : inverse_along_limit_mirror(prob, sched);
    } else if (opt.method == "series") {
        series_params sp;
        sp.conv_tol = tol.conv_tol;
        sp.beta = opt.beta != 0.0
                      ? opt.beta
                      : 1.0 / std::max(op_norm(prob.d * prob.a * prob.p), 1e-300);
        res = inverse_along_series(prob, sp);
    } else if (opt.method == "integral" || opt.method == "integral-mirror") {
        quad_params qp;
        qp.panels = opt.quad_panels;
        qp.nodes_per_panel = opt.quad_nodes;
        if (opt.horizon > 0.0) qp.horizon = opt.horizon;
        res = (opt.method == "integral") ? inverse_along_integral(prob, qp)
                                         : inverse_along_integral_mirror(prob, qp);
    } else {
        throw error(errc::parse_error, "unknown --method: " + opt.method);
    }

    if (!definition_check(a, d, res.b, tol))
        throw error(errc::quadrature_not_converged,
                    "route output failed the defining-equations check");
    json payload = to_json(res);
    payload["definition_check"] = true;
    return payload;
}

json run_zn_compute(const compute_options& opt, const zn_matrix& a, const zn_matrix& d) {
    if (opt.method_given && opt.method != "exhaustive")
        throw error(errc::parse_error,
                    "Z_n inputs support only the exhaustive method; drop --method");
    const auto b = zn_inverse_along(a, d, opt.budget);
    if (!b)
        throw error(errc::not_invertible_along, "no inverse along d exists over Z_n");
    json payload{{"matrix", to_json(*b)}, {"method", "exhaustive"}};
    payload["residuals"] = {{"outer", 0.0}, {"eq_left", 0.0}, {"eq_right", 0.0}};
    return payload;
}

int cmd_compute(compute_options& opt, const CLI::App* cmd) {
    opt.method_given = cmd->count("--method") > 0;
    const auto fa = load_matrix(opt.a_path);
    const auto fd = load_matrix(opt.d_path);
    if (fa.is_zn != fd.is_zn)
        throw error(errc::parse_error, "a and d must live over the same field");
    json payload = fa.is_zn ? run_zn_compute(opt, fa.zn_value, fd.zn_value)
                            : run_complex_compute(opt, fa.complex_value, fd.complex_value);
    payload["command"] = "compute";
    payload["timestamp"] = timestamp_now();
    emit(payload, opt.common.out_path);
    return 0;
}

struct exists_options {
    common_options common;
    std::string a_path, d_path;
    std::uint64_t budget = 10'000'000;
};

int cmd_exists(const exists_options& opt) {
    const auto fa = load_matrix(opt.a_path);
    const auto fd = load_matrix(opt.d_path);
    if (fa.is_zn != fd.is_zn)
        throw error(errc::parse_error, "a and d must live over the same field");
    json payload;
    if (fa.is_zn) {
        const auto rep = zn_exists_along(fa.zn_value, fd.zn_value, opt.budget);
        payload = {{"exists", rep.exists}, {"regular", rep.regular}};
        payload["value"] = rep.value ? to_json(*rep.value) : json(nullptr);
    } else {
        const auto prob =
            make_problem(fa.complex_value, fd.complex_value, opt.common.tol());
        payload = to_json(exists_along(prob));
    }
    payload["command"] = "exists";
    payload["timestamp"] = timestamp_now();
    emit(payload, opt.common.out_path);
    return 0;
}

struct suite_options {
    common_options common;
    std::string theorem = "all";
    std::string ring = "none";
    std::uint64_t seed = 42;
    std::size_t trials = 100;
    std::size_t n_min = 2;
    std::size_t n_max = 6;
};

int run_verdicts(const suite_options& opt, bool include_rings) {
    corpus_params cp;
    cp.seed = opt.seed;
    cp.trials = opt.trials;
    cp.n_min = opt.n_min;
    cp.n_max = opt.n_max;
    cp.tol = opt.common.tol();

    verdict_list all;
    if (opt.theorem == "all") {
        for (const auto& name : suite_names()) {
            auto batch = run_suite_by_name(name, cp);
            all.insert(all.end(), batch.begin(), batch.end());
        }
    } else {
        all = run_suite_by_name(opt.theorem, cp);
    }
    if (include_rings && opt.ring != "none") {
        std::vector<std::uint64_t> mods;
        if (opt.ring == "all") {
            mods = {2, 3, 6};
        } else if (opt.ring == "z2") {
            mods = {2};
        } else if (opt.ring == "z3") {
            mods = {3};
        } else if (opt.ring == "z6") {
            mods = {6};
        } else {
            throw error(errc::parse_error, "--ring must be z2, z3, z6, all or none");
        }
        for (auto m : mods) {
            auto batch = run_ring_suite(m);
            all.insert(all.end(), batch.begin(), batch.end());
        }
    }

    std::ostringstream lines;
    std::size_t held = 0;
    for (const auto& rep : all) {
        lines << to_jsonl(rep) << "\n";
        if (rep.holds) ++held;
    }
    if (!opt.common.out_path.empty()) {
        std::ofstream out(opt.common.out_path);
        if (!out)
            throw error(errc::parse_error, "cannot open output file: " + opt.common.out_path);
        out << lines.str();
    } else {
        std::cout << lines.str();
    }
    std::cerr << "verdicts: " << held << "/" << all.size() << " hold\n";
    return held == all.size() ? 0 : 2;
}

struct experiment_options {
    common_options common;
    std::string type = "limit";
    std::string a_path, d_path;
    std::string schedule;
    double beta = 0.0;
    std::uint64_t seed = 99;
};

int cmd_experiment(const experiment_options& opt) {
    const auto fa = load_matrix(opt.a_path);
    const auto fd = load_matrix(opt.d_path);
    if (fa.is_zn || fd.is_zn)
        throw error(errc::parse_error, "experiments run over complex matrices only");
    const tolerance tol = opt.common.tol();
    const auto prob = make_problem(fa.complex_value, fd.complex_value, tol);
    const cmatrix ref = inverse_along_block(prob).b;
    std::vector<history_row> rows;

    if (opt.type == "limit") {
        const auto sched = parse_schedule(opt.schedule, false);
        const cmatrix da = prob.d * prob.a;
        const cmatrix one = cmatrix::identity(prob.a.rows());
        for (double t : sched.t_values) {
            const cmatrix x = detail::lu_solve(da + cx(t) * one, prob.d);
            double bound = 0.0;
            try {
                bound = limit_error_bound(prob, t);
            } catch (const error&) {
                bound = std::numeric_limits<double>::infinity();
            }
            rows.push_back({t, op_norm(x - ref), bound});
        }
    } else if (opt.type == "series") {
        series_params sp;
        sp.conv_tol = tol.conv_tol;
        sp.beta = opt.beta != 0.0
                      ? opt.beta
                      : 1.0 / std::max(op_norm(prob.d * prob.a * prob.p), 1e-300);
        const auto sums = series_partial_sums(prob, sp);
        const auto rep = exists_along(prob);
        const double wnorm = op_norm(*rep.w) / std::abs(sp.beta);
        cmatrix partial(prob.a.rows(), prob.a.cols());
        cmatrix term = prob.d;
        const cmatrix step =
            cmatrix::identity(prob.a.rows()) - cx(sp.beta) * (prob.d * prob.a);
        for (std::size_t k = 0; k < sums.terms; ++k) {
            partial += term;
            const double tail = wnorm * std::pow(sums.contraction, double(k + 1)) *
                                op_norm(prob.d) / (1.0 - sums.contraction);
            rows.push_back({double(k), op_norm(cx(sp.beta) * partial - ref), tail});
            term = step * term;
        }
    } else if (opt.type == "continuity") {
        rng gen(opt.seed);
        const cmatrix e = random_matrix(gen, prob.a.rows(), prob.a.cols());
        for (std::size_t k = 1; k <= 64; ++k) {
            const cmatrix ak = prob.a + e * cx(1.0 / double(k));
            const auto pk = make_problem(ak, prob.d, tol);
            const cmatrix xk = inverse_along_block(pk).b;
            rows.push_back({double(k), op_norm(xk - ref), op_norm(e) / double(k)});
        }
    } else {
        throw error(errc::parse_error, "unknown --type: " + opt.type);
    }

    if (opt.common.out_path.empty()) {
        write_history_csv(std::cout, rows);
    } else {
        write_history_csv(opt.common.out_path, rows);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"inverse along an element: computation routes, existence tests and "
                 "theorem verification"};
    app.require_subcommand(1);

    compute_options copt;
    auto* compute = app.add_subcommand("compute", "compute the inverse along d by any route");
    compute->add_option("--a", copt.a_path, "matrix a (JSON)")->required();
    compute->add_option("--d", copt.d_path, "matrix d (JSON)")->required();
    compute->add_option("--method", copt.method,
                        "block|spectral|spectral-mirror|limit|limit-mirror|series|integral|"
                        "integral-mirror");
    compute->add_option("--inner", copt.inner, "inner inverse of d: mp|random");
    compute->add_option("--seed", copt.seed, "seed for --inner random");
    compute->add_option("--t", copt.t_re, "spectral-route scalar t (real part)");
    compute->add_option("--t-imag", copt.t_im, "spectral-route scalar t (imaginary part)");
    compute->add_option("--beta", copt.beta, "series coefficient (default: 1/||dap||)");
    compute->add_option("--t-schedule", copt.schedule,
                        "comma-separated decreasing t values for the limit route");
    compute->add_flag("--extrapolate", copt.extrapolate, "Richardson-extrapolate the limit");
    compute->add_option("--quad-panels", copt.quad_panels, "starting panel count");
    compute->add_option("--quad-nodes", copt.quad_nodes, "Gauss-Legendre nodes per panel");
    compute->add_option("--horizon", copt.horizon, "integral truncation horizon (0: auto)");
    compute->add_option("--budget", copt.budget, "Z_n enumeration budget");
    add_common(compute, copt.common);

    exists_options eopt;
    auto* exists = app.add_subcommand("exists", "test invertibility along d");
    exists->add_option("--a", eopt.a_path, "matrix a (JSON)")->required();
    exists->add_option("--d", eopt.d_path, "matrix d (JSON)")->required();
    exists->add_option("--budget", eopt.budget, "Z_n enumeration budget");
    add_common(exists, eopt.common);

    suite_options vopt;
    auto* verify = app.add_subcommand("verify", "run one theorem verification suite");
    verify->add_option("--theorem", vopt.theorem, "suite name or all")->required();
    verify->add_option("--trials", vopt.trials, "instances per suite");
    verify->add_option("--seed", vopt.seed, "corpus seed");
    verify->add_option("--n-min", vopt.n_min, "smallest matrix size");
    verify->add_option("--n-max", vopt.n_max, "largest matrix size");
    add_common(verify, vopt.common);

    experiment_options xopt;
    auto* experiment =
        app.add_subcommand("experiment", "emit a convergence history as CSV");
    experiment->add_option("--type", xopt.type, "limit|series|continuity");
    experiment->add_option("--a", xopt.a_path, "matrix a (JSON)")->required();
    experiment->add_option("--d", xopt.d_path, "matrix d (JSON)")->required();
    experiment->add_option("--t-schedule", xopt.schedule, "limit-route schedule");
    experiment->add_option("--beta", xopt.beta, "series coefficient (default: auto)");
    experiment->add_option("--seed", xopt.seed, "perturbation seed for --type continuity");
    add_common(experiment, xopt.common);

    suite_options sopt;
    sopt.ring = "all";
    auto* suite = app.add_subcommand("suite", "run every verifier over a seeded corpus");
    suite->add_option("--theorem", sopt.theorem, "restrict to one suite");
    suite->add_option("--ring", sopt.ring, "exact-ring checks: z2|z3|z6|all|none");
    suite->add_option("--trials", sopt.trials, "instances per suite");
    suite->add_option("--seed", sopt.seed, "corpus seed");
    suite->add_option("--n-min", sopt.n_min, "smallest matrix size");
    suite->add_option("--n-max", sopt.n_max, "largest matrix size");
    add_common(suite, sopt.common);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*compute) return cmd_compute(copt, compute);
        if (*exists) return cmd_exists(eopt);
        if (*verify) return run_verdicts(vopt, false);
        if (*experiment) return cmd_experiment(xopt);
        if (*suite) return run_verdicts(sopt, true);
    } catch (const alonginv::error& e) {
        std::cerr << "error (" << errc_name(e.code()) << "): " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
