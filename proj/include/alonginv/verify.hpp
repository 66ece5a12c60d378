#pragma once

#include <functional>
#include <string>
#include <vector>

#include "alonginv/random.hpp"
#include "alonginv/representations.hpp"
#include "alonginv/theorems.hpp"
#include "alonginv/zn.hpp"

namespace alonginv {

/// Seeded corpus settings for the batch verifiers.
struct corpus_params {
    std::uint64_t seed = 42;
    std::size_t trials = 100;
    std::size_t n_min = 2;
    std::size_t n_max = 6;
    tolerance tol;

    std::size_t pick_n(rng& gen) const {
        const std::size_t span = n_max >= n_min ? n_max - n_min + 1 : 1;
        return n_min + static_cast<std::size_t>(gen.next_u64() % span);
    }
};

using verdict_list = std::vector<verdict_report>;

namespace detail {

inline void stamp(verdict_report& rep, std::uint64_t seed) { rep.seed = seed; }

} // namespace detail

inline verdict_list run_similarity_transform_suite(const corpus_params& cp) {
    verdict_list out;
    for (std::size_t trial = 0; trial < cp.trials; ++trial) {
        const std::uint64_t seed = cp.seed + trial;
        rng gen(seed * 2654435761ULL + 1);
        const std::size_t n = cp.pick_n(gen);
        const auto inst = random_along_instance(gen, n, 1 + gen.next_u64() % n, false);
        const bool unitary = trial % 3 == 0;
        const cmatrix s = unitary ? random_unitary(gen, n) : random_invertible(gen, n);
        const cmatrix r = unitary ? random_unitary(gen, n) : random_invertible(gen, n);
        auto rep = verify_transform(inst.a, inst.d, s, r, cp.tol);
        detail::stamp(rep, seed);
        out.push_back(std::move(rep));
    }
    return out;
}

inline verdict_list run_mp_similarity_suite(const corpus_params& cp) {
    verdict_list out;
    for (std::size_t trial = 0; trial < cp.trials; ++trial) {
        const std::uint64_t seed = cp.seed + trial;
        rng gen(seed * 2654435761ULL + 2);
        const std::size_t n = cp.pick_n(gen);
        const cmatrix a = random_rank(gen, n, 1 + gen.next_u64() % n);
        const bool unitary = trial % 3 == 0;
        const cmatrix s = unitary ? random_unitary(gen, n) : random_invertible(gen, n);
        const cmatrix r = unitary ? random_unitary(gen, n) : random_invertible(gen, n);
        auto rep = verify_mp_similarity(a, s, r, cp.tol);
        detail::stamp(rep, seed);
        out.push_back(std::move(rep));
    }
    return out;
}

inline verdict_list run_group_similarity_suite(const corpus_params& cp) {
    verdict_list out;
    for (std::size_t trial = 0; trial < cp.trials; ++trial) {
        const std::uint64_t seed = cp.seed + trial;
        rng gen(seed * 2654435761ULL + 3);
        const std::size_t n = cp.pick_n(gen);
        const auto inst = random_along_instance(gen, n, 1 + gen.next_u64() % n, false);
        const cmatrix a = inst.d * inst.a; // group invertible by construction
        cmatrix s, r;
        if (trial % 3 == 0) {
            s = cx(3.0) * cmatrix::identity(n) + a; // commutes with a
            r = s;
        } else {
            // retry until the transported element stays group invertible
            do {
                s = random_invertible(gen, n);
                r = random_invertible(gen, n);
                const cmatrix c = invert(s, cp.tol) * a * r;
                if (rank(c * c, cp.tol) == rank(c, cp.tol)) break;
            } while (true);
        }
        auto rep = verify_group_similarity(a, s, r, cp.tol);
        detail::stamp(rep, seed);
        out.push_back(std::move(rep));
    }
    return out;
}

inline verdict_list run_hermitian_products_suite(const corpus_params& cp) {
    verdict_list out;
    for (std::size_t trial = 0; trial < cp.trials; ++trial) {
        const std::uint64_t seed = cp.seed + trial;
        rng gen(seed * 2654435761ULL + 4);
        const std::size_t n = cp.pick_n(gen);
        cmatrix a, d;
        if (trial % 3 == 0) {
            a = random_rank(gen, n, 1 + gen.next_u64() % n);
            d = adjoint(a); // Moore-Penrose specialization: all predicates true
        } else {
            const auto inst = random_along_instance(gen, n, 1 + gen.next_u64() % n, false);
            a = inst.a;
            d = inst.d;
        }
        auto rep = verify_hermitian_products(a, d, cp.tol);
        detail::stamp(rep, seed);
        out.push_back(std::move(rep));
    }
    return out;
}

inline verdict_list run_perturbation_suite(const corpus_params& cp) {
    verdict_list out;
    for (std::size_t trial = 0; trial < cp.trials; ++trial) {
        const std::uint64_t seed = cp.seed + trial;
        rng gen(seed * 2654435761ULL + 5);
        const std::size_t n = cp.pick_n(gen);
        const auto first = random_along_instance(gen, n, 1 + gen.next_u64() % n, false);
        cmatrix b, e;
        if (trial % 2 == 0) {
            // nearby problem: a perturbed, d shared
            b = first.a + cx(1e-3) * random_matrix(gen, n, n);
            e = first.d;
        } else {
            const auto second = random_along_instance(gen, n, 1 + gen.next_u64() % n, false);
            b = second.a;
            e = second.d;
        }
        auto rep = (trial % 3 == 0)
                       ? perturbation_identity(first.a, first.d, b, e,
                                               random_inner_inverse(first.d, seed * 5 + 1,
                                                                    cp.tol),
                                               random_inner_inverse(e, seed * 5 + 2, cp.tol),
                                               cp.tol)
                       : perturbation_identity(first.a, first.d, b, e, cp.tol);
        detail::stamp(rep, seed);
        out.push_back(std::move(rep));
    }
    return out;
}

inline verdict_list run_inverse_bound_suite(const corpus_params& cp) {
    verdict_list out;
    for (std::size_t trial = 0; trial < cp.trials; ++trial) {
        const std::uint64_t seed = cp.seed + trial;
        rng gen(seed * 2654435761ULL + 6);
        const std::size_t n = cp.pick_n(gen);
        const cmatrix a = random_invertible(gen, n);
        cmatrix e = random_matrix(gen, n, n);
        e *= cx(gen.uniform(0.1, 0.9) / (op_norm(e) * op_norm(invert(a, cp.tol))));
        auto rep = verify_inverse_bound(a, a + e, cp.tol);
        detail::stamp(rep, seed);
        out.push_back(std::move(rep));
    }
    return out;
}

inline verdict_list run_continuity_suite(const corpus_params& cp) {
    verdict_list out;
    const std::size_t experiments = std::max<std::size_t>(1, cp.trials / 10);
    for (std::size_t trial = 0; trial < experiments; ++trial) {
        const std::uint64_t seed = cp.seed + trial;
        rng gen(seed * 2654435761ULL + 7);
        const std::size_t n = cp.pick_n(gen);
        const auto inst = random_along_instance(gen, n, 1 + gen.next_u64() % n, false);
        const cmatrix e = random_matrix(gen, n, n);
        std::vector<cmatrix> as, ds;
        for (std::size_t k = 1; k <= 32; ++k) {
            as.push_back(inst.a + e * cx(1.0 / double(k)));
            ds.push_back(inst.d);
        }
        auto rep = continuity_experiment(as, ds, inst.a, inst.d, cp.tol);
        detail::stamp(rep, seed);
        out.push_back(std::move(rep));
    }
    return out;
}

/// Exact-ring verdicts: Z_6 square roots, and exhaustive 2x2 agreement of the
/// brute-force search with the compression criterion over Z_2 / Z_3.
inline verdict_list run_ring_suite(std::uint64_t modulus) {
    verdict_list out;
    if (modulus == 6) {
        verdict_report rep;
        rep.theorem_id = "z6-square-roots";
        const auto roots = zn_square_roots(zn_scalar(4, 6));
        rep.holds = roots.size() == 2 && roots[0].value == 2 && roots[1].value == 4;
        rep.residuals["root_count"] = static_cast<double>(roots.size());
        out.push_back(std::move(rep));
        return out;
    }
    verdict_report rep;
    rep.theorem_id = "z" + std::to_string(modulus) + "-exhaustive";
    const std::uint64_t total = modulus * modulus * modulus * modulus;
    std::size_t mismatch = 0;
    std::size_t existing = 0;
    for (std::uint64_t ia = 0; ia < total; ++ia) {
        const zn_matrix a = detail::zn_decode(ia, 2, 2, modulus);
        for (std::uint64_t id = 0; id < total; ++id) {
            const zn_matrix d = detail::zn_decode(id, 2, 2, modulus);
            const auto brute = zn_inverse_along(a, d);
            const auto crit = zn_exists_along(a, d);
            if (brute.has_value() != crit.exists) {
                ++mismatch;
                continue;
            }
            if (brute) {
                ++existing;
                if (!(crit.value && *crit.value == *brute)) ++mismatch;
            }
        }
    }
    rep.residuals["pairs"] = static_cast<double>(total * total);
    rep.residuals["existing"] = static_cast<double>(existing);
    rep.residuals["mismatches"] = static_cast<double>(mismatch);
    rep.holds = mismatch == 0;
    out.push_back(std::move(rep));
    return out;
}

/// Registry of suite names for the CLI; "all" concatenates everything.
inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "similarity-transform", "mp-similarity",  "group-similarity", "hermitian-products",
        "perturbation-identity", "inverse-bound", "continuity",
    };
    return names;
}

inline verdict_list run_suite_by_name(const std::string& name, const corpus_params& cp) {
    if (name == "similarity-transform") return run_similarity_transform_suite(cp);
    if (name == "mp-similarity") return run_mp_similarity_suite(cp);
    if (name == "group-similarity") return run_group_similarity_suite(cp);
    if (name == "hermitian-products") return run_hermitian_products_suite(cp);
    if (name == "perturbation-identity") return run_perturbation_suite(cp);
    if (name == "inverse-bound") return run_inverse_bound_suite(cp);
    if (name == "continuity") return run_continuity_suite(cp);
    throw error(errc::parse_error, "unknown theorem suite: " + name);
}

} // namespace alonginv
