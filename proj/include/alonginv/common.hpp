#pragma once

#include <stdexcept>
#include <string>

namespace alonginv {

/// Failure categories surfaced by the library. The CLI maps these onto
/// exit codes: mathematical non-existence vs. numerical non-convergence
/// vs. bad input.
enum class errc {
    not_invertible,
    not_invertible_along,
    singular_resolvent,
    contraction_failed,
    max_terms_exceeded,
    spectrum_violation,
    quadrature_not_converged,
    eigen_not_converged,
    precondition_violated,
    bad_inner_inverse,
    budget_exceeded,
    parse_error,
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::not_invertible: return "not_invertible";
    case errc::not_invertible_along: return "not_invertible_along";
    case errc::singular_resolvent: return "singular_resolvent";
    case errc::contraction_failed: return "contraction_failed";
    case errc::max_terms_exceeded: return "max_terms_exceeded";
    case errc::spectrum_violation: return "spectrum_violation";
    case errc::quadrature_not_converged: return "quadrature_not_converged";
    case errc::eigen_not_converged: return "eigen_not_converged";
    case errc::precondition_violated: return "precondition_violated";
    case errc::bad_inner_inverse: return "bad_inner_inverse";
    case errc::budget_exceeded: return "budget_exceeded";
    case errc::parse_error: return "parse_error";
    }
    return "unknown";
}

/// Numerical cutoffs used throughout. rank_tol is relative to the largest
/// singular value, eq_tol scales equality checks, conv_tol stops iterations.
struct tolerance {
    double rank_tol = 1e-10;
    double eq_tol = 1e-8;
    double conv_tol = 1e-12;

    void validate() const {
        if (!(rank_tol > 0.0) || !(eq_tol > 0.0) || !(conv_tol > 0.0))
            throw error(errc::precondition_violated, "tolerances must be strictly positive");
    }
};

} // namespace alonginv
