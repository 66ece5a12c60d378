#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "alonginv/decomp.hpp"
#include "alonginv/matrix.hpp"

namespace alonginv {

/// Deterministic PRNG (splitmix64) with platform-independent uniform and
/// Gaussian draws, so seeded fixtures reproduce bit-for-bit everywhere.
class rng {
public:
    explicit rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard complex Gaussian (Box-Muller).
    cx gaussian() {
        double u1 = uniform();
        while (u1 == 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return cx(r * std::cos(2.0 * std::numbers::pi * u2),
                  r * std::sin(2.0 * std::numbers::pi * u2)) /
               std::sqrt(2.0);
    }

    /// Uniform on the closed complex unit disc, by rejection.
    cx unit_disc() {
        while (true) {
            const double re = uniform(-1.0, 1.0);
            const double im = uniform(-1.0, 1.0);
            if (re * re + im * im <= 1.0) return cx(re, im);
        }
    }

private:
    std::uint64_t state_;
};

inline cmatrix random_matrix(rng& gen, std::size_t rows, std::size_t cols) {
    cmatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = gen.gaussian();
    return m;
}

/// Haar-ish unitary from the Q factor of a Gaussian matrix (Gram-Schmidt with
/// re-orthogonalization; n stays small here).
inline cmatrix random_unitary(rng& gen, std::size_t n) {
    cmatrix q = random_matrix(gen, n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t k = 0; k < j; ++k) {
                cx dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) dot += std::conj(q(i, k)) * q(i, j);
                for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
            }
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm += std::norm(q(i, j));
        norm = std::sqrt(norm);
        if (norm < 1e-12) {
            // degenerate draw; replace with a canonical vector and redo
            for (std::size_t i = 0; i < n; ++i) q(i, j) = (i == j) ? cx(1.0) : cx(0.0);
            --j;
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
    }
    return q;
}

/// Well-conditioned invertible matrix: unitary * diag(in [0.5,2] with random
/// phases) * unitary.
inline cmatrix random_invertible(rng& gen, std::size_t n) {
    const cmatrix u = random_unitary(gen, n);
    const cmatrix v = random_unitary(gen, n);
    std::vector<cx> d(n);
    for (auto& e : d) {
        const double mag = gen.uniform(0.5, 2.0);
        const double ph = gen.uniform(0.0, 2.0 * std::numbers::pi);
        e = cx(mag * std::cos(ph), mag * std::sin(ph));
    }
    return u * diag_matrix(d) * v;
}

/// Random n x n matrix of exact rank r with singular values in [0.5, 2].
inline cmatrix random_rank(rng& gen, std::size_t n, std::size_t r) {
    const cmatrix u = random_unitary(gen, n);
    const cmatrix v = random_unitary(gen, n);
    std::vector<cx> d(n, cx{});
    for (std::size_t i = 0; i < r && i < n; ++i) d[i] = gen.uniform(0.5, 2.0);
    return u * diag_matrix(d) * adjoint(v);
}

/// Hermitian positive definite with eigenvalues in [0.5, 2].
inline cmatrix random_pd(rng& gen, std::size_t n) {
    const cmatrix u = random_unitary(gen, n);
    std::vector<cx> d(n);
    for (auto& e : d) e = gen.uniform(0.5, 2.0);
    cmatrix m = u * diag_matrix(d) * adjoint(u);
    // symmetrize away round-off so Hermitian checks are exact-ish
    cmatrix h = (m + adjoint(m)) * cx(0.5);
    return h;
}

/// A pair (a, d) with a invertible and a^(parallel d) guaranteed to exist:
/// d*a is similar to diag(spectrum_r, 0) with the nonzero part invertible
/// of semisimple index <= 1, and d = (d*a)*a^{-1}.
struct along_instance {
    cmatrix a;
    cmatrix d;
    std::size_t rank = 0;
};

/// When positive_spectrum is set the nonzero eigenvalues of d*a are drawn
/// real in [0.5, 2], which also qualifies the instance for the integral
/// representation.
inline along_instance random_along_instance(rng& gen, std::size_t n, std::size_t r,
                                          bool positive_spectrum) {
    along_instance inst;
    inst.rank = r;
    inst.a = random_invertible(gen, n);
    const cmatrix s = random_invertible(gen, n);
    std::vector<cx> lam(n, cx{});
    for (std::size_t i = 0; i < r; ++i) {
        if (positive_spectrum) {
            lam[i] = gen.uniform(0.5, 2.0);
        } else {
            const double mag = gen.uniform(0.5, 2.0);
            const double ph = gen.uniform(0.0, 2.0 * std::numbers::pi);
            lam[i] = cx(mag * std::cos(ph), mag * std::sin(ph));
        }
    }
    const cmatrix da = s * diag_matrix(lam) * invert(s);
    inst.d = da * invert(inst.a);
    return inst;
}

} // namespace alonginv
