// Test-only oracles, independent of the library's decomposition path.
#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "alonginv/matrix.hpp"

namespace oracle {

using alonginv::cmatrix;
using alonginv::cx;

// Singular values of a 2x2 complex matrix from the closed-form eigenvalues
// of m^H m (quadratic formula).
inline std::array<double, 2> singular_values_2x2(const cmatrix& m) {
    const cmatrix g = alonginv::adjoint(m) * m;
    const double tr = g(0, 0).real() + g(1, 1).real();
    const double det = (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)).real();
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
    const double l1 = 0.5 * (tr + disc);
    const double l2 = 0.5 * (tr - disc);
    return {std::sqrt(std::max(0.0, l1)), std::sqrt(std::max(0.0, l2))};
}

// Eigenvalues of a 2x2 complex matrix from the characteristic polynomial.
inline std::array<cx, 2> eigenvalues_2x2(const cmatrix& m) {
    const cx tr = m(0, 0) + m(1, 1);
    const cx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const cx disc = std::sqrt(tr * tr - 4.0 * det);
    return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

// Residuals of the four Penrose equations, measured entrywise so the check
// does not depend on the library's SVD.
inline double penrose_residual(const cmatrix& a, const cmatrix& b) {
    using alonginv::adjoint;
    using alonginv::max_abs;
    const cmatrix ab = a * b;
    const cmatrix ba = b * a;
    double r = max_abs(a * b * a - a);
    r = std::max(r, max_abs(b * a * b - b));
    r = std::max(r, max_abs(ab - adjoint(ab)));
    r = std::max(r, max_abs(ba - adjoint(ba)));
    return r;
}

} // namespace oracle
