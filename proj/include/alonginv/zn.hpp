#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "alonginv/common.hpp"

namespace alonginv {

/// Residue in Z_n. The involution on the base ring is the identity, so
/// every scalar is Hermitian.
struct zn_scalar {
    std::uint64_t value = 0;
    std::uint64_t modulus = 2;

    zn_scalar() = default;
    zn_scalar(std::uint64_t v, std::uint64_t n) : value(v % n), modulus(n) {
        if (n < 2) throw error(errc::precondition_violated, "modulus must be >= 2");
    }
    friend bool operator==(const zn_scalar&, const zn_scalar&) = default;
};

/// All y in Z_n with y^2 = x, by exhaustive scan. Sorted ascending.
inline std::vector<zn_scalar> zn_square_roots(const zn_scalar& x) {
    std::vector<zn_scalar> roots;
    for (std::uint64_t y = 0; y < x.modulus; ++y)
        if ((y * y) % x.modulus == x.value) roots.emplace_back(y, x.modulus);
    return roots;
}

/// Matrix over Z_n with exact arithmetic. Involution is the entrywise
/// transpose (base-ring involution is the identity).
class zn_matrix {
public:
    zn_matrix() = default;

    zn_matrix(std::size_t rows, std::size_t cols, std::uint64_t modulus)
        : rows_(rows), cols_(cols), modulus_(modulus), data_(rows * cols, 0) {
        if (modulus < 2) throw error(errc::precondition_violated, "modulus must be >= 2");
    }

    zn_matrix(std::size_t rows, std::size_t cols, std::uint64_t modulus,
              std::vector<std::uint64_t> entries)
        : rows_(rows), cols_(cols), modulus_(modulus), data_(std::move(entries)) {
        if (modulus < 2) throw error(errc::precondition_violated, "modulus must be >= 2");
        if (data_.size() != rows * cols)
            throw error(errc::parse_error, "entry count does not match rows*cols");
        for (auto& e : data_) e %= modulus_;
    }

    static zn_matrix identity(std::size_t n, std::uint64_t modulus) {
        zn_matrix m(n, n, modulus);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % modulus;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::uint64_t modulus() const noexcept { return modulus_; }
    const std::vector<std::uint64_t>& entries() const noexcept { return data_; }

    std::uint64_t& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const std::uint64_t& operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    friend bool operator==(const zn_matrix&, const zn_matrix&) = default;
    friend bool operator<(const zn_matrix& a, const zn_matrix& b) { return a.data_ < b.data_; }

    friend zn_matrix operator+(const zn_matrix& a, const zn_matrix& b) {
        a.check_compatible(b, true);
        zn_matrix c(a.rows_, a.cols_, a.modulus_);
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            c.data_[k] = (a.data_[k] + b.data_[k]) % a.modulus_;
        return c;
    }

    friend zn_matrix operator-(const zn_matrix& a, const zn_matrix& b) {
        a.check_compatible(b, true);
        zn_matrix c(a.rows_, a.cols_, a.modulus_);
        for (std::size_t k = 0; k < a.data_.size(); ++k)
            c.data_[k] = (a.data_[k] + a.modulus_ - b.data_[k]) % a.modulus_;
        return c;
    }

    friend zn_matrix operator*(const zn_matrix& a, const zn_matrix& b) {
        a.check_compatible(b, false);
        zn_matrix c(a.rows_, b.cols_, a.modulus_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const std::uint64_t aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) = (c(i, j) + aik * b(k, j)) % a.modulus_;
            }
        return c;
    }

private:
    void check_compatible(const zn_matrix& o, bool same_shape) const {
        if (modulus_ != o.modulus_)
            throw error(errc::precondition_violated, "mixed moduli in zn arithmetic");
        if (same_shape ? (rows_ != o.rows_ || cols_ != o.cols_) : (cols_ != o.rows_))
            throw error(errc::precondition_violated, "zn matrix shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::uint64_t modulus_ = 2;
    std::vector<std::uint64_t> data_;
};

inline zn_matrix zn_transpose(const zn_matrix& m) {
    zn_matrix r(m.cols(), m.rows(), m.modulus());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(j, i) = m(i, j);
    return r;
}

namespace detail {

inline std::uint64_t zn_pow_count(std::size_t cells, std::uint64_t modulus,
                                  std::uint64_t budget) {
    std::uint64_t count = 1;
    for (std::size_t k = 0; k < cells; ++k) {
        if (count > budget / modulus + 1) return budget + 1;
        count *= modulus;
        if (count > budget) return budget + 1;
    }
    return count;
}

// Decodes index -> matrix with base-modulus digits, row-major. This is the
// canonical enumeration order everywhere.
inline zn_matrix zn_decode(std::uint64_t index, std::size_t rows, std::size_t cols,
                           std::uint64_t modulus) {
    zn_matrix m(rows, cols, modulus);
    for (std::size_t k = 0; k < rows * cols; ++k) {
        m(k / cols, k % cols) = index % modulus;
        index /= modulus;
    }
    return m;
}

inline std::uint64_t zn_encode(const zn_matrix& m) {
    std::uint64_t index = 0;
    const auto& e = m.entries();
    for (std::size_t k = e.size(); k-- > 0;) index = index * m.modulus() + e[k];
    return index;
}

inline std::int64_t zn_det(const zn_matrix& m) {
    // Laplace expansion; matrices here are tiny by budget construction.
    const std::size_t n = m.rows();
    if (n == 1) return static_cast<std::int64_t>(m(0, 0));
    if (n == 2)
        return static_cast<std::int64_t>(m(0, 0) * m(1, 1)) -
               static_cast<std::int64_t>(m(0, 1) * m(1, 0));
    std::int64_t det = 0;
    for (std::size_t j = 0; j < n; ++j) {
        zn_matrix minor(n - 1, n - 1, m.modulus());
        for (std::size_t r = 1; r < n; ++r) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) minor(r - 1, cc++) = m(r, c);
        }
        const std::int64_t term = static_cast<std::int64_t>(m(0, j)) * zn_det(minor);
        det += (j % 2 == 0) ? term : -term;
    }
    return det;
}

inline std::optional<std::uint64_t> zn_scalar_inverse(std::uint64_t a, std::uint64_t n) {
    a %= n;
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(n), new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
        const std::int64_t q = r / new_r;
        t -= q * new_t;
        std::swap(t, new_t);
        r -= q * new_r;
        std::swap(r, new_r);
    }
    if (r != 1) return std::nullopt;
    if (t < 0) t += static_cast<std::int64_t>(n);
    return static_cast<std::uint64_t>(t);
}

} // namespace detail

/// Inverse over Z_n via adjugate and det-unit test; nullopt when det is not
/// a unit mod n.
inline std::optional<zn_matrix> zn_inverse(const zn_matrix& m) {
    if (m.rows() != m.cols()) return std::nullopt;
    const std::size_t n = m.rows();
    const std::uint64_t mod = m.modulus();
    const std::int64_t det_raw = detail::zn_det(m);
    const std::uint64_t det =
        static_cast<std::uint64_t>(((det_raw % static_cast<std::int64_t>(mod)) +
                                    static_cast<std::int64_t>(mod)) %
                                   static_cast<std::int64_t>(mod));
    const auto det_inv = detail::zn_scalar_inverse(det, mod);
    if (!det_inv) return std::nullopt;
    zn_matrix adj(n, n, mod);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            zn_matrix minor(n - 1 > 0 ? n - 1 : 1, n - 1 > 0 ? n - 1 : 1, mod);
            if (n == 1) {
                adj(0, 0) = 1 % mod;
                continue;
            }
            std::size_t rr = 0;
            for (std::size_t r = 0; r < n; ++r) {
                if (r == i) continue;
                std::size_t cc = 0;
                for (std::size_t c = 0; c < n; ++c)
                    if (c != j) minor(rr, cc++) = m(r, c);
                ++rr;
            }
            std::int64_t cof = detail::zn_det(minor);
            if ((i + j) % 2 == 1) cof = -cof;
            const std::uint64_t cof_mod = static_cast<std::uint64_t>(
                ((cof % static_cast<std::int64_t>(mod)) + static_cast<std::int64_t>(mod)) %
                static_cast<std::int64_t>(mod));
            adj(j, i) = (cof_mod * *det_inv) % mod;
        }
    if (n == 1) adj(0, 0) = *det_inv;
    return adj;
}

inline bool zn_is_invertible(const zn_matrix& m) { return zn_inverse(m).has_value(); }

inline void zn_check_budget(std::size_t rows, std::size_t cols, std::uint64_t modulus,
                            std::uint64_t budget) {
    const std::uint64_t count = detail::zn_pow_count(rows * cols, modulus, budget);
    if (count > budget || rows * cols * count > budget)
        throw error(errc::budget_exceeded, "zn enumeration budget exceeded");
}

/// Every x with d*x*d = d, by exhaustive scan in canonical order.
inline std::vector<zn_matrix> zn_inner_inverses(const zn_matrix& d,
                                                std::uint64_t budget = 10'000'000) {
    zn_check_budget(d.cols(), d.rows(), d.modulus(), budget);
    const std::uint64_t count =
        detail::zn_pow_count(d.rows() * d.cols(), d.modulus(), budget);
    std::vector<zn_matrix> result;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        zn_matrix x = detail::zn_decode(idx, d.cols(), d.rows(), d.modulus());
        if (d * x * d == d) result.push_back(std::move(x));
    }
    return result;
}

/// Right module {m*x : x} as a sorted set of encodings. Exact but exponential;
/// guarded by the enumeration budget upstream.
inline std::vector<std::uint64_t> zn_right_module(const zn_matrix& m) {
    const std::uint64_t count =
        detail::zn_pow_count(m.cols() * m.cols(), m.modulus(), UINT64_MAX / 2);
    std::vector<std::uint64_t> set;
    set.reserve(count);
    for (std::uint64_t idx = 0; idx < count; ++idx)
        set.push_back(detail::zn_encode(m * detail::zn_decode(idx, m.cols(), m.cols(),
                                                              m.modulus())));
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    return set;
}

inline std::vector<std::uint64_t> zn_left_module(const zn_matrix& m) {
    const std::uint64_t count =
        detail::zn_pow_count(m.rows() * m.rows(), m.modulus(), UINT64_MAX / 2);
    std::vector<std::uint64_t> set;
    set.reserve(count);
    for (std::uint64_t idx = 0; idx < count; ++idx)
        set.push_back(detail::zn_encode(detail::zn_decode(idx, m.rows(), m.rows(),
                                                          m.modulus()) *
                                        m));
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    return set;
}

/// Brute-force inverse of a along d: the unique b with b*a*b = b,
/// bR = dR and Rb = Rd, or nullopt. Exhaustive over all candidates.
inline std::optional<zn_matrix> zn_inverse_along(const zn_matrix& a, const zn_matrix& d,
                                                std::uint64_t budget = 10'000'000) {
    if (a.rows() != a.cols() || d.rows() != d.cols() || a.rows() != d.rows() ||
        a.modulus() != d.modulus())
        throw error(errc::precondition_violated, "zn_inverse_along needs square same-size pair");
    zn_check_budget(a.rows(), a.cols(), a.modulus(), budget);
    const std::size_t k = a.rows();
    const std::uint64_t count = detail::zn_pow_count(k * k, a.modulus(), budget);
    const auto d_right = zn_right_module(d);
    const auto d_left = zn_left_module(d);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        zn_matrix b = detail::zn_decode(idx, k, k, a.modulus());
        if (!(b * a * b == b)) continue;
        // b a d = d = d a b is a consequence of the definition; filtering on
        // it first keeps the exhaustive module-set comparison off the bulk
        // of the candidates without changing the answer
        if (!(b * a * d == d) || !(d * a * b == d)) continue;
        if (zn_right_module(b) != d_right) continue;
        if (zn_left_module(b) != d_left) continue;
        return b;
    }
    return std::nullopt;
}

/// Existence predicate mirroring the compression criterion exactly over Z_n:
/// d regular and d*a*p + (1-p) invertible, p = d*d^- for the first inner
/// inverse in canonical order. Returns the computed inverse when it exists.
struct zn_existence {
    bool regular = false;
    bool exists = false;
    std::optional<zn_matrix> value;
};

inline zn_existence zn_exists_along(const zn_matrix& a, const zn_matrix& d,
                                    std::uint64_t budget = 10'000'000) {
    zn_existence out;
    const std::size_t k = d.rows();
    const std::uint64_t count = detail::zn_pow_count(k * k, d.modulus(), budget);
    zn_check_budget(k, k, d.modulus(), budget);
    std::optional<zn_matrix> dminus;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        zn_matrix x = detail::zn_decode(idx, k, k, d.modulus());
        if (d * x * d == d) {
            dminus = std::move(x);
            break;
        }
    }
    if (!dminus) return out;
    out.regular = true;
    const zn_matrix one = zn_matrix::identity(k, d.modulus());
    const zn_matrix p = d * *dminus;
    const zn_matrix v = d * a * p + (one - p);
    const auto vinv = zn_inverse(v);
    if (!vinv) return out;
    out.exists = true;
    out.value = p * *vinv * p * d;
    return out;
}

} // namespace alonginv
