#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "gb/budget.hpp"
#include "gb/errors.hpp"
#include "gb/hadamard.hpp"
#include "gb/sign_matrix.hpp"

namespace gb {

struct DenseMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;  // row-major

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    static DenseMatrix from_sign(const SignMatrix& m) {
        DenseMatrix d(m.rows(), m.cols());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                d.at(i, j) = m.at(i, j);
        return d;
    }
};

namespace detail {

// SplitMix64 step mapped to [1, 2).  Deterministic, stateful via the seed.
inline double splitmix_unit(std::uint64_t& s) {
    s += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    return 1.0 + static_cast<double>(z >> 11) * 0x1.0p-53;
}

}  // namespace detail

// Largest singular value, by power iteration on A^T A with a deterministic
// pseudo-random start.  The Rayleigh quotient of a unit vector never
// exceeds lambda_max, so the returned value cannot overshoot the true
// norm.  A plateau (two consecutive relative changes below tol) must
// survive two random restarts-in-place before it is accepted; that guards
// against stalls on a subdominant eigenspace when the start vector happens
// to be nearly orthogonal to the top one.
inline double spectral_norm(const DenseMatrix& m, double tol = 1e-10) {
    if (tol <= 0)
        throw UnsupportedParameterError("spectral_norm: tol must be positive");
    if (m.rows == 0 || m.cols == 0)
        throw ShapeError("spectral_norm: empty matrix");
    double frob2 = 0;
    for (double v : m.a) {
        if (!std::isfinite(v))
            throw UnsupportedParameterError("spectral_norm: non-finite entry");
        frob2 += v * v;
    }
    if (frob2 == 0)
        throw UnsupportedParameterError("spectral_norm: zero matrix");

    const std::size_t n = m.cols, r = m.rows;
    std::uint64_t seed = 0x6a09e667f3bcc908ull ^ (r * 0x100000001b3ull) ^ n;
    std::vector<double> v(n), w(r), u(n);
    for (double& x : v) x = detail::splitmix_unit(seed);
    double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    for (double& x : v) x /= norm;

    double lambda = 0;
    int calm = 0, confirms = 0;
    const int max_iter = 100000;
    for (int it = 0; it < max_iter; ++it) {
        for (std::size_t i = 0; i < r; ++i) {
            double s = 0;
            for (std::size_t j = 0; j < n; ++j) s += m.a[i * n + j] * v[j];
            w[i] = s;
        }
        const double next =
            std::inner_product(w.begin(), w.end(), w.begin(), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0;
            for (std::size_t i = 0; i < r; ++i) s += m.a[i * n + j] * w[i];
            u[j] = s;
        }
        const double unorm =
            std::sqrt(std::inner_product(u.begin(), u.end(), u.begin(), 0.0));
        if (unorm == 0)
            throw NumericFailureError("spectral_norm: iterate vanished",
                                      std::sqrt(next));
        for (std::size_t j = 0; j < n; ++j) v[j] = u[j] / unorm;

        const double change = std::abs(next - lambda);
        calm = change <= tol * std::max(next, 1e-300) ? calm + 1 : 0;
        lambda = next;
        if (calm >= 2) {
            if (confirms >= 2) return std::sqrt(lambda);
            ++confirms;
            calm = 0;
            for (double& x : v) x += 0.01 * (detail::splitmix_unit(seed) - 1.5);
            norm = std::sqrt(
                std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
            for (double& x : v) x /= norm;
        }
    }
    throw NumericFailureError("spectral_norm: no convergence", std::sqrt(lambda));
}

// Sign tensor of order m >= 2, entries in {+1, -1}, stored flat in
// row-major order (last index fastest).
class SignTensor {
public:
    SignTensor(std::vector<std::size_t> dims, std::vector<std::int8_t> entries)
        : dims_(std::move(dims)), e_(std::move(entries)) {
        if (dims_.size() < 2)
            throw ShapeError("SignTensor: order must be at least 2");
        std::size_t sz = 1;
        for (std::size_t d : dims_) {
            if (d == 0) throw ShapeError("SignTensor: zero dimension");
            sz *= d;
        }
        if (e_.size() != sz)
            throw ShapeError("SignTensor: entry count does not match dims");
        for (std::int8_t v : e_)
            if (v != +1 && v != -1)
                throw ShapeError("SignTensor: entries must be +1 or -1");
    }

    std::size_t order() const noexcept { return dims_.size(); }
    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    std::size_t dim(std::size_t k) const { return dims_[k]; }
    std::size_t size() const noexcept { return e_.size(); }
    std::int8_t flat(std::size_t f) const { return e_[f]; }

    std::int8_t at(const std::vector<std::size_t>& idx) const {
        if (idx.size() != dims_.size())
            throw ShapeError("SignTensor: index arity mismatch");
        std::size_t f = 0;
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (idx[k] >= dims_[k]) throw ShapeError("SignTensor: index out of range");
            f = f * dims_[k] + idx[k];
        }
        return e_[f];
    }

private:
    std::vector<std::size_t> dims_;
    std::vector<std::int8_t> e_;
};

// The order-m sign tensor with entries
//   t[i_1, ..., i_m] = h1[i_1, i_2] * h2[i_2, i_3] * ... * h_{m-1}[i_{m-1}, i_m]
// on the leading blocks of the given Hadamard matrices.  dims must list the
// smallest dimension first and the largest last; matrix k must be large
// enough for both indices it couples.
inline SignTensor ksz_tensor(const std::vector<SignMatrix>& hadamards,
                             const std::vector<std::size_t>& dims) {
    const std::size_t m = dims.size();
    if (m < 2)
        throw ShapeError("ksz_tensor: need at least two dimensions");
    if (hadamards.size() != m - 1)
        throw ShapeError("ksz_tensor: need exactly m - 1 matrices");
    std::size_t lo = dims[0], hi = dims[0];
    for (std::size_t d : dims) {
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    if (dims.front() != lo)
        throw ShapeError("ksz_tensor: first dimension must be the smallest");
    if (dims.back() != hi)
        throw ShapeError("ksz_tensor: last dimension must be the largest");
    std::size_t size = 1;
    for (std::size_t k = 0; k < m; ++k) {
        if (dims[k] == 0) throw ShapeError("ksz_tensor: zero dimension");
        size *= dims[k];
        if (size > (std::size_t{1} << 28))
            throw SizeLimitError("ksz_tensor: tensor too large");
    }
    for (std::size_t k = 0; k + 1 < m; ++k) {
        const SignMatrix& h = hadamards[k];
        if (h.rows() < std::max(dims[k], dims[k + 1]))
            throw ShapeError("ksz_tensor: matrix " + std::to_string(k) +
                             " too small for its index pair");
        if (!verify_hadamard(h))
            throw UnsupportedParameterError("ksz_tensor: matrix " +
                                            std::to_string(k) +
                                            " is not a Hadamard matrix");
    }

    std::vector<std::int8_t> e(size);
    std::vector<std::size_t> idx(m, 0);
    for (std::size_t f = 0; f < size; ++f) {
        int prod = 1;
        for (std::size_t k = 0; k + 1 < m; ++k)
            prod *= hadamards[k].at(idx[k], idx[k + 1]);
        e[f] = static_cast<std::int8_t>(prod);
        for (std::size_t k = m; k-- > 0;) {
            if (++idx[k] < dims[k]) break;
            idx[k] = 0;
        }
    }
    return SignTensor(dims, std::move(e));
}

namespace detail {

// Bit offsets for packing one sign per coordinate of the chosen index
// positions into an enumeration mask (bit set = sign -1).
inline int sign_bits_total(const std::vector<std::size_t>& dims,
                           std::size_t from, std::size_t to) {
    int bits = 0;
    for (std::size_t k = from; k < to; ++k)
        bits += static_cast<int>(dims[k]);
    return bits;
}

}  // namespace detail

// max over sign choices of the middle m-2 vectors of the spectral norm of
// the induced n_1 x n_m matrix.  For m = 2 this is the spectral norm.
inline double mixed_norm(const SignTensor& t, double tol = 1e-10) {
    const std::size_t m = t.order();
    const std::size_t n1 = t.dim(0), nm = t.dim(m - 1);
    if (m == 2) {
        DenseMatrix d(n1, nm);
        for (std::size_t f = 0; f < t.size(); ++f) d.a[f] = t.flat(f);
        return spectral_norm(d, tol);
    }
    const int mid_bits = detail::sign_bits_total(t.dims(), 1, m - 1);
    if (mid_bits > budget::max_bits(budget::mixed_bits))
        throw SizeLimitError("mixed_norm: too many middle sign assignments");

    // midsel[g] = mask of the bits owned by the coordinates of the middle
    // multi-index g, so the sign product is a parity of mask & midsel[g].
    std::size_t midsize = 1;
    for (std::size_t k = 1; k + 1 < m; ++k) midsize *= t.dim(k);
    std::vector<std::uint32_t> midsel(midsize);
    {
        std::vector<std::size_t> idx(m - 2, 0);
        for (std::size_t g = 0; g < midsize; ++g) {
            std::uint32_t sel = 0;
            int off = 0;
            for (std::size_t k = 0; k < m - 2; ++k) {
                sel |= std::uint32_t{1} << (off + static_cast<int>(idx[k]));
                off += static_cast<int>(t.dim(k + 1));
            }
            midsel[g] = sel;
            for (std::size_t k = m - 2; k-- > 0;) {
                if (++idx[k] < t.dim(k + 1)) break;
                idx[k] = 0;
            }
        }
    }

    double best = 0;
    DenseMatrix d(n1, nm);
    const std::uint64_t total = std::uint64_t{1} << mid_bits;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::fill(d.a.begin(), d.a.end(), 0.0);
        for (std::size_t i1 = 0; i1 < n1; ++i1)
            for (std::size_t g = 0; g < midsize; ++g) {
                const int sign =
                    std::popcount(static_cast<std::uint32_t>(mask) & midsel[g]) & 1
                        ? -1
                        : +1;
                const std::size_t base = (i1 * midsize + g) * nm;
                double* row = d.a.data() + i1 * nm;
                for (std::size_t im = 0; im < nm; ++im)
                    row[im] += sign * t.flat(base + im);
            }
        // Middle signs can cancel the whole slice; that contributes zero.
        const bool all_zero =
            std::all_of(d.a.begin(), d.a.end(), [](double x) { return x == 0; });
        if (!all_zero) best = std::max(best, spectral_norm(d, tol));
    }
    return best;
}

// max over sign choices of the first m-1 vectors of the l1 norm of the
// resulting functional in the last argument.  Exact integer arithmetic.
inline long long injective_inf_norm(const SignTensor& t) {
    const std::size_t m = t.order();
    const std::size_t nm = t.dim(m - 1);
    const int lead_bits = detail::sign_bits_total(t.dims(), 0, m - 1);
    if (lead_bits > budget::max_bits(budget::injective_bits))
        throw SizeLimitError("injective_inf_norm: too many leading sign assignments");

    const std::size_t leadsize = t.size() / nm;
    std::vector<std::uint32_t> leadsel(leadsize);
    {
        std::vector<std::size_t> idx(m - 1, 0);
        for (std::size_t g = 0; g < leadsize; ++g) {
            std::uint32_t sel = 0;
            int off = 0;
            for (std::size_t k = 0; k + 1 < m; ++k) {
                sel |= std::uint32_t{1} << (off + static_cast<int>(idx[k]));
                off += static_cast<int>(t.dim(k));
            }
            leadsel[g] = sel;
            for (std::size_t k = m - 1; k-- > 0;) {
                if (++idx[k] < t.dim(k)) break;
                idx[k] = 0;
            }
        }
    }

    long long best = 0;
    std::vector<long long> acc(nm);
    const std::uint64_t total = std::uint64_t{1} << lead_bits;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        std::fill(acc.begin(), acc.end(), 0);
        for (std::size_t g = 0; g < leadsize; ++g) {
            const int sign =
                std::popcount(static_cast<std::uint32_t>(mask) & leadsel[g]) & 1
                    ? -1
                    : +1;
            const std::size_t base = g * nm;
            for (std::size_t im = 0; im < nm; ++im)
                acc[im] += sign * t.flat(base + im);
        }
        long long val = 0;
        for (long long v : acc) val += v < 0 ? -v : v;
        best = std::max(best, val);
    }
    return best;
}

}  // namespace gb
