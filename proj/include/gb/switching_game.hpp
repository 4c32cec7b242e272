#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "gb/budget.hpp"
#include "gb/errors.hpp"
#include "gb/hadamard.hpp"
#include "gb/sign_matrix.hpp"

namespace gb {

// A square grid of lights; +1 means on.  Row/column switches multiply a
// row or column of signs by -1.
class LightGrid {
public:
    explicit LightGrid(SignMatrix m) : grid_(std::move(m)) {
        if (!grid_.square())
            throw ShapeError("LightGrid: grid must be square");
    }

    const SignMatrix& matrix() const noexcept { return grid_; }
    std::size_t size() const noexcept { return grid_.rows(); }

private:
    SignMatrix grid_;
};

// Switch settings: one sign per row and per column.  Solutions are
// normalized so the first row sign is +1.
struct SwitchAssignment {
    std::vector<int> row_signs;
    std::vector<int> col_signs;
};

struct GameSolution {
    long long value;
    SwitchAssignment witness;
};

// c_j = number of rows i with a_ij * x_i = +1.
inline std::vector<int> column_counts(const LightGrid& g,
                                      const std::vector<int>& row_signs) {
    const std::size_t n = g.size();
    if (row_signs.size() != n)
        throw ShapeError("column_counts: row sign count mismatch");
    std::vector<int> c(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (g.matrix().at(i, j) * row_signs[i] == +1) ++c[j];
    return c;
}

// Direct recomputation of the two game quantities from an assignment;
// used to audit solver witnesses.
inline long long on_count(const LightGrid& g, const SwitchAssignment& s) {
    const std::size_t n = g.size();
    if (s.row_signs.size() != n || s.col_signs.size() != n)
        throw ShapeError("on_count: assignment size mismatch");
    long long on = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (g.matrix().at(i, j) * s.row_signs[i] * s.col_signs[j] == +1) ++on;
    return on;
}

inline long long imbalance(const LightGrid& g, const SwitchAssignment& s) {
    const std::size_t n = g.size();
    if (s.row_signs.size() != n || s.col_signs.size() != n)
        throw ShapeError("imbalance: assignment size mismatch");
    long long sum = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            sum += g.matrix().at(i, j) * s.row_signs[i] * s.col_signs[j];
    return sum < 0 ? -sum : sum;
}

namespace detail {

struct ScanHit {
    long long value;
    std::uint64_t index;  // first enumeration index attaining value
};

inline std::uint64_t gray(std::uint64_t k) { return k ^ (k >> 1); }

// Row-sign mask convention: bit r-1 set means row r (0-based, r >= 1) is
// flipped to -1; row 0 is always +1.
inline std::vector<int> row_signs_from_mask(std::uint64_t mask, int n) {
    std::vector<int> x(n, +1);
    for (int r = 1; r < n; ++r)
        if ((mask >> (r - 1)) & 1) x[r] = -1;
    return x;
}

// Gray-code walk over row-sign masks in [lo, hi) for one fixed grid,
// maintaining per-column counts c_j and the score sum(tbl[c_j])
// incrementally.  tbl has n+1 entries indexed by c.  If audit_stride > 0,
// counts are recomputed from scratch that often and compared.
template <bool Max>
inline ScanHit switch_scan(const std::uint32_t* rowbits, int n, const int* tbl,
                           std::uint64_t lo, std::uint64_t hi,
                           unsigned audit_stride = 0) {
    const std::uint32_t colmask =
        n == 32 ? 0xffffffffu : ((std::uint32_t{1} << n) - 1);
    std::vector<int> cnt(n, 0);
    auto recount = [&](std::uint64_t mask) {
        for (int j = 0; j < n; ++j) cnt[j] = 0;
        for (int r = 0; r < n; ++r) {
            bool plus = r == 0 || ((mask >> (r - 1)) & 1) == 0;
            std::uint32_t e = plus ? rowbits[r] : ~rowbits[r] & colmask;
            for (int j = 0; j < n; ++j) cnt[j] += (e >> j) & 1;
        }
    };
    recount(gray(lo));
    long long score = 0;
    for (int j = 0; j < n; ++j) score += tbl[cnt[j]];

    long long best = score;
    std::uint64_t best_k = lo;
    for (std::uint64_t k = lo + 1; k < hi; ++k) {
        const int bit = std::countr_zero(k);
        const std::uint64_t g = gray(k);
        const bool now_minus = (g >> bit) & 1;
        const int r = bit + 1;
        // Columns whose count rises: those where the new a_rj * x_r is +1.
        const std::uint32_t p =
            (now_minus ? ~rowbits[r] : rowbits[r]) & colmask;
        for (int j = 0; j < n; ++j) {
            const int d = ((p >> j) & 1) ? +1 : -1;
            const int c = (cnt[j] += d);
            score += tbl[c] - tbl[c - d];
        }
        if (audit_stride != 0 && k % audit_stride == 0) {
            std::vector<int> save = cnt;
            recount(g);
            long long fresh = 0;
            for (int j = 0; j < n; ++j) fresh += tbl[cnt[j]];
            if (cnt != save || fresh != score)
                throw Error("switch_scan: incremental state diverged");
        }
        if (Max ? score > best : score < best) {
            best = score;
            best_k = k;
        }
    }
    return {best, best_k};
}

// Splits [0, total) into contiguous ranges, runs scan(lo, hi) on each (in
// threads when jobs > 1), and merges preferring better value, then smaller
// index.  The result is identical for every job count.
template <typename Scan>
inline ScanHit partitioned_scan(std::uint64_t total, int jobs, bool prefer_max,
                                Scan scan) {
    if (jobs < 1)
        throw UnsupportedParameterError("jobs must be at least 1");
    const std::uint64_t parts =
        std::min<std::uint64_t>(static_cast<std::uint64_t>(jobs), total);
    std::vector<ScanHit> hits(parts);
    if (parts <= 1) {
        hits[0] = scan(0, total);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(parts);
        std::exception_ptr failure;
        std::mutex mu;
        for (std::uint64_t t = 0; t < parts; ++t) {
            const std::uint64_t lo = total / parts * t + std::min(total % parts, t);
            const std::uint64_t hi =
                total / parts * (t + 1) + std::min(total % parts, t + 1);
            pool.emplace_back([&, t, lo, hi] {
                try {
                    hits[t] = scan(lo, hi);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }
    ScanHit out = hits[0];
    for (std::uint64_t t = 1; t < parts; ++t) {
        const bool better =
            prefer_max ? hits[t].value > out.value : hits[t].value < out.value;
        if (better || (hits[t].value == out.value && hits[t].index < out.index))
            out = hits[t];
    }
    return out;
}

inline std::vector<std::uint32_t> pack_rows(const LightGrid& g) {
    std::vector<std::uint32_t> rb(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        rb[i] = g.matrix().row_bits32(i);
    return rb;
}

inline void check_solve_size(const LightGrid& g) {
    const std::size_t n = g.size();
    if (n > 30)
        throw SizeLimitError("solve: grids larger than 30x30 are not enumerable");
    if (static_cast<int>(n) - 1 > budget::max_bits(budget::solve_bits))
        throw SizeLimitError("solve: enumeration budget exceeded (GB_MAX_BITS)");
}

template <bool Max>
inline GameSolution solve_game(const LightGrid& g, int jobs) {
    check_solve_size(g);
    const int n = static_cast<int>(g.size());
    const auto rowbits = pack_rows(g);
    std::vector<int> tbl(n + 1);
    for (int c = 0; c <= n; ++c)
        tbl[c] = Max ? std::abs(2 * c - n) : std::min(c, n - c);
    const std::uint64_t total = std::uint64_t{1} << (n - 1);
    const ScanHit hit = partitioned_scan(
        total, jobs, Max, [&](std::uint64_t lo, std::uint64_t hi) {
            return switch_scan<Max>(rowbits.data(), n, tbl.data(), lo, hi);
        });

    SwitchAssignment w;
    w.row_signs = row_signs_from_mask(gray(hit.index), n);
    w.col_signs.assign(n, +1);
    const std::vector<int> c = column_counts(g, w.row_signs);
    for (int j = 0; j < n; ++j) {
        if (Max)
            w.col_signs[j] = 2 * c[j] - n >= 0 ? +1 : -1;
        else
            w.col_signs[j] = c[j] <= n - c[j] ? +1 : -1;
    }
    return {hit.value, std::move(w)};
}

}  // namespace detail

// Minimum number of on-lights over all switch assignments.
inline GameSolution solve_i(const LightGrid& g, int jobs = 1) {
    return detail::solve_game<false>(g, jobs);
}

// Maximum absolute imbalance over all switch assignments.
inline GameSolution solve_g(const LightGrid& g, int jobs = 1) {
    return detail::solve_game<true>(g, jobs);
}

// Independent oracle for solve_i: enumerate all 2^n x 2^n switch pairs and
// count on-lights directly via XOR popcounts.  A light (i,j) is on iff
// bit(a_ij) ^ bit(x_i) ^ bit(y_j) = 1 under the bit <=> +1 encoding.
inline long long brute_force_i(const LightGrid& g) {
    const int n = static_cast<int>(g.size());
    if (n > budget::brute_force_max_n)
        throw SizeLimitError("brute_force_i: grids larger than 6x6");
    const auto rowbits = detail::pack_rows(g);
    const std::uint32_t colmask = (std::uint32_t{1} << n) - 1;
    long long best = -1;
    for (std::uint32_t xm = 0; xm < (1u << n); ++xm) {
        for (std::uint32_t ym = 0; ym < (1u << n); ++ym) {
            long long on = 0;
            for (int i = 0; i < n; ++i) {
                const std::uint32_t t =
                    ((xm >> i) & 1) ? rowbits[i] : ~rowbits[i] & colmask;
                on += std::popcount((t ^ ym) & colmask);
            }
            if (best < 0 || on < best) best = on;
        }
    }
    return best;
}

namespace detail {

// Normalized grid encoding for exhaustive search: first row and column all
// +1, free cells (i,j) for i,j >= 1 in row-major bit order, bit set = -1.
inline SignMatrix grid_from_bits(std::uint64_t bits, int n) {
    SignMatrix m(n, n, +1);
    for (int i = 1; i < n; ++i)
        for (int j = 1; j < n; ++j, bits >>= 1)
            if (bits & 1) m.set(i, j, -1);
    return m;
}

// Exhaustive scan over all normalized n x n grids in [lo, hi).  For each
// grid, the inner optimum over row signs is taken (max when GMode, else
// min); the outer reduction is the opposite.  Per-x column counts and
// scores are maintained incrementally under a Gray walk over grid cells.
template <bool GMode>
inline ScanHit exact_scan(int n, const int* tbl, std::uint64_t lo,
                          std::uint64_t hi) {
    const std::uint32_t w = std::uint32_t{1} << (n - 1);  // row-sign masks
    std::vector<std::int16_t> score(w);
    std::vector<std::uint8_t> cnt(static_cast<std::size_t>(n) * w);  // [j*w + x]

    auto inner_opt = [&]() -> long long {
        long long v = score[0];
        for (std::uint32_t x = 1; x < w; ++x) {
            if (GMode ? score[x] > v : score[x] < v) v = score[x];
        }
        return v;
    };

    {
        const SignMatrix g0 = grid_from_bits(gray(lo), n);
        std::vector<std::uint32_t> rowbits(n);
        for (int i = 0; i < n; ++i) rowbits[i] = g0.row_bits32(i);
        const std::uint32_t colmask = (std::uint32_t{1} << n) - 1;
        for (std::uint32_t x = 0; x < w; ++x) {
            std::int16_t s = 0;
            for (int j = 0; j < n; ++j) {
                int c = 0;
                for (int r = 0; r < n; ++r) {
                    bool plus = r == 0 || ((x >> (r - 1)) & 1) == 0;
                    std::uint32_t e = plus ? rowbits[r] : ~rowbits[r] & colmask;
                    c += (e >> j) & 1;
                }
                cnt[static_cast<std::size_t>(j) * w + x] =
                    static_cast<std::uint8_t>(c);
                s += static_cast<std::int16_t>(tbl[c]);
            }
            score[x] = s;
        }
    }

    long long best = inner_opt();
    std::uint64_t best_k = lo;
    for (std::uint64_t k = lo + 1; k < hi; ++k) {
        const int cell = std::countr_zero(k);
        const int i0 = cell / (n - 1) + 1;
        const int j0 = cell % (n - 1) + 1;
        const bool v = (gray(k) >> cell) & 1;  // new entry is -1
        std::uint8_t* col = cnt.data() + static_cast<std::size_t>(j0) * w;
        long long agg = GMode ? -1 : 1 << 30;
        for (std::uint32_t x = 0; x < w; ++x) {
            const bool xb = (x >> (i0 - 1)) & 1;  // row i0 flipped to -1
            const int d = v == xb ? +1 : -1;
            const int c = col[x] + d;
            col[x] = static_cast<std::uint8_t>(c);
            const std::int16_t s =
                score[x] + static_cast<std::int16_t>(tbl[c] - tbl[c - d]);
            score[x] = s;
            if (GMode ? s > agg : s < agg) agg = s;
        }
        // Outer reduction prefers the opposite direction of the inner one.
        if (GMode ? agg < best : agg > best) {
            best = agg;
            best_k = k;
        }
    }
    return {best, best_k};
}

inline void check_exact_size(int n, bool heavy) {
    if (n < 1)
        throw UnsupportedParameterError("exact search: n must be positive");
    if (n > 7 || (n == 7 && !heavy))
        throw SizeLimitError(
            "exact search: n <= 6 (n = 7 only with the long-running flag)");
    const int bits = (n - 1) * (n - 1);
    const int cap =
        budget::max_bits(heavy ? budget::exact_heavy_bits : budget::exact_bits);
    if (bits > cap)
        throw SizeLimitError("exact search: enumeration budget exceeded");
}

}  // namespace detail

struct ExactHardestGrid {
    long long value;
    LightGrid worst_grid;
};

// R_n: the maximum over all n x n grids of the minimal on-count, computed
// by exhaustive search over normalized grids.  Returns a hardest grid.
inline ExactHardestGrid exact_R(int n, int jobs = 1, bool heavy = false) {
    detail::check_exact_size(n, heavy);
    std::vector<int> tbl(n + 1);
    for (int c = 0; c <= n; ++c) tbl[c] = std::min(c, n - c);
    const std::uint64_t total = std::uint64_t{1}
                                << ((n - 1) * (n - 1));
    const detail::ScanHit hit = detail::partitioned_scan(
        total, jobs, /*prefer_max=*/true, [&](std::uint64_t lo, std::uint64_t hi) {
            return detail::exact_scan<false>(n, tbl.data(), lo, hi);
        });
    return {hit.value,
            LightGrid(detail::grid_from_bits(detail::gray(hit.index), n))};
}

// G_n: the minimum over all n x n grids of the maximal imbalance.
inline long long exact_G(int n, int jobs = 1, bool heavy = false) {
    detail::check_exact_size(n, heavy);
    std::vector<int> tbl(n + 1);
    for (int c = 0; c <= n; ++c) tbl[c] = std::abs(2 * c - n);
    const std::uint64_t total = std::uint64_t{1}
                                << ((n - 1) * (n - 1));
    const detail::ScanHit hit = detail::partitioned_scan(
        total, jobs, /*prefer_max=*/false, [&](std::uint64_t lo, std::uint64_t hi) {
            return detail::exact_scan<true>(n, tbl.data(), lo, hi);
        });
    return hit.value;
}

// The n x n leading block of the smallest constructible Hadamard matrix of
// order >= n, as a light configuration.
inline LightGrid hadamard_config(int n) {
    if (n < 1)
        throw UnsupportedParameterError("hadamard_config: n must be positive");
    ConstructibleOrder c = constructible_order_at_least(n);
    return LightGrid(c.matrix.leading_block(n, n));
}

}  // namespace gb
