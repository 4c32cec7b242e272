#pragma once

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gb/errors.hpp"
#include "gb/sign_matrix.hpp"

namespace gb {

// True iff m is square and H * H^T = n * I, checked in exact integer
// arithmetic.  Non-square input is simply not a Hadamard matrix.
inline bool verify_hadamard(const SignMatrix& m) {
    if (!m.square()) return false;
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k)
            if (m.row_dot(i, k) != 0) return false;
    return true;
}

// Sylvester doubling: order 2^t.
inline SignMatrix sylvester(unsigned t) {
    if (t > 20)
        throw SizeLimitError("sylvester: t must be at most 20");
    SignMatrix h(1, 1, +1);
    for (unsigned s = 0; s < t; ++s) {
        const std::size_t n = h.rows();
        SignMatrix next(2 * n, 2 * n, -1);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                int v = h.at(i, j);
                if (v == +1) {
                    next.set(i, j, +1);
                    next.set(i, j + n, +1);
                    next.set(i + n, j, +1);
                } else {
                    next.set(i + n, j + n, +1);
                }
            }
        h = std::move(next);
    }
    return h;
}

namespace detail {

inline bool is_prime(long long q) {
    if (q < 2) return false;
    for (long long d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

// Quadratic character chi on Z/q: chi[0] = 0, chi[a] = +1 for nonzero
// squares, -1 otherwise.
inline std::vector<int> quadratic_character(long long q) {
    std::vector<int> chi(q, -1);
    chi[0] = 0;
    for (long long x = 1; x < q; ++x)
        chi[(x * x) % q] = +1;
    return chi;
}

}  // namespace detail

// Paley constructions for odd prime q.  q = 3 mod 4 gives order q + 1
// (type I); q = 1 mod 4 gives order 2(q + 1) (type II, via the symmetric
// conference matrix with 2x2 block substitution).
inline SignMatrix paley(long long q) {
    if (!detail::is_prime(q) || q == 2)
        throw UnsupportedParameterError("paley: q must be an odd prime");
    const std::vector<int> chi = detail::quadratic_character(q);
    const long long n = q + 1;
    if (q % 4 == 3) {
        SignMatrix h(n, n, -1);
        for (long long j = 0; j < n; ++j) h.set(0, j, +1);
        for (long long i = 1; i < n; ++i) {
            h.set(i, i, +1);
            for (long long j = 1; j < n; ++j) {
                if (i == j) continue;
                long long d = ((j - i) % q + q) % q;
                if (chi[d] == +1) h.set(i, j, +1);
            }
        }
        return h;
    }
    // Type II: conference matrix C (entries 0 on the diagonal, +-1 off it,
    // C symmetric because chi(-1) = +1 when q = 1 mod 4), then each entry c
    // is replaced by a 2x2 block: c = 0 -> [[+,-],[-,-]], c = +-1 -> c*[[+,+],[+,-]].
    std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
    for (long long j = 1; j < n; ++j) {
        c[0][j] = 1;
        c[j][0] = 1;
    }
    for (long long i = 1; i < n; ++i)
        for (long long j = 1; j < n; ++j) {
            if (i == j) continue;
            long long d = ((j - i) % q + q) % q;
            c[i][j] = chi[d];
        }
    SignMatrix h(2 * n, 2 * n, -1);
    for (long long i = 0; i < n; ++i)
        for (long long j = 0; j < n; ++j) {
            const long long r = 2 * i, s = 2 * j;
            if (c[i][j] == 0) {
                h.set(r, s, +1);
            } else if (c[i][j] == +1) {
                h.set(r, s, +1);
                h.set(r, s + 1, +1);
                h.set(r + 1, s, +1);
            } else {
                h.set(r + 1, s + 1, +1);
            }
        }
    return h;
}

inline SignMatrix kronecker_product(const SignMatrix& a, const SignMatrix& b) {
    if (!a.square() || !b.square())
        throw ShapeError("kronecker_product: inputs must be square");
    const std::size_t na = a.rows(), nb = b.rows();
    SignMatrix k(na * nb, na * nb, -1);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const int aij = a.at(i, j);
            for (std::size_t p = 0; p < nb; ++p)
                for (std::size_t q = 0; q < nb; ++q)
                    if (aij * b.at(p, q) == +1)
                        k.set(i * nb + p, j * nb + q, +1);
        }
    return k;
}

namespace detail {

struct Plan {
    enum class Kind { sylvester, paley1, paley2, kron };
    Kind kind;
    long long p1 = 0;  // t for sylvester, q for paley, factor a for kron
    long long p2 = 0;  // factor b for kron
};

// All orders constructible from the implemented constructions, up to limit,
// each with a deterministic plan.  Seed precedence at equal order:
// sylvester, then Paley I, then Paley II; composite orders use the smallest
// constructible factor pair.
inline std::map<long long, Plan> plans_up_to(long long limit) {
    std::map<long long, Plan> plans;
    auto seed = [](long long order) -> std::optional<Plan> {
        if ((order & (order - 1)) == 0) {
            int t = std::countr_zero(static_cast<unsigned long long>(order));
            if (t <= 20) return Plan{Plan::Kind::sylvester, t, 0};
        }
        if (order >= 4 && (order - 1) % 4 == 3 && is_prime(order - 1))
            return Plan{Plan::Kind::paley1, order - 1, 0};
        if (order % 2 == 0) {
            long long q = order / 2 - 1;
            if (q >= 5 && q % 4 == 1 && is_prime(q))
                return Plan{Plan::Kind::paley2, q, 0};
        }
        return std::nullopt;
    };
    for (long long o = 1; o <= limit; ++o) {
        if (auto s = seed(o)) {
            plans.emplace(o, *s);
            continue;
        }
        for (long long a = 2; a * a <= o; ++a) {
            if (o % a != 0) continue;
            if (plans.count(a) && plans.count(o / a)) {
                plans.emplace(o, Plan{Plan::Kind::kron, a, o / a});
                break;
            }
        }
    }
    return plans;
}

inline SignMatrix build_plan(const std::map<long long, Plan>& plans, long long order) {
    const Plan& p = plans.at(order);
    switch (p.kind) {
        case Plan::Kind::sylvester:
            return sylvester(static_cast<unsigned>(p.p1));
        case Plan::Kind::paley1:
        case Plan::Kind::paley2:
            return paley(p.p1);
        case Plan::Kind::kron:
        default:
            return kronecker_product(build_plan(plans, p.p1),
                                     build_plan(plans, p.p2));
    }
}

}  // namespace detail

// Registry of Hadamard orders in two tiers: orders *known* to exist
// (existence table: 1, 2, and every multiple of 4 up to 664, extended by
// doubling) versus orders this library can actually *construct*.
class OrderRegistry {
public:
    static const OrderRegistry& instance() {
        static const OrderRegistry reg;
        return reg;
    }

    // Known-existence base table: 1, 2, and 4k for k = 1..166.
    const std::vector<long long>& bases() const noexcept { return bases_; }

    bool in_base(long long o) const {
        return std::binary_search(bases_.begin(), bases_.end(), o);
    }

    // Whether o = 2^j * b for some base order b.
    bool in_power_closure(long long o) const {
        if (o < 1) return false;
        for (long long b : bases_) {
            if (o % b != 0) continue;
            long long r = o / b;
            if ((r & (r - 1)) == 0) return true;
        }
        return false;
    }

    // Smallest order in the power closure that is >= n.
    long long smallest_known_at_least(long long n) const {
        if (n <= 1) return 1;
        if (n == 2) return 2;
        if (n <= 664) return 4 * ((n + 3) / 4);
        long long best = 0;
        for (long long b : bases_) {
            long long v = b;
            while (v < n) v *= 2;
            if (best == 0 || v < best) best = v;
        }
        return best;
    }

private:
    OrderRegistry() {
        bases_ = {1, 2};
        for (long long k = 1; k <= 166; ++k) bases_.push_back(4 * k);
    }
    std::vector<long long> bases_;
};

inline long long known_order_at_least(long long n) {
    if (n < 1)
        throw UnsupportedParameterError("known_order_at_least: n must be positive");
    return OrderRegistry::instance().smallest_known_at_least(n);
}

// Build a Hadamard matrix of exactly the given order, or report the gap.
inline SignMatrix construct_hadamard(long long order) {
    if (order < 1)
        throw UnsupportedParameterError("construct_hadamard: order must be positive");
    auto plans = detail::plans_up_to(order);
    if (!plans.count(order))
        throw CoverageGapError(order, "construct_hadamard: no construction reaches order " +
                                          std::to_string(order));
    return detail::build_plan(plans, order);
}

struct ConstructibleOrder {
    long long order;
    SignMatrix matrix;
};

// Smallest constructible order >= n, searching no further than 4n.
inline ConstructibleOrder constructible_order_at_least(long long n) {
    if (n < 1)
        throw UnsupportedParameterError("constructible_order_at_least: n must be positive");
    auto plans = detail::plans_up_to(4 * n);
    for (long long o = n; o <= 4 * n; ++o)
        if (plans.count(o))
            return {o, detail::build_plan(plans, o)};
    throw CoverageGapError(n, "constructible_order_at_least: no constructible order in [" +
                                  std::to_string(n) + ", " + std::to_string(4 * n) + "]");
}

}  // namespace gb
