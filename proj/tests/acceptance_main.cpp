// Acceptance gate: one PASS/FAIL line per criterion, exit code = number of
// failures.  Runs the expensive exhaustive searches, so expect minutes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gb/bounds.hpp"
#include "gb/certificate_json.hpp"
#include "gb/hadamard.hpp"
#include "gb/norms.hpp"
#include "gb/switching_game.hpp"

namespace {

int g_jobs = 1;

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

gb::SignMatrix random_grid(std::mt19937_64& rng, int n) {
    gb::SignMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (rng() & 1) m.set(i, j, -1);
    return m;
}

gb::SignMatrix grid_from_mask(unsigned bits, int n) {
    gb::SignMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j, bits >>= 1)
            if (bits & 1) m.set(i, j, -1);
    return m;
}

// Each criterion returns a short summary string on success and throws on
// failure.
std::vector<long long> g_exact_r(7, -1);  // shared between criteria 1 and 2

std::string criterion_exact_minima() {
    const long long want[] = {-1, 0, 1, 2, 4, 7, 11};
    const auto small_start = std::chrono::steady_clock::now();
    for (int n = 1; n <= 5; ++n) {
        const gb::ExactHardestGrid res = gb::exact_R(n, g_jobs);
        g_exact_r[n] = res.value;
        if (res.value != want[n])
            throw gb::Error("R_" + std::to_string(n) + " = " +
                            std::to_string(res.value) + ", expected " +
                            std::to_string(want[n]));
        if (gb::solve_i(res.worst_grid).value != res.value)
            throw gb::Error("hardest grid witness mismatch at n = " +
                            std::to_string(n));
    }
    const double small_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      small_start)
            .count();
    if (small_s >= 10)
        throw gb::Error("n <= 5 took " + fmt("%.1f", small_s) + "s, budget 10s");

    const auto big_start = std::chrono::steady_clock::now();
    const gb::ExactHardestGrid r6 = gb::exact_R(6, g_jobs);
    g_exact_r[6] = r6.value;
    const double big_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      big_start)
            .count();
    if (r6.value != 11)
        throw gb::Error("R_6 = " + std::to_string(r6.value) + ", expected 11");
    if (big_s >= 900)
        throw gb::Error("n = 6 took " + fmt("%.1f", big_s) + "s, budget 900s");
    return "R_1..R_6 = 0,1,2,4,7,11; n<=5 in " + fmt("%.1f", small_s) +
           "s, n=6 in " + fmt("%.1f", big_s) + "s";
}

std::string criterion_exact_imbalance() {
    const long long want[] = {-1, 1, 2, 5, 8, 11, 14};
    for (int n = 1; n <= 6; ++n) {
        const long long g = gb::exact_G(n, g_jobs);
        if (g != want[n])
            throw gb::Error("G_" + std::to_string(n) + " = " + std::to_string(g) +
                            ", expected " + std::to_string(want[n]));
        const long long r =
            g_exact_r[n] >= 0 ? g_exact_r[n] : gb::exact_R(n, g_jobs).value;
        if (g != static_cast<long long>(n) * n - 2 * r)
            throw gb::Error("G_n != n^2 - 2 R_n at n = " + std::to_string(n));
    }
    return "G_1..G_6 = 1,2,5,8,11,14 and G_n = n^2 - 2 R_n throughout";
}

std::string criterion_lower_bounds() {
    const long long ns[] = {15, 17, 18, 19};
    const long long want[] = {83, 107, 122, 139};
    const long long want_k[] = {16, 20, 20, 20};
    std::string claims;
    for (int i = 0; i < 4; ++i) {
        const auto start = std::chrono::steady_clock::now();
        const gb::BoundCertificate cert = gb::r_lower_certificate(ns[i], g_jobs);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        const long long claim = static_cast<long long>(cert.claim.bound_decimal);
        if (claim < want[i])
            throw gb::Error("claim " + std::to_string(claim) + " < " +
                            std::to_string(want[i]) + " at n = " +
                            std::to_string(ns[i]));
        if (cert.evidence.k_n != want_k[i] ||
            !cert.evidence.analytic_value.has_value() ||
            *cert.evidence.analytic_value != static_cast<double>(want[i]))
            throw gb::Error("analytic branch wrong at n = " + std::to_string(ns[i]));
        if (gb::analytic_r_lower(ns[i], want_k[i]) != want[i])
            throw gb::Error("ceiling formula wrong at n = " + std::to_string(ns[i]));
        if (!cert.evidence.exact_value.has_value() ||
            *cert.evidence.exact_value < want[i])
            throw gb::Error("exact branch below analytic at n = " +
                            std::to_string(ns[i]));
        if (!cert.verified)
            throw gb::Error("certificate unverified at n = " + std::to_string(ns[i]));
        if (secs >= 60)
            throw gb::Error("n = " + std::to_string(ns[i]) + " took " +
                            fmt("%.1f", secs) + "s, budget 60s");
        claims += (i ? "," : "") + std::to_string(claim);
    }
    return "claims >= " + claims + " for n = 15,17,18,19, all verified";
}

std::string criterion_ladder_and_covering() {
    const auto start = std::chrono::steady_clock::now();
    const double want[] = {0, 1, 1, std::sqrt(4.0 / 3.0), 1, std::sqrt(8.0 / 5.0),
                           std::sqrt(8.0 / 6.0), std::sqrt(8.0 / 7.0), 1};
    for (long long n = 1; n <= 8; ++n) {
        const double v = gb::c22_upper(n).value;
        if (std::abs(v - want[n]) > 1e-12)
            throw gb::Error("ladder value off at n = " + std::to_string(n));
    }
    const gb::CoveringReport rep = gb::verify_sqrt85(1000000);
    if (!rep.verified) throw gb::Error("covering verification failed");
    if (rep.max_ratio_sq_num != 8 || rep.max_ratio_sq_den != 5 ||
        rep.argmax_n != 5)
        throw gb::Error("max ratio^2 is not 8/5 at n = 5");
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (secs >= 10)
        throw gb::Error("took " + fmt("%.1f", secs) + "s, budget 10s");
    return "ladder exact for n <= 8; ratio^2 <= 8/5 on 1..10^6, max only at n = 5 (" +
           fmt("%.1f", secs) + "s)";
}

std::string criterion_hadamard_integrity() {
    int built = 0;
    for (const auto& [order, plan] : gb::detail::plans_up_to(128)) {
        (void)plan;
        if (!gb::verify_hadamard(gb::construct_hadamard(order)))
            throw gb::Error("order " + std::to_string(order) +
                            " fails orthogonality");
        ++built;
    }
    for (long long order : {2, 4, 8, 16, 32, 64}) {
        const double s =
            gb::spectral_norm(gb::DenseMatrix::from_sign(gb::construct_hadamard(order)));
        const double want = std::sqrt(static_cast<double>(order));
        if (std::abs(s - want) > 1e-9 * want)
            throw gb::Error("spectral norm of order " + std::to_string(order) +
                            " is " + fmt("%.12f", s));
    }
    for (long long order : {4, 8, 12, 16, 20}) {
        const gb::SignMatrix h = gb::construct_hadamard(order);
        const double cap = std::sqrt(static_cast<double>(order)) + 1e-9;
        for (long long n = 1; n <= order; ++n) {
            const double s =
                gb::spectral_norm(gb::DenseMatrix::from_sign(h.leading_block(n, n)));
            if (s > cap)
                throw gb::Error("truncation " + std::to_string(n) + " of order " +
                                std::to_string(order) + " has norm " +
                                fmt("%.12f", s));
        }
    }
    return std::to_string(built) +
           " constructible orders <= 128 verified; spectral norms match";
}

std::string criterion_oracle_equivalence() {
    for (unsigned bits = 0; bits < 512; ++bits) {
        const gb::LightGrid grid(grid_from_mask(bits, 3));
        if (gb::solve_i(grid).value != gb::brute_force_i(grid))
            throw gb::Error("solver disagrees with oracle on a 3x3 grid");
    }
    std::mt19937_64 rng(20260819);
    for (int n = 4; n <= 6; ++n)
        for (int t = 0; t < 1000; ++t) {
            const gb::LightGrid grid(random_grid(rng, n));
            if (gb::solve_i(grid, g_jobs).value != gb::brute_force_i(grid))
                throw gb::Error("solver disagrees with oracle at n = " +
                                std::to_string(n));
        }
    for (int t = 0; t < 500; ++t) {
        const int n = 1 + static_cast<int>(rng() % 8);
        const gb::SignMatrix m = random_grid(rng, n);
        std::vector<std::int8_t> entries;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                entries.push_back(static_cast<std::int8_t>(m.at(i, j)));
        const gb::SignTensor bilinear(
            {static_cast<std::size_t>(n), static_cast<std::size_t>(n)}, entries);
        const long long inj =
            static_cast<long long>(gb::injective_inf_norm(bilinear) + 0.5);
        if (inj != gb::solve_g(gb::LightGrid(m)).value)
            throw gb::Error("bilinear injective norm disagrees with solver at n = " +
                            std::to_string(n));
    }
    return "3x3 exhaustive + 3000 random solver checks + 500 bilinear norm checks";
}

std::string criterion_tensor_bounds() {
    std::vector<std::pair<int, int>> shapes;
    for (int n = 1; n <= 8; ++n) shapes.emplace_back(3, n);
    for (int n = 1; n <= 4; ++n) shapes.emplace_back(4, n);
    for (const auto& [m, n] : shapes) {
        const long long k = gb::known_order_at_least(n);
        const gb::SignMatrix h = gb::construct_hadamard(k);
        const std::vector<gb::SignMatrix> hads(m - 1, h);
        const std::vector<std::size_t> dims(m, static_cast<std::size_t>(n));
        const gb::SignTensor t = gb::ksz_tensor(hads, dims);
        const double mixed = gb::mixed_norm(t);
        const double bound = gb::ksz_upper(m, n) *
                             std::pow(static_cast<double>(n), (m - 1) / 2.0);
        if (mixed > bound + 1e-6)
            throw gb::Error("mixed norm " + fmt("%.9f", mixed) + " above " +
                            fmt("%.9f", bound) + " at m = " + std::to_string(m) +
                            ", n = " + std::to_string(n));
        const double inj = gb::injective_inf_norm(t);
        if (inj > std::sqrt(static_cast<double>(n) * n) * mixed + 1e-6)
            throw gb::Error("injective norm above sqrt(n1 nm) * mixed at m = " +
                            std::to_string(m) + ", n = " + std::to_string(n));
    }
    for (long long m = 2; m <= 5; ++m)
        for (long long n = 1; n <= 30; ++n) {
            const double direct = gb::ksz_upper(m, n);
            const double ladder =
                std::pow(gb::c22_upper(n).value, static_cast<double>(m - 1));
            if (std::abs(direct - ladder) > 1e-12 * std::max(1.0, ladder))
                throw gb::Error("ksz_upper != ladder power at m = " +
                                std::to_string(m) + ", n = " + std::to_string(n));
        }
    return "mixed and injective norms within bounds for 12 tensor shapes";
}

std::string criterion_global_bound() {
    const auto start = std::chrono::steady_clock::now();
    const gb::BoundCertificate cert = gb::global_g_bound(10000);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    const double bound = 75.0 * std::sqrt(17.0) / 289.0;
    if (!cert.verified) throw gb::Error("certificate unverified");
    if (std::abs(cert.claim.bound_decimal - bound) > 1e-12)
        throw gb::Error("bound is not 75 sqrt(17)/289");
    if (cert.claim.bound_symbolic != "75*sqrt(17)/289")
        throw gb::Error("unexpected symbolic bound");
    // The maximum over the verified range is attained at n = 17 and nowhere else.
    for (int n = 1; n <= 20; ++n) {
        const long long g = gb::detail::g_upper_table[n];
        if (g == 0) continue;
        const double ratio = static_cast<double>(g) /
                             std::pow(static_cast<double>(n), 1.5);
        if (ratio > bound + 1e-12)
            throw gb::Error("table ratio exceeds bound at n = " + std::to_string(n));
        if (std::abs(ratio - bound) <= 1e-12 && n != 17)
            throw gb::Error("bound attained away from n = 17");
    }
    if (std::abs(75.0 / std::pow(17.0, 1.5) - bound) > 1e-12)
        throw gb::Error("maximizer value mismatch at n = 17");
    if (secs >= 5)
        throw gb::Error("took " + fmt("%.1f", secs) + "s, budget 5s");
    return "ratio <= 75*sqrt(17)/289 on 1..10^4, attained only at n = 17 (" +
           fmt("%.1f", secs) + "s)";
}

std::string criterion_reference_consistency() {
    const gb::ReferenceTables& t = gb::reference_tables();
    const long long want[] = {16, 22, 27, 35, 43, 54};
    for (int n = 7; n <= 12; ++n) {
        const gb::TableCell& c1 = t.table1[n - 1].carlson_stolarski;
        const gb::TableCell& c3 = t.table3[n - 1].r;
        if (c1.tag != gb::CellTag::exact || c1.value != want[n - 7])
            throw gb::Error("stored R_" + std::to_string(n) + " drifted");
        if (c3.tag != gb::CellTag::exact || c3.value != want[n - 7])
            throw gb::Error("stored tables disagree at n = " + std::to_string(n));
    }
    for (const gb::Table3Row& row : t.table3) {
        if (row.r.tag == gb::CellTag::missing || row.g.tag == gb::CellTag::missing)
            continue;
        if (2 * row.r.value + row.g.value !=
            static_cast<long long>(row.n) * row.n)
            throw gb::Error("R_n = (n^2 - G_n)/2 fails at n = " +
                            std::to_string(row.n));
    }
    // Full library-level sweep (recomputation capped to keep this criterion
    // cheap; the expensive recomputation is criteria 1 and 2).
    setenv("GB_MAX_BITS", "16", 1);
    const gb::ReferenceTables fresh = gb::reproduce_tables(g_jobs);
    unsetenv("GB_MAX_BITS");
    if (fresh.recomputed_max_n < 5)
        throw gb::Error("reproduction sweep recomputed fewer sizes than expected");
    return "stored values for n = 7..12 intact; conservation identity holds";
}

}  // namespace

int main() {
    if (const char* env = std::getenv("GALEB_JOBS")) {
        const int v = std::atoi(env);
        if (v >= 1) g_jobs = v;
    }

    struct Criterion {
        const char* name;
        std::function<std::string()> body;
    };
    const std::vector<Criterion> criteria = {
        {"exact hardest-grid minima", criterion_exact_minima},
        {"exact imbalance values", criterion_exact_imbalance},
        {"certified lower bounds", criterion_lower_bounds},
        {"bilinear ladder and covering", criterion_ladder_and_covering},
        {"hadamard integrity", criterion_hadamard_integrity},
        {"oracle equivalence", criterion_oracle_equivalence},
        {"tensor norm bounds", criterion_tensor_bounds},
        {"global imbalance bound", criterion_global_bound},
        {"reference table consistency", criterion_reference_consistency},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        std::string verdict, detail;
        try {
            detail = criteria[i].body();
            verdict = "PASS";
        } catch (const std::exception& e) {
            detail = e.what();
            verdict = "FAIL";
            ++failures;
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
        std::printf("%s  %zu/%zu %-29s %s  [%.1fs]\n", verdict.c_str(), i + 1,
                    criteria.size(), criteria[i].name, detail.c_str(), secs);
        std::fflush(stdout);
    }
    if (failures == 0)
        std::printf("all %zu criteria passed\n", criteria.size());
    else
        std::printf("%d of %zu criteria FAILED\n", failures, criteria.size());
    return failures;
}
