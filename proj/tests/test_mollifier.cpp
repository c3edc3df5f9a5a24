#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <numeric>

#include "ffq/arith.hpp"
#include "ffq/charsym.hpp"
#include "ffq/factor.hpp"
#include "ffq/moments.hpp"
#include "ffq/mollifier.hpp"
#include "support.hpp"

using namespace ffq;
using ffq::testing::all_monic;

namespace {

// Straight from the definition: enumerate every monic Q of degree <= top and
// keep the irreducible ones whose norm lies in the window.
double brute_segment(const Polynomial& D, double lo_norm, double hi_norm, std::uint32_t q, int top) {
    double s = 0;
    for (int d = 1; d <= top; ++d) {
        const double n = std::pow(static_cast<double>(q), d);
        if (!(n > lo_norm * (1 + 1e-12) && n <= hi_norm * (1 + 1e-12))) continue;
        for (const auto& Q : all_monic(q, d)) {
            if (ffq::testing::brute_irreducible(Q)) s += residue_symbol_euler(D, Q) / std::sqrt(n);
        }
    }
    return s;
}

double naive_exp(int order, double x) {
    double s = 0;
    for (int j = 0; j <= order; ++j) s += std::pow(x, j) / std::tgamma(j + 1.0);
    return s;
}

MollifierSchedule desk51() { return schedule_desk(5, 1, {0.1, 0.34, 0.67, 1.0}); }

}  // namespace

TEST_CASE("paper schedule examples") {
    CHECK_THROWS_AS(schedule_paper(5, 2, 3), DegenerateSchedule);
    const auto s = schedule_paper(std::exp(100.0), 1);
    CHECK(s.J == 4);
    CHECK(s.alphas.size() == 5);
    CHECK(s.alphas[1] == doctest::Approx(1e-4));
    CHECK(s.alphas[4] == doctest::Approx(8000.0 / 1e4));
    CHECK(s.alphas[0] == doctest::Approx(std::log(2.0) / std::exp(100.0)));
    CHECK_THROWS_AS(schedule_paper(2.0, 1), std::domain_error);
    CHECK_THROWS_AS(schedule_paper(std::exp(1000.0), 1), std::domain_error);
    // the length budget is only asymptotic: it fails at log log X = 100, M = 1
    const auto b = schedule_budget(s);
    CHECK(b.sum == doctest::Approx(506.855).epsilon(1e-5));
    CHECK_FALSE(b.within);
    CHECK(schedule_budget(schedule_paper(std::exp(100.0), 2)).within);
}

TEST_CASE("paper schedules respect the Dirichlet length budget") {
    for (double ll : {20.0, 50.0, 100.0, 300.0}) {
        for (int M : {1, 2, 3}) {
            MollifierSchedule s;
            try {
                s = schedule_paper(std::exp(ll), M);
            } catch (const DegenerateSchedule&) {
                continue;
            }
            s.q = 5;  // ties log_q X to a field for the degree count only
            for (std::size_t j = 1; j < s.alphas.size(); ++j) CHECK(s.alphas[j] > s.alphas[j - 1]);
            const auto d = dirichlet_length(s);
            CHECK(d.degrees <= d.budget * (1 + 1e-12));
            const auto b = schedule_budget(s);
            CHECK(b.sum > 0);
        }
    }
}

TEST_CASE("desk schedule validation") {
    const auto s = schedule_desk(5, 2, {0.05, 0.1, 0.2});
    CHECK(s.J == 2);
    CHECK(s.mode == ScheduleMode::desk);
    CHECK_THROWS_AS(schedule_desk(5, 2, {0.1, 0.1}), std::domain_error);
    CHECK_THROWS_AS(schedule_desk(5, 2, {0.2, 0.1}), std::domain_error);
    CHECK_THROWS_AS(schedule_desk(5, 2, {-0.1, 0.1}), std::domain_error);
    CHECK_THROWS_AS(schedule_desk(5, 2, {}), std::domain_error);
    CHECK_THROWS_AS(schedule_desk(5, 2, {0.1, 0.2}, 63), std::domain_error);
}

TEST_CASE("truncation order and the cap") {
    const auto s = schedule_desk(5, 1, {0.1, 0.5}, 64);
    // y = e^5 0.5^{-3/4} ~ 249.6, so the full order is 500
    CHECK(s.order(1) == 64);
    CHECK(s.capped());
    const auto wide = schedule_desk(5, 1, {0.1, 0.5}, 1000);
    CHECK(wide.order(1) == 2 * static_cast<int>(std::ceil(wide.y(1))));
    CHECK_FALSE(wide.capped());
}

TEST_CASE("schedule files round-trip") {
    const auto dir = std::filesystem::temp_directory_path() / "ffq_sched_test";
    std::filesystem::create_directories(dir);
    const auto s = schedule_desk(5, 1, {0.1, 0.34, 0.67, 1.0}, 32, 2);
    save_schedule(s, dir / "s.json");
    const auto t = load_schedule(dir / "s.json");
    CHECK(t.q == 5);
    CHECK(t.g == 1);
    CHECK(t.M == 2);
    CHECK(t.cap == 32);
    CHECK(t.alphas == s.alphas);
    CHECK(t.J == 3);
    CHECK_THROWS_AS(schedule_from_json("{\"q\": 5}"), std::invalid_argument);
    CHECK_THROWS_AS(schedule_from_json("not json"), std::invalid_argument);
    CHECK_THROWS_AS(schedule_from_json(R"({"q":5,"g":1,"M":3,"mode":"paper","alphas":[]})"), DegenerateSchedule);
    CHECK_THROWS_AS(load_schedule(dir / "missing.json"), std::invalid_argument);
    std::filesystem::remove_all(dir);
}

TEST_CASE("truncated exponential examples") {
    CHECK(truncated_exp(0.3, 0.0) == 1.0);
    CHECK(truncated_exp(1.0, 1.0) == doctest::Approx(2.5));
    CHECK(truncated_exp(1.0, -3.0) == doctest::Approx(2.5));
    CHECK(truncated_exp(0.0, 5.0) == 1.0);
    CHECK_THROWS_AS(truncated_exp(-1.0, 1.0), std::domain_error);
}

TEST_CASE("truncated exponential matches the naive sum") {
    for (int order : {0, 2, 4, 8, 16}) {
        for (double x = -6.0; x <= 6.0; x += 0.75) {
            CHECK(truncated_exp_order(order, x) == doctest::Approx(naive_exp(order, x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("truncated exponential survives cancellation") {
    // E_64(-15) ~ e^{-15}; a plain long double sum loses about 8 digits here
    const double want = std::exp(-15.0);
    CHECK(truncated_exp_order(64, -15.0) == doctest::Approx(want).epsilon(1e-14));
    CHECK(truncated_exp_order(200, -40.0) == doctest::Approx(std::exp(-40.0)).epsilon(1e-14));
    CHECK(truncated_exp_order(2, -50.0) == doctest::Approx(1 - 50 + 1250.0));
    CHECK_THROWS_AS(truncated_exp_order(-1, 1.0), std::domain_error);
}

TEST_CASE("truncated exponential is positive and E(x)E(-x) >= 1") {
    for (double y : {0.0, 1.0, 2.7, 10.0}) {
        for (double x = -50.0; x <= 50.0; x += 0.5) {
            const double a = truncated_exp(y, x);
            const double b = truncated_exp(y, -x);
            // the order-64 case from the schedule as well
            CHECK(truncated_exp_order(64, x) * truncated_exp_order(64, -x) >= 1.0 - 4 * std::numeric_limits<double>::epsilon());
            CHECK(a > 0.0);
            CHECK(a * b >= 1.0 - 4 * std::numeric_limits<double>::epsilon());
        }
    }
}

TEST_CASE("prime segment over the linear primes") {
    const auto s = schedule_desk(5, 1, {0.1, 0.34});
    CHECK(s.degree_window(1) == std::pair{0, 1});
    const Polynomial D(5, {0, 1, 0, 1});
    CHECK(prime_segment(D, 1, s) == doctest::Approx(-2.0 / std::sqrt(5.0)));
    CHECK_THROWS_AS(prime_segment(D, 2, s), std::domain_error);
    CHECK_THROWS_AS(prime_segment(D, 0, s), std::domain_error);
}

TEST_CASE("empty window gives zero") {
    // 3 * 0.1 and 3 * 0.2 both floor to 0
    const auto s = schedule_desk(5, 1, {0.1, 0.2, 0.5});
    const Polynomial D(5, {0, 1, 0, 1});
    CHECK(prime_segment(D, 1, s) == 0.0);
    CHECK(segment_m(D, 1, 2, s) == 0.0);
}

TEST_CASE("prime segments agree with brute force") {
    const auto s = schedule_desk(5, 2, {0.1, 0.25, 0.45, 0.7});
    const double L = s.log_q_X();
    ffq::testing::Rng rng(31);
    for (int t = 0; t < 15; ++t) {
        const auto D = ffq::testing::random_monic(rng, 5, 5);
        const auto seg = prime_segments(D, s);
        for (int j = 1; j <= s.J; ++j) {
            const double lo = std::pow(5.0, s.alphas[static_cast<std::size_t>(j - 1)] * L);
            const double hi = std::pow(5.0, s.alphas[static_cast<std::size_t>(j)] * L);
            CHECK(seg[static_cast<std::size_t>(j - 1)] == doctest::Approx(brute_segment(D, lo, hi, 5, 4)).epsilon(1e-12));
        }
    }
}

TEST_CASE("all-residue D reaches the upper envelope") {
    // chi_D(T - a) = 1 for every a when each D(a) is a nonzero square
    const auto s = schedule_desk(5, 1, {0.1, 0.34});
    for (const auto& D : all_monic(5, 3)) {
        bool all_one = true;
        for (std::uint32_t a = 0; a < 5; ++a) all_one = all_one && residue_symbol_euler(D, Polynomial(5, {-static_cast<std::int64_t>(a), 1})) == 1;
        if (!all_one) continue;
        CHECK(prime_segment(D, 1, s) == doctest::Approx(5.0 / std::sqrt(5.0)));
    }
}

TEST_CASE("mollifier value examples") {
    const Polynomial D(5, {0, 1, 0, 1});
    CHECK(mollifier_value(D, 0.7, schedule_desk(5, 1, {0.2})) == 1.0);
    CHECK(mollifier_value(D, 0.0, desk51()) == doctest::Approx(1.0));
    const auto s = desk51();
    const auto seg = prime_segments(D, s);
    double prod = 1;
    for (int j = 1; j <= s.J; ++j) prod *= naive_exp(s.order(j), 0.5 * seg[static_cast<std::size_t>(j - 1)]);
    CHECK(mollifier_value(D, 0.5, s) == doctest::Approx(prod).epsilon(1e-10));
}

TEST_CASE("M(D, a) M(D, -a) >= 1 across the H family at (5,1)") {
    const auto s = desk51();
    for (const auto& D : enumerate_family(FamilySpec::from_genus(FamilyKind::H, 5, 1))) {
        for (double a : {0.5, 1.0, 2.0}) {
            const double m = mollifier_value(D, a, s);
            CHECK(m > 0.0);
            CHECK(m * mollifier_value(D, -a, s) >= 1.0 - 4 * std::numeric_limits<double>::epsilon());
        }
    }
}

TEST_CASE("segment_m weights and the triangle bound") {
    const auto s = desk51();
    ffq::testing::Rng rng(2);
    for (int t = 0; t < 20; ++t) {
        const auto D = ffq::testing::random_monic(rng, 5, 3);
        for (int i = 1; i <= s.J; ++i) {
            const auto [lo, hi] = s.degree_window(i);
            double envelope = 0;
            for (int d = lo + 1; d <= hi; ++d) envelope += prime_count(5, d) * std::pow(5.0, -0.5 * d);
            for (int j = i; j <= s.J; ++j) {
                const double m = segment_m(D, i, j, s);
                CHECK(std::abs(m) <= envelope + 1e-12);
                // oracle from the printed weight |Q|^{-1/2 - 1/(a_j log X)} log(X^{a_j}/|Q|) / log X^{a_j}
                double direct = 0;
                const double logXa = s.alphas[static_cast<std::size_t>(j)] * s.log_X;
                for (int d = lo + 1; d <= hi; ++d) {
                    const double logQ = d * std::log(5.0);
                    for (const auto& Q : all_monic(5, d)) {
                        if (!ffq::testing::brute_irreducible(Q)) continue;
                        direct += residue_symbol_euler(D, Q) * std::exp(-logQ * (0.5 + 1.0 / logXa)) * (logXa - logQ) / logXa;
                    }
                }
                CHECK(m == doctest::Approx(direct).epsilon(1e-10));
            }
        }
    }
    CHECK_THROWS_AS(segment_m(Polynomial(5, {0, 1}), 2, 1, s), std::domain_error);
}

TEST_CASE("classify examples") {
    const auto s = desk51();
    ffq::testing::Rng rng(5);
    for (int t = 0; t < 30; ++t) {
        const auto D = ffq::testing::random_monic(rng, 5, 3);
        const int j = classify(D, s);
        CHECK(j >= 0);
        CHECK(j <= s.J);
        // oracle: walk the definition
        int expect = s.J;
        for (int i = 1; i <= s.J && expect == s.J; ++i) {
            for (int l = i; l <= s.J; ++l) {
                if (std::abs(segment_m(D, i, l, s)) > std::pow(s.alphas[static_cast<std::size_t>(i)], -0.75)) {
                    expect = i - 1;
                    break;
                }
            }
        }
        CHECK(j == expect);
    }
    // all segment sums vanish on an empty window
    CHECK(classify(Polynomial(5, {0, 1, 0, 1}), schedule_desk(5, 1, {0.01, 0.2})) == 1);
}

TEST_CASE("classify returns 0 on an immediate violation and J on silence") {
    // alpha_1 = 1 puts the threshold at 1
    const auto s = schedule_desk(5, 1, {0.1, 1.0});
    int zeros = 0;
    for (const auto& D : enumerate_family(FamilySpec::from_genus(FamilyKind::H, 5, 1))) {
        const double limit = 1.0;  // 1.0^{-3/4}
        const double m = std::abs(segment_m(D, 1, 1, s));
        CHECK(classify(D, s) == (m > limit ? 0 : 1));
        zeros += m > limit;
    }
    CHECK(zeros > 0);
}

TEST_CASE("classify partitions the H family at (5,1)") {
    const auto s = desk51();
    const auto H = enumerate_family(FamilySpec::from_genus(FamilyKind::H, 5, 1));
    std::vector<int> counts(static_cast<std::size_t>(s.J) + 1, 0);
    for (const auto& D : H) ++counts.at(static_cast<std::size_t>(classify(D, s)));
    CHECK(std::accumulate(counts.begin(), counts.end(), 0) == static_cast<int>(H.size()));
}

TEST_CASE("Hoelder with an empty mollifier is the plain inequality") {
    const auto fv = family_values(FamilySpec::from_genus(FamilyKind::H, 5, 1));
    const auto vals = fv.central_floats();
    const auto s = schedule_desk(5, 1, {0.2});
    const auto r = holder_check(fv.members, vals, 1.5, std::nullopt, s);
    double sum = 0;
    double pw = 0;
    for (double v : vals) {
        sum += v;
        pw += std::pow(v, 1.5);
    }
    CHECK(r.lhs == doctest::Approx(sum));
    CHECK(r.rhs == doctest::Approx(std::pow(pw, 1 / 1.5) * std::pow(static_cast<double>(vals.size()), 1 - 1 / 1.5)));
    CHECK(r.holds);
}

TEST_CASE("Hoelder chains hold on both families at (5,1)") {
    const auto s = desk51();
    for (const auto kind : {FamilyKind::H, FamilyKind::P}) {
        const auto fv = family_values(FamilySpec::from_genus(kind, 5, 1));
        const auto vals = fv.central_floats();
        const auto big = holder_check(fv.members, vals, 1.5, std::nullopt, s);
        CHECK(big.holds);
        CHECK(big.slack > 0);
        const auto small = holder_check(fv.members, vals, 0.6, 0.3, s);
        CHECK(small.small_k);
        CHECK(small.holds);
        CHECK(small.exponents.size() == 3);
        // M(D, a) M(D, -a) >= 1 makes the re-weighted sum dominate
        CHECK(small.middle >= small.lhs * (1 - 1e-12));
    }
}

TEST_CASE("Hoelder exponents: printed and general forms agree on the matching c") {
    const auto s = desk51();
    const auto fv = family_values(FamilySpec::from_genus(FamilyKind::H, 5, 1));
    const double k = 0.3;
    const double c = k / (2 - 3 * k);
    const auto r = holder_check(fv.members, fv.central_floats(), 2 * k, c, s);
    CHECK(r.rhs_printed == doctest::Approx(r.rhs).epsilon(1e-9));
}

TEST_CASE("Hoelder argument errors") {
    const auto s = desk51();
    const auto fv = family_values(FamilySpec::from_genus(FamilyKind::H, 5, 1));
    const auto v = fv.central_floats();
    CHECK_THROWS_AS(holder_check(fv.members, v, 1.5, 0.3, s), std::domain_error);
    CHECK_THROWS_AS(holder_check(fv.members, v, 0.6, std::nullopt, s), std::domain_error);
    CHECK_THROWS_AS(holder_check(fv.members, v, 0.6, 0.7, s), std::domain_error);
    CHECK_THROWS_AS(holder_check(fv.members, v, 1.0, std::nullopt, s), std::domain_error);
    CHECK_THROWS_AS(holder_check(fv.members, v, -1.0, std::nullopt, s), std::domain_error);
    // exponent condition: (1+c)/2 - c/(2k) must be in (0, 1]
    CHECK_THROWS_AS(holder_check(fv.members, v, 0.2, 0.19, s), std::domain_error);
}
