#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "ffq/arith.hpp"
#include "ffq/charsym.hpp"
#include "ffq/factor.hpp"
#include "ffq/family.hpp"
#include "ffq/field.hpp"
#include "ffq/kernels.hpp"
#include "ffq/lfunc.hpp"
#include "ffq/monic_table.hpp"
#include "support.hpp"

using namespace ffq;
using cd = std::complex<double>;

namespace {

const Polynomial D0(5, {0, 1, 0, 1});  // T^3 + T

// a_n by summing chi_eval over the explicit list of M_n.
std::int64_t brute_coefficient(const Polynomial& D, int n) {
    std::int64_t s = 0;
    for (const auto& f : ffq::testing::all_monic(D.field_order(), n)) s += chi_eval(D, f);
    return s;
}

}  // namespace

TEST_CASE("L-polynomial of T^3+T over F_5") {
    const auto L = l_coefficients(D0);
    REQUIRE(L.coefficients.size() == 3);
    CHECK(L.coefficients[0] == 1);
    CHECK(L.coefficients[1] == -2);
    CHECK(L.coefficients[2] == 5);
    CHECK(L.genus == 1);
    CHECK(L.degree() == 2);
}

TEST_CASE("strict mode rejects non-square-free moduli") {
    const Polynomial sq(5, {0, 0, 1, 1});  // T^2 (T+1)
    CHECK_THROWS_AS(l_coefficients(sq), std::domain_error);
    const auto L = l_coefficients(sq, LStrictness::general);
    CHECK_FALSE(L.primitive);
    CHECK_FALSE(L.genus);
    CHECK(L.coefficients.size() == 3);
    CHECK(L.coefficients[0] == 1);
}

TEST_CASE("coefficients match the explicit character sum") {
    ffq::testing::Rng rng(1);
    for (int t = 0; t < 20; ++t) {
        const auto D = ffq::testing::random_monic(rng, 5, 5);
        if (!is_squarefree(D)) continue;
        const auto L = l_coefficients(D);
        for (int n = 0; n <= 4; ++n) CHECK(L.coefficients[static_cast<std::size_t>(n)] == brute_coefficient(D, n));
    }
}

TEST_CASE("a_1 is the pointwise character sum") {
    for (std::uint32_t q : {5u, 13u}) {
        PrimeField F(q);
        ffq::testing::Rng rng(q);
        for (int t = 0; t < 30; ++t) {
            const auto D = ffq::testing::random_monic(rng, q, 3 + 2 * static_cast<int>(rng() % 2));
            if (!is_squarefree(D)) continue;
            std::int64_t s = 0;
            for (Coeff a = 0; a < q; ++a) s += F.quad_char(D.evaluate(a));
            CHECK(l_coefficients_reflected(D).coefficients[1] == s);
        }
    }
}

TEST_CASE("reflection holds across the H family") {
    for (auto [q, g] : {std::pair{5u, 1}, std::pair{5u, 2}, std::pair{13u, 1}}) {
        const auto H = enumerate_family(FamilySpec::from_genus(FamilyKind::H, q, g));
        const auto Ls = omp::l_polynomials(H, LMode::full);
        for (const auto& L : Ls) {
            REQUIRE(L.coefficients.size() == static_cast<std::size_t>(2 * g + 1));
            CHECK(L.coefficients[0] == 1);
            for (int n = 0; n <= g; ++n) {
                const auto qpow = static_cast<std::int64_t>(ipow(q, static_cast<unsigned>(g - n)));
                CHECK(L.coefficients[static_cast<std::size_t>(2 * g - n)] == qpow * L.coefficients[static_cast<std::size_t>(n)]);
                CHECK(std::abs(L.coefficients[static_cast<std::size_t>(n)]) <= static_cast<std::int64_t>(ipow(q, n)));
            }
        }
    }
}

TEST_CASE("transposed sweep equals per-modulus summation") {
    const auto H = enumerate_family(FamilySpec::from_genus(FamilyKind::H, 5, 2));
    std::vector<Polynomial> sample;
    for (std::size_t i = 0; i < H.size(); i += 41) sample.push_back(H[i]);
    sample.push_back(Polynomial(5, {0, 0, 1, 1}));  // non-square-free, even degree
    const auto ref = serial::l_polynomials(sample);
    set_worker_count(3);
    const auto fast = omp::l_polynomials(sample);
    set_worker_count(0);
    REQUIRE(ref.size() == fast.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
        CHECK(ref[i].coefficients == fast[i].coefficients);
        CHECK(ref[i].genus == fast[i].genus);
        CHECK(ref[i].primitive == fast[i].primitive);
    }
    std::vector<Polynomial> sf(sample.begin(), sample.end() - 1);
    const auto r1 = serial::l_polynomials(sf, LMode::reflected);
    const auto r2 = omp::l_polynomials(sf, LMode::reflected);
    for (std::size_t i = 0; i < sf.size(); ++i) {
        CHECK(r1[i].coefficients == ref[i].coefficients);
        CHECK(r2[i].coefficients == ref[i].coefficients);
    }
}

TEST_CASE("central value of T^3+T") {
    const auto cv = central_value(l_coefficients(D0));
    CHECK(cv.A == 10);
    CHECK(cv.B == -2);
    CHECK(cv.genus == 1);
    CHECK(cv.value == doctest::Approx(2.0 - 2.0 / std::sqrt(5.0)).epsilon(1e-15));
    CHECK(cv.exact_sign() == 1);
    CHECK(l_eval(l_coefficients(D0), 1.0 / std::sqrt(5.0)).real() == doctest::Approx(cv.value).epsilon(1e-12));
}

TEST_CASE("central value of a constant L-polynomial") {
    LPolynomial L{Polynomial(5, {0, 1, 0, 0, 0, 1}), {1, 0, 0, 0, 0}, 2, true};
    const auto cv = central_value(L);
    CHECK(cv.A == 25);
    CHECK(cv.B == 0);
    CHECK(cv.value == 1.0);
}

TEST_CASE("exact sign logic") {
    CentralValue cv;
    cv.q = 5;
    auto sign = [&](std::int64_t A, std::int64_t B) {
        cv.A = A;
        cv.B = B;
        return cv.exact_sign();
    };
    CHECK(sign(0, 0) == 0);
    CHECK(sign(3, 0) == 1);
    CHECK(sign(0, -1) == -1);
    CHECK(sign(10, -2) == 1);   // 100 > 20
    CHECK(sign(4, -2) == -1);   // 16 < 20
    CHECK(sign(-4, 2) == 1);
    CHECK(sign(-10, 2) == -1);
    ffq::testing::Rng rng(6);
    for (int t = 0; t < 2000; ++t) {
        const std::int64_t A = static_cast<std::int64_t>(rng() % 2001) - 1000;
        const std::int64_t B = static_cast<std::int64_t>(rng() % 2001) - 1000;
        const long double v = A + B * std::sqrt(5.0L);
        if (std::abs(v) > 1e-9L) CHECK(sign(A, B) == (v > 0 ? 1 : -1));
    }
}

TEST_CASE("central values are nonnegative on the H family") {
    for (auto [q, g] : {std::pair{5u, 1}, std::pair{5u, 2}, std::pair{13u, 1}}) {
        const auto H = enumerate_family(FamilySpec::from_genus(FamilyKind::H, q, g));
        for (const auto& L : omp::l_polynomials(H, LMode::reflected)) {
            const auto cv = central_value(L);
            CHECK(cv.exact_sign() >= 0);
            CHECK(cv.value >= -1e-12);
        }
    }
}

TEST_CASE("l_eval basics") {
    const auto L = l_coefficients(D0);
    CHECK(l_eval(L, 0.0) == cd(1.0));
    CHECK(l_eval(L, 1.0) == cd(4.0));
    const cd u(0.3, -0.7);
    CHECK(std::abs(l_eval(L, u) - (1.0 - 2.0 * u + 5.0 * u * u)) < 1e-14);
}

TEST_CASE("approximate functional equation examples") {
    const auto r = afe_eval(D0, 1.0, 1);
    CHECK(r.lhs.real() == doctest::Approx(2.0 - 2.0 / std::sqrt(5.0)).epsilon(1e-12));
    CHECK(r.rhs.real() == doctest::Approx(2.0 - 2.0 / std::sqrt(5.0)).epsilon(1e-12));
    CHECK_THROWS_AS(afe_eval(D0, 1.0, 0), std::domain_error);
    CHECK_THROWS_AS(afe_eval(D0, 0.5, 1), std::domain_error);
}

TEST_CASE("approximate functional equation on roots of unity") {
    ffq::testing::Rng rng(77);
    const auto H = enumerate_family(FamilySpec::from_genus(FamilyKind::H, 5, 2));
    const MonicTable table(5, 6);
    for (int t = 0; t < 20; ++t) {
        const auto& D = H[rng() % H.size()];
        for (int k = 1; k <= 3; ++k) {
            for (int j = 0; j < 8; ++j) {
                const cd u = std::polar(1.0, 2.0 * std::numbers::pi * j / 8.0);
                const auto r = afe_eval(D, u, k, table);
                CHECK(std::abs(r.lhs - r.rhs) <= 1e-9 * (1.0 + std::abs(r.lhs)));
            }
        }
    }
}

TEST_CASE("zeros of T^3+T") {
    const auto L = l_coefficients(D0);
    const auto zs = zeros(L);
    REQUIRE(zs.size() == 2);
    cd prod = 1.0;
    for (const auto& z : zs) {
        CHECK(z.rh_residual < 1e-8);
        CHECK(z.backward_error <= 1e-10);
        prod *= z.root;
    }
    // Vieta: product of roots = a_0 / a_2
    CHECK(std::abs(prod - cd(1.0 / 5.0)) < 1e-12);

    LPolynomial c{D0, {1}, std::nullopt, true};
    CHECK(zeros(c).empty());
}

TEST_CASE("zeros handle repeated roots") {
    // (1 - 2u + 5u^2)^2 has double roots
    LPolynomial L{Polynomial(5, {0, 1, 0, 0, 0, 1}), {1, -4, 14, -20, 25}, 2, true};
    const auto zs = zeros(L);
    REQUIRE(zs.size() == 2);
    for (const auto& z : zs) {
        CHECK(z.multiplicity == 2);
        CHECK(z.rh_residual < 1e-12);
    }
}

TEST_CASE("Riemann hypothesis across the H family") {
    for (auto [q, g] : {std::pair{5u, 1}, std::pair{5u, 2}}) {
        const auto H = enumerate_family(FamilySpec::from_genus(FamilyKind::H, q, g));
        double worst = 0;
        for (const auto& L : omp::l_polynomials(H, LMode::reflected)) {
            int count = 0;
            cd prod = 1.0;
            for (const auto& z : zeros(L)) {
                worst = std::max(worst, z.rh_residual);
                for (int m = 0; m < z.multiplicity; ++m) prod *= z.root;
                count += z.multiplicity;
            }
            CHECK(count == 2 * g);
            CHECK(std::abs(prod - cd(1.0 / std::pow(static_cast<double>(q), g))) < 1e-9);
        }
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("log upper bound structure") {
    const auto H = enumerate_family(FamilySpec::from_genus(FamilyKind::H, 5, 1));
    CHECK_THROWS_AS(log_l_upper_bound(H[0], 0), std::domain_error);
    CHECK_THROWS_AS(log_l_upper_bound(H[0], 3), std::domain_error);
    CHECK_THROWS_AS(log_l_upper_bound_general(H[0], 1, cd(-0.1, 0)), std::domain_error);

    // h = 1: no prime term survives, only the explicit tail
    const double tail = 0.5 * std::log(std::log(5.0)) + 3.0;
    CHECK(log_l_upper_bound(H[0], 1) == doctest::Approx(tail));

    // h = 2 at g = 1: linears only; chi = -1 on all of them is the minimum
    const double w = std::exp(-0.5 * std::log(5.0) - 0.5) * 0.5;
    const double base = 0.5 * std::log(2.0 * std::log(5.0)) + 1.5;
    double lo = 1e9;
    for (const auto& D : H) {
        int s = 0;
        for (Coeff a = 0; a < 5; ++a) s += residue_symbol(D, Polynomial(5, {static_cast<std::int64_t>(a), 1}));
        const double b = log_l_upper_bound(D, 2);
        CHECK(b == doctest::Approx(base + w * s));
        lo = std::min(lo, b);
    }
    CHECK(lo >= base - 5 * w - 1e-12);
}

TEST_CASE("log upper bound at g = 2 sums over 5 linears and 10 quadratics") {
    const auto H = enumerate_family(FamilySpec::from_genus(FamilyKind::H, 5, 2));
    const auto& D = H[17];
    double direct = 0;
    const double lq = std::log(5.0);
    for (int d = 1; d <= 2; ++d) {
        const auto P = enumerate_family({FamilyKind::P, 5, d});
        CHECK(P.size() == (d == 1 ? 5u : 10u));
        for (const auto& p : P) {
            direct += residue_symbol(D, p) * std::pow(5.0, -d * (0.5 + 1.0 / (2.0 * lq))) * (2.0 - d) / 2.0;
        }
    }
    CHECK(log_l_upper_bound(D, 2) == doctest::Approx(direct + 0.5 * std::log(2 * lq) + 2.5));
}

TEST_CASE("deficit of the log bound has a finite minimum on the H family") {
    const auto H = enumerate_family(FamilySpec::from_genus(FamilyKind::H, 5, 1));
    double c0 = INFINITY;
    for (const auto& D : H) {
        const auto cv = central_value(l_coefficients(D));
        if (cv.exact_sign() == 0) continue;
        c0 = std::min(c0, log_l_upper_bound(D, 2) - std::log(cv.value));
    }
    MESSAGE("deficit lower bound c0 = " << c0);
    CHECK(std::isfinite(c0));
}

TEST_CASE("general log bound dominates log|L(1/2+z)|") {
    const double lq = std::log(5.0);
    for (int g : {1, 2}) {
        const auto H = enumerate_family(FamilySpec::from_genus(FamilyKind::H, 5, g));
        for (std::size_t i = 0; i < H.size(); i += (g == 1 ? 1 : 13)) {
            const auto L = l_coefficients(H[i]);
            for (int h = 1; h <= 2 * g; ++h) {
                for (cd z : {cd(0, 0), cd(0.1, 0.3), cd(0.5, -1.0), cd(0, 2.0)}) {
                    const double logL = std::log(std::abs(l_eval(L, std::exp(-(0.5 + z) * lq))));
                    CHECK(logL <= log_l_upper_bound_general(H[i], h, z) + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("Perron formula") {
    auto ones = perron_check([](std::size_t) { return 1.0; }, 3, 0.5);
    CHECK(ones.direct == 4.0);
    CHECK(std::abs(ones.contour - 4.0) <= 1e-8 * 5.0);

    auto geo = perron_check([](std::size_t n) { return std::pow(2.0, static_cast<double>(n)); }, 2, 0.25);
    CHECK(geo.direct == 7.0);
    CHECK(std::abs(geo.contour - 7.0) <= 1e-8 * 8.0);

    auto exp = perron_check([](std::size_t n) { return 1.0 / std::tgamma(static_cast<double>(n) + 1.0); }, 5, 0.5);
    CHECK(std::abs(exp.contour - exp.direct) <= 1e-8 * (1.0 + std::abs(exp.direct)));

    CHECK_THROWS_AS(perron_check([](std::size_t n) { return std::pow(3.0, static_cast<double>(n)); }, 2, 0.5),
                    std::domain_error);
    CHECK_THROWS_AS(perron_check([](std::size_t) { return 1.0; }, 2, 1.0), std::domain_error);
}
