#include "ffq/zeta_oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "ffq/factor.hpp"
#include "ffq/family.hpp"

namespace ffq {

namespace {

int checked_genus(const Polynomial& D) {
    if (D.is_zero() || !D.is_monic() || D.degree() < 1) throw std::domain_error("point counts need a monic modulus");
    if (D.degree() % 2 == 0) throw std::domain_error("point counts need an odd-degree modulus");
    if (!is_squarefree(D)) throw std::domain_error("point counts need a square-free modulus: " + D.to_text());
    return (D.degree() - 1) / 2;
}

}  // namespace

std::int64_t point_count(const Polynomial& D, const ExtensionField& F) {
    if (D.field_order() != F.base_prime()) throw std::invalid_argument("point_count: field mismatch");
    const auto size = static_cast<std::int64_t>(F.cardinality());
    std::int64_t affine = 0;
#pragma omp parallel for reduction(+ : affine) schedule(static)
    for (std::int64_t k = 0; k < size; ++k) {
        const auto x = F.element(static_cast<std::uint64_t>(k));
        affine += 1 + F.quad_char(F.evaluate(D, x));
    }
    return affine + 1;
}

PointCounts point_counts(const Polynomial& D, int i_max) {
    const int g = checked_genus(D);
    if (i_max < 0) i_max = g;
    PointCounts pc{D, g, {}};
    for (int i = 1; i <= i_max; ++i) pc.counts.push_back(point_count(D, build_extension(D.field_order(), i)));
    return pc;
}

LPolynomial zeta_numerator(const PointCounts& pc) {
    const int g = pc.genus;
    const std::uint32_t q = pc.modulus.field_order();
    if (static_cast<int>(pc.counts.size()) < g) throw std::invalid_argument("zeta_numerator: need N_1..N_g");
    const auto fail = [&](const std::string& why) {
        return std::logic_error("zeta numerator for " + pc.modulus.to_text() + ": " + why);
    };

    std::vector<__int128> s(static_cast<std::size_t>(g) + 1, 0);
    for (int i = 1; i <= g; ++i) {
        const __int128 qi = ipow(q, static_cast<unsigned>(i));
        const __int128 t = qi + 1 - pc.counts[static_cast<std::size_t>(i - 1)];
        if (t * t > static_cast<__int128>(4) * g * g * qi) throw fail("N_" + std::to_string(i) + " violates Hasse-Weil");
        s[static_cast<std::size_t>(i)] = t;
    }

    LPolynomial L{pc.modulus, std::vector<std::int64_t>(static_cast<std::size_t>(2 * g) + 1, 0), g, true};
    std::vector<__int128> a(static_cast<std::size_t>(g) + 1, 0);
    a[0] = 1;
    for (int n = 1; n <= g; ++n) {
        __int128 acc = 0;
        for (int i = 1; i <= n; ++i) acc -= s[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(n - i)];
        if (acc % n != 0) throw fail("inexact Newton step at n = " + std::to_string(n));
        a[static_cast<std::size_t>(n)] = acc / n;
    }
    for (int n = 0; n <= g; ++n) {
        L.coefficients[static_cast<std::size_t>(n)] = static_cast<std::int64_t>(a[static_cast<std::size_t>(n)]);
        L.coefficients[static_cast<std::size_t>(2 * g - n)] =
            static_cast<std::int64_t>(a[static_cast<std::size_t>(n)] * ipow(q, static_cast<unsigned>(g - n)));
    }
    return L;
}

LPolynomial zeta_numerator(const Polynomial& D) { return zeta_numerator(point_counts(D)); }

CrossCheck compare(const LPolynomial& expected, const LPolynomial& actual) {
    CrossCheck r{true, {}};
    const std::size_t n = std::max(expected.coefficients.size(), actual.coefficients.size());
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t e = i < expected.coefficients.size() ? expected.coefficients[i] : 0;
        const std::int64_t a = i < actual.coefficients.size() ? actual.coefficients[i] : 0;
        if (e != a) {
            r.equal = false;
            r.diffs.push_back({static_cast<int>(i), e, a});
        }
    }
    return r;
}

CrossCheck cross_check(const Polynomial& D) { return compare(zeta_numerator(D), l_coefficients(D)); }

}  // namespace ffq
