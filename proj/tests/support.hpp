#pragma once

// Brute-force oracles and small generators shared by the unit tests. Nothing
// here calls into the fast paths it is used to check.

#include <cstdint>
#include <random>
#include <vector>

#include "ffq/polynomial.hpp"

namespace ffq::testing {

using Rng = std::mt19937_64;

inline Polynomial random_monic(Rng& rng, std::uint32_t q, int n) {
    std::vector<Coeff> c(static_cast<std::size_t>(n) + 1, 1);
    std::uniform_int_distribution<Coeff> d(0, q - 1);
    for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = d(rng);
    return Polynomial(q, std::move(c));
}

inline Polynomial random_poly(Rng& rng, std::uint32_t q, int max_deg) {
    std::uniform_int_distribution<int> dd(0, max_deg);
    std::uniform_int_distribution<Coeff> d(0, q - 1);
    std::vector<Coeff> c(static_cast<std::size_t>(dd(rng)) + 1);
    for (auto& x : c) x = d(rng);
    return Polynomial(q, std::move(c));
}

// All monic polynomials of degree n in canonical order (c_{n-1} fastest).
inline std::vector<Polynomial> all_monic(std::uint32_t q, int n) {
    std::vector<Polynomial> out;
    std::vector<Coeff> c(static_cast<std::size_t>(n) + 1, 0);
    c.back() = 1;
    while (true) {
        out.emplace_back(q, c);
        int i = n - 1;
        while (i >= 0 && ++c[static_cast<std::size_t>(i)] == q) c[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
    }
    return out;
}

// Irreducible iff no monic divisor of degree 1..n/2.
inline bool brute_irreducible(const Polynomial& f) {
    const int n = f.degree();
    for (int d = 1; 2 * d <= n; ++d) {
        for (const auto& g : all_monic(f.field_order(), d)) {
            if (divmod(f, g).remainder.is_zero()) return false;
        }
    }
    return n >= 1;
}

// Exponent vector of f over monic divisors found by repeated trial division.
inline std::vector<std::pair<Polynomial, int>> brute_factor(Polynomial f) {
    std::vector<std::pair<Polynomial, int>> out;
    for (int d = 1; d <= f.degree(); ++d) {
        for (const auto& g : all_monic(f.field_order(), d)) {
            int e = 0;
            while (f.degree() >= d && divmod(f, g).remainder.is_zero()) {
                f = divmod(f, g).quotient;
                ++e;
            }
            if (e > 0) out.emplace_back(g, e);
            if (f.degree() == 0) return out;
        }
    }
    return out;
}

// Legendre symbol by listing squares.
inline int brute_legendre(std::uint64_t a, std::uint64_t q) {
    a %= q;
    if (a == 0) return 0;
    for (std::uint64_t x = 1; x < q; ++x) {
        if (x * x % q == a) return 1;
    }
    return -1;
}

}  // namespace ffq::testing
