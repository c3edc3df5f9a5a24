#pragma once

#include <cstdint>
#include <vector>

#include "ffq/polynomial.hpp"

namespace ffq {

// gcd(f, f') constant. Throws on the zero polynomial.
bool is_squarefree(const Polynomial& f);

// Rabin's test. Requires f monic of degree >= 1.
bool is_irreducible(const Polynomial& f);

struct PrimePower {
    Polynomial prime;
    int exponent;
};

// Factorisation of a monic f into monic primes by trial division, primes in
// increasing canonical order. Desk scale only.
std::vector<PrimePower> factor(const Polynomial& f);

// d_{k,A}(f): ordered k-tuples of monic polynomials with product f.
std::uint64_t divisor_function(const Polynomial& f, int k);

// f monic and every prime exponent even.
bool is_perfect_square(const Polynomial& f);

/// l = l1 * l2^2 with l1 monic square-free.
struct SquarefreeSplit {
    Polynomial l1;
    Polynomial l2;
    std::vector<PrimePower> factors;  // factorisation of l
};
SquarefreeSplit squarefree_split(const Polynomial& l);

}  // namespace ffq
