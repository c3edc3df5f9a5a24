#pragma once

#include <cstdint>
#include <vector>

#include "ffq/field.hpp"
#include "ffq/lfunc.hpp"
#include "ffq/polynomial.hpp"

namespace ffq {

// Projective points of y^2 = D(x) over F_{q^i}, i = 1..N, counting the single
// point at infinity of an odd-degree model.
struct PointCounts {
    Polynomial modulus;
    int genus;
    std::vector<std::int64_t> counts;  // counts[i-1] = N_i
};

// N = 1 + sum_{x in F} (1 + eta(D(x))) for one concrete field F.
std::int64_t point_count(const Polynomial& D, const ExtensionField& F);

// i_max defaults to the genus. Throws std::domain_error unless D is monic,
// square-free and of odd degree.
PointCounts point_counts(const Polynomial& D, int i_max = -1);

/// Numerator of the zeta function of y^2 = D from N_1..N_g.
///
/// With s_i = q^i + 1 - N_i, Newton's identities n a_n = -sum_{i<=n} s_i a_{n-i}
/// give a_0..a_g, the rest follow from a_{2g-n} = q^{g-n} a_n. Throws
/// std::logic_error naming D if the counts violate Hasse-Weil or a division
/// in the recursion is inexact.
LPolynomial zeta_numerator(const Polynomial& D);
LPolynomial zeta_numerator(const PointCounts& counts);

struct CoefficientDiff {
    int n;
    std::int64_t expected;
    std::int64_t actual;
};

struct CrossCheck {
    bool equal;
    std::vector<CoefficientDiff> diffs;
};

// Coefficient-wise comparison; missing entries count as 0.
CrossCheck compare(const LPolynomial& expected, const LPolynomial& actual);

// zeta_numerator(D) against l_coefficients(D).
CrossCheck cross_check(const Polynomial& D);

}  // namespace ffq
