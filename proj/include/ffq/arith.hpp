#pragma once

#include <cstdint>
#include <vector>

namespace ffq {

int mobius(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);

// Number of monic irreducibles of degree n, (1/n) sum_{d|n} mu(d) q^{n/d}.
std::uint64_t prime_count(std::uint32_t q, int n);

// zeta_A(2) = 1 / (1 - 1/q).
double zeta_A2(std::uint32_t q);

struct MertensSums {
    double sum_log;    // sum_{|P| <= x} log|P| / |P|
    double sum_recip;  // sum_{|P| <= x} 1 / |P|
};

// x must be q^m with m >= 1. Exact prime counts, no enumeration.
MertensSums mertens_sums(std::uint32_t q, std::uint64_t x);

}  // namespace ffq
