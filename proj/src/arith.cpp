#include "ffq/arith.hpp"

#include <cmath>
#include <stdexcept>

#include "ffq/family.hpp"

namespace ffq {

int mobius(std::uint64_t n) {
    if (n == 0) throw std::domain_error("mobius(0)");
    int sign = 1;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d != n / d) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

std::uint64_t prime_count(std::uint32_t q, int n) {
    if (n < 1) throw std::domain_error("prime_count needs n >= 1");
    // Signed accumulation: the alternating sum dips below zero only for
    // intermediate terms, never in the final value.
    __int128 total = 0;
    for (std::uint64_t d : divisors(static_cast<std::uint64_t>(n))) {
        const int mu = mobius(d);
        if (mu == 0) continue;
        total += static_cast<__int128>(mu) * ipow(q, static_cast<unsigned>(static_cast<std::uint64_t>(n) / d));
    }
    if (total % n != 0) throw std::logic_error("prime_count: divisor sum not divisible by n");
    return static_cast<std::uint64_t>(total / n);
}

double zeta_A2(std::uint32_t q) { return 1.0 / (1.0 - 1.0 / static_cast<double>(q)); }

MertensSums mertens_sums(std::uint32_t q, std::uint64_t x) {
    int m = 0;
    std::uint64_t power = 1;
    while (power < x) {
        power *= q;
        ++m;
    }
    if (power != x || m < 1) throw std::domain_error("mertens_sums: x must be q^m with m >= 1");
    MertensSums s{0.0, 0.0};
    const double log_q = std::log(static_cast<double>(q));
    for (int n = 1; n <= m; ++n) {
        const double count = static_cast<double>(prime_count(q, n));
        const double norm = std::pow(static_cast<double>(q), n);
        s.sum_recip += count / norm;
        s.sum_log += count * n * log_q / norm;
    }
    return s;
}

}  // namespace ffq
