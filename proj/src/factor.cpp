#include "ffq/factor.hpp"

#include <algorithm>
#include <stdexcept>

#include "ffq/arith.hpp"
#include "ffq/family.hpp"

namespace ffq {

bool is_squarefree(const Polynomial& f) {
    if (f.is_zero()) throw std::domain_error("is_squarefree: zero polynomial");
    if (f.is_constant()) return true;
    return gcd(f, f.derivative()).is_constant();
}

bool is_irreducible(const Polynomial& f) {
    if (f.is_zero() || !f.is_monic() || f.is_constant()) {
        throw std::domain_error("is_irreducible needs a monic polynomial of degree >= 1");
    }
    const int n = f.degree();
    if (n == 1) return true;
    const std::uint32_t q = f.field_order();
    const Polynomial t = Polynomial::monomial(q, 1);

    // frob[k] = T^{q^k} mod f
    std::vector<Polynomial> frob;
    frob.reserve(static_cast<std::size_t>(n) + 1);
    frob.push_back(t % f);
    for (int k = 1; k <= n; ++k) frob.push_back(powmod(frob.back(), q, f));

    if (!(frob[static_cast<std::size_t>(n)] - t).is_zero()) return false;
    for (std::uint64_t p : divisors(static_cast<std::uint64_t>(n))) {
        if (p == 1 || !is_prime_u64(p)) continue;
        const auto k = static_cast<std::size_t>(n / static_cast<int>(p));
        if (!gcd(frob[k] - t, f).is_constant()) return false;
    }
    return true;
}

std::vector<PrimePower> factor(const Polynomial& f) {
    if (f.is_zero() || !f.is_monic()) throw std::domain_error("factor needs a monic nonzero polynomial");
    std::vector<PrimePower> out;
    Polynomial rest = f;
    const std::uint32_t q = f.field_order();
    for (int d = 1; 2 * d <= rest.degree(); ++d) {
        const std::uint64_t count = monic_count(q, d);
        for (std::uint64_t r = 0; r < count && 2 * d <= rest.degree(); ++r) {
            Polynomial p = monic_from_rank(q, d, r);
            int e = 0;
            while (true) {
                DivMod qr = divmod(rest, p);
                if (!qr.remainder.is_zero()) break;
                rest = std::move(qr.quotient);
                ++e;
            }
            // Trial divisors come in increasing order, so any divisor found
            // here is prime.
            if (e > 0) out.push_back({std::move(p), e});
        }
    }
    if (!rest.is_constant()) {
        bool merged = false;
        for (auto& pp : out) {
            if (pp.prime == rest) {
                ++pp.exponent;
                merged = true;
            }
        }
        if (!merged) out.push_back({rest, 1});
    }
    return out;
}

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

std::uint64_t divisor_function(const Polynomial& f, int k) {
    if (k < 1) throw std::domain_error("divisor_function needs k >= 1");
    if (f.is_zero() || !f.is_monic()) throw std::domain_error("divisor_function needs monic f");
    std::uint64_t r = 1;
    for (const auto& pp : factor(f)) {
        r *= binomial(static_cast<std::uint64_t>(pp.exponent + k - 1), static_cast<std::uint64_t>(k - 1));
    }
    return r;
}

bool is_perfect_square(const Polynomial& f) {
    if (f.is_zero() || !f.is_monic()) return false;
    for (const auto& pp : factor(f)) {
        if (pp.exponent % 2 != 0) return false;
    }
    return true;
}

SquarefreeSplit squarefree_split(const Polynomial& l) {
    if (l.is_zero() || !l.is_monic()) throw std::domain_error("squarefree_split needs monic l");
    const std::uint32_t q = l.field_order();
    SquarefreeSplit s{Polynomial::constant(q, 1), Polynomial::constant(q, 1), factor(l)};
    for (const auto& pp : s.factors) {
        if (pp.exponent % 2 == 1) s.l1 *= pp.prime;
        for (int i = 0; i < pp.exponent / 2; ++i) s.l2 *= pp.prime;
    }
    return s;
}

}  // namespace ffq
