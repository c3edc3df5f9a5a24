#include "ffq/monic_table.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "ffq/family.hpp"

namespace ffq {

namespace {

constexpr auto unset = std::numeric_limits<MonicTable::Index>::max();

void digits_of(std::uint64_t rank, std::uint32_t q, int n, Coeff* out) {
    for (int i = n - 1; i >= 0; --i) {
        out[i] = static_cast<Coeff>(rank % q);
        rank /= q;
    }
    out[n] = 1;
}

}  // namespace

MonicTable::MonicTable(std::uint32_t q, int max_degree) : q_(q), max_degree_(max_degree) {
    if (max_degree < 0) throw std::domain_error("MonicTable: negative degree");
    offsets_.push_back(0);
    for (int n = 0; n <= max_degree; ++n) offsets_.push_back(offsets_.back() + monic_count(q, n));
    const std::size_t total = offsets_.back();
    if (total >= unset) throw std::overflow_error("MonicTable too large");
    spf_.assign(total, unset);
    cofactor_.assign(total, unset);
    spf_[0] = 0;
    cofactor_[0] = 0;
    prime_offsets_.assign(static_cast<std::size_t>(max_degree) + 2, 0);

    std::vector<Coeff> a(static_cast<std::size_t>(max_degree) + 1);
    std::vector<Coeff> b(static_cast<std::size_t>(max_degree) + 1);
    std::vector<std::uint64_t> prod(static_cast<std::size_t>(max_degree) + 1);

    for (int n = 1; n <= max_degree; ++n) {
        prime_offsets_[static_cast<std::size_t>(n)] = primes_.size();
        for (std::size_t idx = offsets_[n]; idx < offsets_[n + 1]; ++idx) {
            if (spf_[idx] != unset) continue;
            spf_[idx] = static_cast<Index>(idx);
            cofactor_[idx] = 0;
            primes_.push_back(static_cast<Index>(idx));
            digits_of(idx - offsets_[n], q, n, a.data());
            // Mark every multiple P * g that still lacks a smallest factor.
            for (int m = 1; n + m <= max_degree; ++m) {
                for (std::size_t gidx = offsets_[m]; gidx < offsets_[m + 1]; ++gidx) {
                    digits_of(gidx - offsets_[m], q, m, b.data());
                    const int d = n + m;
                    std::fill(prod.begin(), prod.begin() + d + 1, 0);
                    for (int i = 0; i <= n; ++i) {
                        if (a[i] == 0) continue;
                        for (int j = 0; j <= m; ++j) prod[i + j] += static_cast<std::uint64_t>(a[i]) * b[j];
                    }
                    std::uint64_t rank = 0;
                    for (int i = 0; i < d; ++i) rank = rank * q + prod[i] % q;
                    const std::size_t hidx = offsets_[d] + rank;
                    if (spf_[hidx] == unset) {
                        spf_[hidx] = static_cast<Index>(idx);
                        cofactor_[hidx] = static_cast<Index>(gidx);
                    }
                }
            }
        }
    }
    prime_offsets_[static_cast<std::size_t>(max_degree) + 1] = primes_.size();
}

int MonicTable::degree_of(std::size_t idx) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), idx);
    return static_cast<int>(it - offsets_.begin()) - 1;
}

Polynomial MonicTable::polynomial(std::size_t idx) const {
    const int n = degree_of(idx);
    return monic_from_rank(q_, n, idx - offsets_[static_cast<std::size_t>(n)]);
}

std::size_t MonicTable::index_of(const Polynomial& f) const {
    if (f.field_order() != q_ || !f.is_monic() || f.degree() > max_degree_) {
        throw std::out_of_range("polynomial not in MonicTable");
    }
    return offsets_[static_cast<std::size_t>(f.degree())] + rank_of_monic(f);
}

std::span<const MonicTable::Index> MonicTable::primes_of_degree(int n) const {
    if (n < 1 || n > max_degree_) return {};
    const std::size_t b = prime_offsets_[static_cast<std::size_t>(n)];
    const std::size_t e = prime_offsets_[static_cast<std::size_t>(n) + 1];
    return std::span<const Index>(primes_).subspan(b, e - b);
}

std::vector<std::uint64_t> MonicTable::divisor_counts(int k) const {
    if (k < 1) throw std::domain_error("divisor_counts needs k >= 1");
    // Exponent of the smallest prime in idx and the product over the other
    // prime powers; d_k(P^a) = C(a+k-1, k-1).
    std::vector<std::uint64_t> result(size(), 1);
    std::vector<int> lead_exp(size(), 0);
    std::vector<std::uint64_t> rest(size(), 1);
    auto binom = [](std::uint64_t n, std::uint64_t r) {
        std::uint64_t v = 1;
        for (std::uint64_t i = 1; i <= r; ++i) v = v * (n - r + i) / i;
        return v;
    };
    const auto km1 = static_cast<std::uint64_t>(k - 1);
    for (std::size_t i = 1; i < size(); ++i) {
        const Index p = spf_[i];
        const Index c = cofactor_[i];
        if (c != 0 && spf_[c] == p) {
            lead_exp[i] = lead_exp[c] + 1;
            rest[i] = rest[c];
        } else {
            lead_exp[i] = 1;
            rest[i] = result[c];
        }
        result[i] = rest[i] * binom(static_cast<std::uint64_t>(lead_exp[i]) + km1, km1);
    }
    return result;
}

}  // namespace ffq
