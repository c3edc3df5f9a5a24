#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ffq/polynomial.hpp"

namespace ffq {

/// Every monic polynomial of degree 0..max_degree, indexed degree by degree
/// in canonical order, with a smallest-prime-factor sieve.
///
/// Index 0 is the constant 1. For a non-constant entry, `spf` is the index of
/// its smallest prime factor (canonical order) and `cofactor` the index of the
/// quotient; both are strictly smaller than the entry's own index, so a single
/// ascending pass suffices to extend a completely multiplicative function from
/// the primes to the whole table.
class MonicTable {
public:
    using Index = std::uint32_t;

    MonicTable(std::uint32_t q, int max_degree);

    std::uint32_t q() const noexcept { return q_; }
    int max_degree() const noexcept { return max_degree_; }
    std::size_t size() const noexcept { return spf_.size(); }

    std::size_t offset(int n) const { return offsets_.at(static_cast<std::size_t>(n)); }
    std::size_t count(int n) const { return offset(n + 1) - offset(n); }
    int degree_of(std::size_t idx) const;
    Polynomial polynomial(std::size_t idx) const;
    std::size_t index_of(const Polynomial& f) const;

    bool is_prime(std::size_t idx) const { return idx != 0 && spf_[idx] == idx; }
    Index spf(std::size_t idx) const { return spf_[idx]; }
    Index cofactor(std::size_t idx) const { return cofactor_[idx]; }

    // Indices of all primes, in table order, and those of one degree.
    std::span<const Index> primes() const noexcept { return primes_; }
    std::span<const Index> primes_of_degree(int n) const;

    // d_{k,A} for every entry.
    std::vector<std::uint64_t> divisor_counts(int k) const;

    // values[p] must hold the image of every prime p; fills every other
    // entry from spf/cofactor (values[0] = 1).
    template <class T>
    void extend_multiplicatively(std::span<T> values) const {
        values[0] = T{1};
        for (std::size_t i = 1; i < values.size(); ++i) {
            if (spf_[i] != i) values[i] = values[spf_[i]] * values[cofactor_[i]];
        }
    }

private:
    std::uint32_t q_;
    int max_degree_;
    std::vector<std::size_t> offsets_;  // size max_degree + 2
    std::vector<Index> spf_;
    std::vector<Index> cofactor_;
    std::vector<Index> primes_;
    std::vector<std::size_t> prime_offsets_;  // into primes_, per degree
};

}  // namespace ffq
