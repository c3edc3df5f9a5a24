#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ffq/family.hpp"
#include "ffq/lfunc.hpp"
#include "ffq/polynomial.hpp"

namespace ffq {

// Thread count for the OpenMP kernels; <= 0 restores the runtime default.
void set_worker_count(int workers);
int worker_count();

/// Fixed-shape pairwise sum: the result depends only on the input order,
/// never on how the values were produced.
template <class T>
T tree_sum(std::span<const T> v) {
    if (v.empty()) return T{};
    if (v.size() == 1) return v[0];
    const std::size_t half = v.size() / 2;
    return tree_sum(v.first(half)) + tree_sum(v.subspan(half));
}

enum class LMode { full, reflected };

// Serial reference kernels. l_polynomials sums chi_D over every f once per D.
namespace serial {
std::vector<Polynomial> family_members(const FamilySpec& spec);
std::vector<LPolynomial> l_polynomials(std::span<const Polynomial> moduli, LMode mode = LMode::full);
std::int64_t character_sum(std::span<const Polynomial> members, const Polynomial& f);
}  // namespace serial

// Parallel kernels with results identical to the serial ones.
// l_polynomials is the transposed sweep: per batch of moduli, chi_D is
// evaluated on the primes of a monic table, extended multiplicatively, and
// the rows are accumulated degree by degree. Moduli must share q.
namespace omp {
std::vector<Polynomial> family_members(const FamilySpec& spec);
std::vector<LPolynomial> l_polynomials(std::span<const Polynomial> moduli, LMode mode = LMode::full);
std::int64_t character_sum(std::span<const Polynomial> members, const Polynomial& f);
}  // namespace omp

}  // namespace ffq
