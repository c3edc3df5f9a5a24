#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffq/polynomial.hpp"

namespace ffq {

// q^n with an overflow check.
std::uint64_t ipow(std::uint64_t base, unsigned exp);

// Canonical order of the monic polynomials of degree n: lexicographic on the
// ascending coefficient sequence (c_0, c_1, ..., c_{n-1}), so that for q = 3,
// n = 1 the order is T, T+1, T+2. The rank is that sequence read as a base-q
// number with c_0 most significant.
std::uint64_t monic_count(std::uint32_t q, int n);
Polynomial monic_from_rank(std::uint32_t q, int n, std::uint64_t rank);
std::uint64_t rank_of_monic(const Polynomial& f);

enum class FamilyKind { H, P, M };

std::string to_string(FamilyKind kind);
FamilyKind family_kind_from_string(const std::string& s);

/// H: monic square-free of degree n. P: monic irreducible of degree n.
/// M: all monic polynomials of degree n.
struct FamilySpec {
    FamilyKind kind;
    std::uint32_t q;
    int n;

    static FamilySpec from_genus(FamilyKind kind, std::uint32_t q, int g) {
        return FamilySpec{kind, q, 2 * g + 1};
    }

    // n = 2g + 1; throws for even n.
    int genus() const;
    // X = q^n.
    double X() const;
    double log_q_X() const { return static_cast<double>(n); }
    bool contains(const Polynomial& f) const;
    // Closed-form size: q^n, q^n - q^{n-1} (n >= 2) or pi_A(n).
    std::uint64_t expected_size() const;
};

/// Single-consumer stream over a family in canonical order.
class FamilyStream {
public:
    explicit FamilyStream(FamilySpec spec, std::uint64_t begin_rank = 0,
                          std::optional<std::uint64_t> end_rank = std::nullopt);
    std::optional<Polynomial> next();

private:
    FamilySpec spec_;
    std::uint64_t rank_;
    std::uint64_t end_;
};

// Materialises the family in canonical order (OpenMP over contiguous rank
// ranges).
std::vector<Polynomial> enumerate_family(const FamilySpec& spec);

}  // namespace ffq
