#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ffq/family.hpp"

namespace ffq {

// Family-wide checks shared by the command line tool and the acceptance run.
// Each summary names the first offending modulus, if any.

// `count` members drawn without replacement by a partial Fisher-Yates
// shuffle seeded with `seed`, returned in canonical order. The whole family
// when count >= its size.
std::vector<Polynomial> sample_family(const FamilySpec& spec, std::size_t count, std::uint64_t seed);

struct RhSummary {
    std::size_t moduli = 0;
    std::size_t roots = 0;
    double max_residual = 0.0;  // max ||root| - q^{-1/2}|
    std::optional<Polynomial> worst;
};
RhSummary verify_rh(const std::vector<Polynomial>& moduli);

struct AfeSummary {
    std::size_t cases = 0;
    double max_scaled_error = 0.0;  // max |lhs - rhs| / (1 + |lhs|)
    std::optional<Polynomial> worst;
};
// k in ks, u at the `roots` roots of unity.
AfeSummary verify_afe(const std::vector<Polynomial>& moduli, const std::vector<int>& ks, int roots = 8);

struct CountSummary {
    std::size_t checked = 0;
    std::size_t failures = 0;
    std::optional<Polynomial> first_failure;
    std::string detail;

    bool ok() const { return checked > 0 && failures == 0; }
};
// zeta_numerator(D) == l_coefficients(D) coefficient by coefficient.
CountSummary verify_oracle(const std::vector<Polynomial>& moduli);
// A + B sqrt q >= 0 decided in integers.
CountSummary verify_nonneg(const std::vector<Polynomial>& moduli);
// a_{2g-n} = q^{g-n} a_n on the directly summed coefficients.
CountSummary verify_reflection(const std::vector<Polynomial>& moduli);
// Random coprime monic pairs (c, d) with degrees in 1..max_degree: the fast
// symbol against Euler's criterion, and
// (c/d)(d/c) = (-1)^{((q-1)/2) deg c deg d}.
CountSummary verify_reciprocity(std::uint32_t q, int max_degree, std::size_t pairs, std::uint64_t seed);

}  // namespace ffq
