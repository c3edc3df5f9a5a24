#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace ffq {

using Coeff = std::uint32_t;

// Fields are restricted to odd primes below 2^16 so that a product of two
// reduced residues always fits in 32 bits.
inline constexpr std::uint32_t max_field_prime = 65521;

enum class FieldMode {
    standard,      // q = 1 (mod 4), the setting of every moment experiment
    experimental,  // any odd prime; reciprocity carries a sign
};

bool is_prime_u64(std::uint64_t n);

// Throws std::domain_error unless q is an admissible base field order.
void validate_field_prime(std::uint32_t q, FieldMode mode = FieldMode::standard);

// Lemma-verification code refuses to run outside q = 1 (mod 4).
void require_standard_field(std::uint32_t q);

class PrimeField {
public:
    explicit PrimeField(std::uint32_t q, FieldMode mode = FieldMode::standard);

    std::uint32_t order() const noexcept { return q_; }
    FieldMode mode() const noexcept { return mode_; }

    Coeff reduce(std::int64_t a) const noexcept;
    Coeff add(Coeff a, Coeff b) const noexcept;
    Coeff sub(Coeff a, Coeff b) const noexcept;
    Coeff neg(Coeff a) const noexcept;
    Coeff mul(Coeff a, Coeff b) const noexcept;
    Coeff pow(Coeff a, std::uint64_t e) const noexcept;
    // Throws std::domain_error on a == 0.
    Coeff inv(Coeff a) const;

    // Legendre symbol of a in F_q: 0, +1 or -1.
    int quad_char(Coeff a) const noexcept;

private:
    std::uint32_t q_;
    FieldMode mode_;
};

class Polynomial;

/// F_{q^i} realised as F_q[T]/(m) for a monic irreducible m of degree i.
///
/// Elements are coordinate vectors of length i in the power basis
/// 1, T, ..., T^{i-1}. The zero-based index of an element is its coordinate
/// vector read as a base-q number with coordinate 0 least significant, which
/// makes `element(k)` for k in [0, q^i) an enumeration of the whole field.
class ExtensionField {
public:
    using Element = std::vector<Coeff>;

    // Validates that the modulus is monic and irreducible.
    ExtensionField(std::uint32_t q, const Polynomial& modulus);

    std::uint32_t base_prime() const noexcept { return base_.order(); }
    int degree() const noexcept { return degree_; }
    std::uint64_t cardinality() const noexcept { return cardinality_; }
    const Polynomial& modulus() const noexcept;

    Element zero() const { return Element(static_cast<std::size_t>(degree_), 0); }
    Element one() const;
    Element embed(Coeff c) const;
    Element element(std::uint64_t index) const;

    Element add(const Element& a, const Element& b) const;
    Element mul(const Element& a, const Element& b) const;
    Element pow(Element a, std::uint64_t e) const;
    Element inv(const Element& a) const;
    bool is_zero(const Element& a) const noexcept;

    // Evaluates a polynomial with F_q coefficients at x.
    Element evaluate(const Polynomial& f, const Element& x) const;

    // a^{(q^i - 1)/2} mapped to {-1, 0, +1}.
    int quad_char(const Element& a) const;

private:
    PrimeField base_;
    std::vector<Coeff> modulus_;  // ascending, monic, length degree_+1
    int degree_;
    std::uint64_t cardinality_;
    std::shared_ptr<const Polynomial> modulus_poly_;
};

/// First monic irreducible of degree i in canonical enumeration order.
ExtensionField build_extension(std::uint32_t q, int degree);

}  // namespace ffq
