#include "ffq/field.hpp"

#include <stdexcept>
#include <string>

#include "ffq/factor.hpp"
#include "ffq/family.hpp"
#include "ffq/polynomial.hpp"

namespace ffq {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

void validate_field_prime(std::uint32_t q, FieldMode mode) {
    if (q < 3 || q > max_field_prime || !is_prime_u64(q)) {
        throw std::domain_error("field order must be an odd prime below 2^16, got " +
                                std::to_string(q));
    }
    if (mode == FieldMode::standard && q % 4 != 1) {
        throw std::domain_error("q = " + std::to_string(q) +
                                " is not 1 mod 4; pass the experimental flag to allow it");
    }
}

void require_standard_field(std::uint32_t q) {
    validate_field_prime(q, FieldMode::standard);
}

PrimeField::PrimeField(std::uint32_t q, FieldMode mode) : q_(q), mode_(mode) {
    validate_field_prime(q, mode);
}

Coeff PrimeField::reduce(std::int64_t a) const noexcept {
    std::int64_t r = a % static_cast<std::int64_t>(q_);
    if (r < 0) r += q_;
    return static_cast<Coeff>(r);
}

Coeff PrimeField::add(Coeff a, Coeff b) const noexcept {
    Coeff s = a + b;
    return s >= q_ ? s - q_ : s;
}

Coeff PrimeField::sub(Coeff a, Coeff b) const noexcept {
    return a >= b ? a - b : a + q_ - b;
}

Coeff PrimeField::neg(Coeff a) const noexcept { return a == 0 ? 0 : q_ - a; }

Coeff PrimeField::mul(Coeff a, Coeff b) const noexcept {
    return static_cast<Coeff>((static_cast<std::uint64_t>(a) * b) % q_);
}

Coeff PrimeField::pow(Coeff a, std::uint64_t e) const noexcept {
    std::uint64_t result = 1 % q_;
    std::uint64_t base = a % q_;
    while (e > 0) {
        if (e & 1U) result = result * base % q_;
        base = base * base % q_;
        e >>= 1U;
    }
    return static_cast<Coeff>(result);
}

Coeff PrimeField::inv(Coeff a) const {
    if (a % q_ == 0) throw std::domain_error("inverse of zero in F_" + std::to_string(q_));
    return pow(a, q_ - 2);
}

int PrimeField::quad_char(Coeff a) const noexcept {
    a %= q_;
    if (a == 0) return 0;
    return pow(a, (q_ - 1) / 2) == 1 ? 1 : -1;
}

// --- ExtensionField -------------------------------------------------------

ExtensionField::ExtensionField(std::uint32_t q, const Polynomial& modulus)
    : base_(q, FieldMode::experimental) {
    if (modulus.field_order() != q) throw std::domain_error("modulus over a different field");
    if (!modulus.is_monic() || modulus.is_constant()) {
        throw std::domain_error("extension modulus must be monic of degree >= 1");
    }
    if (!is_irreducible(modulus)) {
        throw std::domain_error("extension modulus " + modulus.to_text() + " is reducible");
    }
    degree_ = modulus.degree();
    modulus_.assign(modulus.coefficients().begin(), modulus.coefficients().end());
    cardinality_ = 1;
    for (int i = 0; i < degree_; ++i) cardinality_ *= q;
    modulus_poly_ = std::make_shared<const Polynomial>(modulus);
}

const Polynomial& ExtensionField::modulus() const noexcept { return *modulus_poly_; }

ExtensionField::Element ExtensionField::one() const {
    Element e = zero();
    e[0] = 1;
    return e;
}

ExtensionField::Element ExtensionField::embed(Coeff c) const {
    Element e = zero();
    e[0] = c % base_.order();
    return e;
}

ExtensionField::Element ExtensionField::element(std::uint64_t index) const {
    if (index >= cardinality_) throw std::out_of_range("extension element index");
    Element e = zero();
    const std::uint32_t q = base_.order();
    for (int i = 0; i < degree_; ++i) {
        e[static_cast<std::size_t>(i)] = static_cast<Coeff>(index % q);
        index /= q;
    }
    return e;
}

ExtensionField::Element ExtensionField::add(const Element& a, const Element& b) const {
    Element r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = base_.add(a[i], b[i]);
    return r;
}

ExtensionField::Element ExtensionField::mul(const Element& a, const Element& b) const {
    const auto d = static_cast<std::size_t>(degree_);
    std::vector<std::uint64_t> prod(2 * d, 0);
    const std::uint64_t q = base_.order();
    for (std::size_t i = 0; i < d; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < d; ++j) {
            prod[i + j] = (prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % q;
        }
    }
    // Reduce with the monic modulus from the top down.
    for (std::size_t k = 2 * d - 1; k >= d; --k) {
        const std::uint64_t c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        for (std::size_t j = 0; j < d; ++j) {
            prod[k - d + j] = (prod[k - d + j] + (q - c) * modulus_[j]) % q;
        }
    }
    Element r(d);
    for (std::size_t i = 0; i < d; ++i) r[i] = static_cast<Coeff>(prod[i]);
    return r;
}

ExtensionField::Element ExtensionField::pow(Element a, std::uint64_t e) const {
    Element result = one();
    while (e > 0) {
        if (e & 1U) result = mul(result, a);
        a = mul(a, a);
        e >>= 1U;
    }
    return result;
}

ExtensionField::Element ExtensionField::inv(const Element& a) const {
    if (is_zero(a)) throw std::domain_error("inverse of zero in extension field");
    return pow(a, cardinality_ - 2);
}

bool ExtensionField::is_zero(const Element& a) const noexcept {
    for (Coeff c : a) {
        if (c != 0) return false;
    }
    return true;
}

ExtensionField::Element ExtensionField::evaluate(const Polynomial& f, const Element& x) const {
    Element acc = zero();
    auto coeffs = f.coefficients();
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        acc = mul(acc, x);
        acc[0] = base_.add(acc[0], coeffs[i]);
    }
    return acc;
}

int ExtensionField::quad_char(const Element& a) const {
    if (is_zero(a)) return 0;
    Element r = pow(a, (cardinality_ - 1) / 2);
    if (r == one()) return 1;
    Element minus_one = embed(base_.order() - 1);
    if (r == minus_one) return -1;
    throw std::logic_error("Euler criterion produced neither +1 nor -1");
}

ExtensionField build_extension(std::uint32_t q, int degree) {
    if (degree < 1) throw std::domain_error("extension degree must be >= 1");
    validate_field_prime(q, FieldMode::experimental);
    const std::uint64_t count = monic_count(q, degree);
    for (std::uint64_t rank = 0; rank < count; ++rank) {
        Polynomial m = monic_from_rank(q, degree, rank);
        if (is_irreducible(m)) return ExtensionField(q, m);
    }
    throw std::logic_error("no irreducible polynomial found");
}

}  // namespace ffq
