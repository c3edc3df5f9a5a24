#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ffq/field.hpp"

namespace ffq {

/// Element of F_q[T] with dense ascending coefficients and no trailing zeros.
///
/// The zero polynomial has no degree: `degree()` throws on it, so formulas
/// that assume a monic nonzero input never see a sentinel value. `norm()` is
/// q^{deg f} and 0 for the zero polynomial.
class Polynomial {
public:
    explicit Polynomial(std::uint32_t q);
    Polynomial(std::uint32_t q, std::vector<Coeff> ascending);
    Polynomial(std::uint32_t q, std::initializer_list<std::int64_t> ascending);

    static Polynomial constant(std::uint32_t q, std::int64_t c);
    static Polynomial monomial(std::uint32_t q, int degree, Coeff c = 1);

    std::uint32_t field_order() const noexcept { return q_; }
    bool is_zero() const noexcept { return c_.empty(); }
    int degree() const;
    std::uint64_t norm() const;
    bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }
    bool is_constant() const noexcept { return c_.size() <= 1; }

    Coeff coeff(int i) const noexcept;
    Coeff leading() const;
    std::span<const Coeff> coefficients() const noexcept { return c_; }

    Polynomial monic() const;
    Polynomial derivative() const;
    Polynomial scaled(Coeff c) const;
    Coeff evaluate(Coeff x) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Polynomial& rhs);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
    friend bool operator==(const Polynomial& a, const Polynomial& b) noexcept {
        return a.q_ == b.q_ && a.c_ == b.c_;
    }

    // "c0,c1,...,cn"; the zero polynomial prints as "0".
    std::string to_text() const;
    // Human form such as "T^3+T" or "2T^2+4".
    std::string to_pretty() const;

private:
    void trim() noexcept;
    void check_same_field(const Polynomial& other) const;

    std::uint32_t q_;
    std::vector<Coeff> c_;
};

struct DivMod {
    Polynomial quotient;
    Polynomial remainder;
};

// Throws std::domain_error when the divisor is zero.
DivMod divmod(const Polynomial& f, const Polynomial& g);
Polynomial operator%(const Polynomial& f, const Polynomial& g);
Polynomial operator/(const Polynomial& f, const Polynomial& g);

// Monic gcd; gcd(0, 0) is the zero polynomial.
Polynomial gcd(const Polynomial& f, const Polynomial& g);

// (b^e) mod m by square-and-multiply.
Polynomial powmod(const Polynomial& b, std::uint64_t e, const Polynomial& m);

/// Parses either the canonical comma form ("0,1,0,1") or a human form
/// ("T^3+T", "T - 1", "2*T^2 + 3T + 4"). Coefficients are reduced mod q.
/// Throws std::invalid_argument on malformed text.
Polynomial parse_polynomial(std::uint32_t q, std::string_view text);

}  // namespace ffq
