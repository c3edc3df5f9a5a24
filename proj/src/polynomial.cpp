#include "ffq/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>

namespace ffq {

namespace {

Coeff reduce_signed(std::int64_t a, std::uint32_t q) {
    std::int64_t r = a % static_cast<std::int64_t>(q);
    return static_cast<Coeff>(r < 0 ? r + q : r);
}

}  // namespace

Polynomial::Polynomial(std::uint32_t q) : q_(q) {
    if (q < 2) throw std::domain_error("polynomial field order must be >= 2");
}

Polynomial::Polynomial(std::uint32_t q, std::vector<Coeff> ascending)
    : q_(q), c_(std::move(ascending)) {
    if (q < 2) throw std::domain_error("polynomial field order must be >= 2");
    for (Coeff& c : c_) c %= q_;
    trim();
}

Polynomial::Polynomial(std::uint32_t q, std::initializer_list<std::int64_t> ascending) : q_(q) {
    if (q < 2) throw std::domain_error("polynomial field order must be >= 2");
    c_.reserve(ascending.size());
    for (std::int64_t c : ascending) c_.push_back(reduce_signed(c, q));
    trim();
}

Polynomial Polynomial::constant(std::uint32_t q, std::int64_t c) {
    return Polynomial(q, std::vector<Coeff>{reduce_signed(c, q)});
}

Polynomial Polynomial::monomial(std::uint32_t q, int degree, Coeff c) {
    if (degree < 0) throw std::domain_error("negative monomial degree");
    std::vector<Coeff> v(static_cast<std::size_t>(degree) + 1, 0);
    v.back() = c;
    return Polynomial(q, std::move(v));
}

int Polynomial::degree() const {
    if (c_.empty()) throw std::domain_error("degree of the zero polynomial is undefined");
    return static_cast<int>(c_.size()) - 1;
}

std::uint64_t Polynomial::norm() const {
    if (c_.empty()) return 0;
    std::uint64_t n = 1;
    for (std::size_t i = 1; i < c_.size(); ++i) {
        if (n > std::numeric_limits<std::uint64_t>::max() / q_) {
            throw std::overflow_error("polynomial norm exceeds 64 bits");
        }
        n *= q_;
    }
    return n;
}

Coeff Polynomial::coeff(int i) const noexcept {
    if (i < 0 || static_cast<std::size_t>(i) >= c_.size()) return 0;
    return c_[static_cast<std::size_t>(i)];
}

Coeff Polynomial::leading() const {
    if (c_.empty()) throw std::domain_error("leading coefficient of the zero polynomial");
    return c_.back();
}

Polynomial Polynomial::monic() const {
    if (c_.empty()) throw std::domain_error("cannot normalise the zero polynomial");
    PrimeField field(q_, FieldMode::experimental);
    return scaled(field.inv(c_.back()));
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return Polynomial(q_);
    std::vector<Coeff> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) {
        d[i - 1] = static_cast<Coeff>((static_cast<std::uint64_t>(c_[i]) * (i % q_)) % q_);
    }
    return Polynomial(q_, std::move(d));
}

Polynomial Polynomial::scaled(Coeff c) const {
    std::vector<Coeff> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) {
        v[i] = static_cast<Coeff>((static_cast<std::uint64_t>(c_[i]) * c) % q_);
    }
    return Polynomial(q_, std::move(v));
}

Coeff Polynomial::evaluate(Coeff x) const {
    std::uint64_t acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = (acc * x + c_[i]) % q_;
    return static_cast<Coeff>(acc);
}

Polynomial Polynomial::operator-() const {
    std::vector<Coeff> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] == 0 ? 0 : q_ - c_[i];
    return Polynomial(q_, std::move(v));
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    check_same_field(rhs);
    if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), 0);
    for (std::size_t i = 0; i < rhs.c_.size(); ++i) {
        Coeff s = c_[i] + rhs.c_[i];
        c_[i] = s >= q_ ? s - q_ : s;
    }
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    check_same_field(rhs);
    if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), 0);
    for (std::size_t i = 0; i < rhs.c_.size(); ++i) {
        c_[i] = c_[i] >= rhs.c_[i] ? c_[i] - rhs.c_[i] : c_[i] + q_ - rhs.c_[i];
    }
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
    check_same_field(rhs);
    if (c_.empty() || rhs.c_.empty()) {
        c_.clear();
        return *this;
    }
    std::vector<std::uint64_t> prod(c_.size() + rhs.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < rhs.c_.size(); ++j) {
            prod[i + j] = (prod[i + j] + static_cast<std::uint64_t>(c_[i]) * rhs.c_[j]) % q_;
        }
    }
    c_.assign(prod.begin(), prod.end());
    trim();
    return *this;
}

std::string Polynomial::to_text() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(c_[i]);
    }
    return out;
}

std::string Polynomial::to_pretty() const {
    if (c_.empty()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        if (!out.empty()) out += '+';
        if (c_[i] != 1 || i == 0) out += std::to_string(c_[i]);
        if (i >= 1) out += 'T';
        if (i >= 2) out += '^' + std::to_string(i);
    }
    return out;
}

void Polynomial::trim() noexcept {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

void Polynomial::check_same_field(const Polynomial& other) const {
    if (other.q_ != q_) throw std::domain_error("polynomials over different fields");
}

DivMod divmod(const Polynomial& f, const Polynomial& g) {
    if (g.is_zero()) throw std::domain_error("division by the zero polynomial");
    if (f.field_order() != g.field_order()) throw std::domain_error("polynomials over different fields");
    const std::uint32_t q = f.field_order();
    if (f.is_zero() || f.degree() < g.degree()) return {Polynomial(q), f};

    PrimeField field(q, FieldMode::experimental);
    const Coeff lead_inv = field.inv(g.leading());
    auto gc = g.coefficients();
    std::vector<Coeff> rem(f.coefficients().begin(), f.coefficients().end());
    const auto dg = static_cast<std::size_t>(g.degree());
    std::vector<Coeff> quot(rem.size() - dg, 0);
    for (std::size_t k = rem.size(); k-- > dg;) {
        const Coeff c = field.mul(rem[k], lead_inv);
        quot[k - dg] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dg; ++j) {
            rem[k - dg + j] = field.sub(rem[k - dg + j], field.mul(c, gc[j]));
        }
    }
    rem.resize(dg);
    return {Polynomial(q, std::move(quot)), Polynomial(q, std::move(rem))};
}

Polynomial operator%(const Polynomial& f, const Polynomial& g) { return divmod(f, g).remainder; }
Polynomial operator/(const Polynomial& f, const Polynomial& g) { return divmod(f, g).quotient; }

Polynomial gcd(const Polynomial& f, const Polynomial& g) {
    Polynomial a = f;
    Polynomial b = g;
    while (!b.is_zero()) {
        Polynomial r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

Polynomial powmod(const Polynomial& b, std::uint64_t e, const Polynomial& m) {
    Polynomial result = Polynomial::constant(m.field_order(), 1) % m;
    Polynomial base = b % m;
    while (e > 0) {
        if (e & 1U) result = (result * base) % m;
        e >>= 1U;
        if (e > 0) base = (base * base) % m;
    }
    return result;
}

namespace {

std::string strip_spaces(std::string_view text) {
    std::string s;
    for (char ch : text) {
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    }
    return s;
}

std::int64_t parse_int(const std::string& s, std::size_t& pos) {
    const std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) throw std::invalid_argument("expected a number in polynomial text");
    if (pos - start > 12) throw std::invalid_argument("number too long in polynomial text");
    return std::stoll(s.substr(start, pos - start));
}

Polynomial parse_comma_form(std::uint32_t q, const std::string& s) {
    std::vector<Coeff> coeffs;
    std::size_t pos = 0;
    while (true) {
        bool negative = false;
        if (pos < s.size() && s[pos] == '-') {
            negative = true;
            ++pos;
        }
        std::int64_t v = parse_int(s, pos);
        coeffs.push_back(reduce_signed(negative ? -v : v, q));
        if (pos == s.size()) break;
        if (s[pos] != ',') throw std::invalid_argument("unexpected character in polynomial text");
        ++pos;
    }
    return Polynomial(q, std::move(coeffs));
}

Polynomial parse_human_form(std::uint32_t q, const std::string& s) {
    std::vector<std::int64_t> acc;
    auto add_term = [&](std::int64_t c, std::size_t exp) {
        if (exp > 4096) throw std::invalid_argument("exponent too large in polynomial text");
        if (acc.size() <= exp) acc.resize(exp + 1, 0);
        acc[exp] = (acc[exp] + c) % static_cast<std::int64_t>(q);
    };
    std::size_t pos = 0;
    bool first = true;
    while (pos < s.size()) {
        int sign = 1;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            throw std::invalid_argument("expected '+' or '-' between terms");
        }
        first = false;
        std::int64_t coeff = 1;
        bool has_coeff = false;
        if (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            coeff = parse_int(s, pos);
            has_coeff = true;
            if (pos < s.size() && s[pos] == '*') ++pos;
        }
        std::size_t exp = 0;
        if (pos < s.size() && (s[pos] == 'T' || s[pos] == 't')) {
            ++pos;
            exp = 1;
            if (pos < s.size() && s[pos] == '^') {
                ++pos;
                exp = static_cast<std::size_t>(parse_int(s, pos));
            }
        } else if (!has_coeff) {
            throw std::invalid_argument("empty term in polynomial text");
        }
        add_term(sign * coeff, exp);
    }
    std::vector<Coeff> coeffs;
    coeffs.reserve(acc.size());
    for (std::int64_t c : acc) coeffs.push_back(reduce_signed(c, q));
    return Polynomial(q, std::move(coeffs));
}

}  // namespace

Polynomial parse_polynomial(std::uint32_t q, std::string_view text) {
    const std::string s = strip_spaces(text);
    if (s.empty()) throw std::invalid_argument("empty polynomial text");
    const bool human = s.find_first_of("Tt^+") != std::string::npos ||
                       (s.find(',') == std::string::npos && s.find('-', 1) != std::string::npos);
    return human ? parse_human_form(q, s) : parse_comma_form(q, s);
}

}  // namespace ffq
