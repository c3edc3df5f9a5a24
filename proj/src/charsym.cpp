#include "ffq/charsym.hpp"

#include <array>
#include <memory>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "ffq/factor.hpp"
#include "ffq/family.hpp"

namespace ffq {

SymbolKernel::SymbolKernel(std::uint32_t q)
    : q_(q), flip_sign_(((q - 1) / 2) % 2 == 1), eta_(q, 0), inv_(q, 0) {
    PrimeField field(q, FieldMode::experimental);
    for (Coeff c = 1; c < q; ++c) {
        eta_[c] = static_cast<std::int8_t>(field.quad_char(c));
        inv_[c] = field.inv(c);
    }
}

int SymbolKernel::symbol(std::span<const Coeff> a, std::span<const Coeff> b) const {
    constexpr std::size_t cap = 64;
    if (b.size() < 2 || b.back() != 1) throw std::domain_error("residue symbol: bottom must be monic, degree >= 1");
    if (a.size() > cap || b.size() > cap) throw std::length_error("residue symbol: degree above 63");

    std::array<Coeff, cap> xs{};
    std::array<Coeff, cap> ys{};
    Coeff* x = xs.data();
    Coeff* y = ys.data();
    int dx = -1;
    for (std::size_t i = 0; i < a.size(); ++i) {
        x[i] = a[i] % q_;
        if (x[i] != 0) dx = static_cast<int>(i);
    }
    int dy = static_cast<int>(b.size()) - 1;
    for (std::size_t i = 0; i < b.size(); ++i) y[i] = b[i];

    const std::uint64_t q = q_;
    int result = 1;
    while (true) {
        if (dy == 0) return result;
        for (int k = dx; k >= dy; --k) {
            const std::uint64_t c = x[k];
            if (c == 0) continue;
            const std::uint64_t neg = q - c;
            for (int j = 0; j <= dy; ++j) {
                x[k - dy + j] = static_cast<Coeff>((x[k - dy + j] + neg * y[j]) % q);
            }
        }
        if (dx >= dy) dx = dy - 1;
        while (dx >= 0 && x[dx] == 0) --dx;
        if (dx < 0) return 0;

        const Coeff lc = x[dx];
        if ((dy & 1) && eta_[lc] < 0) result = -result;
        if (lc != 1) {
            const std::uint64_t li = inv_[lc];
            for (int i = 0; i <= dx; ++i) x[i] = static_cast<Coeff>(x[i] * li % q);
        }
        if (dx == 0) return result;
        if (flip_sign_ && (dx & 1) && (dy & 1)) result = -result;
        std::swap(x, y);
        std::swap(dx, dy);
    }
}

namespace {

const SymbolKernel& kernel_for(std::uint32_t q) {
    thread_local std::uint32_t cached_q = 0;
    thread_local std::unique_ptr<SymbolKernel> cached;
    if (cached_q != q) {
        cached = std::make_unique<SymbolKernel>(q);
        cached_q = q;
    }
    return *cached;
}

}  // namespace

int residue_symbol(const Polynomial& f, const Polynomial& h) {
    if (f.field_order() != h.field_order()) throw std::domain_error("residue symbol over different fields");
    if (h.is_zero() || !h.is_monic() || h.is_constant()) {
        throw std::domain_error("residue symbol: bottom must be monic of degree >= 1");
    }
    validate_field_prime(h.field_order(), FieldMode::experimental);
    if (!f.is_zero() && f.degree() >= 64) return residue_symbol(f % h, h);
    return kernel_for(h.field_order()).symbol(f.coefficients(), h.coefficients());
}

int residue_symbol_euler(const Polynomial& f, const Polynomial& h) {
    if (h.is_zero() || !h.is_monic() || h.is_constant()) {
        throw std::domain_error("residue symbol: bottom must be monic of degree >= 1");
    }
    int result = 1;
    for (const auto& pp : factor(h)) {
        ExtensionField residue_field(h.field_order(), pp.prime);
        const Polynomial r = f % pp.prime;
        ExtensionField::Element e = residue_field.zero();
        for (int i = 0; !r.is_zero() && i <= r.degree(); ++i) e[static_cast<std::size_t>(i)] = r.coeff(i);
        const int chi = residue_field.quad_char(e);
        if (chi == 0) return 0;
        if (chi < 0 && pp.exponent % 2 == 1) result = -result;
    }
    return result;
}

int chi_eval(const Polynomial& D, const Polynomial& f) {
    if (!f.is_monic()) throw std::domain_error("chi_eval: argument must be monic");
    if (f.is_constant()) return 1;
    return residue_symbol(D, f);
}

namespace {

double square_main_factor(const Polynomial& f) {
    double prod = 1.0;
    for (const auto& pp : factor(f)) {
        const double norm = static_cast<double>(pp.prime.norm());
        prod *= norm / (norm + 1.0);
    }
    return prod;
}

std::int64_t sum_symbols_over(std::span<const Polynomial> members, const Polynomial& f) {
    if (f.is_constant()) return static_cast<std::int64_t>(members.size());
    const SymbolKernel kernel(f.field_order());
    const auto bottom = f.coefficients();
    std::int64_t sum = 0;
    const auto n = static_cast<std::int64_t>(members.size());
#pragma omp parallel for reduction(+ : sum) schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        sum += kernel.symbol(members[static_cast<std::size_t>(i)].coefficients(), bottom);
    }
    return sum;
}

void check_twist(const Polynomial& f) {
    if (f.is_zero() || !f.is_monic()) throw std::domain_error("character sum needs monic nonzero f");
    require_standard_field(f.field_order());
}

}  // namespace

CharSumReport charsum_H(const Polynomial& f, std::span<const Polynomial> members, int g) {
    check_twist(f);
    const double X = std::pow(static_cast<double>(f.field_order()), 2 * g + 1);
    const double q = f.field_order();
    CharSumReport r{sum_symbols_over(members, f), 0.0, 0.0};
    if (is_perfect_square(f)) r.main = X * (1.0 - 1.0 / q) * square_main_factor(f);
    const double scale = std::sqrt(X) * std::pow(static_cast<double>(f.norm()), 0.25);
    r.bound_ratio = std::abs(static_cast<double>(r.empirical) - r.main) / scale;
    return r;
}

CharSumReport charsum_H(const Polynomial& f, std::uint32_t q, int g) {
    if (f.field_order() != q) throw std::invalid_argument("charsum_H: f is not over F_q");
    const auto members = enumerate_family(FamilySpec::from_genus(FamilyKind::H, q, g));
    return charsum_H(f, members, g);
}

CharSumReport charsum_P(const Polynomial& f, std::span<const Polynomial> members, int g) {
    check_twist(f);
    const double X = std::pow(static_cast<double>(f.field_order()), 2 * g + 1);
    const double log_q_X = 2.0 * g + 1.0;
    CharSumReport r{sum_symbols_over(members, f), 0.0, 0.0};
    const bool square = is_perfect_square(f);
    if (square) r.main = X / log_q_X;
    const double scale = square ? std::sqrt(X) : std::sqrt(X) * f.degree() / log_q_X;
    r.bound_ratio = std::abs(static_cast<double>(r.empirical) - r.main) / scale;
    return r;
}

CharSumReport charsum_P(const Polynomial& f, std::uint32_t q, int g) {
    if (f.field_order() != q) throw std::invalid_argument("charsum_P: f is not over F_q");
    const auto members = enumerate_family(FamilySpec::from_genus(FamilyKind::P, q, g));
    return charsum_P(f, members, g);
}

}  // namespace ffq
