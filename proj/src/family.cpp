#include "ffq/family.hpp"

#include <limits>
#include <stdexcept>

#include "ffq/arith.hpp"
#include "ffq/factor.hpp"
#include "ffq/kernels.hpp"

namespace ffq {

std::uint64_t ipow(std::uint64_t base, unsigned exp) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) {
            throw std::overflow_error("integer power overflows 64 bits");
        }
        r *= base;
    }
    return r;
}

std::uint64_t monic_count(std::uint32_t q, int n) {
    if (n < 0) throw std::domain_error("negative degree");
    return ipow(q, static_cast<unsigned>(n));
}

Polynomial monic_from_rank(std::uint32_t q, int n, std::uint64_t rank) {
    std::vector<Coeff> c(static_cast<std::size_t>(n) + 1, 0);
    c[static_cast<std::size_t>(n)] = 1;
    for (int i = n - 1; i >= 0; --i) {
        c[static_cast<std::size_t>(i)] = static_cast<Coeff>(rank % q);
        rank /= q;
    }
    if (rank != 0) throw std::out_of_range("monic rank out of range");
    return Polynomial(q, std::move(c));
}

std::uint64_t rank_of_monic(const Polynomial& f) {
    if (!f.is_monic()) throw std::domain_error("rank_of_monic needs a monic polynomial");
    const int n = f.degree();
    std::uint64_t rank = 0;
    for (int i = 0; i < n; ++i) rank = rank * f.field_order() + f.coeff(i);
    return rank;
}

std::string to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::H: return "H";
        case FamilyKind::P: return "P";
        case FamilyKind::M: return "M";
    }
    return "?";
}

FamilyKind family_kind_from_string(const std::string& s) {
    if (s == "H" || s == "h") return FamilyKind::H;
    if (s == "P" || s == "p") return FamilyKind::P;
    if (s == "M" || s == "m") return FamilyKind::M;
    throw std::invalid_argument("unknown family '" + s + "' (expected H, P or M)");
}

int FamilySpec::genus() const {
    if (n < 1 || n % 2 == 0) throw std::domain_error("genus needs odd degree n = 2g+1");
    return (n - 1) / 2;
}

double FamilySpec::X() const { return static_cast<double>(ipow(q, static_cast<unsigned>(n))); }

bool FamilySpec::contains(const Polynomial& f) const {
    if (f.field_order() != q || !f.is_monic() || f.degree() != n) return false;
    switch (kind) {
        case FamilyKind::M: return true;
        case FamilyKind::H: return is_squarefree(f);
        case FamilyKind::P: return is_irreducible(f);
    }
    return false;
}

std::uint64_t FamilySpec::expected_size() const {
    switch (kind) {
        case FamilyKind::M: return monic_count(q, n);
        case FamilyKind::H:
            if (n <= 1) return monic_count(q, n);
            return monic_count(q, n) - monic_count(q, n - 1);
        case FamilyKind::P: return prime_count(q, n);
    }
    return 0;
}

FamilyStream::FamilyStream(FamilySpec spec, std::uint64_t begin_rank,
                           std::optional<std::uint64_t> end_rank)
    : spec_(spec), rank_(begin_rank), end_(end_rank.value_or(monic_count(spec.q, spec.n))) {
    if (spec.n < 1) throw std::domain_error("family degree must be >= 1");
    if (end_ > monic_count(spec.q, spec.n)) throw std::out_of_range("family rank range");
}

std::optional<Polynomial> FamilyStream::next() {
    while (rank_ < end_) {
        Polynomial f = monic_from_rank(spec_.q, spec_.n, rank_++);
        if (spec_.contains(f)) return f;
    }
    return std::nullopt;
}

std::vector<Polynomial> enumerate_family(const FamilySpec& spec) {
    return omp::family_members(spec);
}

}  // namespace ffq
