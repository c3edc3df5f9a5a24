#include "ffq/charsym.hpp"
#include "ffq/kernels.hpp"

namespace ffq::serial {

std::vector<Polynomial> family_members(const FamilySpec& spec) {
    std::vector<Polynomial> out;
    FamilyStream stream(spec);
    while (auto f = stream.next()) out.push_back(std::move(*f));
    return out;
}

std::vector<LPolynomial> l_polynomials(std::span<const Polynomial> moduli, LMode mode) {
    std::vector<LPolynomial> out;
    out.reserve(moduli.size());
    for (const auto& D : moduli) {
        out.push_back(mode == LMode::full ? l_coefficients(D, LStrictness::general) : l_coefficients_reflected(D));
    }
    return out;
}

std::int64_t character_sum(std::span<const Polynomial> members, const Polynomial& f) {
    if (!f.is_monic()) throw std::domain_error("character_sum: f must be monic");
    if (f.is_constant()) return static_cast<std::int64_t>(members.size());
    std::int64_t sum = 0;
    for (const auto& D : members) sum += residue_symbol(D, f);
    return sum;
}

}  // namespace ffq::serial
