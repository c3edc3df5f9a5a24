#include <algorithm>
#include <stdexcept>

#include <omp.h>

#include "ffq/charsym.hpp"
#include "ffq/factor.hpp"
#include "ffq/kernels.hpp"
#include "ffq/monic_table.hpp"

namespace ffq {

void set_worker_count(int workers) {
    static const int initial = omp_get_max_threads();
    omp_set_num_threads(workers > 0 ? workers : initial);
}

int worker_count() { return omp_get_max_threads(); }

namespace omp {

std::vector<Polynomial> family_members(const FamilySpec& spec) {
    const std::uint64_t total = monic_count(spec.q, spec.n);
    const std::uint64_t chunks = std::min<std::uint64_t>(total, 8 * static_cast<std::uint64_t>(worker_count()));
    std::vector<std::vector<Polynomial>> parts(chunks);
    const auto n_chunks = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t c = 0; c < n_chunks; ++c) {
        const std::uint64_t lo = total * static_cast<std::uint64_t>(c) / chunks;
        const std::uint64_t hi = total * static_cast<std::uint64_t>(c + 1) / chunks;
        FamilyStream stream(spec, lo, hi);
        auto& part = parts[static_cast<std::size_t>(c)];
        while (auto f = stream.next()) part.push_back(std::move(*f));
    }
    std::vector<Polynomial> out;
    std::size_t size = 0;
    for (const auto& p : parts) size += p.size();
    out.reserve(size);
    for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(out));
    return out;
}

namespace {

struct Target {
    int top;  // highest coefficient summed directly
    bool squarefree;
};

}  // namespace

std::vector<LPolynomial> l_polynomials(std::span<const Polynomial> moduli, LMode mode) {
    if (moduli.empty()) return {};
    const std::uint32_t q = moduli.front().field_order();
    std::vector<Target> targets;
    targets.reserve(moduli.size());
    int max_top = 0;
    for (const auto& D : moduli) {
        if (D.field_order() != q) throw std::invalid_argument("l_polynomials: moduli over different fields");
        if (D.is_zero() || !D.is_monic() || D.degree() < 1 || D.degree() >= 64) {
            throw std::domain_error("L-function modulus must be monic of degree 1..63");
        }
        const bool sf = is_squarefree(D);
        if (mode == LMode::reflected && (!sf || D.degree() % 2 == 0)) {
            throw std::domain_error("reflection needs a square-free modulus of odd degree");
        }
        const int top = mode == LMode::full ? D.degree() - 1 : (D.degree() - 1) / 2;
        targets.push_back({top, sf});
        max_top = std::max(max_top, top);
    }

    const MonicTable table(q, max_top);
    const std::size_t rows = table.size();
    std::vector<std::vector<Coeff>> prime_coeffs(rows);
    for (const auto p : table.primes()) {
        const Polynomial P = table.polynomial(p);
        prime_coeffs[p].assign(P.coefficients().begin(), P.coefficients().end());
    }

    const std::size_t count = moduli.size();
    const std::size_t workers = static_cast<std::size_t>(worker_count());
    const std::size_t batch = std::clamp<std::size_t>((count + workers - 1) / workers, 1, 64);
    const auto n_batches = static_cast<std::int64_t>((count + batch - 1) / batch);
    std::vector<LPolynomial> out(count, LPolynomial{moduli.front(), {}, std::nullopt, true});

#pragma omp parallel
    {
        const SymbolKernel kernel(q);
        std::vector<std::int8_t> chi;
#pragma omp for schedule(dynamic)
        for (std::int64_t bi = 0; bi < n_batches; ++bi) {
            const std::size_t lo = static_cast<std::size_t>(bi) * batch;
            const std::size_t width = std::min(batch, count - lo);
            chi.assign(rows * width, 0);
            for (std::size_t j = 0; j < width; ++j) chi[j] = 1;
            for (const auto p : table.primes()) {
                for (std::size_t j = 0; j < width; ++j) {
                    chi[p * width + j] =
                        static_cast<std::int8_t>(kernel.symbol(moduli[lo + j].coefficients(), prime_coeffs[p]));
                }
            }
            for (std::size_t i = 1; i < rows; ++i) {
                const std::size_t s = table.spf(i);
                if (s == i) continue;
                const std::size_t c = table.cofactor(i);
                for (std::size_t j = 0; j < width; ++j) {
                    chi[i * width + j] = static_cast<std::int8_t>(chi[s * width + j] * chi[c * width + j]);
                }
            }
            for (std::size_t j = 0; j < width; ++j) {
                const Polynomial& D = moduli[lo + j];
                const Target t = targets[lo + j];
                LPolynomial L{D, {}, std::nullopt, t.squarefree};
                if (t.squarefree && D.degree() % 2 == 1) L.genus = (D.degree() - 1) / 2;
                for (int n = 0; n <= t.top; ++n) {
                    std::int64_t s = 0;
                    for (std::size_t i = table.offset(n); i < table.offset(n + 1); ++i) s += chi[i * width + j];
                    L.coefficients.push_back(s);
                }
                if (mode == LMode::reflected) {
                    const int g = *L.genus;
                    L.coefficients.resize(static_cast<std::size_t>(2 * g) + 1);
                    for (int n = 0; n < g; ++n) {
                        L.coefficients[static_cast<std::size_t>(2 * g - n)] =
                            static_cast<std::int64_t>(ipow(q, static_cast<unsigned>(g - n))) *
                            L.coefficients[static_cast<std::size_t>(n)];
                    }
                }
                out[lo + j] = std::move(L);
            }
        }
    }
    return out;
}

std::int64_t character_sum(std::span<const Polynomial> members, const Polynomial& f) {
    if (!f.is_monic()) throw std::domain_error("character_sum: f must be monic");
    if (f.is_constant()) return static_cast<std::int64_t>(members.size());
    const SymbolKernel kernel(f.field_order());
    const auto bottom = f.coefficients();
    const auto n = static_cast<std::int64_t>(members.size());
    std::int64_t sum = 0;
#pragma omp parallel for reduction(+ : sum) schedule(static)
    for (std::int64_t i = 0; i < n; ++i) sum += kernel.symbol(members[static_cast<std::size_t>(i)].coefficients(), bottom);
    return sum;
}

}  // namespace omp
}  // namespace ffq
