#include "ffq/verify.hpp"

#include <cmath>
#include <complex>
#include <algorithm>
#include <numbers>
#include <random>

#include "ffq/charsym.hpp"
#include "ffq/kernels.hpp"
#include "ffq/lfunc.hpp"
#include "ffq/monic_table.hpp"
#include "ffq/polynomial.hpp"
#include "ffq/zeta_oracle.hpp"

namespace ffq {

namespace {

// Runs check(i) over every index in parallel and folds the per-index results
// in order, so the first failure reported does not depend on scheduling.
template <class Check>
CountSummary count_failures(const std::vector<Polynomial>& moduli, Check check) {
    std::vector<std::string> bad(moduli.size());
    std::vector<char> failed(moduli.size(), 0);
    const auto n = static_cast<std::int64_t>(moduli.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        try {
            std::string why;
            if (!check(moduli[u], why)) {
                failed[u] = 1;
                bad[u] = std::move(why);
            }
        } catch (const std::exception& e) {
            failed[u] = 1;
            bad[u] = e.what();
        }
    }
    CountSummary s;
    s.checked = moduli.size();
    for (std::size_t i = 0; i < moduli.size(); ++i) {
        if (!failed[i]) continue;
        if (s.failures++ == 0) {
            s.first_failure = moduli[i];
            s.detail = bad[i];
        }
    }
    return s;
}

}  // namespace

std::vector<Polynomial> sample_family(const FamilySpec& spec, std::size_t count, std::uint64_t seed) {
    auto all = enumerate_family(spec);
    if (count >= all.size()) return all;
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> idx(all.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng() % (idx.size() - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(count);
    std::sort(idx.begin(), idx.end());
    std::vector<Polynomial> out;
    out.reserve(count);
    for (auto i : idx) out.push_back(all[i]);
    return out;
}

RhSummary verify_rh(const std::vector<Polynomial>& moduli) {
    const auto L = omp::l_polynomials(moduli, LMode::reflected);
    std::vector<double> worst(L.size(), 0.0);
    std::vector<std::size_t> roots(L.size(), 0);
    std::vector<std::string> errors(L.size());
    const auto n = static_cast<std::int64_t>(L.size());
#pragma omp parallel for schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        try {
            for (const auto& z : zeros(L[u])) {
                worst[u] = std::max(worst[u], z.rh_residual);
                roots[u] += static_cast<std::size_t>(z.multiplicity);
            }
        } catch (const std::exception& e) {
            errors[u] = e.what();
        }
    }
    RhSummary s;
    s.moduli = L.size();
    for (std::size_t i = 0; i < L.size(); ++i) {
        if (!errors[i].empty()) throw RootFindingError(errors[i]);
        s.roots += roots[i];
        if (!s.worst || worst[i] > s.max_residual) {
            s.max_residual = worst[i];
            s.worst = moduli[i];
        }
    }
    return s;
}

AfeSummary verify_afe(const std::vector<Polynomial>& moduli, const std::vector<int>& ks, int roots) {
    AfeSummary s;
    if (moduli.empty()) return s;
    const std::uint32_t q = moduli.front().field_order();
    const int g = (moduli.front().degree() - 1) / 2;
    for (const int k : ks) {
        const MonicTable table(q, k * g);
        std::vector<double> err(moduli.size() * static_cast<std::size_t>(roots), 0.0);
        std::string first_error;
        const auto n = static_cast<std::int64_t>(moduli.size());
#pragma omp parallel for schedule(dynamic, 1)
        for (std::int64_t i = 0; i < n; ++i) {
            try {
                for (int r = 0; r < roots; ++r) {
                    const auto u = std::polar(1.0, 2.0 * std::numbers::pi * r / roots);
                    const auto res = afe_eval(moduli[static_cast<std::size_t>(i)], u, k, table);
                    err[static_cast<std::size_t>(i) * static_cast<std::size_t>(roots) + static_cast<std::size_t>(r)] =
                        std::abs(res.lhs - res.rhs) / (1.0 + std::abs(res.lhs));
                }
            } catch (const std::exception& e) {
#pragma omp critical(ffq_afe_error)
                if (first_error.empty()) first_error = moduli[static_cast<std::size_t>(i)].to_text() + ": " + e.what();
            }
        }
        if (!first_error.empty()) throw std::domain_error(first_error);
        for (std::size_t i = 0; i < err.size(); ++i) {
            ++s.cases;
            if (!s.worst || err[i] > s.max_scaled_error) {
                s.max_scaled_error = err[i];
                s.worst = moduli[i / static_cast<std::size_t>(roots)];
            }
        }
    }
    return s;
}

CountSummary verify_oracle(const std::vector<Polynomial>& moduli) {
    return count_failures(moduli, [](const Polynomial& D, std::string& why) {
        const auto c = cross_check(D);
        if (c.equal) return true;
        const auto& d = c.diffs.front();
        why = "a_" + std::to_string(d.n) + ": zeta numerator " + std::to_string(d.expected) + ", L-polynomial " +
              std::to_string(d.actual);
        return false;
    });
}

CountSummary verify_nonneg(const std::vector<Polynomial>& moduli) {
    return count_failures(moduli, [](const Polynomial& D, std::string& why) {
        const auto c = central_value(l_coefficients_reflected(D));
        if (c.exact_sign() >= 0) return true;
        why = "A = " + std::to_string(c.A) + ", B = " + std::to_string(c.B);
        return false;
    });
}

CountSummary verify_reflection(const std::vector<Polynomial>& moduli) {
    return count_failures(moduli, [](const Polynomial& D, std::string& why) {
        const auto L = l_coefficients(D);
        const int g = *L.genus;
        const auto q = static_cast<std::int64_t>(D.field_order());
        for (int k = 0; k <= g; ++k) {
            std::int64_t scale = 1;
            for (int i = 0; i < g - k; ++i) scale *= q;
            const auto lo = L.coefficients[static_cast<std::size_t>(k)];
            const auto hi = L.coefficients[static_cast<std::size_t>(2 * g - k)];
            if (hi != scale * lo) {
                why = "a_" + std::to_string(2 * g - k) + " = " + std::to_string(hi) + " but q^" + std::to_string(g - k) +
                      " a_" + std::to_string(k) + " = " + std::to_string(scale * lo);
                return false;
            }
        }
        return true;
    });
}

CountSummary verify_reciprocity(std::uint32_t q, int max_degree, std::size_t pairs, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto random_monic = [&](int d) {
        std::vector<Coeff> c(static_cast<std::size_t>(d) + 1);
        for (int i = 0; i < d; ++i) c[static_cast<std::size_t>(i)] = static_cast<Coeff>(rng() % q);
        c.back() = 1;
        return Polynomial(q, std::move(c));
    };
    std::vector<std::pair<Polynomial, Polynomial>> work;
    while (work.size() < pairs) {
        auto c = random_monic(1 + static_cast<int>(rng() % static_cast<unsigned>(max_degree)));
        auto d = random_monic(1 + static_cast<int>(rng() % static_cast<unsigned>(max_degree)));
        if (gcd(c, d).degree() > 0) continue;
        work.emplace_back(std::move(c), std::move(d));
    }
    CountSummary s;
    s.checked = work.size();
    std::vector<std::string> bad(work.size());
    const auto n = static_cast<std::int64_t>(work.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto& [c, d] = work[static_cast<std::size_t>(i)];
        const int cd = residue_symbol(c, d);
        const int dc = residue_symbol(d, c);
        std::string why;
        if (cd != residue_symbol_euler(c, d)) why = "fast symbol disagrees with Euler's criterion";
        const bool odd = ((q - 1) / 2) % 2 == 1 && c.degree() % 2 == 1 && d.degree() % 2 == 1;
        if (why.empty() && cd * dc != (odd ? -1 : 1)) why = "reciprocity sign";
        bad[static_cast<std::size_t>(i)] = std::move(why);
    }
    for (std::size_t i = 0; i < work.size(); ++i) {
        if (bad[i].empty()) continue;
        if (s.failures++ == 0) {
            s.first_failure = work[i].first;
            s.detail = bad[i] + " with bottom " + work[i].second.to_text();
        }
    }
    return s;
}

}  // namespace ffq
