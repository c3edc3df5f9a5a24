#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ffq/polynomial.hpp"

namespace ffq {

/// Quadratic residue symbol (f/h) for monic non-constant h, computed by the
/// Euclidean reduction with quadratic reciprocity. Constants pull out as
/// eta(c)^{deg h}; the reciprocity sign (-1)^{deg a deg b (q-1)/2} is applied
/// at every flip, so the routine is exact for every odd q.
/// (0/h) = 0. Throws std::domain_error if h is non-monic or constant.
int residue_symbol(const Polynomial& f, const Polynomial& h);

/// Independent route: factor h by trial division and evaluate the Euler
/// criterion of f mod P in the residue field F_q[T]/(P) for each prime P | h.
int residue_symbol_euler(const Polynomial& f, const Polynomial& h);

// chi_D(f) = (D/f); chi_D(1) = 1. f must be monic.
int chi_eval(const Polynomial& D, const Polynomial& f);

/// Raw coefficient form of the fast symbol for the hot loops. Coefficients
/// are ascending; `b` must be monic with degree >= 1 and both must have
/// degree < 64. Tables are indexed by residue: eta[c] is the Legendre symbol
/// and inv[c] the inverse of c in F_q.
class SymbolKernel {
public:
    explicit SymbolKernel(std::uint32_t q);

    std::uint32_t q() const noexcept { return q_; }
    int eta(Coeff c) const noexcept { return eta_[c]; }

    int symbol(std::span<const Coeff> a, std::span<const Coeff> b) const;

private:
    std::uint32_t q_;
    bool flip_sign_;  // (q-1)/2 odd
    std::vector<std::int8_t> eta_;
    std::vector<Coeff> inv_;
};

struct CharSumReport {
    std::int64_t empirical;
    double main;
    double bound_ratio;
};

// Sum over the H family of (D/f); main term delta_{f square} X/zeta_A(2)
// prod_{P|f} |P|/(|P|+1); bound_ratio = |empirical - main| / (X^{1/2}|f|^{1/4}).
CharSumReport charsum_H(const Polynomial& f, std::uint32_t q, int g);
CharSumReport charsum_H(const Polynomial& f, std::span<const Polynomial> members, int g);

// Sum over the P family of (P/f); main term delta_{f square} X/log_q X.
// Non-square f are normalised by X^{1/2} deg(f)/log_q X, squares by X^{1/2}.
CharSumReport charsum_P(const Polynomial& f, std::uint32_t q, int g);
CharSumReport charsum_P(const Polynomial& f, std::span<const Polynomial> members, int g);

}  // namespace ffq
