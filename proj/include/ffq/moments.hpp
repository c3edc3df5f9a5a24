#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffq/family.hpp"
#include "ffq/lfunc.hpp"
#include "ffq/mollifier.hpp"
#include "ffq/polynomial.hpp"

namespace ffq {

/// Members of an H or P family with their L-polynomials and exact central
/// values, all in canonical order.
struct FamilyValues {
    FamilySpec spec;
    std::vector<Polynomial> members;
    std::vector<LPolynomial> L;
    std::vector<CentralValue> central;

    int genus() const { return spec.genus(); }
    std::vector<double> central_floats() const;
};

// Any odd prime q is accepted; the main terms below assume q = 1 (mod 4).
FamilyValues family_values(const FamilySpec& spec);

struct MomentReport {
    FamilySpec family;
    double k = 0.0;                 // moment order (moments, theta rows)
    std::optional<Polynomial> l;    // twist
    std::optional<Polynomial> l1;   // l = l1 l2^2, l1 square-free
    std::optional<Polynomial> l2;
    double empirical = 0.0;
    double main = 0.0;
    double normalized_error = 0.0;
    std::string normalization;
    bool exact = false;             // empirical came from an exact sum
};

/// sum |L(1/2, chi)|^k over the family. Integer k is summed exactly in
/// Z[sqrt q] when k is even or every central value is certified >= 0;
/// other k use the float central values with a fixed reduction tree.
/// normalized_error = empirical / main.
MomentReport moment(const FamilyValues& fv, double k);

// (A + B sqrt q)^k summed exactly, returned as the pair (sum A', sum B')
// with sum |L|^k = (A' + B' sqrt q) / q^{gk}; also usable for exact checks.
struct ExactSum {
    std::string a;  // decimal
    std::string b;
    int scale_exponent;  // g k
    double value;
};
ExactSum exact_power_sum(const FamilyValues& fv, int k);

MomentReport twisted_first_moment_P(const FamilyValues& primes, const Polynomial& l);
MomentReport twisted_second_moment_P(const FamilyValues& primes, const Polynomial& l);

// C(l) = 1 + 1/q if deg l is even, 2 otherwise.
double second_moment_C(const Polynomial& l);

/// Euler product prod_P (1 - 1/(|P|(|P|+1))) truncated at prime degree
/// `cutoff`, with tail bound sum_{d > cutoff} pi_A(d) / q^{2d}.
struct EulerProduct {
    double value;
    int cutoff;
    double tail_bound;
};
// Smallest cutoff whose tail bound is below `tail`.
EulerProduct euler_constant_C(std::uint32_t q, double tail = 1e-6);
EulerProduct euler_constant_C_at(std::uint32_t q, int cutoff);
// prod_{P | l} ((|P|+1)/|P|) (1 - 1/(|P|(|P|+1))).
double euler_g(const Polynomial& l);

using PrimeConstantMap = std::function<double(const Polynomial&)>;

// Main term with the supplied C1 and C1(P) (C1(P) = 0 when not given).
MomentReport twisted_first_moment_H(const FamilyValues& H, const Polynomial& l, double C1,
                                    const PrimeConstantMap& C1P = {});

struct C1Fit {
    double C1;
    double residual;  // sum over g of (empirical - main)^2 at the fitted C1
};
// Least-squares C1 over the supplied H families (C1(P) = 0).
C1Fit fit_c1(std::span<const FamilyValues> families, const Polynomial& l);

struct ThetaRow {
    double theta;
    double theta_bar;
    double empirical;
    double bound;
    double ratio;
};
struct ThetaProfile {
    double epsilon;
    std::vector<ThetaRow> rows;
    double max_ratio;
};
// sum_P |L(e^{i theta}/sqrt q, chi_P)|^2 against
// (X/log_q X) g^{1+eps} min{g, 1/(2 theta_bar)}^2.
ThetaProfile second_moment_theta(const FamilyValues& primes, std::span<const double> theta_grid, double epsilon = 0.1);

struct MagnitudeRow {
    FamilyKind kind;
    int g;
    double k;
    double empirical;
    double main;
    double ratio;
    std::optional<double> step;  // ratio / ratio at the previous g
    bool flagged;                // step outside (1/3, 3)
};
struct MagnitudeReport {
    std::uint32_t q;
    std::vector<MagnitudeRow> rows;
    bool any_flagged;
    bool non_monotone;  // some (family, k) ratio sequence changes direction
};
MagnitudeReport order_of_magnitude_report(std::uint32_t q, std::span<const int> g_list, std::span<const double> k_list);
MagnitudeReport order_of_magnitude_report(std::span<const FamilyValues> families, std::span<const double> k_list);

struct MollifiedSums {
    double S_LM;   // sum L M(D, 2k-1)
    double S_M;    // sum M(D, 2k-1)^{2k/(2k-1)}
    double S_L2M;  // sum L^2 M(D, 2k-2)
    double norm_LM;
    double norm_M;
    double norm_L2M;
    bool capped;
};
// k2 = 2k; throws std::domain_error when 2k = 1.
MollifiedSums mollified_sums(const FamilyValues& fv, double k2, const MollifierSchedule& s);

/// Coefficients of v^0..v^N on both sides of
///   sum_f d_A(l1 f^2) v^{deg f} = d_A(l1) C(v; l1) (1 - q v^2) / (1 - q v)^3
/// with C(v; l1) = prod_{P | l1} (1 + v^{deg P})^{-1}; l1 square-free.
struct SeriesCheck {
    std::vector<std::int64_t> lhs;
    std::vector<std::int64_t> rhs;
    bool equal;
};
SeriesCheck divisor_series_check(const Polynomial& l1, int N);

}  // namespace ffq
