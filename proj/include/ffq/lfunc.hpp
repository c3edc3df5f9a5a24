#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ffq/polynomial.hpp"

namespace ffq {

class MonicTable;

/// Coefficients a_n = sum_{f in M_n} chi_D(f) of L(u, chi_D).
///
/// For square-free D of odd degree 2g+1 the polynomial has degree 2g with
/// a_0 = 1 and a_{2g-n} = q^{g-n} a_n. Other monic D carry the degree bound
/// deg(D) - 1 and no genus.
struct LPolynomial {
    Polynomial modulus;
    std::vector<std::int64_t> coefficients;
    std::optional<int> genus;
    bool primitive = true;

    // Index of the last nonzero coefficient.
    int degree() const;
    std::uint32_t q() const { return modulus.field_order(); }
};

enum class LStrictness { strict, general };

// Direct evaluation: sums chi_D over every M_n up to the degree bound.
// Strict mode rejects non-square-free D.
LPolynomial l_coefficients(const Polynomial& D, LStrictness mode = LStrictness::strict);

// Coefficients a_0..a_g summed directly, the rest by reflection.
LPolynomial l_coefficients_reflected(const Polynomial& D);

/// L(1/2, chi_D) = (A + B sqrt(q)) / q^g exactly.
struct CentralValue {
    std::int64_t A = 0;
    std::int64_t B = 0;
    int genus = 0;
    std::uint32_t q = 0;
    double value = 0.0;

    // Sign of A + B sqrt(q) decided in integers.
    int exact_sign() const;
};

CentralValue central_value(const LPolynomial& L);

std::complex<double> l_eval(const LPolynomial& L, std::complex<double> u);

struct AfeResult {
    std::complex<double> lhs;
    std::complex<double> rhs;
};

// lhs = L(u/sqrt(q))^k, rhs = the two finite sums over M_{<=kg} and
// M_{<=kg-1} weighted by d_{k,A}. Requires |u| = 1 and D in the H family.
AfeResult afe_eval(const Polynomial& D, std::complex<double> u, int k);
AfeResult afe_eval(const Polynomial& D, std::complex<double> u, int k, const MonicTable& table);

struct LZero {
    std::complex<double> root;
    double rh_residual;     // ||root| - q^{-1/2}|
    double backward_error;  // |L(root)| / sum |a_n||root|^n
    int multiplicity;
};

class RootFindingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// All roots of L(u) with multiplicity. Repeated factors are split off
/// exactly (square-free decomposition over Q), each factor's roots come
/// from companion-matrix eigenvalues followed by Newton polishing.
std::vector<LZero> zeros(const LPolynomial& L);

// sum_{|P|<=x} chi_D(P)|P|^{-1/2-1/log x} log(x/|P|)/log x
//   + (1/2) log log x + log X / log x, with x = q^h, 1 <= h <= 2g.
double log_l_upper_bound(const Polynomial& D, int h);

// m/h + (1/h) Re sum_{j>=1, j deg P <= h} chi_D(P^j) (h - j deg P) /
//   (j |P|^{j(1/2 + z + 1/(h log q))}), m = 2g, Re z >= 0.
double log_l_upper_bound_general(const Polynomial& D, int h, std::complex<double> z);

struct PerronResult {
    double direct;
    double contour;
};

/// sum_{n<=N} a(n) two ways: directly, and by the trapezoidal rule for the
/// contour integral of (sum a(n) u^n) / ((1-u) u^{N+1}) on |u| = r.
/// Throws std::domain_error if the terms |a(n)| r^n fail to decay.
PerronResult perron_check(const std::function<double(std::size_t)>& coeff, int N, double r);

}  // namespace ffq
