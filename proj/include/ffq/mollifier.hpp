#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ffq/polynomial.hpp"

namespace ffq {

class DegenerateSchedule : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

enum class ScheduleMode { paper, desk };

std::string to_string(ScheduleMode mode);

/// alpha_0 < alpha_1 < ... < alpha_J. Segment j (1 <= j <= J) covers the
/// primes with X^{alpha_{j-1}} < |Q| <= X^{alpha_j}.
///
/// log_X is the natural log of X, so that paper-mode schedules with
/// astronomically large X stay representable. q and g are 0 for a schedule
/// that is not tied to a concrete family; such schedules cannot be evaluated.
struct MollifierSchedule {
    std::uint32_t q = 0;
    int g = 0;
    double log_X = 0.0;
    int M = 0;
    std::vector<double> alphas;
    int J = 0;
    ScheduleMode mode = ScheduleMode::desk;
    int cap = 64;  // bound on the truncation order 2*ceil(y_j); must be even

    double log_q_X() const;
    // y_j = e^5 alpha_j^{-3/4}.
    double y(int j) const;
    // min(2*ceil(y_j), cap).
    int order(int j) const;
    // Some segment had its order reduced by the cap.
    bool capped() const;
    // Degree window (lo, hi] of segment j: lo < deg Q <= hi.
    std::pair<int, int> degree_window(int j) const;
};

// Paper schedule for a given log X. Requires log log X > 1; throws
// DegenerateSchedule when no j >= 1 has alpha_j <= 10^{-M}.
MollifierSchedule schedule_paper(double log_X, int M);
// Same, tied to X = q^{2g+1}.
MollifierSchedule schedule_paper(std::uint32_t q, int g, int M);

// Explicit alpha_0..alpha_J, strictly increasing and positive. M is recorded
// only.
MollifierSchedule schedule_desk(std::uint32_t q, int g, std::vector<double> alphas, int cap = 64, int M = 0);

struct ScheduleBudget {
    double sum;    // sum_j 2 alpha_j ceil(y_j)
    double bound;  // 5 e^5 10^{-M/4}
    bool within;
};
// The paper's length budget for the product of truncated exponentials.
ScheduleBudget schedule_budget(const MollifierSchedule& s);

struct DirichletLength {
    double degrees;  // sum_j floor(alpha_j log_q X) * 2 ceil(y_j)
    double budget;   // sum_j 2 alpha_j ceil(y_j) * log_q X
};
DirichletLength dirichlet_length(const MollifierSchedule& s);

// Schedule files: {"q", "g", "M", "mode", "alphas", optional "cap"}.
// A paper-mode file is rebuilt from q, g and M.
MollifierSchedule load_schedule(const std::filesystem::path& path);
void save_schedule(const MollifierSchedule& s, const std::filesystem::path& path);
std::string schedule_to_json(const MollifierSchedule& s);
MollifierSchedule schedule_from_json(const std::string& text);

// E_y(x) = sum_{j=0}^{2 ceil(y)} x^j / j!.
double truncated_exp(double y, double x);
// sum_{j=0}^{order} x^j / j!.
double truncated_exp_order(int order, double x);

// P_j(D) for one segment, and all of P_1..P_J at once.
double prime_segment(const Polynomial& D, int j, const MollifierSchedule& s);
std::vector<double> prime_segments(const Polynomial& D, const MollifierSchedule& s);

// M(D, alpha) = prod_j E_{y_j}(alpha P_j(D)), truncation capped per s.cap.
double mollifier_value(const Polynomial& D, double alpha, const MollifierSchedule& s);
double mollifier_value(std::span<const double> segments, double alpha, const MollifierSchedule& s);

// M_{i,j}(D): primes of window i weighted by
// |Q|^{-1/(alpha_j log X)} log(X^{alpha_j}/|Q|) / log X^{alpha_j}.
double segment_m(const Polynomial& D, int i, int j, const MollifierSchedule& s);

// j with D in T(j) (S(j) for primes): the first level i whose threshold
// |M_{i,l}| <= alpha_i^{-3/4} fails for some l in [i, J] gives i - 1;
// J when nothing fails.
int classify(const Polynomial& D, const MollifierSchedule& s);

struct HolderReport {
    bool small_k;        // the three-factor form
    double k2;           // 2k
    double c;            // 0 for the two-factor form
    double lhs;          // sum L M(D, 2k-1)
    double middle;       // small_k: the re-weighted sum before Hoelder
    double rhs;          // Hoelder bound
    double rhs_printed;  // small_k: third factor with the printed exponents
    double slack;        // rhs - lhs
    bool holds;          // lhs <= middle (small_k) <= rhs, both within 1e-9
    std::vector<double> exponents;
};

/// Both sides of the Hoelder step over a family. `values` are central values
/// of the members, in order. For 2k > 1 no c is used; for 0 < 2k < 1, c must
/// lie in (0, 2k) and the three exponents must be >= 1.
HolderReport holder_check(std::span<const Polynomial> members, std::span<const double> values, double k2,
                          std::optional<double> c, const MollifierSchedule& s);

}  // namespace ffq
