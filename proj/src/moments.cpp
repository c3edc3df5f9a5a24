#include "ffq/moments.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "ffq/arith.hpp"
#include "ffq/charsym.hpp"
#include "ffq/factor.hpp"
#include "ffq/field.hpp"
#include "ffq/kernels.hpp"

namespace ffq {

namespace {

using BigInt = boost::multiprecision::cpp_int;

// (a + b sqrt q) / q^e without cancellation.
long double z_sqrt_value(const BigInt& a, const BigInt& b, std::uint32_t q, int e) {
    const long double rq = std::sqrt(static_cast<long double>(q));
    const long double scale = std::pow(static_cast<long double>(q), static_cast<long double>(e));
    const auto la = a.convert_to<long double>();
    const auto lb = b.convert_to<long double>();
    if ((a >= 0) == (b >= 0) || a == 0 || b == 0) return (la + lb * rq) / scale;
    const BigInt norm = a * a - BigInt(q) * b * b;
    return norm.convert_to<long double>() / (la - lb * rq) / scale;
}

int twist_symbol(const Polynomial& member, const Polynomial& l) {
    if (l.is_constant()) return 1;
    return residue_symbol(member, l);
}

void check_twist(const Polynomial& l, const FamilyValues& fv) {
    if (l.is_zero() || !l.is_monic()) throw std::domain_error("twist l must be monic and nonzero");
    if (l.field_order() != fv.spec.q) throw std::invalid_argument("twist l is over a different field");
}

std::vector<std::int64_t> twist_values(const FamilyValues& fv, const Polynomial& l) {
    std::vector<std::int64_t> chi(fv.members.size());
    const auto n = static_cast<std::int64_t>(chi.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) chi[static_cast<std::size_t>(i)] = twist_symbol(fv.members[static_cast<std::size_t>(i)], l);
    return chi;
}

void fill_split(MomentReport& r, const Polynomial& l) {
    const auto split = squarefree_split(l);
    r.l = l;
    r.l1 = split.l1;
    r.l2 = split.l2;
}

double log_q_X(const FamilySpec& s) { return static_cast<double>(s.n); }

}  // namespace

std::vector<double> FamilyValues::central_floats() const {
    std::vector<double> v;
    v.reserve(central.size());
    for (const auto& c : central) v.push_back(c.value);
    return v;
}

FamilyValues family_values(const FamilySpec& spec) {
    if (spec.kind == FamilyKind::M) throw std::domain_error("family values need an H or P family");
    validate_field_prime(spec.q, FieldMode::experimental);
    FamilyValues fv{spec, enumerate_family(spec), {}, {}};
    fv.L = omp::l_polynomials(fv.members, LMode::reflected);
    fv.central.resize(fv.L.size());
    const auto n = static_cast<std::int64_t>(fv.L.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) fv.central[static_cast<std::size_t>(i)] = central_value(fv.L[static_cast<std::size_t>(i)]);
    return fv;
}

ExactSum exact_power_sum(const FamilyValues& fv, int k) {
    if (k < 0) throw std::domain_error("exact_power_sum: k must be >= 0");
    const std::uint32_t q = fv.spec.q;
    std::vector<BigInt> as(fv.central.size());
    std::vector<BigInt> bs(fv.central.size());
    const auto n = static_cast<std::int64_t>(fv.central.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto& c = fv.central[static_cast<std::size_t>(i)];
        BigInt a = 1;
        BigInt b = 0;
        for (int j = 0; j < k; ++j) {
            BigInt na = a * c.A + BigInt(q) * b * c.B;
            BigInt nb = a * c.B + b * c.A;
            a = std::move(na);
            b = std::move(nb);
        }
        as[static_cast<std::size_t>(i)] = std::move(a);
        bs[static_cast<std::size_t>(i)] = std::move(b);
    }
    BigInt A = 0;
    BigInt B = 0;
    for (std::size_t i = 0; i < as.size(); ++i) {
        A += as[i];
        B += bs[i];
    }
    const int e = fv.genus() * k;
    return {A.str(), B.str(), e, static_cast<double>(z_sqrt_value(A, B, q, e))};
}

MomentReport moment(const FamilyValues& fv, double k) {
    if (!(k >= 0) || !std::isfinite(k)) throw std::domain_error("moment: k must be a finite real >= 0");
    MomentReport r;
    r.family = fv.spec;
    r.k = k;
    const double LX = log_q_X(fv.spec);
    const double X = fv.spec.X();
    const double expo = k * (k + 1.0) / 2.0 - (fv.spec.kind == FamilyKind::P ? 1.0 : 0.0);
    r.main = X * std::pow(LX, expo);
    r.normalization = fv.spec.kind == FamilyKind::P ? "X (log_q X)^{k(k+1)/2 - 1}" : "X (log_q X)^{k(k+1)/2}";

    bool nonneg = true;
    for (const auto& c : fv.central) nonneg = nonneg && c.exact_sign() >= 0;
    const bool integral = k == std::floor(k) && k <= 64;
    if (integral && (nonneg || static_cast<int>(k) % 2 == 0)) {
        r.empirical = exact_power_sum(fv, static_cast<int>(k)).value;
        r.exact = true;
    } else {
        std::vector<double> v(fv.central.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::pow(std::abs(fv.central[i].value), k);
        r.empirical = tree_sum<double>(v);
    }
    r.normalized_error = r.empirical / r.main;
    return r;
}

MomentReport twisted_first_moment_P(const FamilyValues& primes, const Polynomial& l) {
    if (primes.spec.kind != FamilyKind::P) throw std::invalid_argument("twisted_first_moment_P needs the P family");
    check_twist(l, primes);
    MomentReport r;
    r.family = primes.spec;
    r.k = 1;
    fill_split(r, l);
    const auto chi = twist_values(primes, l);
    BigInt A = 0;
    BigInt B = 0;
    for (std::size_t i = 0; i < chi.size(); ++i) {
        A += chi[i] * primes.central[i].A;
        B += chi[i] * primes.central[i].B;
    }
    r.empirical = static_cast<double>(z_sqrt_value(A, B, primes.spec.q, primes.genus()));
    r.exact = true;

    const double X = primes.spec.X();
    const double LX = log_q_X(primes.spec);
    const int d1 = r.l1->degree();
    const double norm1 = std::pow(static_cast<double>(primes.spec.q), d1);
    r.main = X / (LX * std::sqrt(norm1)) * (LX / 2.0 - d1 + 0.5);
    r.normalized_error = (r.empirical - r.main) / std::pow(X, 0.75);
    r.normalization = "(empirical - main) / X^{3/4}";
    return r;
}

double second_moment_C(const Polynomial& l) {
    return l.degree() % 2 == 0 ? 1.0 + 1.0 / l.field_order() : 2.0;
}

MomentReport twisted_second_moment_P(const FamilyValues& primes, const Polynomial& l) {
    if (primes.spec.kind != FamilyKind::P) throw std::invalid_argument("twisted_second_moment_P needs the P family");
    check_twist(l, primes);
    MomentReport r;
    r.family = primes.spec;
    r.k = 2;
    fill_split(r, l);
    const std::uint32_t q = primes.spec.q;
    const auto chi = twist_values(primes, l);
    BigInt A = 0;
    BigInt B = 0;
    for (std::size_t i = 0; i < chi.size(); ++i) {
        const BigInt a = primes.central[i].A;
        const BigInt b = primes.central[i].B;
        A += chi[i] * (a * a + BigInt(q) * b * b);
        B += chi[i] * 2 * a * b;
    }
    r.empirical = static_cast<double>(z_sqrt_value(A, B, q, 2 * primes.genus()));
    r.exact = true;

    const double X = primes.spec.X();
    const double LX = log_q_X(primes.spec);
    const double Z = zeta_A2(q);
    const int d1 = r.l1->degree();
    const double norm1 = std::pow(static_cast<double>(q), d1);
    const double half = 0.5 * (LX - d1);  // (1/2) log_q(X/|l1|)
    double euler = 1.0;
    double prime_sum = 0.0;
    if (!r.l1->is_constant()) {
        for (const auto& pp : factor(*r.l1)) {
            const double nP = static_cast<double>(pp.prime.norm());
            euler /= 1.0 + 1.0 / nP;
            prime_sum += (pp.prime.degree() / nP) / (1.0 + 1.0 / nP);
        }
    }
    const double dA = static_cast<double>(divisor_function(*r.l1, 2));
    const double bracket = std::pow(half, 3) / (3.0 * Z) + second_moment_C(l) * half * half + prime_sum * half * half / Z;
    r.main = (X / LX) * (dA / std::sqrt(norm1)) * euler * bracket;
    r.normalized_error = (r.empirical - r.main) / ((X / LX) * std::pow(half, 1.5));
    r.normalization = "(empirical - main) / ((X/log_q X) ((1/2) log_q(X/|l1|))^{3/2})";
    return r;
}

EulerProduct euler_constant_C_at(std::uint32_t q, int cutoff) {
    if (cutoff < 1) throw std::domain_error("Euler product cutoff must be >= 1");
    const double qd = q;
    long double log_c = 0;
    for (int d = 1; d <= cutoff; ++d) {
        const long double norm = std::pow(static_cast<long double>(q), d);
        log_c += static_cast<long double>(prime_count(q, d)) * std::log1p(-1.0L / (norm * (norm + 1.0L)));
    }
    // pi_A(d) <= q^d / d, so the tail is at most sum_{d > c} q^{-d} / (c + 1).
    const double tail = std::pow(qd, -cutoff) / ((qd - 1.0) * (cutoff + 1));
    return {static_cast<double>(std::exp(log_c)), cutoff, tail};
}

EulerProduct euler_constant_C(std::uint32_t q, double tail) {
    for (int c = 1;; ++c) {
        const double qd = q;
        if (std::pow(qd, -c) / ((qd - 1.0) * (c + 1)) < tail) return euler_constant_C_at(q, c);
    }
}

double euler_g(const Polynomial& l) {
    if (l.is_zero() || !l.is_monic()) throw std::domain_error("euler_g: l must be monic");
    if (l.is_constant()) return 1.0;
    double g = 1.0;
    for (const auto& pp : factor(l)) {
        const double n = static_cast<double>(pp.prime.norm());
        g *= ((n + 1.0) / n) * (1.0 - 1.0 / (n * (n + 1.0)));
    }
    return g;
}

namespace {

struct LinearMain {
    double base;   // main term with C1 = 0
    double slope;  // d main / d C1
};

LinearMain first_moment_H_main(const FamilyValues& H, const MomentReport& r, const Polynomial& l,
                               const PrimeConstantMap& C1P) {
    const std::uint32_t q = H.spec.q;
    const double X = H.spec.X();
    const int d1 = r.l1->degree();
    const double norm1 = std::pow(static_cast<double>(q), d1);
    const double C = euler_constant_C(q).value;
    const double slope = (C / zeta_A2(q)) * X / (std::sqrt(norm1) * euler_g(l));
    double bracket = log_q_X(H.spec) / 2.0 - d1;
    if (C1P && !l.is_constant()) {
        for (const auto& pp : factor(l)) bracket += C1P(pp.prime) / static_cast<double>(pp.prime.norm()) * pp.prime.degree();
    }
    return {slope * bracket, slope};
}

}  // namespace

MomentReport twisted_first_moment_H(const FamilyValues& H, const Polynomial& l, double C1, const PrimeConstantMap& C1P) {
    if (H.spec.kind != FamilyKind::H) throw std::invalid_argument("twisted_first_moment_H needs the H family");
    check_twist(l, H);
    MomentReport r;
    r.family = H.spec;
    r.k = 1;
    fill_split(r, l);
    const auto chi = twist_values(H, l);
    BigInt A = 0;
    BigInt B = 0;
    for (std::size_t i = 0; i < chi.size(); ++i) {
        A += chi[i] * H.central[i].A;
        B += chi[i] * H.central[i].B;
    }
    r.empirical = static_cast<double>(z_sqrt_value(A, B, H.spec.q, H.genus()));
    r.exact = true;
    const auto m = first_moment_H_main(H, r, l, C1P);
    r.main = m.base + m.slope * C1;
    r.normalized_error =
        (r.empirical - r.main) / (std::pow(H.spec.X(), 0.875) * std::pow(static_cast<double>(l.norm()), 0.25));
    r.normalization = "(empirical - main) / (X^{7/8} |l|^{1/4})";
    return r;
}

C1Fit fit_c1(std::span<const FamilyValues> families, const Polynomial& l) {
    if (families.empty()) throw std::invalid_argument("fit_c1 needs at least one family");
    double num = 0;
    double den = 0;
    std::vector<std::pair<double, LinearMain>> pts;
    for (const auto& H : families) {
        const auto r = twisted_first_moment_H(H, l, 0.0);
        const auto m = first_moment_H_main(H, r, l, {});
        num += m.slope * (r.empirical - m.base);
        den += m.slope * m.slope;
        pts.emplace_back(r.empirical, m);
    }
    C1Fit fit{num / den, 0.0};
    for (const auto& [emp, m] : pts) fit.residual += std::pow(emp - m.base - m.slope * fit.C1, 2);
    return fit;
}

ThetaProfile second_moment_theta(const FamilyValues& primes, std::span<const double> theta_grid, double epsilon) {
    if (primes.spec.kind != FamilyKind::P) throw std::invalid_argument("theta profile needs the P family");
    const double twopi = 2.0 * std::numbers::pi;
    const double q = primes.spec.q;
    const int g = primes.genus();
    const double X = primes.spec.X();
    const double LX = log_q_X(primes.spec);
    ThetaProfile prof{epsilon, {}, 0.0};
    for (const double theta : theta_grid) {
        if (!(theta >= 0.0 && theta < twopi)) throw std::domain_error("theta must lie in [0, 2 pi)");
        const std::complex<double> u = std::polar(1.0 / std::sqrt(q), theta);
        std::vector<double> v(primes.L.size());
        const auto n = static_cast<std::int64_t>(v.size());
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = std::norm(l_eval(primes.L[static_cast<std::size_t>(i)], u));
        ThetaRow row;
        row.theta = theta;
        row.theta_bar = std::min(theta, twopi - theta);
        row.empirical = tree_sum<double>(v);
        const double m = row.theta_bar == 0.0 ? g : std::min<double>(g, 1.0 / (2.0 * row.theta_bar));
        row.bound = (X / LX) * std::pow(static_cast<double>(g), 1.0 + epsilon) * m * m;
        row.ratio = row.empirical / row.bound;
        prof.max_ratio = std::max(prof.max_ratio, row.ratio);
        prof.rows.push_back(row);
    }
    return prof;
}

MagnitudeReport order_of_magnitude_report(std::span<const FamilyValues> families, std::span<const double> k_list) {
    MagnitudeReport rep{families.empty() ? 0u : families.front().spec.q, {}, false, false};
    for (const auto kind : {FamilyKind::H, FamilyKind::P}) {
        for (const double k : k_list) {
            std::optional<double> prev;
            std::optional<int> direction;
            for (const auto& fv : families) {
                if (fv.spec.kind != kind) continue;
                const auto m = moment(fv, k);
                MagnitudeRow row{kind, fv.genus(), k, m.empirical, m.main, m.empirical / m.main, std::nullopt, false};
                if (prev) {
                    row.step = row.ratio / *prev;
                    row.flagged = !(*row.step < 3.0 && *row.step > 1.0 / 3.0);
                    const int dir = row.ratio > *prev ? 1 : (row.ratio < *prev ? -1 : 0);
                    if (direction && dir != 0 && *direction != 0 && dir != *direction) rep.non_monotone = true;
                    if (dir != 0) direction = dir;
                }
                rep.any_flagged = rep.any_flagged || row.flagged;
                prev = row.ratio;
                rep.rows.push_back(row);
            }
        }
    }
    return rep;
}

MagnitudeReport order_of_magnitude_report(std::uint32_t q, std::span<const int> g_list, std::span<const double> k_list) {
    std::vector<FamilyValues> families;
    for (const auto kind : {FamilyKind::H, FamilyKind::P}) {
        for (const int g : g_list) families.push_back(family_values(FamilySpec::from_genus(kind, q, g)));
    }
    return order_of_magnitude_report(families, k_list);
}

MollifiedSums mollified_sums(const FamilyValues& fv, double k2, const MollifierSchedule& s) {
    if (std::abs(k2 - 1.0) < 1e-15) throw std::domain_error("mollified_sums: 2k = 1 makes the exponent 2k/(2k-1) undefined");
    if (s.J > 0 && (s.q != fv.spec.q)) throw std::invalid_argument("mollified_sums: schedule is for another field");
    const auto n = static_cast<std::int64_t>(fv.members.size());
    std::vector<double> lm(fv.members.size());
    std::vector<double> mm(fv.members.size());
    std::vector<double> l2m(fv.members.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
        const auto u = static_cast<std::size_t>(i);
        const auto seg = s.J > 0 ? prime_segments(fv.members[u], s) : std::vector<double>{};
        const double L = std::max(fv.central[u].value, 0.0);
        const double m1 = mollifier_value(seg, k2 - 1.0, s);
        lm[u] = L * m1;
        mm[u] = std::pow(m1, k2 / (k2 - 1.0));
        l2m[u] = L * L * mollifier_value(seg, k2 - 2.0, s);
    }
    MollifiedSums r{};
    r.S_LM = tree_sum<double>(lm);
    r.S_M = tree_sum<double>(mm);
    r.S_L2M = tree_sum<double>(l2m);
    const double X = fv.spec.X();
    const double LX = log_q_X(fv.spec);
    const double shift = fv.spec.kind == FamilyKind::P ? 1.0 : 0.0;
    r.norm_LM = X * std::pow(LX, (k2 * k2 + 1.0) / 2.0 - shift);
    r.norm_M = X * std::pow(LX, k2 * k2 / 2.0 - shift);
    r.norm_L2M = X * std::pow(LX, (k2 * k2 + 2.0) / 2.0 - shift);
    r.capped = s.J > 0 && s.capped();
    return r;
}

SeriesCheck divisor_series_check(const Polynomial& l1, int N) {
    if (l1.is_zero() || !l1.is_monic() || !(l1.is_constant() || is_squarefree(l1))) {
        throw std::domain_error("divisor_series_check: l1 must be monic and square-free");
    }
    if (N < 0) throw std::domain_error("divisor_series_check: N must be >= 0");
    const std::uint32_t q = l1.field_order();
    SeriesCheck r{std::vector<std::int64_t>(static_cast<std::size_t>(N) + 1, 0),
                  std::vector<std::int64_t>(static_cast<std::size_t>(N) + 1, 0), false};
    for (int n = 0; n <= N; ++n) {
        std::int64_t s = 0;
        for (std::uint64_t rank = 0; rank < monic_count(q, n); ++rank) {
            const auto f = monic_from_rank(q, n, rank);
            s += static_cast<std::int64_t>(divisor_function(l1 * f * f, 2));
        }
        r.lhs[static_cast<std::size_t>(n)] = s;
    }

    // (1 - q v^2) / (1 - q v)^3
    std::vector<std::int64_t> series(static_cast<std::size_t>(N) + 1, 0);
    for (int n = 0; n <= N; ++n) {
        const auto c = static_cast<std::int64_t>((n + 2) * (n + 1) / 2) * static_cast<std::int64_t>(ipow(q, n));
        series[static_cast<std::size_t>(n)] += c;
        if (n + 2 <= N) series[static_cast<std::size_t>(n + 2)] -= static_cast<std::int64_t>(q) * c;
    }
    // times prod_{P | l1} 1 / (1 + v^{deg P})
    if (!l1.is_constant()) {
        for (const auto& pp : factor(l1)) {
            const int d = pp.prime.degree();
            for (int n = d; n <= N; ++n) series[static_cast<std::size_t>(n)] -= series[static_cast<std::size_t>(n - d)];
        }
    }
    const auto dA = static_cast<std::int64_t>(divisor_function(l1, 2));
    for (int n = 0; n <= N; ++n) r.rhs[static_cast<std::size_t>(n)] = dA * series[static_cast<std::size_t>(n)];
    r.equal = r.lhs == r.rhs;
    return r;
}

}  // namespace ffq
