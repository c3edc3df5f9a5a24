#include "ffq/mollifier.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <json.hpp>

#include "ffq/charsym.hpp"
#include "ffq/kernels.hpp"
#include "ffq/prime_cache.hpp"

namespace ffq {

namespace {

constexpr double window_eps = 1e-12;

void check_evaluable(const MollifierSchedule& s) {
    if (s.q == 0) throw std::domain_error("schedule is not tied to a field; cannot evaluate segments");
}

void check_segment(const MollifierSchedule& s, int j) {
    if (j < 1 || j > s.J) throw std::domain_error("segment index must satisfy 1 <= j <= J");
}

// sum over primes Q of degree d of chi_D(Q), for d = 1..max_degree.
std::vector<std::int64_t> chi_tallies(const Polynomial& D, std::uint32_t q, int max_degree) {
    std::vector<std::int64_t> t(static_cast<std::size_t>(std::max(max_degree, 0)) + 1, 0);
    for (int d = 1; d <= max_degree; ++d) {
        std::int64_t s = 0;
        for (const auto& Q : primes_of_degree(q, d)) s += residue_symbol(D, Q);
        t[static_cast<std::size_t>(d)] = s;
    }
    return t;
}

}  // namespace

std::string to_string(ScheduleMode mode) { return mode == ScheduleMode::paper ? "paper" : "desk"; }

double MollifierSchedule::log_q_X() const {
    if (q == 0) throw std::domain_error("schedule is not tied to a field");
    return log_X / std::log(static_cast<double>(q));
}

double MollifierSchedule::y(int j) const {
    return std::exp(5.0) * std::pow(alphas.at(static_cast<std::size_t>(j)), -0.75);
}

int MollifierSchedule::order(int j) const {
    const double full = 2.0 * std::ceil(y(j));
    return full > cap ? cap : static_cast<int>(full);
}

bool MollifierSchedule::capped() const {
    for (int j = 1; j <= J; ++j) {
        if (2.0 * std::ceil(y(j)) > cap) return true;
    }
    return false;
}

std::pair<int, int> MollifierSchedule::degree_window(int j) const {
    check_segment(*this, j);
    const double L = log_q_X();
    const auto lo = static_cast<int>(std::floor(alphas[static_cast<std::size_t>(j - 1)] * L + window_eps));
    const auto hi = static_cast<int>(std::floor(alphas[static_cast<std::size_t>(j)] * L + window_eps));
    return {lo, hi};
}

MollifierSchedule schedule_paper(double log_X, int M) {
    if (!std::isfinite(log_X)) throw std::domain_error("paper schedule needs a finite log X");
    if (!(log_X > 0) || !(std::log(log_X) > 1.0)) throw std::domain_error("paper schedule needs log log X > 1");
    const double ll = std::log(log_X);
    const double threshold = std::pow(10.0, -M);
    const auto alpha = [&](int j) { return std::pow(20.0, j - 1) / (ll * ll); };
    int last = 0;
    for (int j = 1; alpha(j) <= threshold; ++j) last = j;
    if (last == 0) {
        throw DegenerateSchedule("paper schedule is empty: alpha_1 = " + std::to_string(alpha(1)) +
                                 " exceeds 10^-" + std::to_string(M));
    }
    MollifierSchedule s;
    s.log_X = log_X;
    s.M = M;
    s.J = last + 1;
    s.mode = ScheduleMode::paper;
    s.alphas.push_back(std::log(2.0) / log_X);
    for (int j = 1; j <= s.J; ++j) s.alphas.push_back(alpha(j));
    return s;
}

MollifierSchedule schedule_paper(std::uint32_t q, int g, int M) {
    auto s = schedule_paper((2.0 * g + 1.0) * std::log(static_cast<double>(q)), M);
    s.q = q;
    s.g = g;
    return s;
}

MollifierSchedule schedule_desk(std::uint32_t q, int g, std::vector<double> alphas, int cap, int M) {
    if (alphas.empty()) throw std::domain_error("desk schedule needs alpha_0");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (!std::isfinite(alphas[i]) || alphas[i] <= 0) throw std::domain_error("alphas must be positive and finite");
        if (i > 0 && !(alphas[i] > alphas[i - 1])) throw std::domain_error("alphas must be strictly increasing");
    }
    if (cap < 0 || cap % 2 != 0) throw std::domain_error("truncation cap must be even and >= 0");
    if (g < 0) throw std::domain_error("genus must be >= 0");
    MollifierSchedule s;
    s.q = q;
    s.g = g;
    s.log_X = (2.0 * g + 1.0) * std::log(static_cast<double>(q));
    s.M = M;
    s.J = static_cast<int>(alphas.size()) - 1;
    s.alphas = std::move(alphas);
    s.mode = ScheduleMode::desk;
    s.cap = cap;
    return s;
}

ScheduleBudget schedule_budget(const MollifierSchedule& s) {
    ScheduleBudget b{0.0, 5.0 * std::exp(5.0) * std::pow(10.0, -s.M / 4.0), false};
    for (int j = 1; j <= s.J; ++j) b.sum += 2.0 * s.alphas[static_cast<std::size_t>(j)] * std::ceil(s.y(j));
    b.within = b.sum <= b.bound;
    return b;
}

DirichletLength dirichlet_length(const MollifierSchedule& s) {
    const double L = s.log_q_X();
    DirichletLength d{0.0, 0.0};
    for (int j = 1; j <= s.J; ++j) {
        const double a = s.alphas[static_cast<std::size_t>(j)];
        const double ord = 2.0 * std::ceil(s.y(j));
        d.degrees += std::floor(a * L + window_eps) * ord;
        d.budget += (a * L) * ord;
    }
    return d;
}

std::string schedule_to_json(const MollifierSchedule& s) {
    nlohmann::ordered_json j;
    j["q"] = s.q;
    j["g"] = s.g;
    j["M"] = s.M;
    j["mode"] = to_string(s.mode);
    j["alphas"] = s.alphas;
    j["cap"] = s.cap;
    return j.dump(2);
}

MollifierSchedule schedule_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("schedule file: ") + e.what());
    }
    try {
        const auto q = j.at("q").get<std::uint32_t>();
        const int g = j.at("g").get<int>();
        const int M = j.value("M", 0);
        const auto mode = j.at("mode").get<std::string>();
        const int cap = j.value("cap", 64);
        if (mode == "paper") {
            auto s = schedule_paper(q, g, M);
            s.cap = cap;
            return s;
        }
        if (mode != "desk") throw std::invalid_argument("schedule file: mode must be paper or desk");
        return schedule_desk(q, g, j.at("alphas").get<std::vector<double>>(), cap, M);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("schedule file: ") + e.what());
    }
}

MollifierSchedule load_schedule(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open schedule file " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return schedule_from_json(ss.str());
}

void save_schedule(const MollifierSchedule& s, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write schedule file " + path.string());
    out << schedule_to_json(s) << '\n';
}

namespace {

template <class Real>
Real exp_partial_sum(int order, const Real& x) {
    Real term = 1;
    Real sum = 1;
    for (int j = 1; j <= order; ++j) {
        term *= x;
        term /= j;
        sum += term;
    }
    return sum;
}

}  // namespace

double truncated_exp_order(int order, double x) {
    if (order < 0) throw std::domain_error("truncated_exp_order: order must be >= 0");
    long double term = 1.0L;
    long double sum = 1.0L;
    long double mass = 1.0L;  // sum of |terms|
    for (int j = 1; j <= order; ++j) {
        term *= static_cast<long double>(x) / j;
        sum += term;
        mass += std::abs(term);
    }
    // For x < 0 the alternating terms cancel; redo the sum with enough digits
    // when the cancellation would eat into double precision.
    if (mass <= 8.0L * std::abs(sum)) return static_cast<double>(sum);
    using boost::multiprecision::cpp_bin_float_100;
    using Wide = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<500>>;
    const long double digits_lost = std::log10(mass) - std::log10(std::max(std::abs(sum), 1e-4000L));
    if (digits_lost < 75.0L) return static_cast<double>(exp_partial_sum(order, cpp_bin_float_100(x)));
    return static_cast<double>(exp_partial_sum(order, Wide(x)));
}

double truncated_exp(double y, double x) {
    if (y < 0) throw std::domain_error("truncated_exp: y must be >= 0");
    return truncated_exp_order(2 * static_cast<int>(std::ceil(y)), x);
}

std::vector<double> prime_segments(const Polynomial& D, const MollifierSchedule& s) {
    check_evaluable(s);
    if (s.J == 0) return {};
    const int top = s.degree_window(s.J).second;
    const auto tally = chi_tallies(D, s.q, top);
    std::vector<double> out;
    for (int j = 1; j <= s.J; ++j) {
        const auto [lo, hi] = s.degree_window(j);
        long double sum = 0;
        for (int d = std::max(lo + 1, 1); d <= hi; ++d) {
            sum += static_cast<long double>(tally[static_cast<std::size_t>(d)]) *
                   std::pow(static_cast<long double>(s.q), -0.5L * d);
        }
        out.push_back(static_cast<double>(sum));
    }
    return out;
}

double prime_segment(const Polynomial& D, int j, const MollifierSchedule& s) {
    check_segment(s, j);
    return prime_segments(D, s)[static_cast<std::size_t>(j - 1)];
}

double mollifier_value(std::span<const double> segments, double alpha, const MollifierSchedule& s) {
    long double prod = 1.0L;
    for (int j = 1; j <= s.J; ++j) {
        prod *= truncated_exp_order(s.order(j), alpha * segments[static_cast<std::size_t>(j - 1)]);
    }
    return static_cast<double>(prod);
}

double mollifier_value(const Polynomial& D, double alpha, const MollifierSchedule& s) {
    if (s.J == 0) return 1.0;
    const auto seg = prime_segments(D, s);
    return mollifier_value(seg, alpha, s);
}

namespace {

double segment_m_from(const std::vector<std::int64_t>& tally, int i, int j, const MollifierSchedule& s) {
    const auto [lo, hi] = s.degree_window(i);
    const double top = s.alphas[static_cast<std::size_t>(j)] * s.log_q_X();  // log_q X^{alpha_j}
    long double sum = 0;
    for (int d = std::max(lo + 1, 1); d <= hi; ++d) {
        const long double w = std::pow(static_cast<long double>(s.q), -0.5L * d) * std::exp(-d / top) * (top - d) / top;
        sum += static_cast<long double>(tally[static_cast<std::size_t>(d)]) * w;
    }
    return static_cast<double>(sum);
}

}  // namespace

double segment_m(const Polynomial& D, int i, int j, const MollifierSchedule& s) {
    check_evaluable(s);
    check_segment(s, i);
    check_segment(s, j);
    if (i > j) throw std::domain_error("segment_m needs i <= j");
    const auto tally = chi_tallies(D, s.q, s.degree_window(s.J).second);
    return segment_m_from(tally, i, j, s);
}

int classify(const Polynomial& D, const MollifierSchedule& s) {
    check_evaluable(s);
    if (s.J == 0) return 0;
    const auto tally = chi_tallies(D, s.q, s.degree_window(s.J).second);
    for (int i = 1; i <= s.J; ++i) {
        const double limit = std::pow(s.alphas[static_cast<std::size_t>(i)], -0.75);
        for (int l = i; l <= s.J; ++l) {
            if (std::abs(segment_m_from(tally, i, l, s)) > limit) return i - 1;
        }
    }
    return s.J;
}

HolderReport holder_check(std::span<const Polynomial> members, std::span<const double> values, double k2,
                          std::optional<double> c, const MollifierSchedule& s) {
    if (members.size() != values.size()) throw std::invalid_argument("holder_check: members and values differ in size");
    HolderReport r{};
    r.k2 = k2;
    const auto n = static_cast<std::int64_t>(members.size());
    std::vector<std::vector<double>> seg(members.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) seg[static_cast<std::size_t>(i)] = prime_segments(members[static_cast<std::size_t>(i)], s);

    const auto sum_over = [&](auto&& term) {
        std::vector<double> v(members.size());
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            const auto u = static_cast<std::size_t>(i);
            v[u] = term(std::max(values[u], 0.0), seg[u]);
        }
        return tree_sum<double>(v);
    };
    const auto mv = [&](const std::vector<double>& sg, double a) { return mollifier_value(sg, a, s); };

    r.lhs = sum_over([&](double L, const auto& sg) { return L * mv(sg, k2 - 1.0); });
    if (k2 > 1.0) {
        if (c) throw std::domain_error("holder_check: c is only used when 2k < 1");
        r.small_k = false;
        const double p = k2;
        const double p_conj = k2 / (k2 - 1.0);
        r.exponents = {p, p_conj};
        const double a = sum_over([&](double L, const auto&) { return std::pow(L, k2); });
        const double b = sum_over([&](double, const auto& sg) { return std::pow(mv(sg, k2 - 1.0), p_conj); });
        r.rhs = std::pow(a, 1.0 / p) * std::pow(b, 1.0 / p_conj);
        r.middle = r.lhs;
        r.rhs_printed = r.rhs;
    } else if (k2 > 0.0 && k2 < 1.0) {
        if (!c || !(*c > 0.0 && *c < k2)) throw std::domain_error("holder_check: need c in (0, 2k) when 2k < 1");
        const double cc = *c;
        r.small_k = true;
        r.c = cc;
        const double p1 = k2 / cc;
        const double p2 = 2.0 / (1.0 - cc);
        const double inv3 = (1.0 + cc) / 2.0 - cc / k2;
        if (!(inv3 > 0.0) || !(p1 >= 1.0) || !(p2 >= 1.0) || !(1.0 / inv3 >= 1.0)) {
            throw std::domain_error("holder_check: Hoelder exponents must all be >= 1");
        }
        const double p3 = 1.0 / inv3;
        r.exponents = {p1, p2, p3};
        r.middle = sum_over([&](double L, const auto& sg) {
            return std::pow(L, cc) * std::pow(L, 1.0 - cc) * std::pow(mv(sg, k2 - 2.0), (1.0 - cc) / 2.0) *
                   mv(sg, k2 - 1.0) * std::pow(mv(sg, 2.0 - k2), (1.0 - cc) / 2.0);
        });
        const double a = sum_over([&](double L, const auto&) { return std::pow(L, k2); });
        const double b = sum_over([&](double L, const auto& sg) { return L * L * mv(sg, k2 - 2.0); });
        const double t = sum_over([&](double, const auto& sg) {
            return std::pow(mv(sg, k2 - 1.0) * std::pow(mv(sg, 2.0 - k2), (1.0 - cc) / 2.0), p3);
        });
        // printed inner exponents use k = k2/2
        const double k = k2 / 2.0;
        const double t_printed = sum_over([&](double, const auto& sg) {
            return std::pow(mv(sg, k2 - 1.0), 2.0 * (2.0 - 3.0 * k) / (1.0 - 2.0 * k)) * std::pow(mv(sg, 2.0 - k2), 2.0);
        });
        r.rhs = std::pow(a, 1.0 / p1) * std::pow(b, 1.0 / p2) * std::pow(t, inv3);
        r.rhs_printed = std::pow(a, 1.0 / p1) * std::pow(b, 1.0 / p2) * std::pow(t_printed, inv3);
    } else {
        throw std::domain_error("holder_check: 2k must lie in (0, 1) or (1, inf)");
    }
    r.slack = r.rhs - r.lhs;
    constexpr double tol = 1e-9;
    r.holds = r.lhs <= r.middle * (1.0 + tol) && r.middle <= r.rhs * (1.0 + tol);
    return r;
}

}  // namespace ffq
