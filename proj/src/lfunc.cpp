#include "ffq/lfunc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/cpp_int.hpp>

#include "ffq/charsym.hpp"
#include "ffq/factor.hpp"
#include "ffq/family.hpp"
#include "ffq/monic_table.hpp"
#include "ffq/prime_cache.hpp"

namespace ffq {

int LPolynomial::degree() const {
    for (int n = static_cast<int>(coefficients.size()) - 1; n > 0; --n) {
        if (coefficients[static_cast<std::size_t>(n)] != 0) return n;
    }
    return 0;
}

namespace {

void check_modulus(const Polynomial& D) {
    if (D.is_zero() || !D.is_monic()) throw std::domain_error("L-function modulus must be monic");
    if (D.degree() < 1) throw std::domain_error("L-function modulus must have degree >= 1");
    if (D.degree() >= 64) throw std::domain_error("L-function modulus degree above 63");
}

// sum_{f in M_n} (D/f), walking M_n in canonical order with an in-place
// odometer on (c_0..c_{n-1}).
std::int64_t coefficient_sum(const SymbolKernel& kernel, const Polynomial& D, int n) {
    if (n == 0) return 1;
    const std::uint32_t q = D.field_order();
    std::vector<Coeff> f(static_cast<std::size_t>(n) + 1, 0);
    f.back() = 1;
    const auto top = D.coefficients();
    const std::uint64_t total = monic_count(q, n);
    std::int64_t sum = 0;
    for (std::uint64_t r = 0; r < total; ++r) {
        sum += kernel.symbol(top, f);
        for (int i = n - 1; i >= 0; --i) {
            auto& c = f[static_cast<std::size_t>(i)];
            if (++c < q) break;
            c = 0;
        }
    }
    return sum;
}

std::optional<int> genus_of(const Polynomial& D, bool squarefree) {
    if (squarefree && D.degree() % 2 == 1) return (D.degree() - 1) / 2;
    return std::nullopt;
}

}  // namespace

LPolynomial l_coefficients(const Polynomial& D, LStrictness mode) {
    check_modulus(D);
    const bool sf = is_squarefree(D);
    if (!sf && mode == LStrictness::strict) {
        throw std::domain_error("l_coefficients: modulus " + D.to_text() + " is not square-free");
    }
    const SymbolKernel kernel(D.field_order());
    LPolynomial L{D, {}, genus_of(D, sf), sf};
    const int bound = D.degree() - 1;
    L.coefficients.reserve(static_cast<std::size_t>(bound) + 1);
    for (int n = 0; n <= bound; ++n) L.coefficients.push_back(coefficient_sum(kernel, D, n));
    return L;
}

LPolynomial l_coefficients_reflected(const Polynomial& D) {
    check_modulus(D);
    if (!is_squarefree(D) || D.degree() % 2 == 0) {
        throw std::domain_error("reflection needs a square-free modulus of odd degree");
    }
    const int g = (D.degree() - 1) / 2;
    const std::int64_t q = D.field_order();
    const SymbolKernel kernel(D.field_order());
    LPolynomial L{D, std::vector<std::int64_t>(static_cast<std::size_t>(2 * g) + 1, 0), g, true};
    for (int n = 0; n <= g; ++n) L.coefficients[static_cast<std::size_t>(n)] = coefficient_sum(kernel, D, n);
    for (int n = 0; n < g; ++n) {
        L.coefficients[static_cast<std::size_t>(2 * g - n)] =
            static_cast<std::int64_t>(ipow(static_cast<std::uint64_t>(q), static_cast<unsigned>(g - n))) *
            L.coefficients[static_cast<std::size_t>(n)];
    }
    return L;
}

int CentralValue::exact_sign() const {
    using i128 = __int128;
    const auto sgn = [](std::int64_t v) { return (v > 0) - (v < 0); };
    if (A >= 0 && B >= 0) return (A == 0 && B == 0) ? 0 : 1;
    if (A <= 0 && B <= 0) return -1;
    // Opposite strict signs: compare A^2 with q B^2.
    const i128 a2 = static_cast<i128>(A) * A;
    const i128 qb2 = static_cast<i128>(q) * B * B;
    const int s = (a2 > qb2) - (a2 < qb2);
    return sgn(A) > 0 ? s : -s;
}

CentralValue central_value(const LPolynomial& L) {
    if (!L.genus) throw std::domain_error("central value needs a square-free modulus of odd degree");
    const int g = *L.genus;
    const std::uint64_t q = L.q();
    CentralValue cv;
    cv.genus = g;
    cv.q = L.q();
    __int128 A = 0;
    __int128 B = 0;
    for (std::size_t n = 0; n < L.coefficients.size(); ++n) {
        const int ni = static_cast<int>(n);
        if (ni > 2 * g) {
            if (L.coefficients[n] != 0) throw std::logic_error("L-polynomial degree exceeds 2g");
            continue;
        }
        if (ni % 2 == 0) {
            A += static_cast<__int128>(L.coefficients[n]) * ipow(q, static_cast<unsigned>(g - ni / 2));
        } else {
            B += static_cast<__int128>(L.coefficients[n]) * ipow(q, static_cast<unsigned>(g - (ni + 1) / 2));
        }
    }
    if (A > INT64_MAX || A < INT64_MIN || B > INT64_MAX || B < INT64_MIN) {
        throw std::overflow_error("central value components exceed 64 bits");
    }
    cv.A = static_cast<std::int64_t>(A);
    cv.B = static_cast<std::int64_t>(B);

    const long double rq = std::sqrt(static_cast<long double>(q));
    const long double scale = std::pow(static_cast<long double>(q), static_cast<long double>(g));
    const long double a = cv.A;
    const long double b = cv.B;
    long double num;
    if ((cv.A >= 0) == (cv.B >= 0) || cv.A == 0 || cv.B == 0) {
        num = a + b * rq;
    } else {
        // A + B sqrt(q) = (A^2 - q B^2) / (A - B sqrt(q)); no cancellation below.
        const __int128 diff = A * A - static_cast<__int128>(q) * B * B;
        num = static_cast<long double>(diff) / (a - b * rq);
    }
    cv.value = static_cast<double>(num / scale);
    return cv;
}

std::complex<double> l_eval(const LPolynomial& L, std::complex<double> u) {
    std::complex<long double> acc = 0;
    const std::complex<long double> z(u.real(), u.imag());
    for (auto it = L.coefficients.rbegin(); it != L.coefficients.rend(); ++it) {
        acc = acc * z + static_cast<long double>(*it);
    }
    return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

AfeResult afe_eval(const Polynomial& D, std::complex<double> u, int k) {
    if (k < 1) throw std::domain_error("afe_eval: k must be >= 1");
    check_modulus(D);
    if (D.degree() % 2 == 0) throw std::domain_error("afe_eval: modulus must have odd degree");
    const int g = (D.degree() - 1) / 2;
    const MonicTable table(D.field_order(), k * g);
    return afe_eval(D, u, k, table);
}

AfeResult afe_eval(const Polynomial& D, std::complex<double> u, int k, const MonicTable& table) {
    if (k < 1) throw std::domain_error("afe_eval: k must be >= 1");
    check_modulus(D);
    if (D.degree() % 2 == 0 || !is_squarefree(D)) {
        throw std::domain_error("afe_eval: modulus must be square-free of odd degree");
    }
    if (std::abs(std::abs(u) - 1.0) > 1e-12) throw std::domain_error("afe_eval: |u| must be 1");
    const int g = (D.degree() - 1) / 2;
    const int top = k * g;
    if (table.q() != D.field_order() || table.max_degree() < top) {
        throw std::invalid_argument("afe_eval: monic table does not reach degree k*g");
    }

    const LPolynomial L = l_coefficients(D);
    const double sq = std::sqrt(static_cast<double>(D.field_order()));
    const std::complex<double> base = l_eval(L, u / sq);
    std::complex<double> lhs = 1.0;
    for (int i = 0; i < k; ++i) lhs *= base;

    const std::size_t size = table.offset(top + 1);
    std::vector<std::int64_t> chi(size, 0);
    const SymbolKernel kernel(D.field_order());
    for (const auto p : table.primes()) {
        if (p >= size) break;
        chi[p] = kernel.symbol(D.coefficients(), table.polynomial(p).coefficients());
    }
    table.extend_multiplicatively(std::span<std::int64_t>(chi));
    const auto dk = table.divisor_counts(k);

    // b_n = sum_{f in M_n} d_k(f) chi_D(f), exact.
    std::vector<long double> b(static_cast<std::size_t>(top) + 1, 0.0L);
    for (int n = 0; n <= top; ++n) {
        __int128 s = 0;
        for (std::size_t i = table.offset(n); i < table.offset(n + 1); ++i) {
            s += static_cast<__int128>(dk[i]) * chi[i];
        }
        b[static_cast<std::size_t>(n)] = static_cast<long double>(s);
    }
    const std::complex<long double> z(u.real(), u.imag());
    const long double lsq = std::sqrt(static_cast<long double>(D.field_order()));
    std::complex<long double> first = 0;
    std::complex<long double> second = 0;
    for (int n = 0; n <= top; ++n) {
        const long double w = b[static_cast<std::size_t>(n)] / std::pow(lsq, static_cast<long double>(n));
        first += w * std::pow(z, n);
        if (n <= top - 1) second += w * std::pow(z, -n);
    }
    const std::complex<long double> rhs = first + std::pow(z, 2 * top) * second;
    return {lhs, {static_cast<double>(rhs.real()), static_cast<double>(rhs.imag())}};
}

namespace {

using Rational = boost::multiprecision::cpp_rational;
using RPoly = std::vector<Rational>;  // ascending, no trailing zeros

void trim(RPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

RPoly derivative(const RPoly& p) {
    RPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<int>(i));
    trim(d);
    return d;
}

RPoly sub(RPoly a, const RPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

std::pair<RPoly, RPoly> divmod(RPoly a, const RPoly& b) {
    if (b.empty()) throw std::domain_error("rational polynomial division by zero");
    if (a.size() < b.size()) return {RPoly{}, a};
    RPoly quot(a.size() - b.size() + 1, 0);
    for (std::size_t k = a.size() - 1;; --k) {
        const Rational c = a[k] / b.back();
        quot[k - (b.size() - 1)] = c;
        for (std::size_t j = 0; j < b.size(); ++j) a[k - (b.size() - 1) + j] -= c * b[j];
        if (k == b.size() - 1) break;
    }
    trim(a);
    trim(quot);
    return {quot, a};
}

RPoly make_monic(RPoly p) {
    const Rational lc = p.back();
    for (auto& c : p) c /= lc;
    return p;
}

RPoly gcd(RPoly a, RPoly b) {
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? a : make_monic(a);
}

// Yun's algorithm: f = c * prod_i s_i^i with s_i square-free and coprime.
std::vector<std::pair<RPoly, int>> squarefree_factors(const RPoly& f) {
    std::vector<std::pair<RPoly, int>> out;
    const RPoly fp = derivative(f);
    const RPoly a0 = gcd(f, fp);
    RPoly b = divmod(f, a0).first;
    RPoly c = divmod(fp, a0).first;
    RPoly d = sub(c, derivative(b));
    for (int i = 1; b.size() > 1; ++i) {
        const RPoly a = gcd(b, d);
        if (a.size() > 1) out.emplace_back(a, i);
        b = divmod(b, a).first;
        c = divmod(d, a).first;
        d = sub(c, derivative(b));
    }
    return out;
}

using CLD = std::complex<long double>;

CLD horner(const std::vector<long double>& p, CLD z) {
    CLD acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
    return acc;
}

std::vector<CLD> factor_roots(const RPoly& s) {
    const int m = static_cast<int>(s.size()) - 1;
    std::vector<long double> c(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) c[i] = static_cast<long double>(s[i] / s.back());
    if (m == 1) return {CLD(-c[0], 0)};

    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(m, m);
    for (int i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < m; ++i) comp(i, m - 1) = -static_cast<double>(c[static_cast<std::size_t>(i)]);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
    if (solver.info() != Eigen::Success) return {};

    std::vector<long double> dc(static_cast<std::size_t>(m));
    for (int i = 1; i <= m; ++i) dc[static_cast<std::size_t>(i - 1)] = c[static_cast<std::size_t>(i)] * i;
    std::vector<CLD> roots;
    for (int i = 0; i < m; ++i) {
        const auto ev = solver.eigenvalues()[i];
        CLD z(ev.real(), ev.imag());
        for (int it = 0; it < 8; ++it) {
            const CLD d = horner(dc, z);
            if (std::abs(d) == 0) break;
            const CLD step = horner(c, z) / d;
            z -= step;
            if (std::abs(step) <= 1e-18L * std::max(1.0L, std::abs(z))) break;
        }
        roots.push_back(z);
    }
    return roots;
}

}  // namespace

std::vector<LZero> zeros(const LPolynomial& L) {
    const int deg = L.degree();
    if (deg == 0) return {};
    RPoly f(L.coefficients.begin(), L.coefficients.begin() + deg + 1);
    std::vector<long double> coeffs(f.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = static_cast<long double>(L.coefficients[i]);

    const long double target = 1.0L / std::sqrt(static_cast<long double>(L.q()));
    std::vector<LZero> out;
    for (const auto& [s, mult] : squarefree_factors(f)) {
        const auto roots = factor_roots(s);
        if (static_cast<int>(roots.size()) != static_cast<int>(s.size()) - 1) {
            throw RootFindingError("eigenvalue solver failed for modulus " + L.modulus.to_text());
        }
        for (const auto& z : roots) {
            long double scale = 0;
            long double pw = 1;
            for (const auto a : coeffs) {
                scale += std::abs(a) * pw;
                pw *= std::abs(z);
            }
            const long double berr = std::abs(horner(coeffs, z)) / scale;
            if (!(berr <= 1e-10L)) {
                throw RootFindingError("root of L did not converge (backward error " +
                                       std::to_string(static_cast<double>(berr)) + ") for modulus " +
                                       L.modulus.to_text());
            }
            out.push_back({{static_cast<double>(z.real()), static_cast<double>(z.imag())},
                           static_cast<double>(std::abs(std::abs(z) - target)),
                           static_cast<double>(berr),
                           mult});
        }
    }
    std::sort(out.begin(), out.end(), [](const LZero& a, const LZero& b) {
        return std::arg(a.root) != std::arg(b.root) ? std::arg(a.root) < std::arg(b.root)
                                                    : std::abs(a.root) < std::abs(b.root);
    });
    return out;
}

namespace {

int checked_genus(const Polynomial& D, int h) {
    check_modulus(D);
    if (D.degree() % 2 == 0 || !is_squarefree(D)) {
        throw std::domain_error("log bound needs a square-free modulus of odd degree");
    }
    const int g = (D.degree() - 1) / 2;
    if (h < 1 || h > 2 * g) throw std::domain_error("log bound: h must satisfy 1 <= h <= 2g");
    return g;
}

}  // namespace

double log_l_upper_bound(const Polynomial& D, int h) {
    const int g = checked_genus(D, h);
    const std::uint32_t q = D.field_order();
    const double lq = std::log(static_cast<double>(q));
    double sum = 0.0;
    for (int d = 1; d < h; ++d) {
        const double weight = std::exp(-lq * d / 2.0 - static_cast<double>(d) / h) * (h - d) / h;
        std::int64_t chi_sum = 0;
        for (const auto& P : primes_of_degree(q, d)) chi_sum += residue_symbol(D, P);
        sum += weight * static_cast<double>(chi_sum);
    }
    return sum + 0.5 * std::log(h * lq) + static_cast<double>(2 * g + 1) / h;
}

double log_l_upper_bound_general(const Polynomial& D, int h, std::complex<double> z) {
    const int g = checked_genus(D, h);
    if (z.real() < 0) throw std::domain_error("log bound: Re z must be >= 0");
    const std::uint32_t q = D.field_order();
    const double lq = std::log(static_cast<double>(q));
    std::complex<double> sum = 0.0;
    for (int d = 1; d < h; ++d) {
        const auto& primes = primes_of_degree(q, d);
        std::int64_t plus = 0;
        std::int64_t minus = 0;
        for (const auto& P : primes) {
            const int c = residue_symbol(D, P);
            plus += c > 0;
            minus += c < 0;
        }
        for (int j = 1; j * d < h; ++j) {
            const double jd = static_cast<double>(j) * d;
            const std::int64_t chi_sum = plus + (j % 2 == 0 ? minus : -minus);
            const std::complex<double> w =
                std::exp(-jd * lq * (0.5 + z) - jd / h) * (static_cast<double>(h) - jd) / static_cast<double>(j);
            sum += w * static_cast<double>(chi_sum);
        }
    }
    return static_cast<double>(2 * g) / h + sum.real() / h;
}

PerronResult perron_check(const std::function<double(std::size_t)>& coeff, int N, double r) {
    if (N < 0) throw std::domain_error("perron_check: N must be >= 0");
    if (!(r > 0.0 && r < 1.0)) throw std::domain_error("perron_check: radius must lie in (0, 1)");

    constexpr std::size_t max_terms = 1u << 14;
    constexpr std::size_t quiet_run = 16;
    std::vector<double> a;
    long double peak = 0;
    std::size_t quiet = 0;
    for (std::size_t n = 0;; ++n) {
        if (n == max_terms) throw std::domain_error("perron_check: series terms do not decay on |u| = r");
        const double an = coeff(n);
        const long double t = std::abs(static_cast<long double>(an)) * std::pow(static_cast<long double>(r), n);
        if (!std::isfinite(an) || !std::isfinite(static_cast<double>(t))) {
            throw std::domain_error("perron_check: series diverges on |u| = r");
        }
        a.push_back(an);
        peak = std::max(peak, t);
        quiet = (t <= 1e-19L * std::max(peak, 1.0L)) ? quiet + 1 : 0;
        if (n > static_cast<std::size_t>(N) && quiet >= quiet_run) break;
    }

    PerronResult res{0.0, 0.0};
    long double direct = 0;
    for (int n = 0; n <= N; ++n) direct += a[static_cast<std::size_t>(n)];
    res.direct = static_cast<double>(direct);

    const std::vector<long double> poly(a.begin(), a.end());
    const auto trapezoid = [&](std::size_t M) {
        long double acc = 0;
        for (std::size_t j = 0; j < M; ++j) {
            const long double phi = 2.0L * std::numbers::pi_v<long double> * j / M;
            const CLD u = std::polar(static_cast<long double>(r), phi);
            const CLD F = horner(poly, u);
            acc += (F / ((1.0L - u) * std::pow(u, N))).real();
        }
        return acc / M;
    };
    std::size_t M = 64;
    while (M < 2 * (a.size() + static_cast<std::size_t>(N))) M *= 2;
    long double prev = trapezoid(M);
    for (int rounds = 0; rounds < 8; ++rounds) {
        M *= 2;
        const long double cur = trapezoid(M);
        const bool done = std::abs(cur - prev) <= 1e-15L * (1.0L + std::abs(cur));
        prev = cur;
        if (done) break;
    }
    res.contour = static_cast<double>(prev);
    return res;
}

}  // namespace ffq
