// ffql: batch front end for the L-function experiments.
//
// Exit codes: 0 success, 1 a checked property failed, 2 bad configuration.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ffq/arith.hpp"
#include "ffq/family.hpp"
#include "ffq/field.hpp"
#include "ffq/kernels.hpp"
#include "ffq/lfunc.hpp"
#include "ffq/mollifier.hpp"
#include "ffq/moments.hpp"
#include "ffq/polynomial.hpp"
#include "ffq/prime_cache.hpp"
#include "ffq/report.hpp"
#include "ffq/verify.hpp"

using namespace ffq;
using json = nlohmann::ordered_json;

namespace {

class CheckFailed : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    int workers = 0;
    bool experimental = false;
    std::string format = "csv";
    std::string cache_dir;
    std::string out;

    std::uint32_t q = 5;
    std::vector<int> g_list{1};
    int n = 0;
    std::string family = "H";
    std::vector<double> k_list{1.0};
    std::string modulus;
    std::vector<std::string> twists{"1"};
    int order = 1;
    double c1 = 0.0;
    bool fit_c1 = false;
    bool count_only = false;

    bool rh = false, afe = false, oracle = false, reciprocity = false, nonneg = false, reflection = false;
    std::size_t samples = 0;
    std::uint64_t seed = 1;

    int points = 16;
    double epsilon = 0.1;

    int M = 0;
    std::vector<double> alphas;
    int cap = 64;
    std::string schedule_file;
    std::string save;
    double k2 = 1.5;
    std::optional<double> c;

    int m = 1;
    int N = 10;
    double r = 0.5;
    int n_max = 3;
};

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot write output file " + o.out);
    f << text;
}

void check_format(const Options& o) {
    if (o.format != "csv" && o.format != "json") throw std::invalid_argument("--format must be csv or json");
}

void setup_field(const Options& o) {
    validate_field_prime(o.q, o.experimental ? FieldMode::experimental : FieldMode::standard);
}

std::string rows_out(const Options& o, const std::vector<ReportRow>& rows) {
    return o.format == "json" ? to_json(rows) : to_csv(rows);
}

std::vector<FamilyKind> kinds(const Options& o) {
    if (o.family == "both") return {FamilyKind::H, FamilyKind::P};
    const auto k = family_kind_from_string(o.family);
    return {k};
}

FamilySpec spec_for(const Options& o, FamilyKind kind, int g) {
    if (g < 1) throw std::invalid_argument("genus must be >= 1, got " + std::to_string(g));
    return FamilySpec::from_genus(kind, o.q, g);
}

// --- lvalue --------------------------------------------------------------

int run_lvalue(const Options& o) {
    setup_field(o);
    const auto D = parse_polynomial(o.q, o.modulus);
    if (!D.is_monic() || D.degree() % 2 == 0) {
        throw std::invalid_argument("modulus " + D.to_text() + " must be monic of odd degree");
    }
    const auto L = l_coefficients(D);
    const auto cv = central_value(L);
    json j;
    j["modulus"] = D.to_text();
    j["pretty"] = D.to_pretty();
    j["q"] = o.q;
    j["genus"] = *L.genus;
    j["coefficients"] = L.coefficients;
    j["central_value"] = {{"A", cv.A}, {"B", cv.B}, {"g", cv.genus}, {"value", cv.value}, {"sign", cv.exact_sign()}};
    auto zs = json::array();
    double worst = 0;
    for (const auto& z : zeros(L)) {
        zs.push_back({{"re", z.root.real()},
                      {"im", z.root.imag()},
                      {"abs", std::abs(z.root)},
                      {"multiplicity", z.multiplicity},
                      {"rh_residual", z.rh_residual}});
        worst = std::max(worst, z.rh_residual);
    }
    j["zeros"] = zs;
    j["max_rh_residual"] = worst;
    emit(o, j.dump(2) + '\n');
    return 0;
}

// --- enumerate -----------------------------------------------------------

int run_enumerate(const Options& o) {
    setup_field(o);
    const auto kind = family_kind_from_string(o.family);
    const FamilySpec spec = o.n > 0 ? FamilySpec{kind, o.q, o.n} : spec_for(o, kind, o.g_list.front());
    const auto members = enumerate_family(spec);
    if (o.count_only) {
        emit(o, std::to_string(members.size()) + '\n');
        return 0;
    }
    std::string text;
    if (o.format == "json") {
        auto arr = json::array();
        for (const auto& f : members) arr.push_back(f.to_text());
        text = arr.dump(2) + '\n';
    } else {
        for (const auto& f : members) text += f.to_text() + '\n';
    }
    emit(o, text);
    return 0;
}

// --- moments -------------------------------------------------------------

int run_moments(const Options& o) {
    setup_field(o);
    std::vector<ReportRow> rows;
    for (const auto kind : kinds(o)) {
        for (const int g : o.g_list) {
            const auto fv = family_values(spec_for(o, kind, g));
            for (const double k : o.k_list) rows.push_back(to_row(moment(fv, k)));
        }
    }
    emit(o, rows_out(o, rows));
    return 0;
}

// --- twisted -------------------------------------------------------------

int run_twisted(const Options& o) {
    setup_field(o);
    const auto kind = family_kind_from_string(o.family);
    if (kind == FamilyKind::M) throw std::invalid_argument("twisted moments need --family H or P");
    if (o.order != 1 && o.order != 2) throw std::invalid_argument("--order must be 1 or 2");
    if (kind == FamilyKind::H && o.order == 2) throw std::invalid_argument("the second twisted moment is over P only");
    std::vector<Polynomial> ls;
    for (const auto& t : o.twists) ls.push_back(parse_polynomial(o.q, t));

    std::vector<FamilyValues> fams;
    for (const int g : o.g_list) fams.push_back(family_values(spec_for(o, kind, g)));

    std::vector<ReportRow> rows;
    for (const auto& l : ls) {
        double c1 = o.c1;
        if (kind == FamilyKind::H && o.fit_c1) {
            const auto fit = fit_c1(fams, l);
            c1 = fit.C1;
            std::cerr << "fitted C1 for l = " << l.to_pretty() << ": " << format_real(fit.C1)
                      << " (residual " << format_real(fit.residual) << ")\n";
        }
        for (const auto& fv : fams) {
            MomentReport r;
            if (kind == FamilyKind::H) {
                r = twisted_first_moment_H(fv, l, c1);
            } else {
                r = o.order == 1 ? twisted_first_moment_P(fv, l) : twisted_second_moment_P(fv, l);
            }
            rows.push_back(to_row(r));
        }
    }
    emit(o, rows_out(o, rows));
    return 0;
}

// --- verify --------------------------------------------------------------

struct VerifyLine {
    std::string check;
    std::size_t checked;
    double metric;
    bool pass;
    std::string note;
};

int run_verify(const Options& o) {
    setup_field(o);
    if (!(o.rh || o.afe || o.oracle || o.reciprocity || o.nonneg || o.reflection)) {
        throw std::invalid_argument("verify needs at least one of --rh --afe --oracle --reciprocity --nonneg --reflection");
    }
    std::vector<VerifyLine> lines;
    const auto note_of = [](const std::optional<Polynomial>& D, const std::string& detail) {
        return D ? "modulus " + D->to_text() + (detail.empty() ? "" : ": " + detail) : std::string();
    };
    for (const int g : o.g_list) {
        const auto spec = spec_for(o, FamilyKind::H, g);
        const auto moduli = o.samples > 0 ? sample_family(spec, o.samples, o.seed) : enumerate_family(spec);
        const std::string tag = "q=" + std::to_string(o.q) + " g=" + std::to_string(g);
        if (o.rh) {
            const auto s = verify_rh(moduli);
            const bool ok = s.max_residual < 1e-8;
            lines.push_back({"rh " + tag, s.moduli, s.max_residual, ok, ok ? "" : note_of(s.worst, "")});
        }
        if (o.afe) {
            const auto s = verify_afe(moduli, {1, 2, 3});
            const bool ok = s.max_scaled_error <= 1e-9;
            lines.push_back({"afe " + tag, s.cases, s.max_scaled_error, ok, ok ? "" : note_of(s.worst, "")});
        }
        if (o.oracle) {
            const auto s = verify_oracle(moduli);
            lines.push_back({"oracle " + tag, s.checked, static_cast<double>(s.failures), s.ok(),
                             note_of(s.first_failure, s.detail)});
        }
        if (o.nonneg) {
            const auto s = verify_nonneg(moduli);
            lines.push_back({"nonneg " + tag, s.checked, static_cast<double>(s.failures), s.ok(),
                             note_of(s.first_failure, s.detail)});
        }
        if (o.reflection) {
            const auto s = verify_reflection(moduli);
            lines.push_back({"reflection " + tag, s.checked, static_cast<double>(s.failures), s.ok(),
                             note_of(s.first_failure, s.detail)});
        }
    }
    if (o.reciprocity) {
        const auto s = verify_reciprocity(o.q, 4, o.samples > 0 ? o.samples : 2000, o.seed);
        lines.push_back({"reciprocity q=" + std::to_string(o.q), s.checked, static_cast<double>(s.failures), s.ok(),
                         note_of(s.first_failure, s.detail)});
    }

    bool all = true;
    std::string text;
    if (o.format == "json") {
        auto arr = json::array();
        for (const auto& l : lines) {
            arr.push_back({{"check", l.check}, {"checked", l.checked}, {"metric", l.metric}, {"pass", l.pass}, {"note", l.note}});
        }
        text = arr.dump(2) + '\n';
    } else {
        text = "check,checked,metric,status,note\n";
        for (const auto& l : lines) {
            text += l.check + ',' + std::to_string(l.checked) + ',' + format_real(l.metric) + ',' +
                    (l.pass ? "PASS" : "FAIL") + ',' + l.note + '\n';
        }
    }
    for (const auto& l : lines) all = all && l.pass;
    emit(o, text);
    return all ? 0 : 1;
}

// --- theta-profile -------------------------------------------------------

int run_theta(const Options& o) {
    setup_field(o);
    if (o.points < 1) throw std::invalid_argument("--points must be >= 1");
    std::vector<double> grid;
    for (int i = 0; i < o.points; ++i) grid.push_back(2.0 * std::numbers::pi * i / o.points);
    std::vector<ReportRow> rows;
    for (const int g : o.g_list) {
        const auto spec = spec_for(o, FamilyKind::P, g);
        const auto fv = family_values(spec);
        const auto prof = second_moment_theta(fv, grid, o.epsilon);
        for (const auto& r : prof.rows) rows.push_back(to_row(r, spec));
        std::cerr << "g = " << g << ": max ratio " << format_real(prof.max_ratio) << '\n';
    }
    emit(o, rows_out(o, rows));
    return 0;
}

// --- mollifier -----------------------------------------------------------

MollifierSchedule schedule_of(const Options& o) {
    if (o.schedule_file.empty()) throw std::invalid_argument("--schedule FILE is required");
    return load_schedule(o.schedule_file);
}

int run_schedule(const Options& o) {
    setup_field(o);
    const auto s = o.alphas.empty() ? schedule_paper(o.q, o.g_list.front(), o.M)
                                    : schedule_desk(o.q, o.g_list.front(), o.alphas, o.cap, o.M);
    auto sc = s;
    if (o.alphas.empty()) sc.cap = o.cap;
    if (!o.save.empty()) save_schedule(sc, o.save);
    json j = json::parse(schedule_to_json(sc));
    j["J"] = sc.J;
    j["log_X"] = sc.log_X;
    const auto b = schedule_budget(sc);
    j["budget"] = {{"sum", b.sum}, {"bound", b.bound}, {"within", b.within}};
    const auto d = dirichlet_length(sc);
    j["dirichlet_length"] = {{"degrees", d.degrees}, {"budget", d.budget}};
    auto windows = json::array();
    for (int i = 1; i <= sc.J; ++i) {
        const auto [lo, hi] = sc.degree_window(i);
        windows.push_back({{"j", i}, {"degrees_above", lo}, {"degrees_upto", hi}, {"order", sc.order(i)}});
    }
    j["windows"] = windows;
    j["capped"] = sc.capped();
    emit(o, j.dump(2) + '\n');
    if (sc.mode == ScheduleMode::paper && d.degrees > d.budget * (1 + 1e-12)) {
        throw CheckFailed("Dirichlet length exceeds the paper budget");
    }
    return 0;
}

int run_classify(const Options& o) {
    const auto s = schedule_of(o);
    validate_field_prime(s.q);
    const auto kind = family_kind_from_string(o.family);
    const auto members = enumerate_family(FamilySpec::from_genus(kind, s.q, s.g));
    std::vector<std::size_t> counts(static_cast<std::size_t>(s.J) + 1, 0);
    std::vector<int> cls(members.size());
    const auto n = static_cast<std::int64_t>(members.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) cls[static_cast<std::size_t>(i)] = classify(members[static_cast<std::size_t>(i)], s);
    for (const int c : cls) ++counts.at(static_cast<std::size_t>(c));
    std::size_t total = 0;
    for (const auto c : counts) total += c;
    std::string text;
    if (o.format == "json") {
        json j;
        j["family"] = o.family;
        j["q"] = s.q;
        j["g"] = s.g;
        j["counts"] = counts;
        j["total"] = total;
        text = j.dump(2) + '\n';
    } else {
        text = "class,count\n";
        for (std::size_t j = 0; j < counts.size(); ++j) text += std::to_string(j) + ',' + std::to_string(counts[j]) + '\n';
    }
    emit(o, text);
    if (total != members.size()) throw CheckFailed("classes do not partition the family");
    return 0;
}

int run_holder(const Options& o) {
    const auto s = schedule_of(o);
    validate_field_prime(s.q);
    const auto fv = family_values(FamilySpec::from_genus(family_kind_from_string(o.family), s.q, s.g));
    const auto r = holder_check(fv.members, fv.central_floats(), o.k2, o.c, s);
    json j;
    j["family"] = o.family;
    j["q"] = s.q;
    j["g"] = s.g;
    j["schedule_mode"] = to_string(s.mode);
    j["capped"] = s.capped();
    j["two_k"] = r.k2;
    j["form"] = r.small_k ? "three-factor" : "two-factor";
    if (r.small_k) j["c"] = r.c;
    j["exponents"] = r.exponents;
    j["lhs"] = r.lhs;
    j["middle"] = r.middle;
    j["rhs"] = r.rhs;
    if (r.small_k) j["rhs_printed_exponents"] = r.rhs_printed;
    j["slack"] = r.slack;
    j["holds"] = r.holds;
    emit(o, j.dump(2) + '\n');
    if (!r.holds) throw CheckFailed("Hoelder bound fails");
    return 0;
}

int run_mollified(const Options& o) {
    const auto s = schedule_of(o);
    validate_field_prime(s.q);
    const auto fv = family_values(FamilySpec::from_genus(family_kind_from_string(o.family), s.q, s.g));
    const auto r = mollified_sums(fv, o.k2, s);
    json j;
    j["family"] = o.family;
    j["q"] = s.q;
    j["g"] = s.g;
    j["schedule_mode"] = to_string(s.mode);
    j["capped"] = r.capped;
    j["two_k"] = o.k2;
    j["S_LM"] = {{"value", r.S_LM}, {"normalization", r.norm_LM}, {"ratio", r.S_LM / r.norm_LM}};
    j["S_M"] = {{"value", r.S_M}, {"normalization", r.norm_M}, {"ratio", r.S_M / r.norm_M}};
    j["S_L2M"] = {{"value", r.S_L2M}, {"normalization", r.norm_L2M}, {"ratio", r.S_L2M / r.norm_L2M}};
    emit(o, j.dump(2) + '\n');
    return 0;
}

// --- mertens, perron, cache ----------------------------------------------

int run_mertens(const Options& o) {
    setup_field(o);
    if (o.m < 1) throw std::invalid_argument("--m must be >= 1");
    std::string text = o.format == "json" ? "" : "q,m,log_x,sum_log,sum_recip,log_log_x\n";
    auto arr = json::array();
    for (int m = 1; m <= o.m; ++m) {
        const auto x = ipow(o.q, static_cast<unsigned>(m));
        const auto s = mertens_sums(o.q, x);
        const double lx = m * std::log(static_cast<double>(o.q));
        if (o.format == "json") {
            arr.push_back({{"q", o.q}, {"m", m}, {"log_x", lx}, {"sum_log", s.sum_log}, {"sum_recip", s.sum_recip},
                           {"log_log_x", std::log(lx)}});
        } else {
            text += std::to_string(o.q) + ',' + std::to_string(m) + ',' + format_real(lx) + ',' + format_real(s.sum_log) +
                    ',' + format_real(s.sum_recip) + ',' + format_real(std::log(lx)) + '\n';
        }
    }
    emit(o, o.format == "json" ? arr.dump(2) + '\n' : text);
    return 0;
}

int run_perron(const Options& o) {
    setup_field(o);
    const auto D = parse_polynomial(o.q, o.modulus);
    const auto L = l_coefficients(D, LStrictness::general);
    const auto coeff = [&](std::size_t n) {
        return n < L.coefficients.size() ? static_cast<double>(L.coefficients[n]) : 0.0;
    };
    const auto r = perron_check(coeff, o.N, o.r);
    const double diff = std::abs(r.direct - r.contour);
    const bool ok = diff <= 1e-9 * (1.0 + std::abs(r.direct));
    json j;
    j["modulus"] = D.to_text();
    j["N"] = o.N;
    j["r"] = o.r;
    j["direct"] = r.direct;
    j["contour"] = r.contour;
    j["abs_diff"] = diff;
    j["pass"] = ok;
    emit(o, j.dump(2) + '\n');
    if (!ok) throw CheckFailed("contour sum differs from the direct sum for modulus " + D.to_text());
    return 0;
}

int run_cache(const Options& o) {
    validate_field_prime(o.q, o.experimental ? FieldMode::experimental : FieldMode::standard);
    const auto dir = prime_cache_directory();
    if (!dir) throw std::invalid_argument("cache needs --cache-dir or FFQL_CACHE_DIR");
    std::filesystem::create_directories(*dir);
    std::string text = "q,n,count,path\n";
    for (int n = 1; n <= o.n_max; ++n) {
        const auto primes = cache_primes(o.q, n, *dir);
        if (primes.size() != prime_count(o.q, n)) throw CheckFailed("prime table size mismatch at n = " + std::to_string(n));
        text += std::to_string(o.q) + ',' + std::to_string(n) + ',' + std::to_string(primes.size()) + ',' +
                prime_cache_path(*dir, o.q, n).string() + '\n';
    }
    emit(o, text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Quadratic Dirichlet L-functions over F_q[T]: exhaustive experiments"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--workers", o.workers, "worker threads (0: OpenMP default)");
    app.add_flag("--experimental", o.experimental, "allow primes q = 3 (mod 4)");
    app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--cache-dir", o.cache_dir, "prime table directory (overrides FFQL_CACHE_DIR)");
    app.add_option("--out", o.out, "write the report here instead of stdout");

    const auto add_q = [&](CLI::App* s) { s->add_option("--q", o.q, "base field order")->required(); };
    const auto add_g = [&](CLI::App* s) { s->add_option("--g", o.g_list, "genus, or a comma list")->delimiter(','); };

    auto* lvalue = app.add_subcommand("lvalue", "L-polynomial, zeros and central value of one modulus");
    add_q(lvalue);
    lvalue->add_option("--d", o.modulus, "modulus, e.g. \"0,1,0,1\" or \"T^3+T\"")->required();

    auto* enumerate = app.add_subcommand("enumerate", "list a family in canonical order");
    add_q(enumerate);
    add_g(enumerate);
    enumerate->add_option("--n", o.n, "degree (overrides --g)");
    enumerate->add_option("--family", o.family, "H, P or M");
    enumerate->add_flag("--count", o.count_only, "print only the size");

    auto* moments = app.add_subcommand("moments", "sum of |L(1/2)|^k over a family");
    add_q(moments);
    add_g(moments);
    moments->add_option("--family", o.family, "H, P or both");
    moments->add_option("--k", o.k_list, "moment orders")->delimiter(',');

    auto* twisted = app.add_subcommand("twisted", "twisted first or second moments");
    add_q(twisted);
    add_g(twisted);
    twisted->add_option("--family", o.family, "H or P");
    twisted->add_option("--order", o.order, "1 or 2");
    twisted->add_option("--l", o.twists, "twist polynomial; repeat for several");
    twisted->add_option("--c1", o.c1, "value of the H-family constant C1");
    twisted->add_flag("--fit-c1", o.fit_c1, "fit C1 by least squares over the given genera");

    auto* verify = app.add_subcommand("verify", "family-wide identity checks");
    add_q(verify);
    add_g(verify);
    verify->add_flag("--rh", o.rh, "zeros on |u| = q^{-1/2}");
    verify->add_flag("--afe", o.afe, "approximate functional equation, k = 1, 2, 3");
    verify->add_flag("--oracle", o.oracle, "point-count zeta numerator equals the L-polynomial");
    verify->add_flag("--reciprocity", o.reciprocity, "symbol against Euler's criterion and reciprocity");
    verify->add_flag("--nonneg", o.nonneg, "exact sign of the central value");
    verify->add_flag("--reflection", o.reflection, "coefficient reflection");
    verify->add_option("--samples", o.samples, "sample this many moduli (0: all)");
    verify->add_option("--seed", o.seed, "sampling seed");

    auto* theta = app.add_subcommand("theta-profile", "second moment over P on the circle |u| = q^{-1/2}");
    add_q(theta);
    add_g(theta);
    theta->add_option("--points", o.points, "grid size on [0, 2 pi)");
    theta->add_option("--epsilon", o.epsilon, "exponent slack in the bound");

    auto* moll = app.add_subcommand("mollifier", "mollifier schedules and checks");
    moll->require_subcommand(1);
    auto* sched = moll->add_subcommand("schedule", "build a schedule (paper mode unless --alphas is given)");
    add_q(sched);
    add_g(sched);
    sched->add_option("--M", o.M, "threshold exponent");
    sched->add_option("--alphas", o.alphas, "desk schedule alpha_0..alpha_J")->delimiter(',');
    sched->add_option("--cap", o.cap, "cap on the truncation order (even)");
    sched->add_option("--save", o.save, "write the schedule file here");
    auto* cls = moll->add_subcommand("classify", "class sizes over a family");
    auto* holder = moll->add_subcommand("holder", "both sides of the Hoelder step");
    auto* msums = moll->add_subcommand("mollified-sums", "the three mollified family sums");
    for (auto* s : {cls, holder, msums}) {
        s->add_option("--schedule", o.schedule_file, "schedule file")->required();
        s->add_option("--family", o.family, "H or P");
    }
    for (auto* s : {holder, msums}) s->add_option("--k2", o.k2, "2k");
    holder->add_option("--c", o.c, "exponent split when 2k < 1");

    auto* mertens = app.add_subcommand("mertens", "Mertens-type prime sums for x = q^1..q^m");
    add_q(mertens);
    mertens->add_option("--m", o.m, "largest exponent");

    auto* perron = app.add_subcommand("perron", "partial sums of L-coefficients via a contour integral");
    add_q(perron);
    perron->add_option("--d", o.modulus, "modulus")->required();
    perron->add_option("--N", o.N, "partial sum length");
    perron->add_option("--r", o.r, "contour radius in (0, 1)");

    auto* cache = app.add_subcommand("cache", "write prime tables for degrees 1..n-max");
    add_q(cache);
    cache->add_option("--n-max", o.n_max, "largest degree");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        check_format(o);
        if (o.workers > 0) set_worker_count(o.workers);
        if (!o.cache_dir.empty()) {
            set_prime_cache_directory(std::filesystem::path(o.cache_dir));
        } else if (const char* env = std::getenv("FFQL_CACHE_DIR"); env && *env) {
            set_prime_cache_directory(std::filesystem::path(env));
        }
        if (lvalue->parsed()) return run_lvalue(o);
        if (enumerate->parsed()) return run_enumerate(o);
        if (moments->parsed()) return run_moments(o);
        if (twisted->parsed()) return run_twisted(o);
        if (verify->parsed()) return run_verify(o);
        if (theta->parsed()) return run_theta(o);
        if (sched->parsed()) return run_schedule(o);
        if (cls->parsed()) return run_classify(o);
        if (holder->parsed()) return run_holder(o);
        if (msums->parsed()) return run_mollified(o);
        if (mertens->parsed()) return run_mertens(o);
        if (perron->parsed()) return run_perron(o);
        if (cache->parsed()) return run_cache(o);
    } catch (const CheckFailed& e) {
        std::cerr << "ffql: check failed: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "ffql: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "ffql: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "ffql: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
