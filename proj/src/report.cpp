#include "ffq/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace ffq {

std::string format_real(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

ReportRow to_row(const MomentReport& r) {
    return {to_string(r.family.kind),
            r.family.q,
            r.family.genus(),
            r.l ? r.l->to_pretty() : format_real(r.k),
            r.empirical,
            r.main,
            r.normalized_error};
}

ReportRow to_row(const ThetaRow& r, const FamilySpec& family) {
    return {to_string(family.kind), family.q, family.genus(), "theta=" + format_real(r.theta),
            r.empirical, r.bound, r.ratio};
}

ReportRow to_row(const MagnitudeRow& r, std::uint32_t q) {
    return {to_string(r.kind), q, r.g, format_real(r.k), r.empirical, r.main, r.ratio};
}

std::string csv_header() { return "family,q,g,k_or_l,empirical,main,normalized_error"; }

std::string to_csv(std::span<const ReportRow> rows) {
    std::string out = csv_header() + '\n';
    for (const auto& r : rows) {
        out += r.family + ',' + std::to_string(r.q) + ',' + std::to_string(r.g) + ',' + r.key + ',' +
               format_real(r.empirical) + ',' + format_real(r.main) + ',' + format_real(r.normalized_error) + '\n';
    }
    return out;
}

std::string to_json(std::span<const ReportRow> rows) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["family"] = r.family;
        j["q"] = r.q;
        j["g"] = r.g;
        j["k_or_l"] = r.key;
        j["empirical"] = r.empirical;
        j["main"] = r.main;
        j["normalized_error"] = r.normalized_error;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + '\n';
}

}  // namespace ffq
