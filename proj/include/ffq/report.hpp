#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ffq/moments.hpp"

namespace ffq {

// One line of the shared report schema:
// family,q,g,k_or_l,empirical,main,normalized_error
struct ReportRow {
    std::string family;
    std::uint32_t q;
    int g;
    std::string key;  // k, a twist in pretty form, or theta=...
    double empirical;
    double main;
    double normalized_error;
};

ReportRow to_row(const MomentReport& r);
// main is the bound, normalized_error the ratio.
ReportRow to_row(const ThetaRow& r, const FamilySpec& family);
ReportRow to_row(const MagnitudeRow& r, std::uint32_t q);

// Floats are printed with 15 significant digits.
std::string format_real(double x);

std::string csv_header();
std::string to_csv(std::span<const ReportRow> rows);
std::string to_json(std::span<const ReportRow> rows);

}  // namespace ffq
