#pragma once

#include <map>
#include <string>

namespace repi {

enum class CheckStatus { pass, fail, precondition_violated };

struct ReportNumerics {
    double grid_points = 0.0;
    double spacing = 0.0;
    double quad_error_estimate = 0.0;
};

/// One inequality check: claim identifier, both sides, the signed margin
/// (lhs - rhs unless noted), and the tolerance it was judged against.
/// pass <=> margin >= -tolerance.
struct VerificationReport {
    std::string claim_id;
    std::string inputs;
    std::string family;
    double r = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    double tolerance = 0.0;
    CheckStatus status = CheckStatus::fail;
    ReportNumerics numerics;
    std::map<std::string, double> details;

    bool passed() const { return status == CheckStatus::pass; }

    void judge() { status = margin >= -tolerance ? CheckStatus::pass : CheckStatus::fail; }

    std::string to_json() const;
    static std::string csv_header();
    std::string to_csv_row() const;
};

} // namespace repi
