#include "repi/report.hpp"

#include <sstream>

namespace repi {

namespace {

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::precondition_violated: return "precondition_violated";
    }
    return "fail";
}

std::string escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}

} // namespace

std::string VerificationReport::to_json() const {
    std::ostringstream os;
    os.precision(17);
    os << "{\"claim_id\":\"" << escape(claim_id) << "\",\"inputs\":\"" << escape(inputs)
       << "\",\"family\":\"" << escape(family) << "\",\"r\":" << r << ",\"lhs\":" << lhs
       << ",\"rhs\":" << rhs << ",\"margin\":" << margin << ",\"tolerance\":" << tolerance
       << ",\"status\":\"" << status_name(status) << "\",\"pass\":" << (passed() ? "true" : "false")
       << ",\"numerics\":{\"grid_points\":" << numerics.grid_points
       << ",\"spacing\":" << numerics.spacing
       << ",\"quadrature_error_estimate\":" << numerics.quad_error_estimate << "}";
    if (!details.empty()) {
        os << ",\"details\":{";
        bool first = true;
        for (const auto& [k, v] : details) {
            if (!first) os << ',';
            first = false;
            os << '"' << escape(k) << "\":" << v;
        }
        os << '}';
    }
    os << '}';
    return os.str();
}

std::string VerificationReport::csv_header() { return "claim_id,r,family,margin,pass"; }

std::string VerificationReport::to_csv_row() const {
    // family specs may contain commas (knot lists), so the field is quoted
    std::string quoted = "\"";
    for (char c : family) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    std::ostringstream os;
    os.precision(17);
    os << claim_id << ',' << r << ',' << quoted << ',' << margin << ','
       << (status == CheckStatus::precondition_violated ? "precondition_violated"
                                                        : (passed() ? "true" : "false"));
    return os.str();
}

} // namespace repi
