#pragma once

/**
 * @file emit.hpp
 * @brief Text, CSV and JSON renderings of scans, statement checks and closed forms.
 */

#include "chtg/reports/scan.hpp"

#include <json.hpp>

#include <iomanip>
#include <sstream>

namespace chtg {

inline constexpr int kReportDigits = 30;

inline std::string decimal(const Real& x, int digits = kReportDigits) { return x.to_string(digits); }

/// RFC 4180 quoting when the field needs it.
inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline const char* kSignatureCsvHeader = "candidate,p,detH,verdict";

inline std::string to_csv(const std::vector<SignatureReport>& reports) {
    std::ostringstream os;
    os << kSignatureCsvHeader << "\n";
    for (const auto& rep : reports)
        for (const auto& r : rep.rows)
            os << csv_field(rep.candidate) << "," << r.p << "," << decimal(r.det) << "," << csv_field(r.verdict) << "\n";
    return os.str();
}

inline std::string to_text(const std::vector<SignatureReport>& reports) {
    std::ostringstream os;
    os << std::left << std::setw(18) << "candidate" << std::right << std::setw(4) << "p" << "  " << std::setw(38)
       << "det(H)" << "  " << "verdict\n";
    for (const auto& rep : reports)
        for (const auto& r : rep.rows)
            os << std::left << std::setw(18) << rep.candidate << std::right << std::setw(4) << r.p << "  "
               << std::setw(38) << decimal(r.det) << "  " << r.verdict << "\n";
    return os.str();
}

inline nlohmann::ordered_json to_json(const SignatureReport& rep) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : rep.rows) {
        nlohmann::ordered_json j;
        j["p"] = r.p;
        j["detH"] = decimal(r.det);
        if (r.det_exact) j["detH_exact"] = r.det_exact->to_string();
        j["verdict"] = r.verdict;
        j["consistent"] = r.consistent;
        rows.push_back(j);
    }
    return {{"candidate", rep.candidate}, {"rows", rows}};
}

inline nlohmann::ordered_json to_json(const ClaimCheck& c) {
    auto list = [](const std::vector<ClaimMismatch>& xs) {
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (const auto& m : xs) out.push_back({{"p", m.p}, {"expected", m.expected}, {"actual", m.actual}});
        return out;
    };
    return {{"claim", c.claim.claim_id},
            {"candidate", c.claim.candidate},
            {"statement", c.claim.statement},
            {"p_range", {c.p_lo, c.p_hi}},
            {"holds", c.holds()},
            {"mismatches", list(c.mismatches)},
            {"inertia_notes", list(c.inertia_notes)},
            {"summary", c.summary()}};
}

inline nlohmann::ordered_json to_json(const ClosedFormCheck& c) {
    return {{"formula", c.formula_id},
            {"candidate", c.candidate},
            {"expression", c.expression},
            {"p", c.p},
            {"closed_form", decimal(c.closed_value)},
            {"matrix_det", decimal(c.matrix_value)},
            {"abs_difference", decimal(c.abs_difference, 6)},
            {"exact_equal", c.exact_equal},
            {"agree", c.agree}};
}

inline nlohmann::ordered_json to_json(const TheoremRow& r, Precision prec = 256) {
    auto num = [&](const Cyclo& x) {
        AComplex z = x.to_float(prec);
        return nlohmann::ordered_json{{"re", z.re.to_fixed(kReportDigits)}, {"im", z.im.to_fixed(kReportDigits)}};
    };
    return {{"n", r.n},
            {"m", r.m},
            {"rho", r.rho_text},
            {"rho_value", num(r.rho)},
            {"s", r.s_text},
            {"s_value", num(r.s)},
            {"sigma", r.sigma_text},
            {"sigma_value", num(r.sigma)["re"]},
            {"checks",
             {{"modulus", r.modulus_ok},
              {"sigma_squared", r.sigma_square_ok},
              {"s_is_rho_minus_1", r.s_ok},
              {"sigma_value", r.sigma_ok},
              {"group_trace", r.group_ok},
              {"angle_decomposition", r.angles_ok}}}};
}

inline std::string to_text(const std::vector<TheoremRow>& rows) {
    std::ostringstream os;
    os << std::left << std::setw(8) << "(n,m)" << std::setw(32) << "rho" << std::setw(44) << "s = rho - 1"
       << std::setw(16) << "sigma = tau" << "checks\n";
    for (const auto& r : rows) {
        std::string nm = "(" + std::to_string(r.n) + "," + std::to_string(r.m) + ")";
        os << std::left << std::setw(8) << nm << std::setw(32) << r.rho_text << std::setw(44) << r.s_text
           << std::setw(16) << r.sigma_text << (r.ok() ? "ok" : "FAIL") << "\n";
    }
    return os.str();
}

}  // namespace chtg
