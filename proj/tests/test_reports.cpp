#include "chtg/reports.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <sstream>

using namespace chtg;

namespace {

std::vector<std::string> verdicts(const SignatureReport& r) {
    std::vector<std::string> out;
    for (const auto& row : r.rows) out.push_back(row.verdict);
    return out;
}

/// RFC 4180 records, without embedded newlines.
std::vector<std::vector<std::string>> read_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string cur;
        bool quoted = false;
        for (std::size_t i = 0; i < line.size(); ++i) {
            char c = line[i];
            if (quoted) {
                if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else if (c == '"') {
                    quoted = false;
                } else {
                    cur += c;
                }
            } else if (c == '"') {
                quoted = true;
            } else if (c == ',') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        fields.push_back(cur);
        rows.push_back(fields);
    }
    return rows;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

const SignatureClaim& claim(const std::string& id) {
    for (const auto& c : signature_claims())
        if (c.claim_id == id) return c;
    throw std::invalid_argument(id);
}

Cyclo sqrt_of(int k) {
    if (k == 2) return cos_pi(Rational(1, 4)).scaled(2);
    if (k == 3) return cos_pi(Rational(1, 6)).scaled(2);
    if (k == 5) return cos_pi(Rational(1, 5)).scaled(4) - Cyclo(1);
    throw std::invalid_argument("sqrt_of");
}

}  // namespace

TEST(SignatureScan, DiagonalK3) {
    auto r = signature_scan("(3,3)+", 2, 8);
    std::vector<std::string> want{"(3,0)", "degenerate", "(2,1)", "(2,1)", "(2,1)", "(2,1)", "(2,1)"};
    EXPECT_EQ(verdicts(r), want);
    EXPECT_TRUE(r.rows[1].det_exact->is_zero());
}

TEST(SignatureScan, FourThree) {
    auto r = signature_scan("(4,3)+", 2, 6);
    std::vector<std::string> want{"(3,0)", "degenerate", "(2,1)", "(2,1)", "(2,1)"};
    EXPECT_EQ(verdicts(r), want);
}

TEST(SignatureScan, ThreeFiveMinus) {
    auto r = signature_scan("(3,5)-", 2, 20);
    for (const auto& row : r.rows) {
        EXPECT_NE(row.det_sign, 0) << row.p;
        EXPECT_EQ(row.det_sign, row.p <= 7 ? -1 : 1) << row.p;
        // Positive determinant for p >= 8, but alpha < |rho| makes H indefinite.
        EXPECT_EQ(row.verdict, row.p <= 7 ? "(2,1)" : "(1,2)") << row.p;
    }
}

TEST(SignatureScan, MinusOmegaRow) {
    auto r = signature_scan(kMinusOmega, 2, 12);
    for (const auto& row : r.rows) {
        EXPECT_EQ(row.det_sign, row.p == 6 ? 0 : 1) << row.p;
    }
    EXPECT_EQ(r.rows[0].verdict, "(3,0)");
    EXPECT_EQ(r.rows.back().verdict, "(1,2)");
}

TEST(SignatureScan, FromSMatchesSymmetricBuild) {
    auto a = signature_scan(kMinusOmegaBar, 2, 10), b = signature_scan("(3,3)+", 2, 10);
    auto c = signature_scan(kMinusOmega, 2, 10), d = signature_scan("(3,3)-", 2, 10);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_EQ(*a.rows[i].det_exact, *b.rows[i].det_exact);
        EXPECT_EQ(*c.rows[i].det_exact, *d.rows[i].det_exact);
    }
}

TEST(SignatureScan, Errors) {
    EXPECT_THROW(signature_scan("(7,7)x", 2, 3), std::invalid_argument);
    EXPECT_THROW(signature_scan("(6,3)+", 2, 3), std::invalid_argument);
    EXPECT_THROW(signature_scan("(3,4)+", 1, 3), std::invalid_argument);
    EXPECT_THROW(signature_scan("(3,4)+", 5, 3), std::invalid_argument);
    EXPECT_THROW(signature_scan("(3,4)+", 2, 3, 256, 0), std::invalid_argument);
}

TEST(SignatureScan, WorkersGiveSameRows) {
    auto a = signature_scan("(5,4)-", 2, 14, 256, 1), b = signature_scan("(5,4)-", 2, 14, 256, 3);
    EXPECT_EQ(to_csv({a}), to_csv({b}));
}

TEST(SignatureScan, DetSignMatchesVerdictEverywhere) {
    std::vector<std::string> ids = candidate_ids(6);
    ids.push_back(kMinusOmegaBar);
    ids.push_back(kMinusOmega);
    for (const auto& id : ids) {
        auto r = signature_scan(id, 2, 20);
        for (const auto& row : r.rows) {
            EXPECT_TRUE(row.consistent) << id << " p=" << row.p << " " << row.verdict;
            ASSERT_TRUE(row.det_exact);
            EXPECT_EQ(row.det_sign, real_sign(*row.det_exact));
            EXPECT_EQ(row.det.sign(), row.det_sign) << id << " p=" << row.p;
        }
    }
}

TEST(SignatureScan, DegenerateValuesOfP) {
    std::map<std::string, std::vector<int>> want{
        {"(3,3)+", {3}},  {"(4,4)+", {2}}, {"(5,5)+", {}}, {"(6,6)+", {}},         {kMinusOmegaBar, {3}},
        {kMinusOmega, {6}}, {"(3,5)+", {}}, {"(3,5)-", {}}, {"(3,4)+", {}},        {"(4,3)+", {3}},
        {"(5,4)+", {}},   {"(8,6)+", {2}}, {"(3,4)-", {7}}, {"(8,6)-", {2, 12}},
    };
    for (const auto& [id, ps] : want) {
        std::vector<int> got;
        for (const auto& row : signature_scan(id, 2, 20).rows)
            if (row.verdict == "degenerate") got.push_back(row.p);
        EXPECT_EQ(got, ps) << id;
    }
}

TEST(SignatureScan, GoldenFiles) {
    const std::string dir = CHTG_TEST_DATA_DIR;
    int compared = 0;
    for (const char* name :
         {"signature_diagonal.csv", "signature_pair33.csv", "signature_pair35.csv", "signature_sporadic.csv"}) {
        auto rows = read_csv(slurp(dir + "/" + name));
        ASSERT_FALSE(rows.empty());
        ASSERT_EQ(rows[0], (std::vector<std::string>{"candidate", "p", "detH", "verdict"}));
        std::map<std::string, SignatureReport> cache;
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const auto& f = rows[i];
            ASSERT_EQ(f.size(), 4u);
            if (!cache.count(f[0])) cache[f[0]] = signature_scan(f[0], 2, 20);
            int p = std::stoi(f[1]);
            const auto& row = cache[f[0]].rows[p - 2];
            EXPECT_EQ(row.verdict, f[3]) << name << " " << f[0] << " p=" << p;
            Real want = Real::parse(f[2], 256);
            EXPECT_LE(abs(row.det - want), Real(1e-25, 256)) << name << " " << f[0] << " p=" << p;
            ++compared;
        }
    }
    EXPECT_EQ(compared, 12 * 19);
}

// ---------------------------------------------------------------------------

TEST(Claims, GatedStatementsHold) {
    int gated = 0;
    for (const auto& c : signature_claims()) {
        if (!c.gated) continue;
        ++gated;
        auto chk = check_claim(c, 20);
        EXPECT_TRUE(chk.holds()) << chk.summary();
    }
    EXPECT_EQ(gated, 11);
}

TEST(Claims, InertiaNotes) {
    auto plus = check_claim(claim("pair33-plus"), 20);
    ASSERT_EQ(plus.inertia_notes.size(), 14u);
    EXPECT_EQ(plus.inertia_notes.front().p, 7);
    EXPECT_EQ(plus.inertia_notes.front().actual, "(1,2)");
    auto minus = check_claim(claim("pair35-minus"), 20);
    ASSERT_EQ(minus.inertia_notes.size(), 13u);
    EXPECT_EQ(minus.inertia_notes.front().p, 8);
    EXPECT_NE(minus.summary().find("inertia differs at p=8,9"), std::string::npos);
    EXPECT_TRUE(check_claim(claim("row43"), 20).inertia_notes.empty());
}

TEST(Claims, KnownDisagreements) {
    auto small = check_claim(claim("row34-small-p"), 20);
    ASSERT_EQ(small.mismatches.size(), 2u);
    EXPECT_EQ(small.mismatches[0].p, 3);
    EXPECT_EQ(small.mismatches[1].p, 4);
    EXPECT_EQ(small.mismatches[0].actual, "(2,1)");
    EXPECT_EQ(small.summary().rfind("MISMATCH with statement", 0), 0u);

    auto p2 = check_claim(claim("row86-p2"), 20);
    ASSERT_EQ(p2.mismatches.size(), 1u);
    EXPECT_EQ(p2.mismatches[0].actual, "degenerate");
}

TEST(Claims, RangeClipping) {
    auto c = check_claim(claim("row34-large-p"), 4);
    EXPECT_TRUE(c.holds());
    EXPECT_LT(c.p_hi, c.p_lo);
    EXPECT_THROW(det_sign_of("(1,1)"), std::invalid_argument);
}

// ---------------------------------------------------------------------------

TEST(ClosedForm, FourThreeAtP4) {
    auto c = detH_closed_form("row43", 4);
    EXPECT_TRUE(c.exact_equal);
    EXPECT_EQ(c.closed, -sqrt_of(2));
}

TEST(ClosedForm, PairThreeThreeAtP3) {
    auto c = detH_closed_form("pair33-minus", 3);
    EXPECT_TRUE(c.closed.is_zero());
    EXPECT_TRUE(c.matrix.is_zero());
}

TEST(ClosedForm, EightSixFlagged) {
    auto c = detH_closed_form("row86", 3);
    EXPECT_EQ(c.closed, Cyclo(1) + sqrt_of(3));
    EXPECT_FALSE(c.agree);
    EXPECT_LT(real_sign(c.matrix), 0);
    EXPECT_TRUE(detH_closed_form("row86", 4).closed.is_zero());
}

TEST(ClosedForm, AgreementRange) {
    std::vector<std::string> exact{"row43",       "pair33-minus", "pair33-plus",  "pair35-plus",
                                   "pair35-minus", "diagonal-k3", "diagonal-k4", "diagonal-k5", "diagonal-k6"};
    for (const auto& id : exact)
        for (int p = 2; p <= 20; ++p) {
            auto c = detH_closed_form(id, p);
            EXPECT_TRUE(c.exact_equal) << id << " p=" << p;
        }
}

TEST(ClosedForm, ThreeFourDisagrees) {
    int agree = 0;
    for (int p = 2; p <= 20; ++p) agree += detH_closed_form("row34", p).agree;
    EXPECT_EQ(agree, 0);
    // Exact det of the + variant: -(3 + 4cos phi) sin(phi/2) - sqrt7 cos(phi/2).
    Cyclo sqrt7 = -Cyclo::i_unit() * (Cyclo(1) + (root_of_unity_pi(Rational(2, 7)) + root_of_unity_pi(Rational(4, 7)) +
                                                  root_of_unity_pi(Rational(8, 7)))
                                                     .scaled(2));
    for (int p = 2; p <= 12; ++p) {
        Rational h(1, p);
        Cyclo want = -((Cyclo(3) + cos_pi(2 * h).scaled(4)) * sin_pi(h)) - sqrt7 * cos_pi(h);
        EXPECT_EQ(detH_closed_form("row34", p).matrix, want) << p;
    }
}

TEST(ClosedForm, Errors) {
    EXPECT_THROW(detH_closed_form("row99", 3), std::invalid_argument);
    EXPECT_THROW(detH_closed_form("row43", 1), std::invalid_argument);
    EXPECT_EQ(closed_forms(6).size(), 11u);
}

// ---------------------------------------------------------------------------

TEST(TheoremTable, AllRowsValidate) {
    auto rows = theorem_table();
    ASSERT_EQ(rows.size(), 6u);
    for (const auto& r : rows) EXPECT_TRUE(r.ok()) << r.n << "," << r.m;
}

TEST(TheoremTable, Values) {
    auto rows = theorem_table(6);
    const auto& r54 = rows[3];
    ASSERT_EQ(std::pair(r54.n, r54.m), std::pair(5, 4));
    EXPECT_EQ(r54.sigma, (Cyclo(1) + sqrt_of(5)) * Cyclo(Rational(1, 2)));
    const auto& r86 = rows[4];
    EXPECT_EQ(r86.sigma * r86.sigma, Cyclo(2) + sqrt_of(2));
    EXPECT_GT(real_sign(r86.sigma), 0);
    const auto& r66 = rows[5];
    EXPECT_EQ(r66.rho, sqrt_of(3) * root_of_unity_pi(Rational(1, 6)));
    EXPECT_EQ(r66.sigma, sqrt_of(3));
    for (int k = 3; k <= 9; ++k) EXPECT_TRUE(theorem_table(k).back().ok()) << k;
    EXPECT_THROW(theorem_table(2), std::invalid_argument);
}

// ---------------------------------------------------------------------------

TEST(Emit, CsvLayout) {
    auto csv = to_csv({signature_scan("(4,3)+", 2, 4)});
    auto rows = read_csv(csv);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "candidate,p,detH,verdict");
    EXPECT_EQ(rows[1], (std::vector<std::string>{"(4,3)+", "2", rows[1][2], "(3,0)"}));
    EXPECT_EQ(rows[2][3], "degenerate");
    EXPECT_NE(csv.find("\"(4,3)+\",2,"), std::string::npos);
    // 30 significant digits in scientific notation
    EXPECT_EQ(rows[3][2], decimal(-Real(2, 256) * sin_pi(Rational(3, 4)).to_float(256).re));
    EXPECT_EQ(rows[3][2].substr(0, 33), "-1.41421356237309504880168872421e");
}

TEST(Emit, CsvQuoting) {
    EXPECT_EQ(csv_field("plain"), "plain");
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("say \"x\""), "\"say \"\"x\"\"\"");
}

TEST(Emit, Text) {
    auto t = to_text({signature_scan("(3,3)+", 2, 3)});
    EXPECT_NE(t.find("degenerate"), std::string::npos);
    EXPECT_NE(to_text(theorem_table()).find("(8,6)"), std::string::npos);
}

TEST(Emit, Json) {
    auto j = to_json(signature_scan("(4,3)+", 3, 3));
    EXPECT_EQ(j["candidate"], "(4,3)+");
    EXPECT_EQ(j["rows"][0]["verdict"], "degenerate");
    EXPECT_TRUE(j["rows"][0]["consistent"].get<bool>());

    auto c = to_json(check_claim(claim("row86-p2"), 20));
    EXPECT_FALSE(c["holds"].get<bool>());
    EXPECT_EQ(c["mismatches"][0]["actual"], "degenerate");

    auto f = to_json(detH_closed_form("row86", 3));
    EXPECT_FALSE(f["agree"].get<bool>());
    EXPECT_EQ(f["formula"], "row86");

    auto t = to_json(theorem_table()[0]);
    EXPECT_EQ(t["n"], 3);
    EXPECT_TRUE(t["checks"]["group_trace"].get<bool>());
    EXPECT_EQ(t["rho_value"]["re"].get<std::string>().substr(0, 3), "0.5");
}
