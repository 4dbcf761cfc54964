#pragma once

/**
 * @file app.hpp
 * @brief The chtg command line: build, verify, search, tables, identities, classify.
 *
 * Exit codes: 0 success, 1 failed check or interrupted run, 2 usage or config error.
 * Streams are JSON-lines closed by a {"type":"summary"} record; `search --format json`
 * writes the candidate array instead.
 */

#include "chtg/cosearch.hpp"
#include "chtg/reports.hpp"
#include "chtg/trigroup.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <csignal>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace chtg::cli {

using json = nlohmann::ordered_json;

enum ExitCode : int { kExitOk = 0, kExitFailure = 1, kExitUsage = 2 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline std::atomic<bool>& interrupted() {
    static std::atomic<bool> flag{false};
    return flag;
}

namespace detail {
extern "C" inline void on_sigint(int) { interrupted().store(true); }
}  // namespace detail

/// SIGINT sets interrupted(); running commands finish with an incomplete status record.
inline void install_interrupt_handler() { std::signal(SIGINT, detail::on_sigint); }

struct RunConfig {
    Precision prec = kDefaultPrecision;
    int tol = 30;
    int max_braid = 24;
    int den_max = 90;
    int m_max = 12;
    int n_max = 12;
    std::string out;
    std::string format = "json";
    unsigned workers = 1;
    std::uint64_t seed = 20240923;

    void validate() const {
        if (prec < 53) throw UsageError("precision must be at least 53 bits");
        if (tol < 6) throw UsageError("tolerance exponent must be at least 6");
        if (workers < 1) throw UsageError("worker count must be at least 1");
        if (max_braid < 2) throw UsageError("max braid length must be at least 2");
        if (den_max < 1) throw UsageError("den-max must be at least 1");
        if (m_max < 3 || n_max < 3) throw UsageError("m-max and n-max must be at least 3");
    }

    Real tolerance() const { return chtg::tolerance(tol, prec); }
};

/// Precision from CHTG_PREC, or the default. Malformed values are a usage error.
inline Precision env_precision() {
    const char* env = std::getenv("CHTG_PREC");
    if (!env) return kDefaultPrecision;
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 53 || v > 1 << 20)
        throw UsageError(std::string("invalid CHTG_PREC: ") + env);
    return static_cast<Precision>(v);
}

// ---------------------------------------------------------------------------
// Output

/**
 * Writes to `path` through a temporary file renamed on finish(), or to the
 * given stream when the path is empty.
 */
class Sink {
  public:
    Sink(const std::string& path, std::ostream& fallback) : path_(path), out_(&fallback) {
        if (path_.empty()) return;
        tmp_ = path_ + ".tmp";
        file_ = std::make_unique<std::ofstream>(tmp_, std::ios::binary | std::ios::trunc);
        if (!*file_) throw UsageError("cannot write " + path_);
        out_ = file_.get();
    }
    Sink(const Sink&) = delete;
    Sink& operator=(const Sink&) = delete;
    ~Sink() {
        if (file_ && !finished_) {
            file_->close();
            std::error_code ec;
            std::filesystem::remove(tmp_, ec);
        }
    }

    void line(const json& j) { raw(j.dump() + "\n"); }
    void raw(const std::string& s) {
        *out_ << s;
        out_->flush();
    }
    bool to_file() const { return !path_.empty(); }

    void finish() {
        if (!file_) return;
        file_->close();
        std::filesystem::rename(tmp_, path_);
        finished_ = true;
    }

  private:
    std::string path_, tmp_;
    std::ostream* out_;
    std::unique_ptr<std::ofstream> file_;
    bool finished_ = false;
};

inline json summary(bool complete, bool pass, json extra = json::object()) {
    json j{{"type", "summary"}, {"status", complete ? "complete" : "incomplete"}, {"pass", pass}};
    for (auto& [k, v] : extra.items()) j[k] = v;
    return j;
}

/// {"type": type} followed by the fields of j.
inline json tagged(const std::string& type, const json& j) {
    json out{{"type", type}};
    for (auto& [k, v] : j.items()) out[k] = v;
    return out;
}

inline std::string num(const Real& x) { return x.to_fixed(kReportDigits); }

inline json complex_json(const AComplex& z) { return {{"re", num(z.re)}, {"im", num(z.im)}}; }

inline json matrix_json(const FloatMat& m, const ExactMat* e) {
    json rows = json::array();
    for (int i = 0; i < 3; ++i) {
        json row = json::array();
        for (int j = 0; j < 3; ++j) {
            json x = complex_json(m(i, j));
            if (e) x["exact"] = (*e)(i, j).to_string();
            row.push_back(x);
        }
        rows.push_back(row);
    }
    return rows;
}

inline json angle_value(const Angle& a) { return angle_json(a); }

// ---------------------------------------------------------------------------
// Commands

struct GroupArgs {
    int p = 0, n = 0, m = 0, im_sign = 1;
};

inline Group build_or_throw(const GroupArgs& a, Precision prec) {
    try {
        return build_symmetric(a.p, a.n, a.m, a.im_sign, prec);
    } catch (const std::domain_error&) {
        throw UsageError("no such symmetric group: 2cos(pi/" + std::to_string(a.m) + ") < 2cos^2(pi/" +
                         std::to_string(a.n) + ")");
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

inline int cmd_build(const GroupArgs& a, const RunConfig& cfg, std::ostream& out) {
    Group g = build_or_throw(a, cfg.prec);
    const GroupMatrices<Cyclo>* e = g.exact ? &*g.exact : nullptr;
    AComplex trs = g.symmetry().trace();
    Real det = e ? e->H.det().to_float(cfg.prec).re : g.H.det().re;
    Sink sink(cfg.out, out);

    if (cfg.format == "json") {
        json j{{"type", "group"}, {"p", a.p}, {"n", a.n}, {"m", a.m}, {"im_sign", a.im_sign}, {"prec", cfg.prec}};
        j["exact"] = e != nullptr;
        j["rho"] = complex_json(g.params.rho);
        if (g.params.rho_exact) j["rho"]["exact"] = g.params.rho_exact->to_string();
        j["sigma"] = num(g.params.sigma);
        j["tau"] = num(g.params.tau);
        json mats;
        mats["R1"] = matrix_json(g.R1, e ? &e->R1 : nullptr);
        mats["R2"] = matrix_json(g.R2, e ? &e->R2 : nullptr);
        mats["R3"] = matrix_json(g.R3, e ? &e->R3 : nullptr);
        mats["H"] = matrix_json(g.H, e ? &e->H : nullptr);
        mats["S"] = matrix_json(*g.S, e && e->S ? &*e->S : nullptr);
        j["matrices"] = mats;
        j["trace_S"] = complex_json(trs);
        if (e && e->S) j["trace_S"]["exact"] = e->S->trace().to_string();
        j["detH"] = num(det);
        j["signature"] = g.signature.verdict();
        j["verdict"] = g.signature.verdict();
        j["signature_warning"] = g.signature_warning;
        sink.line(j);
        sink.line(summary(true, true));
    } else if (cfg.format == "csv") {
        std::ostringstream os;
        os << "matrix,i,j,re,im,exact\n";
        auto emit = [&](const char* name, const FloatMat& m, const ExactMat* x) {
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < 3; ++k)
                    os << name << "," << i + 1 << "," << k + 1 << "," << num(m(i, k).re) << "," << num(m(i, k).im)
                       << "," << csv_field(x ? (*x)(i, k).to_string() : "") << "\n";
        };
        emit("R1", g.R1, e ? &e->R1 : nullptr);
        emit("R2", g.R2, e ? &e->R2 : nullptr);
        emit("R3", g.R3, e ? &e->R3 : nullptr);
        emit("H", g.H, e ? &e->H : nullptr);
        emit("S", *g.S, e && e->S ? &*e->S : nullptr);
        sink.raw(os.str());
    } else {
        std::ostringstream os;
        os << "p=" << a.p << " n=" << a.n << " m=" << a.m << " im_sign=" << a.im_sign << "\n";
        os << "rho    = " << num(g.params.rho.re) << " + " << num(g.params.rho.im) << " i\n";
        os << "sigma  = " << num(g.params.sigma) << "\n";
        os << "tr(S)  = " << num(trs.re) << " + " << num(trs.im) << " i\n";
        os << "det(H) = " << num(det) << "\n";
        os << "signature " << g.signature.verdict() << (g.signature_warning ? "  (warning: not (2,1))" : "") << "\n";
        sink.raw(os.str());
    }
    sink.finish();
    return kExitOk;
}

inline int cmd_verify(const GroupArgs& a, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    Group g = build_or_throw(a, cfg.prec);
    Real tol = cfg.tolerance();
    Sink sink(cfg.out, out);
    int checks = 0, failures = 0;
    std::string first_failure;
    auto record = [&](json j, bool pass) {
        ++checks;
        j["pass"] = pass;
        if (!pass) {
            ++failures;
            if (first_failure.empty()) first_failure = j.dump();
        }
        sink.line(j);
    };

    sink.line({{"type", "group"},
               {"p", a.p},
               {"n", a.n},
               {"m", a.m},
               {"im_sign", a.im_sign},
               {"exact", g.exact.has_value()},
               {"signature", g.signature.verdict()},
               {"signature_warning", g.signature_warning}});

    SymmetryReport rep = verify_symmetry(g, tol);
    for (const auto& it : rep.identities)
        record({{"type", "check"}, {"kind", "symmetry"}, {"name", it.name}, {"residual", it.residual.to_string(6)}},
               it.pass);
    for (const auto& it : rep.vector_relations)
        record({{"type", "check"}, {"kind", "polar-vector"}, {"name", it.name}, {"residual", it.residual.to_string(6)}},
               it.pass);
    if (rep.exact_s_squared)
        record({{"type", "check"}, {"kind", "exact"}, {"name", "S^2 = R1R2R3"}}, *rep.exact_s_squared);

    try {
        TraceInvariants t = trace_invariants(g, tol);
        record({{"type", "check"},
                {"kind", "trace"},
                {"name", "tr(RiRj) = u(2 - |x|^2) + ubar^2"},
                {"exact", t.exact},
                {"residual", t.exact ? "0" : t.max_difference.to_string(6)}},
               true);
    } catch (const std::logic_error& e) {
        record({{"type", "check"}, {"kind", "trace"}, {"name", "tr(RiRj) = u(2 - |x|^2) + ubar^2"}, {"error", e.what()}},
               false);
    }

    BraidReport br = braid_report(g, cfg.max_braid, tol);
    BraidReport want{{a.n, a.n, a.m, a.m}};
    record({{"type", "braid"},
            {"name", "braid lengths"},
            {"report", br.to_string(cfg.max_braid)},
            {"expected", want.to_string(cfg.max_braid)}},
           br.lengths == want.lengths);

    try {
        Real r = lemma21_eigencheck(g, tol);
        record({{"type", "check"}, {"kind", "eigenvalues"}, {"name", "eigenvalues of R1R2"}, {"residual", r.to_string(6)}},
               r <= tol);
    } catch (const std::domain_error& e) {
        sink.line({{"type", "skip"}, {"name", "eigenvalues of R1R2"}, {"reason", e.what()}});
    }

    if (br.lengths[2] == 4) {
        FloatMat lhs = evaluate_word(g, Word{{-2, 1, 2, 1, 2, -1}});
        FloatMat rhs = evaluate_word(g, Word{{1, 2}});
        Real r = projective_residual(lhs, rhs);
        record({{"type", "check"}, {"kind", "word"}, {"name", "[-2 1 2 1 2 -1] ~ [1 2]"}, {"residual", r.to_string(6)}},
               r <= tol);
    }

    sink.line(summary(true, failures == 0, {{"checks", checks}, {"failures", failures}}));
    sink.finish();
    if (failures) {
        err << "verification failed: " << first_failure << "\n";
        return kExitFailure;
    }
    return kExitOk;
}

inline int cmd_search(const RunConfig& cfg, bool verbose, bool audit, std::ostream& out, std::ostream& err) {
    SearchOptions opt;
    opt.workers = cfg.workers;
    opt.verbose = verbose;
    opt.exact_audit = audit;
    opt.cancel = &interrupted();
    SearchResult r;
    try {
        r = search({cfg.m_max, cfg.n_max, cfg.den_max}, opt);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    bool confirmed = true;
    for (const auto& c : r.candidates) confirmed &= c.exact_confirmed || verbose;

    Sink sink(cfg.out, out);
    if (cfg.format == "json") {
        json arr = to_json(r.candidates, verbose);
        if (!r.complete) arr.push_back({{"status", "incomplete"}});
        sink.raw(arr.dump(2) + "\n");
    } else if (cfg.format == "csv") {
        std::ostringstream os;
        os << "n,m,a_num,a_den,b_num,b_den,s_re,s_im,exact_confirmed\n";
        for (const auto& c : r.candidates) {
            auto [re, im] = fixed_parts(c.s, kReportDigits);
            os << c.n << "," << c.m << "," << c.a.num() << "," << c.a.den() << "," << c.b.num() << "," << c.b.den()
               << "," << re << "," << im << "," << (c.exact_confirmed ? "true" : "false") << "\n";
        }
        if (!r.complete) os << "# status: incomplete\n";
        sink.raw(os.str());
    } else {
        std::ostringstream os;
        for (const auto& c : r.candidates)
            os << "(" << c.n << "," << c.m << ")  a=" << c.a.to_string() << "  b=" << c.b.to_string()
               << "  s=" << c.s.to_string() << (c.exact_confirmed ? "" : "  [unconfirmed]") << "\n";
        if (!r.complete) os << "status: incomplete\n";
        sink.raw(os.str());
    }
    sink.finish();

    json stats{{"angles", r.stats.angles},       {"pairs", r.stats.pairs},         {"raw_hits", r.stats.raw_hits},
               {"confirmed", r.stats.confirmed}, {"rejected", r.stats.rejected}, {"candidates", r.candidates.size()}};
    json s = summary(r.complete, r.complete && confirmed, {{"stats", stats}});
    (sink.to_file() ? out : err) << s.dump() << "\n";
    return r.complete && confirmed ? kExitOk : kExitFailure;
}

inline std::vector<std::string> default_table_candidates() {
    return {"(3,3)+",        "(4,4)+",    "(5,5)+",  "(6,6)+",  kMinusOmegaBar, kMinusOmega,
            "(3,5)+",        "(3,5)-",    "(3,4)+",  "(4,3)+",  "(5,4)+",       "(8,6)+"};
}

struct TablesArgs {
    std::string kind = "signature";
    std::vector<std::string> candidates;
    std::vector<std::string> formulas;
    int p_min = 2, p_max = 20;
};

inline int cmd_tables(const TablesArgs& t, const RunConfig& cfg, std::ostream& out) {
    if (t.p_min < 2 || t.p_max < t.p_min) throw UsageError("invalid p range");
    Sink sink(cfg.out, out);
    bool complete = true, pass = true;
    auto stop = [&] { return interrupted().load() ? (complete = false, true) : false; };

    if (t.kind == "signature") {
        std::vector<std::string> ids = t.candidates.empty() ? default_table_candidates() : t.candidates;
        for (const auto& id : ids) try {
                find_candidate(id);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
        std::vector<SignatureReport> reps;
        for (const auto& id : ids) {
            if (stop()) break;
            reps.push_back(signature_scan(id, t.p_min, t.p_max, cfg.prec, cfg.workers));
            for (const auto& r : reps.back().rows) pass &= r.consistent;
        }
        if (cfg.format == "csv") {
            sink.raw(to_csv(reps));
            if (!complete) sink.raw("# status: incomplete\n");
        } else if (cfg.format == "text") {
            sink.raw(to_text(reps));
            if (!complete) sink.raw("status: incomplete\n");
        } else {
            for (const auto& r : reps) {
                sink.line(tagged("signature", to_json(r)));
            }
            sink.line(summary(complete, pass));
        }
    } else if (t.kind == "claims") {
        std::ostringstream os;
        if (cfg.format == "csv") os << "claim,candidate,gated,holds,summary\n";
        int gated_failures = 0;
        for (const auto& c : signature_claims()) {
            if (stop()) break;
            ClaimCheck chk = check_claim(c, t.p_max, cfg.prec, cfg.workers);
            if (c.gated && !chk.holds()) ++gated_failures;
            if (cfg.format == "csv") {
                os << c.claim_id << "," << csv_field(c.candidate) << "," << (c.gated ? "true" : "false") << ","
                   << (chk.holds() ? "true" : "false") << "," << csv_field(chk.summary()) << "\n";
            } else if (cfg.format == "text") {
                os << c.claim_id << (c.gated ? "" : " (ungated)") << ": " << chk.summary() << "\n";
            } else {
                json j = tagged("claim", to_json(chk));
                j["gated"] = c.gated;
                sink.line(j);
            }
        }
        pass = gated_failures == 0;
        if (cfg.format == "json") {
            sink.line(summary(complete, pass, {{"gated_failures", gated_failures}}));
        } else {
            if (!complete) os << "# status: incomplete\n";
            sink.raw(os.str());
        }
    } else if (t.kind == "closed-forms") {
        std::vector<ClosedForm> forms;
        if (t.formulas.empty()) {
            forms = closed_forms(6);
        } else {
            for (const auto& id : t.formulas) try {
                    forms.push_back(find_closed_form(id));
                } catch (const std::invalid_argument& e) {
                    throw UsageError(e.what());
                }
        }
        std::ostringstream os;
        if (cfg.format == "csv") os << "formula,candidate,p,closed_form,matrix_det,exact_equal,agree\n";
        for (const auto& f : forms) {
            for (int p = t.p_min; p <= t.p_max && !stop(); ++p) {
                ClosedFormCheck c = detH_closed_form(f, p, cfg.prec);
                pass &= c.agree;
                if (cfg.format == "csv") {
                    os << f.formula_id << "," << csv_field(f.candidate) << "," << p << "," << decimal(c.closed_value)
                       << "," << decimal(c.matrix_value) << "," << (c.exact_equal ? "true" : "false") << ","
                       << (c.agree ? "true" : "false") << "\n";
                } else if (cfg.format == "text") {
                    os << f.formula_id << " p=" << p << "  closed " << decimal(c.closed_value) << "  matrix "
                       << decimal(c.matrix_value) << (c.agree ? "" : "  DISAGREE") << "\n";
                } else {
                    sink.line(tagged("closed-form", to_json(c)));
                }
            }
        }
        if (cfg.format == "json") {
            sink.line(summary(complete, pass));
        } else {
            if (!complete) os << "# status: incomplete\n";
            sink.raw(os.str());
        }
    } else if (t.kind == "theorem") {
        auto rows = theorem_table();
        for (const auto& r : rows) pass &= r.ok();
        if (cfg.format == "text") {
            sink.raw(to_text(rows));
        } else if (cfg.format == "csv") {
            std::ostringstream os;
            os << "n,m,rho,s,sigma,ok\n";
            for (const auto& r : rows)
                os << r.n << "," << r.m << "," << csv_field(r.rho_text) << "," << csv_field(r.s_text) << ","
                   << csv_field(r.sigma_text) << "," << (r.ok() ? "true" : "false") << "\n";
            sink.raw(os.str());
        } else {
            for (const auto& r : rows) sink.line(tagged("theorem-row", to_json(r, cfg.prec)));
            sink.line(summary(true, pass));
        }
    } else {
        throw UsageError("unknown table kind: " + t.kind);
    }
    sink.finish();
    return complete && pass ? kExitOk : kExitFailure;
}

struct IdentityArgs {
    std::vector<std::string> suites;
    int trials = 100;
    int phi_den = 60;
};

/// Angle pairs with denominators <= den_max satisfying cos a + cos b + cos(a+b) = 1/2.
inline std::vector<std::pair<Angle, Angle>> half_angle_solutions(int den_max) {
    auto angles = enumerate_angles(den_max);
    std::vector<std::pair<Angle, Angle>> out;
    for (const auto& a : angles)
        for (const auto& b : angles) {
            double x = std::numbers::pi * a.num() / a.den(), y = std::numbers::pi * b.num() / b.den();
            if (std::abs(std::cos(x) + std::cos(y) + std::cos(x + y) - 0.5) > 1e-9) continue;
            if (half_angle_hypothesis(a, b)) out.emplace_back(a, b);
        }
    return out;
}

inline int cmd_identities(const IdentityArgs& ia, const RunConfig& cfg, std::ostream& out) {
    if (ia.trials < 1) throw UsageError("trials must be at least 1");
    if (ia.phi_den < 1) throw UsageError("phi denominator bound must be at least 1");
    std::vector<std::string> suites = ia.suites.empty() ? identity_suites() : ia.suites;
    for (const auto& s : suites) try {
            identity_ids(s);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }

    std::mt19937_64 rng(cfg.seed);
    auto random_angle = [&] {
        long den = std::uniform_int_distribution<long>(1, ia.phi_den)(rng);
        long n = std::uniform_int_distribution<long>(0, 2 * den - 1)(rng);
        return Angle(n, den);
    };
    std::vector<std::pair<Angle, Angle>> solutions;

    Sink sink(cfg.out, out);
    std::ostringstream os;
    if (cfg.format == "csv") os << "suite,id,trials,failures,pass\n";
    bool complete = true;
    int total = 0, failed = 0;
    for (const auto& suite : suites) {
        if (suite == "half-angle" && solutions.empty()) solutions = half_angle_solutions(30);
        for (const auto& id : identity_ids(suite)) {
            if (interrupted()) {
                complete = false;
                break;
            }
            int arity = identity_arity(suite, id);
            std::vector<std::pair<std::optional<Angle>, std::optional<Angle>>> cases;
            if (arity == 0) {
                cases.emplace_back();
            } else if (suite == "half-angle") {
                for (const auto& [a, b] : solutions) cases.emplace_back(a, b);
            } else {
                for (int k = 0; k < ia.trials; ++k) {
                    Angle x = random_angle();
                    cases.emplace_back(x, arity == 2 ? std::optional<Angle>(random_angle()) : std::nullopt);
                }
            }
            int failures = 0;
            json first;
            for (const auto& [x, y] : cases) {
                bool ok = false;
                try {
                    ok = validate_identity(suite, id, x, y);
                } catch (const std::domain_error&) {
                    ok = false;
                }
                if (!ok && failures++ == 0) {
                    first = json::object();
                    if (x) first["phi"] = angle_value(*x);
                    if (y) first["psi"] = angle_value(*y);
                }
            }
            ++total;
            failed += failures != 0;
            int n = static_cast<int>(cases.size());
            if (cfg.format == "csv") {
                os << suite << "," << id << "," << n << "," << failures << "," << (failures ? "false" : "true") << "\n";
            } else if (cfg.format == "text") {
                os << suite << " " << id << ": " << (failures ? "FAIL" : "ok") << " (" << n << " cases)\n";
            } else {
                json j{{"type", "identity"}, {"suite", suite}, {"id", id},
                       {"trials", n},        {"failures", failures}, {"pass", failures == 0}};
                if (failures) j["first_failure"] = first;
                sink.line(j);
            }
        }
        if (!complete) break;
    }
    if (cfg.format == "json") {
        sink.line(summary(complete, failed == 0, {{"identities", total}, {"failed", failed}, {"seed", cfg.seed}}));
    } else {
        if (!complete) os << "# status: incomplete\n";
        sink.raw(os.str());
    }
    sink.finish();
    return complete && failed == 0 ? kExitOk : kExitFailure;
}

inline int cmd_classify(const std::string& word_text, const GroupArgs& a, int max_order, const RunConfig& cfg,
                        std::ostream& out) {
    Word w;
    try {
        w = Word::parse(word_text);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    Group g = build_or_throw(a, cfg.prec);
    Real tol = cfg.tolerance();
    FloatMat m = evaluate_word(g, w);
    AComplex tr = m.trace();
    ElementType type = classify_isometry(tr, tol);
    auto eig = eigenvalues3(m, cfg.prec);
    std::optional<int> order;
    if (g.exact)
        order = projective_order(evaluate_word_exact(g, w), max_order);
    else
        order = projective_order(m, max_order, tol);

    json j{{"type", "element"}, {"word", w.to_string()}, {"p", a.p}, {"n", a.n}, {"m", a.m}, {"im_sign", a.im_sign}};
    j["trace"] = complex_json(tr);
    j["discriminant"] = trace_discriminant(tr).to_string(kReportDigits);
    j["classification"] = to_string(type);
    json ev = json::array();
    for (const auto& z : eig) ev.push_back(complex_json(z));
    j["eigenvalues"] = ev;
    if (order)
        j["projective_order"] = *order;
    else
        j["projective_order"] = nullptr;
    j["order_bound"] = max_order;
    if (w.letters == std::vector<int>{1, 2}) {
        try {
            j["eigenvalue_formula_residual"] = lemma21_eigencheck(g, tol).to_string(6);
        } catch (const std::domain_error& e) {
            j["eigenvalue_formula_residual"] = nullptr;
        }
    }

    Sink sink(cfg.out, out);
    if (cfg.format == "json") {
        sink.line(j);
        sink.line(summary(true, true));
    } else if (cfg.format == "csv") {
        sink.raw("word,classification,trace_re,trace_im,projective_order\n" + csv_field(w.to_string()) + "," +
                 to_string(type) + "," + num(tr.re) + "," + num(tr.im) + "," + (order ? std::to_string(*order) : "") +
                 "\n");
    } else {
        std::ostringstream os;
        os << "word " << w.to_string() << ": " << to_string(type) << ", tr = " << num(tr.re) << " + " << num(tr.im)
           << " i, order " << (order ? std::to_string(*order) : ">" + std::to_string(max_order)) << "\n";
        sink.raw(os.str());
    }
    sink.finish();
    return kExitOk;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    try {
        cfg.prec = env_precision();
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    CLI::App app{"Symmetric complex hyperbolic triangle groups: construction, checks and search", "chtg"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    auto common = [&](CLI::App* s) {
        s->add_option("--prec", cfg.prec, "Working precision in bits (default 256, or CHTG_PREC)");
        s->add_option("--tol", cfg.tol, "Tolerance exponent d, tolerance 10^-d");
        s->add_option("--workers", cfg.workers, "Worker threads");
        s->add_option("--seed", cfg.seed, "Seed for randomized suites");
        s->add_option("--out", cfg.out, "Output file (written atomically); stdout when absent");
        s->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    };
    GroupArgs ga;
    auto group_opts = [&](CLI::App* s) {
        s->add_option("--p", ga.p, "Order of the complex reflections")->required();
        s->add_option("--n", ga.n, "Braid length n")->required();
        s->add_option("--m", ga.m, "Braid length m")->required();
        s->add_option("--im-sign", ga.im_sign, "Sign of Im(rho)")->check(CLI::IsMember({-1, 1}));
    };

    auto* build = app.add_subcommand("build", "Build R1, R2, R3, H and S for a symmetric group");
    common(build);
    group_opts(build);

    auto* verify = app.add_subcommand("verify", "Check the symmetry relations, braid lengths and eigenvalue formula");
    common(verify);
    group_opts(verify);
    verify->add_option("--max-braid", cfg.max_braid, "Largest braid length tried");

    bool verbose = false, audit = false;
    auto* srch = app.add_subcommand("search", "Enumerate rational angle pairs solving both trace equations");
    common(srch);
    srch->add_option("--den-max", cfg.den_max, "Largest angle denominator");
    srch->add_option("--m-max", cfg.m_max, "Largest m");
    srch->add_option("--n-max", cfg.n_max, "Largest n");
    srch->add_flag("--verbose", verbose, "Include multiplicities, raw hits and rejected classes");
    srch->add_flag("--audit", audit, "Evaluate every pair exactly instead of prefiltering");

    TablesArgs ta;
    auto* tables = app.add_subcommand("tables", "Signature scans, printed statements, closed forms, parameter table");
    common(tables);
    tables->add_option("--kind", ta.kind, "What to produce")
        ->check(CLI::IsMember({"signature", "claims", "closed-forms", "theorem"}));
    tables->add_option("--candidate", ta.candidates, "Candidate ids such as (3,5)- (repeatable)");
    tables->add_option("--formula", ta.formulas, "Closed-form ids (repeatable)");
    tables->add_option("--p-min", ta.p_min, "Smallest p");
    tables->add_option("--p-max", ta.p_max, "Largest p");

    IdentityArgs ia;
    auto* ident = app.add_subcommand("identities", "Exact checks of the trigonometric identity suites");
    common(ident);
    ident->add_option("--suite", ia.suites, "monaghan, parker, lemma-nm, half-angle (repeatable; all by default)");
    ident->add_option("--trials", ia.trials, "Random angles per parametric identity");
    ident->add_option("--phi-den", ia.phi_den, "Largest denominator of random angles");

    std::string word;
    int max_order = 120;
    auto* cls = app.add_subcommand("classify", "Classify a word in the generators");
    common(cls);
    group_opts(cls);
    cls->add_option("--word", word, "Signed generator indices, e.g. \"1 2 -3\"")->required();
    cls->add_option("--max-order", max_order, "Largest projective order tried");
    cls->add_option("--max-braid", cfg.max_braid, "Largest braid length tried");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        cfg.validate();
        if (*build) return cmd_build(ga, cfg, out);
        if (*verify) return cmd_verify(ga, cfg, out, err);
        if (*srch) return cmd_search(cfg, verbose, audit, out, err);
        if (*tables) return cmd_tables(ta, cfg, out);
        if (*ident) return cmd_identities(ia, cfg, out);
        if (*cls) {
            if (max_order < 1) throw UsageError("max-order must be at least 1");
            return cmd_classify(word, ga, max_order, cfg, out);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace chtg::cli
