// Run/sweep configuration, orchestration, and machine-readable reports.
// Output is deterministic: identical configuration yields byte-identical
// CSV and JSON (no timestamps).
//
// CSV schema (fixed): n,degree,airy_prefix_len,sup_error,theorem1_bound,max_abs_coeff
//   - sup_error / theorem1_bound in scientific notation, 17 significant digits;
//   - theorem1_bound is empty in partial-sum mode (the factorial bound is
//     established only for the full-kernel scheme);
//   - max_abs_coeff as an exact rational string.
#pragma once

#include "airy.hpp"
#include "bounds.hpp"
#include "engine.hpp"
#include "multiplier.hpp"
#include "version.hpp"

#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace vimkg {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct RunConfig {
    std::string mode = "partial-sum"; // "partial-sum" | "full-lambda"
    int N = 3;                        // truncation order (partial-sum mode)
    int K = 120;                      // working order (full-lambda mode)
    int steps = 1;
    double R = 1.0;
    int grid = 1000;                  // half-grid: 2*grid+1 sample points
    double tail_tol = 1e-30;
    std::string emit = "csv";         // "csv" | "json"
    bool verify = false;              // enable cross-checks and bound assertions
    std::string out;                  // output path; empty = stdout
};

struct SweepConfig {
    RunConfig base;
    std::vector<int> N_values;
};

// Validates and returns advisory warnings (non-fatal).
inline std::vector<std::string> validate_config(const RunConfig& c) {
    if (c.mode != "partial-sum" && c.mode != "full-lambda")
        throw ConfigError("mode must be 'partial-sum' or 'full-lambda'");
    if (c.steps < 1) throw ConfigError("steps must be >= 1");
    if (!(c.R > 0)) throw ConfigError("R must be > 0");
    if (c.mode == "partial-sum" && c.N < 2)
        throw ConfigError("N must be >= 2 in partial-sum mode");
    if (c.mode == "full-lambda" && c.K < 2)
        throw ConfigError("K must be >= 2 in full-lambda mode");
    if (c.grid < 2) throw ConfigError("grid must be >= 2");
    if (!(c.tail_tol > 0)) throw ConfigError("tail_tol must be > 0");
    if (c.emit != "csv" && c.emit != "json")
        throw ConfigError("emit must be 'csv' or 'json'");
    std::vector<std::string> warnings;
    if (c.mode == "full-lambda" && static_cast<long>(c.K) < (2L * c.N + 2) * c.steps)
        warnings.push_back("advisory: K < (2N+2)*steps; deep iterates may be "
                           "degree-limited by the working order");
    return warnings;
}

inline void validate_sweep(const SweepConfig& c) {
    if (c.N_values.empty()) throw ConfigError("sweep requires a nonempty N list");
    for (int n : c.N_values)
        if (n < 2) throw ConfigError("sweep N values must be >= 2");
    RunConfig probe = c.base;
    probe.mode = "partial-sum";
    probe.N = c.N_values.front();
    validate_config(probe);
}

struct RunReport {
    RunConfig config;
    BoundParams params;
    std::vector<ErrorRecord> records;   // one per n = 0 .. steps
    UniPoly final_iterate;
    std::vector<std::string> failures;  // verify-mode assertion failures, by name
};

namespace detail {

// Reference series of order >= min_order whose tail passes the decay test
// at |r| = R.
inline AirySeries reference_for(double R, double tail_tol, int min_order) {
    int K = std::max(min_order, 8);
    for (int tries = 0; tries < 64; ++tries) {
        AirySeries s = airy_coeffs(K);
        if (airy_tail_ok(s, R, tail_tol)) return s;
        K += std::max(8, K / 2);
    }
    throw InsufficientOrderError("reference_for: no adequate order found");
}

inline std::string fmt_sci(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

// Shortest decimal that round-trips to the same double.
inline std::string fmt_compact(double v) {
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, end);
}

} // namespace detail

inline RunReport cmd_run(const RunConfig& config) {
    validate_config(config);
    const bool full = config.mode == "full-lambda";
    const Mode mode = full ? Mode::full_lambda(config.K) : Mode::partial_sum(config.N);
    const LambdaTruncation trunc = lambda_for_mode(mode);

    RunReport report;
    report.config = config;

    std::vector<IterateState> states = run(mode, config.steps, trunc, config.verify);

    const long degree_cap =
        full ? config.K : (2L * config.N + 2) * config.steps;
    const AirySeries reference = detail::reference_for(
        config.R, config.tail_tol, static_cast<int>(degree_cap) + 2);

    BoundParams params;
    params.N = trunc.N;
    params.R = config.R;
    if (full) {
        params.M = sup_lambda_estimate(trunc, config.R, config.grid);
    } else {
        params.C = constant_C(*trunc.table, config.N);
        params.mu = mu_threshold(*params.C, config.N);
        params.B = measure_B(states, *params.mu);
    }

    std::vector<double> sups;
    sups.reserve(states.size());
    for (const auto& st : states)
        sups.push_back(sup_error(st.phi, reference, config.R, config.grid, config.tail_tol));
    const double E0 = sups.front();

    for (std::size_t i = 0; i < states.size(); ++i) {
        const IterateState& st = states[i];
        ErrorRecord rec;
        rec.n = st.n;
        rec.sup_error = sups[i];
        if (full) rec.theorem1_bound = theorem1_bound(st.n, *params.M, config.R, E0);
        rec.max_coeff = st.phi.max_abs_coeff();
        rec.prefix_len = airy_prefix_length(st, reference);
        rec.degree = st.phi.degree();
        report.records.push_back(std::move(rec));
    }
    report.params = params;
    report.final_iterate = states.back().phi;

    if (config.verify) {
        auto fail = [&](const std::string& name) { report.failures.push_back(name); };
        for (const auto& rec : report.records) {
            if (!full && static_cast<long>(rec.degree) > (2L * config.N + 2) * rec.n)
                fail("degree-bound: n=" + std::to_string(rec.n));
            if (rec.prefix_len < 2 * rec.n + 1)
                fail("airy-prefix: n=" + std::to_string(rec.n));
            if (full && config.R <= 1.0 &&
                rec.sup_error > 1.05 * *rec.theorem1_bound)
                fail("theorem1-coverage: n=" + std::to_string(rec.n));
        }
        if (!full) {
            for (const auto& st : states)
                for (int m = 2 * config.N + 3; m <= st.phi.degree(); ++m) {
                    const Rational coeff =
                        rational_abs(st.phi.coeff(static_cast<std::size_t>(m)));
                    if (coeff > comp1_bound_exact(m, params))
                        fail("comp1-coverage: n=" + std::to_string(st.n) +
                             " m=" + std::to_string(m));
                }
        }
        for (std::size_t i = 0; i + 1 < states.size() && i < 3; ++i)
            for (int m = 2; m <= std::min(states[i + 1].phi.degree(), 12); ++m)
                if (coefficient_recursion_check(states[i], states[i + 1], trunc, m) ==
                    GatherCheck::Mismatch)
                    fail("gather-formula: n=" + std::to_string(states[i].n) +
                         " m=" + std::to_string(m));
    }
    return report;
}

inline std::string config_echo_line(const RunConfig& c) {
    std::ostringstream os;
    os << "mode=" << c.mode << " N=" << c.N << " K=" << c.K
       << " steps=" << c.steps << " R=" << detail::fmt_compact(c.R)
       << " grid=" << c.grid << " tail_tol=" << detail::fmt_compact(c.tail_tol)
       << " emit=" << c.emit << " verify=" << (c.verify ? 1 : 0);
    return os.str();
}

inline std::string emit_csv(const RunReport& report) {
    std::ostringstream os;
    os << "# vimkg run report v" << library_version << "\n";
    os << "# config: " << config_echo_line(report.config) << "\n";
    if (report.params.M)
        os << "# bound_params: M=" << detail::fmt_sci(*report.params.M)
           << " E0=" << detail::fmt_sci(report.records.front().sup_error) << "\n";
    if (report.params.C)
        os << "# bound_params: C=" << rational_to_string(*report.params.C)
           << " B=" << rational_to_string(*report.params.B)
           << " mu=" << *report.params.mu << "\n";
    os << "n,degree,airy_prefix_len,sup_error,theorem1_bound,max_abs_coeff\n";
    for (const auto& rec : report.records) {
        os << rec.n << "," << rec.degree << "," << rec.prefix_len << ","
           << detail::fmt_sci(rec.sup_error) << ",";
        if (rec.theorem1_bound) os << detail::fmt_sci(*rec.theorem1_bound);
        os << "," << rational_to_string(rec.max_coeff) << "\n";
    }
    return os.str();
}

inline nlohmann::ordered_json config_to_json(const RunConfig& c) {
    return nlohmann::ordered_json{
        {"mode", c.mode},     {"N", c.N},
        {"K", c.K},           {"steps", c.steps},
        {"R", c.R},           {"grid", c.grid},
        {"tail_tol", c.tail_tol}, {"emit", c.emit},
        {"verify", c.verify},
    };
}

inline std::string emit_json(const RunReport& report) {
    nlohmann::ordered_json j;
    j["format_version"] = 1;
    j["library_version"] = library_version;
    j["config"] = config_to_json(report.config);
    nlohmann::ordered_json bp;
    bp["N"] = report.params.N;
    bp["R"] = report.params.R;
    if (report.params.M) bp["M"] = detail::fmt_sci(*report.params.M);
    if (report.params.C) bp["C"] = rational_to_string(*report.params.C);
    if (report.params.B) bp["B"] = rational_to_string(*report.params.B);
    if (report.params.mu) bp["mu"] = *report.params.mu;
    j["bound_params"] = bp;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& rec : report.records) {
        nlohmann::ordered_json row;
        row["n"] = rec.n;
        row["degree"] = rec.degree;
        row["airy_prefix_len"] = rec.prefix_len;
        row["sup_error"] = detail::fmt_sci(rec.sup_error);
        row["theorem1_bound"] =
            rec.theorem1_bound ? nlohmann::ordered_json(detail::fmt_sci(*rec.theorem1_bound))
                               : nlohmann::ordered_json(nullptr);
        row["max_abs_coeff"] = rational_to_string(rec.max_coeff);
        rows.push_back(std::move(row));
    }
    j["rows"] = rows;
    j["final_iterate"] = report.final_iterate.to_strings();
    if (!report.failures.empty()) j["failures"] = report.failures;
    return j.dump(2) + "\n";
}

inline std::string emit_report(const RunReport& report) {
    return report.config.emit == "json" ? emit_json(report) : emit_csv(report);
}

// One partial-sum run per N with shared steps/R; CSV with one sup_error
// column per N, rows n = 1 .. steps. Reported, never asserted.
inline std::string cmd_sweep(const SweepConfig& config) {
    validate_sweep(config);
    std::vector<std::vector<double>> columns;
    for (int n_value : config.N_values) {
        RunConfig rc = config.base;
        rc.mode = "partial-sum";
        rc.N = n_value;
        rc.verify = false;
        RunReport rep = cmd_run(rc);
        std::vector<double> col;
        for (const auto& rec : rep.records) col.push_back(rec.sup_error);
        columns.push_back(std::move(col));
    }
    std::ostringstream os;
    os << "# vimkg sweep report v" << library_version << "\n";
    os << "# steps=" << config.base.steps << " R=" << detail::fmt_compact(config.base.R)
       << " grid=" << config.base.grid << "\n";
    os << "n";
    for (int n_value : config.N_values) os << ",sup_error_N" << n_value;
    os << "\n";
    for (int n = 1; n <= config.base.steps; ++n) {
        os << n;
        for (const auto& col : columns)
            os << "," << detail::fmt_sci(col[static_cast<std::size_t>(n)]);
        os << "\n";
    }
    return os.str();
}

// Exact-rational JSON dumps of the core objects.
inline std::string cmd_dump_alpha(int k_lambda) {
    const AlphaTable table = build_alpha_table(k_lambda);
    nlohmann::json j = nlohmann::json::array();
    for (const auto& p : table.alphas()) j.push_back(p.to_strings());
    return j.dump() + "\n";
}

inline std::string cmd_dump_airy(int K) {
    const AirySeries s = airy_coeffs(K);
    nlohmann::json j = nlohmann::json::array();
    for (const auto& a : s.coeffs()) j.push_back(rational_to_string(a));
    return j.dump() + "\n";
}

// Unlike a run, an iterate dump accepts steps = 0 (the initial iterate).
inline std::string cmd_dump_iterate(const RunConfig& config) {
    if (config.steps < 0) throw ConfigError("steps must be >= 0");
    if (config.mode != "partial-sum" && config.mode != "full-lambda")
        throw ConfigError("mode must be 'partial-sum' or 'full-lambda'");
    const bool full = config.mode == "full-lambda";
    if (!full && config.N < 2) throw ConfigError("N must be >= 2 in partial-sum mode");
    if (full && config.K < 2) throw ConfigError("K must be >= 2 in full-lambda mode");
    const Mode mode = full ? Mode::full_lambda(config.K) : Mode::partial_sum(config.N);
    UniPoly phi = UniPoly::constant(Rational(1));
    if (config.steps >= 1) {
        std::vector<IterateState> states = run(mode, config.steps);
        phi = states.back().phi;
    }
    nlohmann::json j = phi.to_strings();
    return j.dump() + "\n";
}

// Applies values from a JSON config object onto a RunConfig.
inline void apply_config_json(RunConfig& c, const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
    if (j.contains("mode")) c.mode = j.at("mode").get<std::string>();
    if (j.contains("N")) c.N = j.at("N").get<int>();
    if (j.contains("K")) c.K = j.at("K").get<int>();
    if (j.contains("steps")) c.steps = j.at("steps").get<int>();
    if (j.contains("R")) c.R = j.at("R").get<double>();
    if (j.contains("grid")) c.grid = j.at("grid").get<int>();
    if (j.contains("tail_tol")) c.tail_tol = j.at("tail_tol").get<double>();
    if (j.contains("emit")) c.emit = j.at("emit").get<std::string>();
    if (j.contains("verify")) c.verify = j.at("verify").get<bool>();
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
}

inline RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    RunConfig c;
    try {
        apply_config_json(c, j);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }
    return c;
}

} // namespace vimkg
