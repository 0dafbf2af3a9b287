// vimkg — exact-arithmetic iteration engine for phi'' + r*phi + phi = 0.
//
// Subcommands:
//   run     execute one iteration run and emit a CSV/JSON report
//   sweep   one run per truncation order N, shared steps/R; comparison CSV
//   verify  run the full invariant suite; nonzero exit on any failure
//   dump    exact-rational JSON of the alpha table, reference series, or an iterate
//
// Exit codes: 0 success, 1 assertion/verify failure, 2 configuration error.
#include <CLI11.hpp>

#include <vimkg/report.hpp>
#include <vimkg/verify.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct RunFlags {
    std::string config_path;
    vimkg::RunConfig values; // parse target; merged over file/defaults by count
};

void add_run_options(CLI::App* cmd, RunFlags& flags) {
    cmd->add_option("--config", flags.config_path,
                    "JSON config file; explicit flags override its values");
    cmd->add_option("--mode", flags.values.mode, "partial-sum | full-lambda");
    cmd->add_option("--N", flags.values.N, "kernel truncation order (partial-sum mode)");
    cmd->add_option("--K", flags.values.K, "working order (full-lambda mode)");
    cmd->add_option("--steps", flags.values.steps, "number of iteration steps");
    cmd->add_option("--R", flags.values.R, "interval half-width");
    cmd->add_option("--grid", flags.values.grid, "half-grid: 2*grid+1 sample points");
    cmd->add_option("--tail-tol", flags.values.tail_tol, "reference tail tolerance");
    cmd->add_option("--emit", flags.values.emit, "csv | json");
    cmd->add_flag("--verify", flags.values.verify,
                  "enable per-step cross-checks and bound assertions");
    cmd->add_option("--out", flags.values.out, "output path (default stdout)");
}

vimkg::RunConfig merge_config(const CLI::App* cmd, const RunFlags& flags) {
    vimkg::RunConfig cfg;
    if (!flags.config_path.empty()) cfg = vimkg::load_config_file(flags.config_path);
    if (cmd->count("--mode")) cfg.mode = flags.values.mode;
    if (cmd->count("--N")) cfg.N = flags.values.N;
    if (cmd->count("--K")) cfg.K = flags.values.K;
    if (cmd->count("--steps")) cfg.steps = flags.values.steps;
    if (cmd->count("--R")) cfg.R = flags.values.R;
    if (cmd->count("--grid")) cfg.grid = flags.values.grid;
    if (cmd->count("--tail-tol")) cfg.tail_tol = flags.values.tail_tol;
    if (cmd->count("--emit")) cfg.emit = flags.values.emit;
    if (cmd->count("--verify")) cfg.verify = flags.values.verify;
    if (cmd->count("--out")) cfg.out = flags.values.out;
    return cfg;
}

int write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file: " << path << "\n";
        return 2;
    }
    out << content;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic iteration engine for phi'' + r phi + phi = 0"};
    app.require_subcommand(1);

    RunFlags run_flags;
    CLI::App* cmd_run = app.add_subcommand("run", "execute one iteration run");
    add_run_options(cmd_run, run_flags);

    RunFlags sweep_flags;
    std::vector<int> sweep_N_values;
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "compare truncation orders");
    add_run_options(cmd_sweep, sweep_flags);
    cmd_sweep->add_option("--N-values", sweep_N_values, "truncation orders to compare")
        ->delimiter(',');

    std::uint64_t seed = 0x5eed1234abcdULL;
    CLI::App* cmd_verify_app = app.add_subcommand("verify", "run the invariant suite");
    cmd_verify_app->add_option("--seed", seed, "seed for randomized checks");

    RunFlags dump_flags;
    std::string dump_what;
    CLI::App* cmd_dump = app.add_subcommand("dump", "exact-rational JSON dumps");
    cmd_dump->add_option("what", dump_what, "alpha | airy | iterate")->required();
    add_run_options(cmd_dump, dump_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cmd_run->parsed()) {
            const vimkg::RunConfig cfg = merge_config(cmd_run, run_flags);
            for (const auto& w : vimkg::validate_config(cfg)) std::cerr << w << "\n";
            const vimkg::RunReport report = vimkg::cmd_run(cfg);
            const int rc = write_output(cfg.out, vimkg::emit_report(report));
            if (rc != 0) return rc;
            if (!report.failures.empty()) {
                for (const auto& f : report.failures)
                    std::cerr << "assertion failed: " << f << "\n";
                return 1;
            }
            return 0;
        }
        if (cmd_sweep->parsed()) {
            vimkg::SweepConfig cfg;
            cfg.base = merge_config(cmd_sweep, sweep_flags);
            cfg.N_values = sweep_N_values;
            const std::string csv = vimkg::cmd_sweep(cfg);
            return write_output(cfg.base.out, csv);
        }
        if (cmd_verify_app->parsed()) {
            const vimkg::VerifySummary summary = vimkg::cmd_verify(seed);
            vimkg::print_verify_summary(summary, std::cout);
            return summary.ok() ? 0 : 1;
        }
        if (cmd_dump->parsed()) {
            const vimkg::RunConfig cfg = merge_config(cmd_dump, dump_flags);
            std::string out;
            if (dump_what == "alpha") {
                if (cfg.K < 2) throw vimkg::ConfigError("alpha dump needs K >= 2");
                out = vimkg::cmd_dump_alpha(cfg.K);
            } else if (dump_what == "airy") {
                if (cfg.K < 0) throw vimkg::ConfigError("airy dump needs K >= 0");
                out = vimkg::cmd_dump_airy(cfg.K);
            } else if (dump_what == "iterate") {
                out = vimkg::cmd_dump_iterate(cfg);
            } else {
                std::cerr << "error: unknown dump selector '" << dump_what << "'\n";
                return 2;
            }
            return write_output(cfg.out, out);
        }
    } catch (const vimkg::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "assertion failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
