// wheatstone: sweep, balance, precision and compare reports for the bosonic bridge.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 inconclusive balance sweep.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wheatstone/cli.hpp"
#include "wheatstone/errors.hpp"

namespace {

using namespace wheatstone;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInconclusive = 2;

struct Common {
    std::string config;
    std::string out;
    std::optional<double> alpha;
    std::optional<double> horizon_mult;
};

void add_common(CLI::App* cmd, Common& common) {
    cmd->add_option("--config", common.config, "flat JSON bridge configuration")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", common.out, "output CSV path (default: stdout)");
    cmd->add_option("--alpha", common.alpha, "coherent amplitude of mode 2 (overrides the config)");
    cmd->add_option("--horizon-mult", common.horizon_mult, "evaluation time in units of tau (at least the settling time)");
}

template <typename Writer>
int emit(const std::string& path, Writer&& write) {
    if (path.empty()) {
        write(std::cout);
        return std::cout ? kOk : kUsage;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        std::cerr << "error: cannot open " << path << " for writing\n";
        return kUsage;
    }
    write(file);
    file.close();
    if (!file) {
        std::cerr << "error: failed writing " << path << '\n';
        return kUsage;
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum Wheatstone bridge: precision sweeps, balance search and model comparison"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("wheatstone ") + kToolVersion);

    Common common;
    SweepOptions sweep;
    bool numeric_only = false, analytic_only = false;
    auto* sweep_cmd = app.add_subcommand("sweep", "delta Jx over a grid of Jx values");
    add_common(sweep_cmd, common);
    sweep_cmd->add_option("--jx-min", sweep.jx_min, "lower end of the Jx grid")->capture_default_str();
    sweep_cmd->add_option("--jx-max", sweep.jx_max, "upper end of the Jx grid")->capture_default_str();
    sweep_cmd->add_option("--steps", sweep.steps, "number of grid points (>= 3)")->capture_default_str();
    auto* numeric_flag = sweep_cmd->add_flag("--numeric-only", numeric_only, "skip the analytic column");
    sweep_cmd->add_flag("--analytic-only", analytic_only, "skip the 4-mode oracle column")->excludes(numeric_flag);

    BalanceOptions balance;
    auto* balance_cmd = app.add_subcommand("balance", "estimate Jx by tuning J3 through the balance point");
    add_common(balance_cmd, common);
    balance_cmd->add_option("--j3-min", balance.j3_min, "lower end of the J3 grid")->capture_default_str();
    balance_cmd->add_option("--j3-max", balance.j3_max, "upper end of the J3 grid")->capture_default_str();
    balance_cmd->add_option("--steps", balance.steps, "number of grid points (>= 3)")->capture_default_str();

    std::optional<double> phi2;
    auto* precision_cmd = app.add_subcommand("precision", "homodyne precision, QFI and Cramer-Rao bound");
    add_common(precision_cmd, common);
    precision_cmd->add_option("--phi2", phi2, "homodyne angle (default: optimal)");

    auto* compare_cmd = app.add_subcommand("compare", "closed forms against the 4-mode oracle");
    add_common(compare_cmd, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        const ConfigDocument doc = load_config(common.config);
        const double alpha = common.alpha.value_or(doc.alpha.value_or(kDefaultAlpha));

        if (*sweep_cmd) {
            sweep.alpha = alpha;
            sweep.horizon_mult = common.horizon_mult.value_or(sweep.horizon_mult);
            sweep.analytic = !numeric_only;
            sweep.numeric = !analytic_only;
            const auto result = run_sweep(doc.bridge, sweep);
            return emit(common.out, [&](std::ostream& os) { write_sweep(os, doc, sweep, result); });
        }
        if (*balance_cmd) {
            balance.alpha = alpha;
            balance.horizon_mult = common.horizon_mult.value_or(balance.horizon_mult);
            const auto run = run_balance(doc.bridge, balance);
            const int code = emit(common.out, [&](std::ostream& os) { write_balance(os, doc, balance, run); });
            if (code != kOk)
                return code;
            if (!run.estimate) {
                std::cerr << "inconclusive: the profile peaks on the grid boundary; widen the J3 range\n";
                return kInconclusive;
            }
            return kOk;
        }
        if (*precision_cmd) {
            const auto run = run_precision(doc.bridge, alpha, common.horizon_mult.value_or(10.0), phi2);
            return emit(common.out, [&](std::ostream& os) { write_precision(os, doc, run); });
        }
        const auto report = run_compare(doc.bridge, alpha, common.horizon_mult.value_or(10.0));
        return emit(common.out, [&](std::ostream& os) { write_compare(os, doc, report); });
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
}
