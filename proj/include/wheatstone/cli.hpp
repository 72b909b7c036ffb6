#pragma once

// Batch drivers behind the `wheatstone` command: they compute result tables
// and write them as CSV with a '#'-prefixed metadata header.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wheatstone/balance.hpp"
#include "wheatstone/config_io.hpp"
#include "wheatstone/metrology.hpp"
#include "wheatstone/network.hpp"

namespace wheatstone {

inline constexpr const char* kToolVersion = "0.1.0";

/// Amplitude used when neither the config nor the command line sets alpha.
inline constexpr double kDefaultAlpha = 1e4;

struct SweepOptions {
    double jx_min = 5;
    double jx_max = 25;
    int steps = 201;
    double alpha = kDefaultAlpha;
    double horizon_mult = 10;
    bool analytic = true;
    bool numeric = true;
};

struct SweepRow {
    double jx = 0;
    /// Closed form where one exists, otherwise the reduced model (NaN when disabled).
    double delta_analytic = 0;
    /// Full 4-mode oracle with per-point optimal phase (NaN when disabled).
    double delta_numeric = 0;
    /// log10 of the numeric column, or of the analytic one in analytic-only runs.
    double log10_delta = 0;
    bool balanced = false;
};

struct SweepResult {
    double t = 0;
    double jx_balance = 0;
    std::vector<SweepRow> rows;
};

SweepResult run_sweep(const BridgeConfig& config, const SweepOptions& options);
void write_sweep(std::ostream& out, const ConfigDocument& doc, const SweepOptions& options, const SweepResult& result);

struct BalanceOptions {
    double j3_min = 5;
    double j3_max = 15;
    int steps = 21;
    double alpha = kDefaultAlpha;
    double horizon_mult = 2000;
};

struct BalanceRun {
    double t = 0;
    std::vector<ProfilePoint> profile;
    /// Empty when the profile peaks on the grid boundary.
    std::optional<JxEstimate> estimate;
};

BalanceRun run_balance(const BridgeConfig& device, const BalanceOptions& options);
void write_balance(std::ostream& out, const ConfigDocument& doc, const BalanceOptions& options, const BalanceRun& run);

struct CompareRow {
    std::string quantity;
    double numeric = 0;
    double analytic = 0;
    double deviation = 0;
    std::string note;
};

struct CompareReport {
    double t = 0;
    std::vector<CompareRow> rows;
};

/// Oracle versus closed-form table for the balanced counterpart of `config`.
CompareReport run_compare(const BridgeConfig& config, double alpha, double horizon_mult = 10);
void write_compare(std::ostream& out, const ConfigDocument& doc, const CompareReport& report);

struct PrecisionRun {
    double t = 0;
    double y = 0;
    double phi2 = 0;
    PrecisionReport report;
};

/// Precision figures at the configured detuning y = Jx - J2 J3 / J1; phi2 defaults to the optimal angle.
PrecisionRun run_precision(const BridgeConfig& config, double alpha, double horizon_mult = 10,
                           std::optional<double> phi2 = std::nullopt);
void write_precision(std::ostream& out, const ConfigDocument& doc, const PrecisionRun& run);

/// |a - b| / |b|, or the absolute difference when b = 0.
double relative_deviation(double value, double reference);

}  // namespace wheatstone
