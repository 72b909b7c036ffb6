#include "wheatstone/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "wheatstone/dynamics.hpp"
#include "wheatstone/errors.hpp"
#include "wheatstone/parallel.hpp"
#include "wheatstone/reduction.hpp"

namespace wheatstone {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    if (v == 0)
        v = 0;  // drop the sign of -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string config_line(const ConfigDocument& doc) {
    return nlohmann::json::parse(dump_config(doc)).dump();
}

void write_preamble(std::ostream& out, const char* command, const ConfigDocument& doc) {
    out << "# wheatstone " << kToolVersion << ' ' << command << '\n';
    out << "# config " << config_line(doc) << '\n';
}

std::vector<double> uniform_grid(double lo, double hi, int steps) {
    if (steps < 3)
        throw DomainError("a sweep needs at least 3 grid points");
    if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
        throw DomainError("sweep range must satisfy min < max");
    std::vector<double> grid(steps);
    for (int i = 0; i < steps; ++i)
        grid[i] = lo + (hi - lo) * i / (steps - 1);
    return grid;
}

double analytic_delta(const BridgeConfig& config, double t, double alpha, double y) {
    try {
        return phase_optimized_precision(config, t, alpha, y, DerivativeMode::analytic);
    } catch (const OutOfRegime&) {
    } catch (const NotBalanced&) {
    }
    return phase_optimized_precision(config, t, alpha, y, DerivativeMode::reduced);
}

bool all_couplings_zero(const BridgeConfig& c) {
    return c.j1 == 0 && c.j2 == 0 && c.j3 == 0 && c.jx == 0 && c.j0 == 0;
}

template <typename Fn>
void add_row(std::vector<CompareRow>& rows, const std::string& name, Fn&& fn) {
    CompareRow row{name, kNaN, kNaN, kNaN, ""};
    try {
        fn(row);
        row.deviation = relative_deviation(row.numeric, row.analytic);
    } catch (const Error& e) {
        row.note = e.what();
    }
    std::replace(row.note.begin(), row.note.end(), ',', ';');
    rows.push_back(std::move(row));
}

CompareReport trivial_compare(const BridgeConfig& c, double alpha, double horizon_mult) {
    CompareReport report;
    report.t = horizon_mult / (c.kappa1 + c.kappa4);
    const auto oracle = oracle_signal(c, alpha, report.t);
    const auto reduced = adiabatic_reduce(c);
    auto& rows = report.rows;
    add_row(rows, "mode2_eigenvalue_imag", [&](CompareRow& r) {
        r.numeric = reduced.m2(0, 0).imag();
        r.analytic = -c.omega[1];
    });
    add_row(rows, "mode3_eigenvalue_imag", [&](CompareRow& r) {
        r.numeric = reduced.m2(1, 1).imag();
        r.analytic = -c.omega[2];
    });
    add_row(rows, "longtime_a2_abs", [&](CompareRow& r) {
        r.numeric = std::abs(oracle.a2);
        r.analytic = alpha;
    });
    add_row(rows, "longtime_a3_abs", [&](CompareRow& r) {
        r.numeric = std::abs(oracle.a3);
        r.analytic = 0;
    });
    add_row(rows, "covariance_q2q2", [&](CompareRow& r) {
        r.numeric = oracle.cov_block(0, 0);
        r.analytic = 1;
    });
    for (auto& row : rows)
        row.note = row.note.empty() ? "uncoupled" : row.note;
    return report;
}

}  // namespace

double relative_deviation(double value, double reference) {
    const double diff = std::abs(value - reference);
    return reference == 0 ? diff : diff / std::abs(reference);
}

SweepResult run_sweep(const BridgeConfig& config, const SweepOptions& options) {
    config.validate();
    if (!options.analytic && !options.numeric)
        throw DomainError("both analytic and numeric columns are disabled");
    if (config.j1 == 0 || config.j2 == 0 || config.j3 == 0)
        throw DomainError("a precision sweep needs non-zero J1, J2 and J3");
    const auto grid = uniform_grid(options.jx_min, options.jx_max, options.steps);

    SweepResult result;
    result.jx_balance = balance_coupling(config.j1, config.j2, config.j3);
    result.t = long_time_horizon(config.balanced(), options.horizon_mult);
    const double snap = 1e-12 * std::abs(result.jx_balance);

    result.rows = parallel_map(grid.size(), [&](std::size_t i) {
        SweepRow row{grid[i], kNaN, kNaN, kNaN, false};
        double y = grid[i] - result.jx_balance;
        if (std::abs(y) <= snap)
            y = 0;
        if (options.analytic)
            row.delta_analytic = analytic_delta(config, result.t, options.alpha, y);
        if (options.numeric)
            row.delta_numeric = phase_optimized_precision(config, result.t, options.alpha, y, DerivativeMode::numeric);
        row.log10_delta = std::log10(options.numeric ? row.delta_numeric : row.delta_analytic);
        return row;
    });

    if (result.jx_balance >= grid.front() && result.jx_balance <= grid.back()) {
        auto nearest = std::min_element(result.rows.begin(), result.rows.end(), [&](const SweepRow& a, const SweepRow& b) {
            return std::abs(a.jx - result.jx_balance) < std::abs(b.jx - result.jx_balance);
        });
        nearest->balanced = true;
    }
    return result;
}

void write_sweep(std::ostream& out, const ConfigDocument& doc, const SweepOptions& options, const SweepResult& result) {
    write_preamble(out, "sweep", doc);
    out << "# alpha=" << fmt(options.alpha) << " t=" << fmt(result.t) << " jx_balance=" << fmt(result.jx_balance)
        << " columns=" << (options.analytic ? "analytic" : "") << (options.analytic && options.numeric ? "+" : "")
        << (options.numeric ? "numeric" : "") << '\n';
    out << "jx,delta_analytic,delta_numeric,log10_delta,balanced\n";
    for (const auto& r : result.rows)
        out << fmt(r.jx) << ',' << fmt(r.delta_analytic) << ',' << fmt(r.delta_numeric) << ',' << fmt(r.log10_delta)
            << ',' << (r.balanced ? 1 : 0) << '\n';
}

BalanceRun run_balance(const BridgeConfig& device, const BalanceOptions& options) {
    device.validate();
    const auto grid = uniform_grid(options.j3_min, options.j3_max, options.steps);
    BalanceRun run;
    run.t = long_time_horizon(device, options.horizon_mult);
    run.profile = tuning_profile(device, grid, options.alpha, run.t);
    try {
        run.estimate = locate_balance(device, run.profile);
    } catch (const InconclusiveSweep&) {
        run.estimate.reset();
    }
    return run;
}

void write_balance(std::ostream& out, const ConfigDocument& doc, const BalanceOptions& options, const BalanceRun& run) {
    write_preamble(out, "balance", doc);
    out << "# alpha=" << fmt(options.alpha) << " t=" << fmt(run.t) << '\n';
    if (run.estimate)
        out << "# jx_estimate=" << fmt(run.estimate->jx) << " j3_star=" << fmt(run.estimate->j3_star) << '\n';
    else
        out << "# jx_estimate=inconclusive\n";
    out << "j3,magnitude\n";
    for (const auto& p : run.profile)
        out << fmt(p.j3) << ',' << fmt(p.magnitude) << '\n';
}

CompareReport run_compare(const BridgeConfig& config, double alpha, double horizon_mult) {
    config.validate();
    if (!(alpha > 0))
        throw DomainError("alpha must be positive");
    if (all_couplings_zero(config))
        return trivial_compare(config, alpha, horizon_mult);
    if (config.j1 == 0)
        throw DomainError("the comparison report needs J1 != 0");

    const BridgeConfig c = config.balanced();
    CompareReport report;
    report.t = long_time_horizon(c, horizon_mult);
    const double t = report.t;
    auto& rows = report.rows;

    std::optional<BalancedSpectrum> spectrum;
    try {
        spectrum = balanced_eigenvalues(c);
    } catch (const Error&) {
    }
    const auto need_spectrum = [&] {
        if (!spectrum)
            throw NotBalanced("no dark eigenvalue at the balance coupling");
        return *spectrum;
    };
    add_row(rows, "dark_eigenvalue_real", [&](CompareRow& r) {
        r.numeric = need_spectrum().dark.real();
        r.analytic = need_spectrum().closed_form_dark.real();
    });
    add_row(rows, "dark_eigenvalue_imag", [&](CompareRow& r) {
        const auto s = need_spectrum();
        r.numeric = s.dark.imag();
        r.analytic = s.closed_form_dark.imag();
        if (s.closed_form_discrepancy)
            r.note = "closed form disagrees with the numerical eigenvalue";
    });
    if (spectrum && spectrum->swapped_dark) {
        add_row(rows, "dark_eigenvalue_imag_swapped", [&](CompareRow& r) {
            r.numeric = spectrum->dark.imag();
            r.analytic = spectrum->swapped_dark->imag();
            r.note = "closed form with omega2 and omega3 exchanged";
        });
    }
    add_row(rows, "damped_eigenvalue_real", [&](CompareRow& r) {
        r.numeric = need_spectrum().damped.real();
        r.analytic = need_spectrum().closed_form_damped.real();
    });
    add_row(rows, "damped_eigenvalue_imag", [&](CompareRow& r) {
        r.numeric = need_spectrum().damped.imag();
        r.analytic = need_spectrum().closed_form_damped.imag();
    });

    const auto oracle = oracle_signal(c, alpha, t);
    add_row(rows, "longtime_a2_abs", [&](CompareRow& r) {
        r.numeric = std::abs(oracle.a2);
        r.analytic = std::abs(longtime_mean(c, alpha, 0.0, t).first);
    });
    add_row(rows, "longtime_a3_abs", [&](CompareRow& r) {
        r.numeric = std::abs(oracle.a3);
        r.analytic = std::abs(longtime_mean(c, alpha, 0.0, t).second);
    });
    add_row(rows, "derivative_a2_abs", [&](CompareRow& r) {
        r.numeric = std::abs(signal_derivative(c, t, alpha, 0, DerivativeMode::numeric));
        r.analytic = std::abs(signal_derivative(c, t, alpha, 0, DerivativeMode::analytic));
    });
    add_row(rows, "precision_optimal", [&](CompareRow& r) {
        r.numeric = phase_optimized_precision(c, t, alpha, 0, DerivativeMode::numeric);
        r.analytic = optimal_homodyne_precision(c, alpha);
    });

    const double fc = quantum_fluctuations(c).f_c;
    const Eigen::Matrix4d cov_pattern = balanced_covariance(c, fc);
    add_row(rows, "covariance_q2q2", [&](CompareRow& r) {
        r.numeric = oracle.cov_block(0, 0);
        r.analytic = cov_pattern(0, 0);
    });
    add_row(rows, "covariance_q3q3", [&](CompareRow& r) {
        r.numeric = oracle.cov_block(1, 1);
        r.analytic = cov_pattern(1, 1);
    });
    add_row(rows, "covariance_q2q3", [&](CompareRow& r) {
        r.numeric = oracle.cov_block(0, 1);
        r.analytic = cov_pattern(0, 1);
    });
    add_row(rows, "qfi_dominant", [&](CompareRow& r) {
        r.numeric = gaussian_qfi(c, alpha, QfiMode::dominant, t);
        r.analytic = closed_form_qfi(c, alpha);
    });
    add_row(rows, "crb", [&](CompareRow& r) {
        r.numeric = 1.0 / std::sqrt(gaussian_qfi(c, alpha, QfiMode::full, t));
        r.analytic = crb_bound(c, alpha).bound;
    });
    return report;
}

void write_compare(std::ostream& out, const ConfigDocument& doc, const CompareReport& report) {
    write_preamble(out, "compare", doc);
    out << "# t=" << fmt(report.t) << '\n';
    out << "quantity,numeric,analytic,rel_deviation,note\n";
    for (const auto& r : report.rows)
        out << r.quantity << ',' << fmt(r.numeric) << ',' << fmt(r.analytic) << ',' << fmt(r.deviation) << ',' << r.note
            << '\n';
}

PrecisionRun run_precision(const BridgeConfig& config, double alpha, double horizon_mult, std::optional<double> phi2) {
    config.validate();
    if (config.j1 == 0)
        throw DomainError("precision needs J1 != 0");
    PrecisionRun run;
    run.t = long_time_horizon(config.balanced(), horizon_mult);
    run.y = config.jx - balance_coupling(config.j1, config.j2, config.j3);
    run.phi2 = phi2 ? *phi2 : precision_report(config, alpha, 0.0, run.t, run.y).optimal_phi2;
    run.report = precision_report(config, alpha, run.phi2, run.t, run.y);
    return run;
}

void write_precision(std::ostream& out, const ConfigDocument& doc, const PrecisionRun& run) {
    write_preamble(out, "precision", doc);
    const auto& p = run.report;
    out << "quantity,value\n";
    out << "t," << fmt(run.t) << '\n';
    out << "y," << fmt(run.y) << '\n';
    out << "phi2," << fmt(run.phi2) << '\n';
    out << "optimal_phi2," << fmt(p.optimal_phi2) << '\n';
    out << "f," << fmt(p.fluctuations.f) << '\n';
    out << "f_c," << fmt(p.fluctuations.f_c) << '\n';
    out << "f_c_prime," << fmt(p.fluctuations.f_c_prime) << '\n';
    out << "delta_homodyne," << fmt(p.delta_homodyne) << '\n';
    out << "delta_homodyne_optimal," << fmt(p.delta_homodyne_optimal) << '\n';
    out << "qfi," << fmt(p.qfi) << '\n';
    out << "crb," << fmt(p.crb) << '\n';
    out << "g," << fmt(p.g) << '\n';
}

}  // namespace wheatstone
