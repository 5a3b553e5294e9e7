#include "elg/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "elg/entropy.hpp"
#include "elg/error.hpp"
#include "elg/macrorealism.hpp"
#include "elg/mc_sim.hpp"
#include "elg/philox.hpp"
#include "elg/quantum_stats.hpp"

namespace elg::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::uint32_t kBcConfigDomain = 0x42434300u;
constexpr double kBcTolerance = 1e-10;

double json_number(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

struct Prepared {
    SpinValue spin;
    double theta_min;
    double theta_max;
    std::optional<double> theta;
};

Prepared prepare(const RunConfig& config) {
    std::optional<SpinValue> spin;
    try {
        spin = SpinValue::parse(config.spin);
    } catch (const Error& e) {
        throw ConfigError("--spin", e.what());
    }
    const double scale = config.degrees ? std::numbers::pi / 180.0 : 1.0;
    Prepared p{*spin, config.theta_min * scale, config.theta_max * scale, {}};
    if (config.theta) {
        p.theta = *config.theta * scale;
        if (!std::isfinite(*p.theta)) {
            throw ConfigError("--theta", "--theta must be finite");
        }
    }
    if (config.workers < 1) {
        throw ConfigError("--workers", "--workers must be at least 1");
    }
    return p;
}

void require_grid(const RunConfig& config, const Prepared& p) {
    if (config.steps < 2) {
        throw ConfigError("--steps", "--steps must be at least 2");
    }
    if (!std::isfinite(p.theta_min) || !std::isfinite(p.theta_max) || !(p.theta_min < p.theta_max)) {
        throw ConfigError("--theta-max", "--theta-min must be smaller than --theta-max");
    }
}

void require_n(const RunConfig& config, int minimum) {
    if (config.n < minimum) {
        throw ConfigError("--n", "--n must be at least " + std::to_string(minimum));
    }
}

std::vector<double> linear_grid(double lo, double hi, int steps) {
    std::vector<double> grid(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
    }
    grid.back() = hi;
    return grid;
}

Json header(const RunConfig& config, const SpinValue& spin) {
    Json j;
    j["command"] = command_name(config.command);
    j["spin"] = spin.label();
    return j;
}

CommandResult run_scan(const RunConfig& config) {
    const auto p = prepare(config);
    require_grid(config, p);
    require_n(config, 2);
    const auto curve = deficit_curve(p.spin, config.n, p.theta_min, p.theta_max, config.steps, config.workers);

    CommandResult result;
    auto violated = [](double d) { return d < -kViolationTolerance; };
    if (config.format == OutputFormat::Csv) {
        std::ostringstream csv;
        csv << "theta,deficit,violated\n";
        for (std::size_t i = 0; i < curve.theta_grid.size(); ++i) {
            csv << format_number(curve.theta_grid[i]) << ',' << format_number(curve.deficits[i]) << ','
                << (violated(curve.deficits[i]) ? 1 : 0) << '\n';
        }
        result.document = csv.str();
    } else {
        Json j = header(config, p.spin);
        j["n"] = config.n;
        j["rows"] = Json::array();
        for (std::size_t i = 0; i < curve.theta_grid.size(); ++i) {
            j["rows"].push_back({{"theta", json_number(curve.theta_grid[i])},
                                 {"deficit", json_number(curve.deficits[i])},
                                 {"violated", violated(curve.deficits[i])}});
        }
        j["violation_ranges"] = Json::array();
        for (const auto& r : curve.violation_ranges) {
            j["violation_ranges"].push_back({{"lo", json_number(r.lo)}, {"hi", json_number(r.hi)}});
        }
        j["min_deficit"] = {{"theta", json_number(curve.min_deficit.theta)},
                            {"deficit", json_number(curve.min_deficit.deficit)}};
        result.document = dump(j);
    }

    std::ostringstream s;
    s << "D_" << config.n << "(theta) for spin " << p.spin.label() << ", " << config.steps << " points on ["
      << format_number(p.theta_min) << ", " << format_number(p.theta_max) << "]\n";
    s << "violation intervals: " << curve.violation_ranges.size() << '\n';
    for (const auto& r : curve.violation_ranges) {
        s << "  [" << format_number(r.lo) << ", " << format_number(r.hi) << "]\n";
    }
    s << "violated measure: " << format_number(curve.violated_measure()) << " rad\n";
    s << "most negative: D = " << format_number(curve.min_deficit.deficit) << " at theta = "
      << format_number(curve.min_deficit.theta) << '\n';
    result.summary = s.str();
    return result;
}

CommandResult run_feasibility(const RunConfig& config) {
    const auto p = prepare(config);
    require_grid(config, p);
    require_n(config, 2);
    const auto grid = linear_grid(p.theta_min, p.theta_max, config.steps);
    const auto records = entropic_vs_lp_scan(p.spin, config.n, grid, {}, config.workers);

    CommandResult result;
    auto verdict_name = [](Verdict v) { return v == Verdict::Feasible ? "feasible" : "infeasible"; };
    if (config.format == OutputFormat::Csv) {
        std::ostringstream csv;
        csv << "theta,deficit,verdict,certificate_gap,max_marginal_residual\n";
        for (const auto& r : records) {
            csv << format_number(r.theta) << ',' << format_number(r.deficit) << ',' << verdict_name(r.verdict) << ','
                << format_number(r.certificate_gap) << ',' << format_number(r.max_marginal_residual) << '\n';
        }
        result.document = csv.str();
    } else {
        Json j = header(config, p.spin);
        j["n"] = config.n;
        j["rows"] = Json::array();
        for (const auto& r : records) {
            j["rows"].push_back({{"theta", json_number(r.theta)},
                                 {"deficit", json_number(r.deficit)},
                                 {"verdict", verdict_name(r.verdict)},
                                 {"certificate_gap", json_number(r.certificate_gap)},
                                 {"max_marginal_residual", json_number(r.max_marginal_residual)}});
        }
        result.document = dump(j);
    }

    std::size_t infeasible = 0;
    std::size_t contradictions = 0;
    std::size_t beyond_entropic = 0;
    for (const auto& r : records) {
        infeasible += r.verdict == Verdict::Infeasible;
        contradictions += r.contradicts_necessity();
        beyond_entropic += r.verdict == Verdict::Infeasible && r.deficit >= -1e-9;
    }
    std::ostringstream s;
    s << "grand joint feasibility for spin " << p.spin.label() << ", n = " << config.n << ", " << records.size()
      << " angles\n";
    s << "infeasible: " << infeasible << ", feasible: " << records.size() - infeasible << '\n';
    s << "infeasible with D_n >= 0 (entropic test silent): " << beyond_entropic << '\n';
    s << "D_n < 0 but feasible: " << contradictions << '\n';
    result.summary = s.str();
    if (contradictions > 0) {
        result.exit_code = kExitCheckFailed;
    }
    return result;
}

CommandResult run_zeno(const RunConfig& config) {
    const auto p = prepare(config);
    const double theta = p.theta.value_or(std::numbers::pi / 2);
    if (config.n_ladder.empty()) {
        throw ConfigError("--n-ladder", "--n-ladder must list at least one n");
    }
    for (int n : config.n_ladder) {
        if (n < 2) {
            throw ConfigError("--n-ladder", "--n-ladder entries must be at least 2");
        }
    }
    const double limit = -pair_entropy_theta(p.spin, RotationAngle(theta)).normalized(p.spin);

    struct Row {
        int n;
        double deficit;
        double gap;
    };
    std::vector<Row> rows;
    for (int n : config.n_ladder) {
        rows.push_back({n, info_deficit(p.spin, n, RotationAngle(theta)), zeno_limit_gap(p.spin, RotationAngle(theta), n)});
    }

    CommandResult result;
    if (config.format == OutputFormat::Csv) {
        std::ostringstream csv;
        csv << "n,deficit,limit,gap\n";
        for (const auto& r : rows) {
            csv << r.n << ',' << format_number(r.deficit) << ',' << format_number(limit) << ',' << format_number(r.gap)
                << '\n';
        }
        result.document = csv.str();
    } else {
        Json j = header(config, p.spin);
        j["theta"] = json_number(theta);
        j["limit"] = json_number(limit);
        j["rows"] = Json::array();
        for (const auto& r : rows) {
            j["rows"].push_back({{"n", r.n},
                                 {"deficit", json_number(r.deficit)},
                                 {"limit", json_number(limit)},
                                 {"gap", json_number(r.gap)}});
        }
        result.document = dump(j);
    }

    bool decreasing = true;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        decreasing = decreasing && rows[i].gap < rows[i - 1].gap;
    }
    std::ostringstream s;
    s << "many-measurement limit for spin " << p.spin.label() << " at theta = " << format_number(theta) << '\n';
    s << "limit -H(theta)/log2(2s+1) = " << format_number(limit) << '\n';
    for (const auto& r : rows) {
        s << "  n = " << r.n << ": D_n = " << format_number(r.deficit) << ", gap = " << format_number(r.gap) << '\n';
    }
    s << "gap strictly decreasing: " << (decreasing ? "yes" : "no") << '\n';
    result.summary = s.str();
    return result;
}

CommandResult run_sample(const RunConfig& config) {
    const auto p = prepare(config);
    require_n(config, 2);
    if (config.n > kMaxSampledMeasurements) {
        throw ConfigError("--n", "sample supports --n 2 or 3");
    }
    if (config.shots < 1) {
        throw ConfigError("--shots", "--shots must be at least 1");
    }
    if (config.bootstrap < 2) {
        throw ConfigError("--bootstrap", "--bootstrap must be at least 2");
    }
    const double theta = p.theta.value_or(std::numbers::pi / 3);
    const MeasurementSchedule schedule(config.n, theta);
    const auto table = sample_trajectories(p.spin, schedule, config.shots, config.seed, config.workers);

    // Independent two-time experiments at the step and total angles, as a
    // pairwise-only experiment would record them.
    std::optional<DeficitEstimate> estimate;
    std::optional<double> mismatch;
    if (config.n == 3) {
        const auto step_pair =
            sample_trajectories(p.spin, MeasurementSchedule(2, schedule.step()), config.shots, config.seed + 1, config.workers);
        const auto total_pair =
            sample_trajectories(p.spin, MeasurementSchedule(2, theta), config.shots, config.seed + 2, config.workers);
        try {
            estimate = empirical_deficit(step_pair, total_pair,
                                         {3, config.bootstrap, config.seed + 3, false, config.workers});
        } catch (const Error& e) {
            if (e.code() != ErrorCode::DegenerateTable) {
                throw;
            }
        }
        mismatch = table.marginal({0, 2}).probabilities().max_abs_difference(
            total_pair.probabilities());
    }

    const auto& spin = p.spin;
    const auto shape = JointProbTable::uniform(spin, config.n);
    CommandResult result;
    if (config.format == OutputFormat::Csv) {
        std::ostringstream csv;
        for (int k = 1; k <= config.n; ++k) {
            csv << "m_" << k << ',';
        }
        csv << "count,probability\n";
        for (std::size_t cell = 0; cell < table.counts().size(); ++cell) {
            for (int q : shape.unflatten(cell)) {
                csv << half_integer_label(spin.twice_m(q)) << ',';
            }
            csv << table.counts()[cell] << ','
                << format_number(static_cast<double>(table.counts()[cell]) / static_cast<double>(table.shots())) << '\n';
        }
        result.document = csv.str();
    } else {
        Json j = header(config, spin);
        j["n"] = config.n;
        j["theta"] = json_number(theta);
        j["shots"] = config.shots;
        j["seed"] = config.seed;
        j["rows"] = Json::array();
        for (std::size_t cell = 0; cell < table.counts().size(); ++cell) {
            Json m = Json::array();
            for (int q : shape.unflatten(cell)) {
                m.push_back(half_integer_label(spin.twice_m(q)));
            }
            j["rows"].push_back(
                {{"m", m},
                 {"count", table.counts()[cell]},
                 {"probability",
                  json_number(static_cast<double>(table.counts()[cell]) / static_cast<double>(table.shots()))}});
        }
        if (estimate) {
            j["empirical_deficit"] = {{"value", json_number(estimate->value)},
                                      {"standard_error", json_number(estimate->standard_error)}};
            j["analytic_deficit"] = json_number(info_deficit(spin, 3, RotationAngle(theta)));
        }
        if (mismatch) {
            j["marginal_mismatch"] = json_number(*mismatch);
        }
        result.document = dump(j);
    }

    std::ostringstream s;
    s << config.shots << " shots of " << config.n << " sequential measurements, spin " << spin.label()
      << ", total angle " << format_number(theta) << ", seed " << config.seed << '\n';
    if (estimate) {
        s << "empirical D_3 = " << format_number(estimate->value) << " +/- " << format_number(estimate->standard_error)
          << " (analytic " << format_number(info_deficit(spin, 3, RotationAngle(theta))) << ")\n";
    } else if (config.n == 3) {
        s << "empirical D_3 unavailable: an earlier-time outcome was never observed\n";
    }
    if (mismatch) {
        s << "max |P_123(m_1, m_3) - P_pair(m_1, m_3)| = " << format_number(*mismatch) << '\n';
    }
    result.summary = s.str();
    return result;
}

CommandResult run_bc_check(const RunConfig& config) {
    const auto p = prepare(config);
    if (config.configs < 0) {
        throw ConfigError("--configs", "--configs must be non-negative");
    }
    struct Row {
        double angles[3];
        double total;
        double chain;
        double bc;
    };
    std::vector<Row> rows;
    if (config.configs == 0) {
        const double theta = p.theta.value_or(std::numbers::pi);
        rows.push_back({{theta / 3, theta / 3, theta / 3}, theta, 0.0, 0.0});
    } else {
        const PhiloxStream stream(config.seed, kBcConfigDomain);
        for (int c = 0; c < config.configs; ++c) {
            const auto a = stream.uniform_pair(static_cast<std::uint64_t>(c), 0);
            const auto b = stream.uniform_pair(static_cast<std::uint64_t>(c), 1);
            const double pi = std::numbers::pi;
            rows.push_back({{a[0] * pi, a[1] * pi, b[0] * pi}, a[0] * pi + a[1] * pi + b[0] * pi, 0.0, 0.0});
        }
    }
    const auto& spin = p.spin;
    for (auto& r : rows) {
        // Q_1 <-> B, Q_2 <-> A', Q_3 <-> B', Q_4 <-> A.
        const std::vector<JointProbTable> temporal{
            rotor_pair_table(spin, RotationAngle(r.angles[0])), rotor_pair_table(spin, RotationAngle(r.angles[1])),
            rotor_pair_table(spin, RotationAngle(r.angles[2])), rotor_pair_table(spin, RotationAngle(r.total))};
        r.chain = chain_inequality_slack(temporal);
        r.bc = bc_four_term(singlet_pair_table(spin, RotationAngle(r.angles[0])),
                            singlet_pair_table(spin, RotationAngle(r.angles[1])),
                            singlet_pair_table(spin, RotationAngle(r.angles[2])),
                            singlet_pair_table(spin, RotationAngle(r.total)));
    }

    CommandResult result;
    double worst = 0.0;
    for (const auto& r : rows) {
        worst = std::max(worst, std::abs(r.chain - r.bc));
    }
    if (config.format == OutputFormat::Csv) {
        std::ostringstream csv;
        csv << "config,theta_1,theta_2,theta_3,theta_total,chain_slack,bc_slack,abs_difference\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            csv << i << ',' << format_number(r.angles[0]) << ',' << format_number(r.angles[1]) << ','
                << format_number(r.angles[2]) << ',' << format_number(r.total) << ',' << format_number(r.chain) << ','
                << format_number(r.bc) << ',' << format_number(std::abs(r.chain - r.bc)) << '\n';
        }
        result.document = csv.str();
    } else {
        Json j = header(config, spin);
        j["rows"] = Json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            j["rows"].push_back({{"config", i},
                                 {"theta_1", json_number(r.angles[0])},
                                 {"theta_2", json_number(r.angles[1])},
                                 {"theta_3", json_number(r.angles[2])},
                                 {"theta_total", json_number(r.total)},
                                 {"chain_slack", json_number(r.chain)},
                                 {"bc_slack", json_number(r.bc)},
                                 {"abs_difference", json_number(std::abs(r.chain - r.bc))}});
        }
        result.document = dump(j);
    }
    std::ostringstream s;
    s << "four-time chain vs singlet BC inequality, spin " << spin.label() << ", " << rows.size()
      << " configuration(s)\n";
    for (const auto& r : rows) {
        s << "  chain slack " << format_number(r.chain) << ", BC slack " << format_number(r.bc) << '\n';
    }
    s << "max |difference| = " << format_number(worst) << (worst < kBcTolerance ? " (ok)" : " (FAILED)") << '\n';
    result.summary = s.str();
    if (worst >= kBcTolerance) {
        result.exit_code = kExitCheckFailed;
    }
    return result;
}

} // namespace

std::string format_number(double value) {
    if (value == 0.0) {
        value = 0.0; // drop the sign of -0
    }
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

std::string command_name(Command command) {
    switch (command) {
    case Command::Scan:
        return "scan";
    case Command::Feasibility:
        return "feasibility";
    case Command::Zeno:
        return "zeno";
    case Command::Sample:
        return "sample";
    case Command::BcCheck:
        return "bc-check";
    }
    return "unknown";
}

std::filesystem::path resolve_output_path(const RunConfig& config, const char* output_dir_env) {
    if (!config.output.empty()) {
        return config.output;
    }
    const std::filesystem::path dir = (output_dir_env != nullptr && *output_dir_env != '\0') ? output_dir_env : ".";
    return dir / (command_name(config.command) + (config.format == OutputFormat::Csv ? ".csv" : ".json"));
}

CommandResult run_command(const RunConfig& config) {
    try {
        switch (config.command) {
        case Command::Scan:
            return run_scan(config);
        case Command::Feasibility:
            return run_feasibility(config);
        case Command::Zeno:
            return run_zeno(config);
        case Command::Sample:
            return run_sample(config);
        case Command::BcCheck:
            return run_bc_check(config);
        }
    } catch (const ConfigError& e) {
        return {"", std::string("error: ") + e.what() + '\n', kExitConfigError};
    } catch (const Error& e) {
        if (e.code() == ErrorCode::SizeLimitExceeded) {
            return {"", std::string("error: ") + e.what() + '\n', kExitSizeLimit};
        }
        return {"", std::string("error: ") + e.what() + '\n', kExitConfigError};
    }
    return {"", "error: unknown command\n", kExitConfigError};
}

} // namespace elg::cli
