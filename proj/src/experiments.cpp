#include "uavsec/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace uavsec {

namespace {

using nlohmann::json;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Strict section reader: every key must be known and well-typed.
class Section {
  public:
    Section(const json& j, const std::string& name) : name_(name) {
        if (!j.contains(name)) return;
        if (!j.at(name).is_object())
            throw ConfigError("section '" + name + "' must be an object");
        obj_ = j.at(name);
    }

    double number(const std::string& key, double fallback) {
        return read<double>(key, fallback, [](const json& v) { return v.is_number(); },
                            "a number");
    }

    int integer(const std::string& key, int fallback) {
        return read<int>(key, fallback,
                         [](const json& v) { return v.is_number_integer(); },
                         "an integer");
    }

    Vec2 point(const std::string& key, Vec2 fallback) {
        if (!obj_.contains(key)) return fallback;
        seen_.push_back(key);
        const json& v = obj_.at(key);
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            throw ConfigError(name_ + "." + key + " must be an [x, y] pair");
        return {v[0].get<double>(), v[1].get<double>()};
    }

    std::string text(const std::string& key, const std::string& fallback) {
        return read<std::string>(key, fallback,
                                 [](const json& v) { return v.is_string(); },
                                 "a string");
    }

    bool has(const std::string& key) const { return obj_.contains(key); }

    std::vector<double> numbers(const std::string& key) {
        std::vector<double> out;
        if (!obj_.contains(key)) return out;
        seen_.push_back(key);
        const json& v = obj_.at(key);
        if (!v.is_array()) throw ConfigError(name_ + "." + key + " must be an array");
        for (const json& e : v) {
            if (!e.is_number())
                throw ConfigError(name_ + "." + key + " must hold numbers only");
            out.push_back(e.get<double>());
        }
        return out;
    }

    std::vector<std::string> texts(const std::string& key) {
        std::vector<std::string> out;
        if (!obj_.contains(key)) return out;
        seen_.push_back(key);
        const json& v = obj_.at(key);
        if (!v.is_array()) throw ConfigError(name_ + "." + key + " must be an array");
        for (const json& e : v) {
            if (!e.is_string())
                throw ConfigError(name_ + "." + key + " must hold strings only");
            out.push_back(e.get<std::string>());
        }
        return out;
    }

    void finish() const {
        for (auto it = obj_.begin(); it != obj_.end(); ++it)
            if (std::find(seen_.begin(), seen_.end(), it.key()) == seen_.end())
                throw ConfigError("unknown key '" + name_ + "." + it.key() + "'");
    }

  private:
    template <typename T, typename Pred>
    T read(const std::string& key, T fallback, Pred ok, const char* what) {
        if (!obj_.contains(key)) return fallback;
        seen_.push_back(key);
        const json& v = obj_.at(key);
        if (!ok(v))
            throw ConfigError(name_ + "." + key + " must be " + what);
        return v.get<T>();
    }

    std::string name_;
    json obj_ = json::object();
    mutable std::vector<std::string> seen_;
};

ExperimentKind kind_from_name(const std::string& name) {
    for (ExperimentKind k :
         {ExperimentKind::Solve, ExperimentKind::Trace, ExperimentKind::TrajectoryExport,
          ExperimentKind::SweepTime, ExperimentKind::SweepPower})
        if (name == experiment_kind_name(k)) return k;
    throw ConfigError("unknown experiment.kind '" + name + "'");
}

std::vector<double> default_sweep(ExperimentKind kind, double t_s) {
    switch (kind) {
        case ExperimentKind::Trace: return {110.0, 130.0, 150.0};
        case ExperimentKind::SweepTime: return {100, 110, 120, 130, 140, 150, 160};
        case ExperimentKind::SweepPower: return {-10, -8, -6, -4, -2, 0, 2, 4, 6, 8, 10};
        default: return {t_s};
    }
}

struct Csv {
    std::ostringstream body;

    void row(std::initializer_list<std::string> cells) {
        bool first = true;
        for (const auto& c : cells) {
            if (!first) body << ',';
            body << c;
            first = false;
        }
        body << '\n';
    }
};

std::filesystem::path write_file(const std::filesystem::path& dir,
                                 const std::string& name, const Csv& csv) {
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << csv.body.str();
    return path;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers =
        std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

struct RunResult {
    SolveReport report;
    std::string error; // empty on success
};

std::string sanitize(std::string msg) {
    for (char& c : msg)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return msg;
}

} // namespace

const char* experiment_kind_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::Solve: return "solve";
        case ExperimentKind::Trace: return "trace";
        case ExperimentKind::TrajectoryExport: return "trajectory_export";
        case ExperimentKind::SweepTime: return "sweep_time";
        case ExperimentKind::SweepPower: return "sweep_power";
    }
    return "?";
}

LoadedConfig load_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config root must be an object");
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (it.key() != "scenario" && it.key() != "power" && it.key() != "solver" &&
            it.key() != "experiment")
            throw ConfigError("unknown section '" + it.key() + "'");

    LoadedConfig out;
    ScenarioConfig& sc = out.scenario;

    Section scenario(doc, "scenario");
    if (!scenario.has("T_s")) throw ConfigError("scenario.T_s is required");
    sc.horizon_s = scenario.number("T_s", 0.0);
    sc.n_slots = scenario.integer("N", 100);
    sc.altitude_m = scenario.number("H_m", 100.0);
    sc.speed_mps = scenario.number("V_mps", 4.0);
    sc.gamma0 = db_to_linear(scenario.number("gamma0_dB", 80.0));
    sc.bob_xy = scenario.point("bob_xy", {0.0, 0.0});
    sc.eve_xy = scenario.point("eve_xy", {100.0, 0.0});
    sc.start_xy = scenario.point("start_xy", {50.0, 200.0});
    sc.end_xy = scenario.point("end_xy", {50.0, -200.0});
    scenario.finish();

    Section power(doc, "power");
    sc.budgets.p_ave_w = dbm_to_watts(power.number("P_ave_dBm", 0.0));
    sc.budgets.split = power.number("lambda", 0.5);
    sc.budgets.peak_factor = power.number("peak_factor", 4.0);
    power.finish();

    Section solver(doc, "solver");
    sc.solver.epsilon = solver.number("epsilon", 1e-4);
    sc.solver.max_outer_iters = solver.integer("max_outer_iters", 50);
    sc.solver.bisection_tol = solver.number("bisection_tol", 1e-12);
    sc.solver.inner_tol = solver.number("inner_tol", 1e-6);
    sc.solver.alpha_clamp = solver.number("alpha_clamp", 1e-6);
    solver.finish();

    Section experiment(doc, "experiment");
    out.experiment.kind = kind_from_name(experiment.text("kind", "solve"));
    const auto scheme_names = experiment.texts("schemes");
    if (scheme_names.empty()) {
        out.experiment.schemes = {SchemeKind::JTDORA, SchemeKind::ANOPC, SchemeKind::ANTD,
                                  SchemeKind::ANERA, SchemeKind::TDPC};
    } else {
        for (const auto& name : scheme_names) {
            const auto s = scheme_from_name(name);
            if (!s) throw ConfigError("unknown scheme '" + name + "'");
            out.experiment.schemes.push_back(*s);
        }
    }
    out.experiment.sweep_values = experiment.numbers("sweep_values");
    if (!std::is_sorted(out.experiment.sweep_values.begin(),
                        out.experiment.sweep_values.end()))
        throw ConfigError("experiment.sweep_values must be sorted ascending");
    out.experiment.splits = experiment.numbers("splits");
    if (out.experiment.splits.empty()) out.experiment.splits = {sc.budgets.split};
    if (!std::is_sorted(out.experiment.splits.begin(), out.experiment.splits.end()))
        throw ConfigError("experiment.splits must be sorted ascending");
    out.experiment.output_dir = experiment.text("output_dir", "out");
    experiment.finish();

    try {
        sc.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return out;
}

std::filesystem::path write_baseline_csv(const ScenarioConfig& cfg,
                                         const std::filesystem::path& output_dir) {
    cfg.validate();
    const Trajectory traj = baseline_trajectory(cfg);
    Csv csv;
    csv.row({"scheme", "T_s", "slot", "x_m", "y_m"});
    for (std::size_t i = 0; i < traj.waypoints.size(); ++i)
        csv.row({"baseline", fmt(cfg.horizon_s), std::to_string(i + 1),
                 fmt(traj.waypoints[i].x), fmt(traj.waypoints[i].y)});
    return write_file(output_dir, "trajectory.csv", csv);
}

std::vector<std::filesystem::path> run_experiment(const ExperimentSpec& spec,
                                                  const ScenarioConfig& cfg) {
    if (spec.schemes.empty()) throw ConfigError("experiment needs at least one scheme");
    cfg.validate();

    const std::vector<double> values = spec.sweep_values.empty()
                                           ? default_sweep(spec.kind, cfg.horizon_s)
                                           : spec.sweep_values;
    const bool power_sweep = spec.kind == ExperimentKind::SweepPower;
    const std::vector<double> splits =
        power_sweep ? spec.splits : std::vector<double>{cfg.budgets.split};

    // One task per (split, value, scheme), deterministic order.
    struct Task {
        double split, value;
        SchemeKind scheme;
    };
    std::vector<Task> tasks;
    for (double split : splits)
        for (double value : values)
            for (SchemeKind scheme : spec.schemes) tasks.push_back({split, value, scheme});

    std::vector<RunResult> results(tasks.size());
    parallel_for(tasks.size(), [&](std::size_t i) {
        ScenarioConfig point = cfg;
        point.budgets.split = tasks[i].split;
        if (power_sweep)
            point.budgets.p_ave_w = dbm_to_watts(tasks[i].value);
        else
            point.horizon_s = tasks[i].value;
        try {
            results[i].report = bcd_solve(point, tasks[i].scheme);
        } catch (const std::exception& e) {
            results[i].error = sanitize(e.what());
        }
    });

    Csv data;
    std::string data_name;
    switch (spec.kind) {
        case ExperimentKind::Solve:
            data_name.clear();
            break;
        case ExperimentKind::Trace: {
            data_name = "trace.csv";
            data.row({"scheme", "T_s", "iteration", "asr_bpshz"});
            for (std::size_t i = 0; i < tasks.size(); ++i) {
                if (!results[i].error.empty())
                    throw std::runtime_error(results[i].error);
                const auto& trace = results[i].report.asr_trace;
                for (std::size_t k = 0; k < trace.size(); ++k)
                    data.row({scheme_name(tasks[i].scheme), fmt(tasks[i].value),
                              std::to_string(k), fmt(trace[k])});
            }
            break;
        }
        case ExperimentKind::TrajectoryExport: {
            data_name = "trajectory.csv";
            data.row({"scheme", "T_s", "slot", "x_m", "y_m"});
            for (std::size_t i = 0; i < tasks.size(); ++i) {
                if (!results[i].error.empty())
                    throw std::runtime_error(results[i].error);
                const auto& w = results[i].report.final_trajectory.waypoints;
                for (std::size_t k = 0; k < w.size(); ++k)
                    data.row({scheme_name(tasks[i].scheme), fmt(tasks[i].value),
                              std::to_string(k + 1), fmt(w[k].x), fmt(w[k].y)});
            }
            for (double value : values) { // reference path alongside the designs
                ScenarioConfig point = cfg;
                point.horizon_s = value;
                const Trajectory base = baseline_trajectory(point);
                for (std::size_t k = 0; k < base.waypoints.size(); ++k)
                    data.row({"baseline", fmt(value), std::to_string(k + 1),
                              fmt(base.waypoints[k].x), fmt(base.waypoints[k].y)});
            }
            break;
        }
        case ExperimentKind::SweepTime: {
            data_name = "sweep_time.csv";
            data.row({"scheme", "T_s", "asr_bpshz", "error"});
            for (std::size_t i = 0; i < tasks.size(); ++i) {
                const bool ok = results[i].error.empty();
                data.row({scheme_name(tasks[i].scheme), fmt(tasks[i].value),
                          ok ? fmt(results[i].report.asr_trace.back()) : std::string(),
                          results[i].error});
            }
            break;
        }
        case ExperimentKind::SweepPower: {
            data_name = "sweep_power.csv";
            data.row({"scheme", "lambda", "P_ave_dBm", "asr_bpshz", "error"});
            for (std::size_t i = 0; i < tasks.size(); ++i) {
                const bool ok = results[i].error.empty();
                data.row({scheme_name(tasks[i].scheme), fmt(tasks[i].split),
                          fmt(tasks[i].value),
                          ok ? fmt(results[i].report.asr_trace.back()) : std::string(),
                          results[i].error});
            }
            break;
        }
    }

    std::vector<std::filesystem::path> written;
    if (!data_name.empty()) written.push_back(write_file(spec.output_dir, data_name, data));

    Csv summary;
    summary.row({"scheme", "iterations", "converged", "wall_time_s"});
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (!results[i].error.empty()) continue;
        const auto& r = results[i].report;
        summary.row({scheme_name(tasks[i].scheme), std::to_string(r.iterations),
                     r.converged ? "true" : "false", fmt(r.wall_time_s)});
    }
    written.push_back(write_file(spec.output_dir, "summary.txt", summary));

    if (spec.kind == ExperimentKind::Solve) {
        for (std::size_t i = 0; i < tasks.size(); ++i) {
            if (!results[i].error.empty()) throw std::runtime_error(results[i].error);
            const auto& r = results[i].report;
            std::printf("%s: asr=%.6f bps/Hz iterations=%d converged=%s (%.2f s)\n",
                        scheme_name(tasks[i].scheme), r.asr_trace.back(), r.iterations,
                        r.converged ? "yes" : "no", r.wall_time_s);
        }
    }
    return written;
}

} // namespace uavsec
