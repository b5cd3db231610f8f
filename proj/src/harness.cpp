// Copyright 2026 The vqgs Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "vqgs/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "vqgs/adiabatic.hpp"
#include "vqgs/error.hpp"
#include "vqgs/noise.hpp"
#include "vqgs/parallel.hpp"
#include "vqgs/strategies.hpp"
#include "vqgs/version.hpp"

namespace vqgs {

namespace fs = std::filesystem;
using json = nlohmann::json;

const char *to_string(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::AdiabaticSweep:
        return "adiabatic-sweep";
    case ExperimentKind::VqeRun:
        return "vqe-run";
    case ExperimentKind::StrategyCompare:
        return "strategy-compare";
    case ExperimentKind::NoiseEval:
        return "noise-eval";
    case ExperimentKind::ResourceTable:
        return "resource-table";
    }
    return "unknown";
}

ExperimentKind experiment_from_string(const std::string &name) {
    for (auto k : {ExperimentKind::AdiabaticSweep, ExperimentKind::VqeRun,
                   ExperimentKind::StrategyCompare, ExperimentKind::NoiseEval,
                   ExperimentKind::ResourceTable}) {
        if (name == to_string(k)) {
            return k;
        }
    }
    fail(ErrorKind::InvalidArgument, "kind: unknown experiment '" + name + "'");
}

HamiltonianSpec ModelConfig::build(std::size_t n) const {
    if (name == "heisenberg") {
        return HamiltonianSpec::heisenberg(n, j);
    }
    if (name == "xyz") {
        return HamiltonianSpec::xyz(n, jx, jy, jz);
    }
    if (name == "kondo") {
        return HamiltonianSpec::kondo(n, j, j_prime);
    }
    fail(ErrorKind::InvalidArgument, "model.name: unknown model '" + name + "'");
}

std::string format_number(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

[[noreturn]] void field_error(const std::string &field, const std::string &what) {
    fail(ErrorKind::InvalidArgument, field + ": " + what);
}

template <typename T> void read(const json &j, const char *key, T &out, const std::string &prefix = "") {
    if (!j.contains(key)) {
        return;
    }
    try {
        if constexpr (std::is_same_v<T, std::size_t> || std::is_same_v<T, std::uint64_t>) {
            const json &v = j.at(key);
            if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
                field_error(prefix + key, "expected a non-negative integer");
            }
            out = v.get<T>();
        } else {
            out = j.at(key).get<T>();
        }
    } catch (const json::exception &e) {
        field_error(prefix + key, std::string("wrong type (") + e.what() + ")");
    }
}

LayerOrder parse_order(const std::string &s) {
    if (s == "even-phase-odd") {
        return LayerOrder::EvenPhaseOdd;
    }
    if (s == "phase-odd-even") {
        return LayerOrder::PhaseOddEven;
    }
    field_error("layer_order", "expected even-phase-odd or phase-odd-even");
}

TmaxSchedule parse_schedule(const std::string &s) {
    if (s == "quadratic") {
        return TmaxSchedule::Quadratic;
    }
    if (s == "bisection") {
        return TmaxSchedule::Bisection;
    }
    field_error("tmax_schedule", "expected quadratic or bisection");
}

TrotterOrder parse_trotter(const std::string &s) {
    return s == "st1" ? TrotterOrder::ST1 : TrotterOrder::ST2;
}

json num(double x) {
    return std::isfinite(x) ? json(x) : json(nullptr);
}

json num_array(const std::vector<double> &v) {
    json a = json::array();
    for (double x : v) {
        a.push_back(num(x));
    }
    return a;
}

double as_double(const json &v) {
    return v.is_number() ? v.get<double>() : std::numeric_limits<double>::quiet_NaN();
}

void write_file(const fs::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        fail(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        fail(ErrorKind::Io, "write failed for " + path.string());
    }
}

std::string read_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fail(ErrorKind::Io, "cannot open " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string threshold_tag(double f) {
    return "F" + format_number(f);
}

struct TraceRow {
    std::string run_id;
    std::size_t iteration;
    double energy;
    double fidelity;
};

std::string traces_csv(const std::vector<TraceRow> &rows) {
    std::string s = "run_id,iteration,energy,fidelity\n";
    for (const auto &r : rows) {
        s += r.run_id + "," + std::to_string(r.iteration) + "," + format_number(r.energy) +
             "," + format_number(r.fidelity) + "\n";
    }
    return s;
}

struct PlotRow {
    std::string series;
    double x;
    double y;
    double y_err;
};

std::vector<PlotRow> plot_rows(const json &record, const std::string &figure) {
    std::vector<PlotRow> rows;
    if (!record.contains("cells") || !record["cells"].is_array()) {
        return rows;
    }
    for (const auto &cell : record["cells"]) {
        const std::string id = cell.value("id", std::string{});
        if (figure == "fidelity-vs-iteration" || figure == "energy-vs-iteration") {
            const bool fid = figure == "fidelity-vs-iteration";
            const char *mk = fid ? "mean_fidelity" : "mean_energy";
            const char *sk = fid ? "std_fidelity" : "std_energy";
            if (!cell.contains(mk)) {
                continue;
            }
            const auto &mean = cell[mk];
            const auto &sd = cell[sk];
            for (std::size_t i = 0; i < mean.size(); ++i) {
                const double y = as_double(mean[i]);
                if (std::isnan(y)) {
                    continue;
                }
                rows.push_back({id, static_cast<double>(i), y, as_double(sd[i])});
            }
        } else if (figure == "cnots-vs-n") {
            if (!cell.contains("method") || !cell["cnots"].is_number()) {
                continue;
            }
            const std::string series = cell.value("method", std::string{}) + " " +
                                       threshold_tag(cell.value("threshold", 0.0));
            rows.push_back({series, cell["n"].get<double>(), cell["cnots"].get<double>(), 0.0});
        } else if (figure == "adiabatic-trace") {
            if (!cell.contains("layer_fidelity")) {
                continue;
            }
            const auto &f = cell["layer_fidelity"];
            for (std::size_t i = 0; i < f.size(); ++i) {
                rows.push_back({id, static_cast<double>(i), as_double(f[i]), 0.0});
            }
        } else if (figure == "fidelity-vs-noise") {
            if (cell.contains("unitary")) {
                for (const auto &u : cell["unitary"]) {
                    rows.push_back({"unitary " + id, u["h"].get<double>(), as_double(u["mean"]),
                                    as_double(u["std"])});
                }
            }
            if (cell.contains("dephasing")) {
                for (const auto &d : cell["dephasing"]) {
                    rows.push_back({"dephasing " + id, d["gamma_dt"].get<double>(),
                                    as_double(d["fidelity"]), 0.0});
                }
            }
        }
    }
    return rows;
}

std::string plot_csv(const std::vector<PlotRow> &rows) {
    std::string s = "series,x,y,y_err\n";
    for (const auto &r : rows) {
        s += r.series + "," + format_number(r.x) + "," + format_number(r.y) + "," +
             format_number(r.y_err) + "\n";
    }
    return s;
}

std::string fixed(double x, int digits) {
    if (!std::isfinite(x)) {
        return format_number(x);
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

std::string pad(const std::string &s, std::size_t w) {
    return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' ');
}

// Adiabatic cell: depth search plus the layer-by-layer trace of the M* circuit.
json adiabatic_cell(const ExperimentConfig &cfg, std::size_t n, double threshold,
                    const std::string &method) {
    SearchOptions so;
    so.schedule = parse_schedule(cfg.tmax_schedule);
    const TrotterOrder order = parse_trotter(method);
    AdiabaticProblem problem(n, cfg.model.j, so);
    const double t_max = problem.schedule_tmax(threshold);
    const std::size_t m = problem.min_layers(t_max, threshold, order);
    const ResourceCount rc = resource_count(n, m, order);
    const HamiltonianSpec h = HamiltonianSpec::heisenberg(n, cfg.model.j);
    PureState psi = prepare_singlet_product(n);
    std::vector<double> energy{expectation_energy(h, psi)};
    std::vector<double> fid{problem.target().fidelity_with(psi)};
    const double dt = t_max / static_cast<double>(m);
    for (std::size_t k = 1; k <= m; ++k) {
        apply_circuit(psi, build_trotter_step(k, dt, order, n, t_max, cfg.model.j));
        energy.push_back(expectation_energy(h, psi));
        fid.push_back(problem.target().fidelity_with(psi));
    }
    json c;
    c["id"] = "n" + std::to_string(n) + "_" + threshold_tag(threshold) + "_" + method;
    c["n"] = n;
    c["threshold"] = threshold;
    c["method"] = method;
    c["t_max"] = t_max;
    c["m_star"] = m;
    c["cnots"] = rc.cnots;
    c["fidelity"] = fid.back();
    c["layer_energy"] = num_array(energy);
    c["layer_fidelity"] = num_array(fid);
    return c;
}

json ensemble_cell(const std::string &id, std::size_t n, std::size_t layers,
                   const AnsatzSpec &spec, const EnsembleStats &stats, double threshold,
                   double ground_energy) {
    const Ansatz ansatz(spec);
    json c;
    c["id"] = id;
    c["n"] = n;
    c["layers"] = layers;
    c["strategy"] = to_string(stats.kind);
    c["params"] = ansatz.param_count();
    c["cnots"] = ansatz.cnot_count();
    c["mirror_tied"] = spec.mirror_tied;
    c["ground_energy"] = ground_energy;
    c["sample_seeds"] = stats.sample_seeds;
    c["final_fidelity"] = num_array(stats.final_fidelity);
    c["final_energy"] = num_array(stats.final_energy);
    const double k = static_cast<double>(stats.samples);
    const double mean = std::accumulate(stats.final_fidelity.begin(),
                                        stats.final_fidelity.end(), 0.0) / k;
    double var = 0.0;
    for (double f : stats.final_fidelity) {
        var += (f - mean) * (f - mean);
    }
    c["mean_final_fidelity"] = num(mean);
    c["std_final_fidelity"] = num(std::sqrt(var / k));
    c["passed"] = std::count_if(stats.final_fidelity.begin(), stats.final_fidelity.end(),
                                [&](double f) { return f >= threshold; });
    c["mean_fidelity"] = num_array(stats.mean_fidelity);
    c["std_fidelity"] = num_array(stats.std_fidelity);
    c["mean_energy"] = num_array(stats.mean_energy);
    c["std_energy"] = num_array(stats.std_energy);
    return c;
}

void append_traces(std::vector<TraceRow> &rows, const std::string &id,
                   const EnsembleStats &stats) {
    for (std::size_t s = 0; s < stats.traces.size(); ++s) {
        const auto &t = stats.traces[s];
        const std::string run_id = id + "_s" + std::to_string(s);
        for (std::size_t i = 0; i < t.energy.size(); ++i) {
            rows.push_back({run_id, i, t.energy[i], t.fidelity[i]});
        }
    }
}

std::string cell_tag(std::size_t n, std::size_t layers) {
    return "n" + std::to_string(n) + "_L" + std::to_string(layers);
}

AnsatzSpec make_spec(const ExperimentConfig &cfg, std::size_t n, std::size_t layers) {
    AnsatzSpec spec = AnsatzSpec::for_model(cfg.model.build(n), layers);
    spec.order = parse_order(cfg.layer_order);
    if (cfg.model.mirror_tied) {
        spec.mirror_tied = *cfg.model.mirror_tied;
    }
    return spec;
}

StrategyConfig strategy_config(const ExperimentConfig &cfg, StrategyKind kind,
                               std::uint64_t seed) {
    StrategyConfig sc;
    sc.kind = kind;
    sc.seed = seed;
    sc.samples = cfg.samples;
    sc.iterations = cfg.iterations;
    sc.fidelity_every = cfg.fidelity_every;
    sc.workers = cfg.workers;
    return sc;
}

struct Checkpoint {
    fs::path path;
    std::string echo;
    json cells = json::object();
    std::mutex mu;

    void load() {
        if (!fs::exists(path)) {
            return;
        }
        try {
            const json j = json::parse(read_file(path));
            if (j.value("config", std::string{}) == echo) {
                cells = j.at("cells");
            }
        } catch (const json::exception &) {
            cells = json::object();
        }
    }

    void store(const std::string &id, const json &cell) {
        std::lock_guard lock(mu);
        cells[id] = cell;
        json j;
        j["config"] = echo;
        j["cells"] = cells;
        const fs::path tmp = path.string() + ".tmp";
        write_file(tmp, j.dump(1) + "\n");
        fs::rename(tmp, path);
    }
};

// Config echo without fields that do not affect results.
std::string result_echo(const ExperimentConfig &cfg) {
    json j = json::parse(cfg.to_json());
    j.erase("output");
    j.erase("workers");
    return j.dump();
}

struct AdiabaticCellKey {
    std::size_t n;
    double threshold;
    std::string method;
    [[nodiscard]] std::string id() const {
        return "n" + std::to_string(n) + "_" + threshold_tag(threshold) + "_" + method;
    }
};

std::vector<json> run_adiabatic_cells(const ExperimentConfig &cfg,
                                      const std::vector<AdiabaticCellKey> &keys,
                                      Checkpoint &ckpt) {
    std::vector<json> cells(keys.size());
    std::vector<std::size_t> pending;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const std::string id = keys[i].id();
        if (ckpt.cells.contains(id)) {
            cells[i] = ckpt.cells[id];
        } else {
            pending.push_back(i);
        }
    }
    parallel_for(pending.size(), cfg.workers, [&](std::size_t p) {
        const auto &k = keys[pending[p]];
        json c = adiabatic_cell(cfg, k.n, k.threshold, k.method);
        ckpt.store(k.id(), c);
        cells[pending[p]] = std::move(c);
    });
    return cells;
}

} // namespace

ExperimentConfig ExperimentConfig::from_json(const std::string &text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        fail(ErrorKind::InvalidArgument, std::string("config: invalid JSON (") + e.what() + ")");
    }
    if (!j.is_object()) {
        field_error("config", "expected a JSON object");
    }
    static const std::set<std::string> known{
        "kind",         "model",      "n_list",       "thresholds", "layers",
        "layer_cap",    "iterations", "iters_per_param", "samples", "seed",
        "output",       "strategy",   "strategies",   "methods",    "h_values",
        "gamma_values", "realizations", "fidelity_every", "layer_order", "tmax_schedule",
        "workers"};
    for (const auto &[key, value] : j.items()) {
        if (!known.count(key)) {
            field_error(key, "unknown field");
        }
    }
    ExperimentConfig c;
    if (j.contains("kind")) {
        std::string k;
        read(j, "kind", k);
        c.kind = experiment_from_string(k);
    }
    if (j.contains("model")) {
        const json &m = j["model"];
        if (!m.is_object()) {
            field_error("model", "expected an object");
        }
        static const std::set<std::string> mkeys{"name", "j", "jx", "jy", "jz", "j_prime",
                                                 "mirror_tied"};
        for (const auto &[key, value] : m.items()) {
            if (!mkeys.count(key)) {
                field_error("model." + key, "unknown field");
            }
        }
        read(m, "name", c.model.name, "model.");
        read(m, "j", c.model.j, "model.");
        read(m, "jx", c.model.jx, "model.");
        read(m, "jy", c.model.jy, "model.");
        read(m, "jz", c.model.jz, "model.");
        read(m, "j_prime", c.model.j_prime, "model.");
        if (m.contains("mirror_tied") && !m["mirror_tied"].is_null()) {
            bool t = false;
            read(m, "mirror_tied", t, "model.");
            c.model.mirror_tied = t;
        }
    }
    if (j.contains("n_list")) {
        try {
            for (const auto &v : j["n_list"]) {
                if (!v.is_number_integer() || v.get<long long>() < 0) {
                    field_error("n_list", "expected non-negative integers");
                }
            }
        } catch (const json::exception &e) {
            field_error("n_list", e.what());
        }
        read(j, "n_list", c.n_list);
    }
    read(j, "thresholds", c.thresholds);
    if (j.contains("layers")) {
        for (const auto &v : j["layers"]) {
            if (!v.is_number_integer() || v.get<long long>() < 0) {
                field_error("layers", "expected non-negative integers");
            }
        }
        read(j, "layers", c.layers);
    }
    read(j, "layer_cap", c.layer_cap);
    read(j, "iterations", c.iterations);
    read(j, "iters_per_param", c.iters_per_param);
    read(j, "samples", c.samples);
    if (j.contains("seed") && !j["seed"].is_null()) {
        std::uint64_t s = 0;
        read(j, "seed", s);
        c.seed = s;
    }
    read(j, "output", c.output);
    read(j, "strategy", c.strategy);
    read(j, "strategies", c.strategies);
    read(j, "methods", c.methods);
    read(j, "h_values", c.h_values);
    read(j, "gamma_values", c.gamma_values);
    read(j, "realizations", c.realizations);
    read(j, "fidelity_every", c.fidelity_every);
    read(j, "layer_order", c.layer_order);
    read(j, "tmax_schedule", c.tmax_schedule);
    read(j, "workers", c.workers);
    return c;
}

std::string ExperimentConfig::to_json() const {
    json j;
    j["kind"] = vqgs::to_string(kind);
    j["model"] = {{"name", model.name}, {"j", model.j},   {"jx", model.jx},
                  {"jy", model.jy},     {"jz", model.jz}, {"j_prime", model.j_prime}};
    j["model"]["mirror_tied"] = model.mirror_tied ? json(*model.mirror_tied) : json(nullptr);
    j["n_list"] = n_list;
    j["thresholds"] = thresholds;
    j["layers"] = layers;
    j["layer_cap"] = layer_cap;
    j["iterations"] = iterations;
    j["iters_per_param"] = iters_per_param;
    j["samples"] = samples;
    j["seed"] = seed ? json(*seed) : json(nullptr);
    j["output"] = output;
    j["strategy"] = strategy;
    j["strategies"] = strategies;
    j["methods"] = methods;
    j["h_values"] = h_values;
    j["gamma_values"] = gamma_values;
    j["realizations"] = realizations;
    j["fidelity_every"] = fidelity_every;
    j["layer_order"] = layer_order;
    j["tmax_schedule"] = tmax_schedule;
    j["workers"] = workers;
    return j.dump(2);
}

void ExperimentConfig::validate() const {
    if (!seed) {
        field_error("seed", "a master seed is required");
    }
    if (model.name != "heisenberg" && model.name != "xyz" && model.name != "kondo") {
        field_error("model.name", "expected heisenberg, xyz or kondo");
    }
    for (double v : {model.j, model.jx, model.jy, model.jz, model.j_prime}) {
        if (!std::isfinite(v)) {
            field_error("model", "couplings must be finite");
        }
    }
    if (n_list.empty()) {
        field_error("n_list", "must not be empty");
    }
    for (std::size_t n : n_list) {
        if (n < 2 || n % 2 != 0) {
            field_error("n_list", "every n must be even and >= 2 (got " + std::to_string(n) + ")");
        }
    }
    if (thresholds.empty()) {
        field_error("thresholds", "must not be empty");
    }
    for (double f : thresholds) {
        if (!(f > 0.0 && f < 1.0)) {
            field_error("thresholds", "every threshold must lie in (0, 1) (got " +
                                          format_number(f) + ")");
        }
    }
    if (layers.empty()) {
        field_error("layers", "must not be empty");
    }
    for (std::size_t l : layers) {
        if (l < 1 || l > 64) {
            field_error("layers", "every depth must lie in [1, 64]");
        }
    }
    if (layer_cap < 1 || layer_cap > 64) {
        field_error("layer_cap", "must lie in [1, 64]");
    }
    if (iterations < 1) {
        field_error("iterations", "must be >= 1");
    }
    if (iters_per_param < 1) {
        field_error("iters_per_param", "must be >= 1");
    }
    if (samples < 1) {
        field_error("samples", "must be >= 1");
    }
    if (realizations < 1) {
        field_error("realizations", "must be >= 1");
    }
    if (output.empty()) {
        field_error("output", "must not be empty");
    }
    for (double h : h_values) {
        if (!(h >= 0.0) || !std::isfinite(h)) {
            field_error("h_values", "every h must be finite and >= 0");
        }
    }
    for (double g : gamma_values) {
        if (!(g >= 0.0) || !std::isfinite(g)) {
            field_error("gamma_values", "every gamma_dt must be finite and >= 0");
        }
    }
    parse_order(layer_order);
    parse_schedule(tmax_schedule);
    try {
        strategy_from_string(strategy);
    } catch (const Error &) {
        field_error("strategy", "expected random, qubit or layer");
    }
    if (kind == ExperimentKind::StrategyCompare && strategies.empty()) {
        field_error("strategies", "must not be empty");
    }
    for (const auto &s : strategies) {
        try {
            strategy_from_string(s);
        } catch (const Error &) {
            field_error("strategies", "unknown strategy '" + s + "'");
        }
    }
    const bool uses_qubit =
        (kind == ExperimentKind::StrategyCompare &&
         std::find(strategies.begin(), strategies.end(), "qubit") != strategies.end()) ||
        ((kind == ExperimentKind::VqeRun || kind == ExperimentKind::NoiseEval) &&
         strategy == "qubit");
    if (uses_qubit) {
        for (std::size_t n : n_list) {
            if (n % 4 != 0) {
                field_error("n_list", "the qubit strategy needs n divisible by 4");
            }
        }
    }
    if (kind == ExperimentKind::AdiabaticSweep || kind == ExperimentKind::ResourceTable) {
        if (methods.empty()) {
            field_error("methods", "must not be empty");
        }
        for (const auto &m : methods) {
            const bool adiabatic = m == "st1" || m == "st2";
            if (!adiabatic && !(m == "vqe" && kind == ExperimentKind::ResourceTable)) {
                field_error("methods", "unsupported method '" + m + "'");
            }
            if (adiabatic && model.name != "heisenberg") {
                field_error("model.name", "adiabatic methods use the heisenberg model");
            }
        }
    }
    if (kind == ExperimentKind::ResourceTable && thresholds.size() != 1) {
        field_error("thresholds", "resource-table takes exactly one threshold");
    }
    for (std::size_t n : n_list) {
        model.build(n).validate();
    }
}

void ExperimentConfig::check_resources() const {
    const std::size_t n_max = *std::max_element(n_list.begin(), n_list.end());
    if (n_max > kMaxPureQubits) {
        fail(ErrorKind::ResourceLimit, "n_list: n = " + std::to_string(n_max) +
                                           " exceeds the state-vector limit of " +
                                           std::to_string(kMaxPureQubits) + " qubits");
    }
    if (kind == ExperimentKind::NoiseEval && !gamma_values.empty() && n_max > kMaxMixedQubits) {
        fail(ErrorKind::ResourceLimit, "n_list: n = " + std::to_string(n_max) +
                                           " exceeds the density-matrix limit of " +
                                           std::to_string(kMaxMixedQubits) + " qubits");
    }
}

std::vector<std::string> plot_kinds() {
    return {"fidelity-vs-iteration", "energy-vs-iteration", "cnots-vs-n", "adiabatic-trace",
            "fidelity-vs-noise"};
}

void emit_plot_data(const std::string &record_json, const std::string &figure,
                    const std::string &out_path) {
    const auto kinds = plot_kinds();
    if (std::find(kinds.begin(), kinds.end(), figure) == kinds.end()) {
        fail(ErrorKind::InvalidArgument, "figure: unknown plot kind '" + figure + "'");
    }
    json record;
    try {
        record = json::parse(record_json);
    } catch (const json::parse_error &e) {
        fail(ErrorKind::InvalidArgument, std::string("record: invalid JSON (") + e.what() + ")");
    }
    const auto rows = plot_rows(record, figure);
    if (rows.empty()) {
        fail(ErrorKind::InvalidArgument, "record has no data for figure '" + figure + "'");
    }
    write_file(out_path, plot_csv(rows));
}

RunOutcome run(const ExperimentConfig &cfg) {
    cfg.validate();
    cfg.check_resources();
    const auto t0 = std::chrono::steady_clock::now();
    const fs::path dir(cfg.output);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        fail(ErrorKind::Io, "output: cannot create " + dir.string() + " (" + ec.message() + ")");
    }
    const std::uint64_t master = *cfg.seed;

    json cells = json::array();
    json lineage = json::object();
    std::vector<TraceRow> traces;
    std::string summary;
    std::vector<std::pair<std::string, std::string>> tables;

    switch (cfg.kind) {
    case ExperimentKind::AdiabaticSweep:
    case ExperimentKind::ResourceTable: {
        Checkpoint ckpt;
        ckpt.path = dir / "checkpoint.json";
        ckpt.echo = result_echo(cfg);
        ckpt.load();
        std::vector<AdiabaticCellKey> keys;
        const std::vector<double> thr = cfg.kind == ExperimentKind::ResourceTable
                                            ? std::vector<double>{cfg.thresholds.front()}
                                            : cfg.thresholds;
        for (std::size_t n : cfg.n_list)
            for (double f : thr)
                for (const auto &m : cfg.methods)
                    if (m != "vqe")
                        keys.push_back({n, f, m});
        std::vector<json> ad = run_adiabatic_cells(cfg, keys, ckpt);
        std::vector<json> all;
        std::size_t next_ad = 0;
        for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
            const std::size_t n = cfg.n_list[ni];
            for (double f : thr) {
                for (const auto &m : cfg.methods) {
                    if (m != "vqe") {
                        all.push_back(ad[next_ad++]);
                        continue;
                    }
                    const std::string id = "n" + std::to_string(n) + "_" + threshold_tag(f) + "_vqe";
                    if (ckpt.cells.contains(id)) {
                        all.push_back(ckpt.cells[id]);
                        lineage[id] = all.back()["seed"];
                        continue;
                    }
                    VqeDepthOptions vo;
                    vo.samples = cfg.samples;
                    vo.layer_cap = cfg.layer_cap;
                    vo.iters_per_param = cfg.iters_per_param;
                    vo.seed = derive_seed(master, ni);
                    vo.workers = cfg.workers;
                    vo.order = parse_order(cfg.layer_order);
                    vo.mirror_tied = cfg.model.mirror_tied;
                    json c;
                    c["id"] = id;
                    c["n"] = n;
                    c["threshold"] = f;
                    c["method"] = "vqe";
                    c["seed"] = vo.seed;
                    lineage[id] = vo.seed;
                    try {
                        const VqeDepthResult r = min_layers_vqe(cfg.model.build(n), f, vo);
                        c["m_star"] = r.m_star;
                        c["cnots"] = r.cnots;
                        c["params"] = r.params;
                        json levels = json::array();
                        for (const auto &l : r.levels) {
                            levels.push_back({{"layers", l.layers},
                                              {"params", l.params},
                                              {"passed", l.passed},
                                              {"min_fidelity", l.min_fidelity},
                                              {"mean_fidelity", l.mean_fidelity}});
                        }
                        c["levels"] = levels;
                    } catch (const Error &e) {
                        if (e.kind() != ErrorKind::SearchCapExceeded) {
                            throw;
                        }
                        c["m_star"] = nullptr;
                        c["cnots"] = nullptr;
                        c["note"] = e.what();
                    }
                    ckpt.store(id, c);
                    all.push_back(c);
                }
            }
        }
        std::string table = cfg.kind == ExperimentKind::ResourceTable
                                ? "n,method,M_star,cnots\n"
                                : "n,threshold,method,t_max,M_star,cnots,fidelity\n";
        summary += cfg.kind == ExperimentKind::ResourceTable
                       ? "resource table at F = " + format_number(thr.front()) + "\n\n" +
                             pad("n", 6) + pad("method", 8) + pad("M*", 8) + "CNOTs\n"
                       : std::string("adiabatic sweep\n\n") + pad("n", 6) + pad("F", 8) +
                             pad("method", 8) + pad("T_max", 12) + pad("M*", 8) +
                             pad("CNOTs", 10) + "fidelity\n";
        for (const auto &c : all) {
            const std::string mstar =
                c["m_star"].is_number() ? std::to_string(c["m_star"].get<std::size_t>()) : "none";
            const std::string cn =
                c["cnots"].is_number() ? std::to_string(c["cnots"].get<std::size_t>()) : "none";
            const std::string n = std::to_string(c["n"].get<std::size_t>());
            const std::string method = c["method"];
            if (cfg.kind == ExperimentKind::ResourceTable) {
                table += n + "," + method + "," + mstar + "," + cn + "\n";
                summary += pad(n, 6) + pad(method, 8) + pad(mstar, 8) + cn + "\n";
            } else {
                table += n + "," + format_number(c["threshold"].get<double>()) + "," + method +
                         "," + format_number(c["t_max"].get<double>()) + "," + mstar + "," + cn +
                         "," + format_number(c["fidelity"].get<double>()) + "\n";
                summary += pad(n, 6) + pad(format_number(c["threshold"].get<double>()), 8) +
                           pad(method, 8) + pad(fixed(c["t_max"].get<double>(), 4), 12) +
                           pad(mstar, 8) + pad(cn, 10) + fixed(c["fidelity"].get<double>(), 6) +
                           "\n";
            }
            if (c.contains("layer_fidelity")) {
                const auto &fe = c["layer_energy"];
                const auto &ff = c["layer_fidelity"];
                for (std::size_t i = 0; i < ff.size(); ++i) {
                    traces.push_back({c["id"].get<std::string>(), i, as_double(fe[i]),
                                      as_double(ff[i])});
                }
            }
            cells.push_back(c);
        }
        tables.emplace_back(cfg.kind == ExperimentKind::ResourceTable ? "resource_table.csv"
                                                                      : "sweep.csv",
                            table);
        break;
    }
    case ExperimentKind::VqeRun:
    case ExperimentKind::StrategyCompare:
    case ExperimentKind::NoiseEval: {
        const std::vector<std::string> kinds = cfg.kind == ExperimentKind::StrategyCompare
                                                   ? cfg.strategies
                                                   : std::vector<std::string>{cfg.strategy};
        std::string table = cfg.kind == ExperimentKind::NoiseEval
                                ? "cell,channel,strength,mean_fidelity,std_fidelity\n"
                                : "cell,strategy,n,layers,params,cnots,mean_final_fidelity,"
                                  "std_final_fidelity,standard_error,passed,samples\n";
        summary += std::string(to_string(cfg.kind)) + "\n\n";
        if (cfg.kind != ExperimentKind::NoiseEval) {
            summary += pad("cell", 16) + pad("strategy", 10) + pad("params", 8) +
                       pad("mean F", 12) + pad("std", 10) + pad("SE", 10) + "passed\n";
        }
        std::size_t cell_index = 0;
        for (std::size_t n : cfg.n_list) {
            const HamiltonianSpec model = cfg.model.build(n);
            const GroundStateResult target = ground_state(model);
            for (std::size_t layers : cfg.layers) {
                const std::uint64_t cell_seed = derive_seed(master, cell_index++);
                const AnsatzSpec spec = make_spec(cfg, n, layers);
                for (const auto &sname : kinds) {
                    const StrategyKind sk = strategy_from_string(sname);
                    const EnsembleStats stats =
                        run_ensemble(spec, strategy_config(cfg, sk, cell_seed), target);
                    const std::string id = cell_tag(n, layers) + "_" + sname;
                    json c = ensemble_cell(id, n, layers, spec, stats, cfg.thresholds.front(),
                                           target.energy);
                    lineage[id] = cell_seed;
                    append_traces(traces, id, stats);
                    const double se = c["std_final_fidelity"].get<double>() /
                                      std::sqrt(static_cast<double>(stats.samples));
                    c["standard_error"] = se;
                    if (cfg.kind == ExperimentKind::NoiseEval) {
                        const auto best = static_cast<std::size_t>(
                            std::max_element(stats.final_fidelity.begin(),
                                             stats.final_fidelity.end()) -
                            stats.final_fidelity.begin());
                        const Ansatz ansatz(spec);
                        const auto &theta = stats.traces[best].theta;
                        c["best_sample"] = best;
                        c["ideal_fidelity"] = stats.final_fidelity[best];
                        c["theta_star"] = theta;
                        NoiseConfig nc;
                        nc.realizations = cfg.realizations;
                        nc.seed = derive_seed(cell_seed, 0x6e6f697365ULL);
                        nc.workers = cfg.workers;
                        c["noise_seed"] = nc.seed;
                        json unitary = json::array();
                        summary += id + " (ideal F = " +
                                   fixed(stats.final_fidelity[best], 6) + ")\n";
                        for (double h : cfg.h_values) {
                            nc.h = h;
                            const NoisyFidelity r = avg_noisy_fidelity(ansatz, theta, target, nc);
                            unitary.push_back({{"h", h}, {"mean", r.mean}, {"std", r.std}});
                            table += id + ",unitary," + format_number(h) + "," +
                                     format_number(r.mean) + "," + format_number(r.std) + "\n";
                            summary += "  cnot phase h = " + pad(format_number(h), 10) +
                                       "F = " + fixed(r.mean, 4) + " +- " + fixed(r.std, 4) +
                                       "\n";
                        }
                        json deph = json::array();
                        for (double g : cfg.gamma_values) {
                            const MixedState rho = noisy_layered_output(ansatz, theta, g);
                            const double f = ground_space_fidelity(rho, target);
                            deph.push_back(
                                {{"gamma_dt", g}, {"fidelity", f}, {"purity", rho.purity()}});
                            table += id + ",dephasing," + format_number(g) + "," +
                                     format_number(f) + ",0\n";
                            summary += "  dephasing gamma_dt = " + pad(format_number(g), 10) +
                                       "F = " + fixed(f, 4) + "\n";
                        }
                        c["unitary"] = unitary;
                        c["dephasing"] = deph;
                    } else {
                        table += id + "," + sname + "," + std::to_string(n) + "," +
                                 std::to_string(layers) + "," +
                                 std::to_string(c["params"].get<std::size_t>()) + "," +
                                 std::to_string(c["cnots"].get<std::size_t>()) + "," +
                                 format_number(c["mean_final_fidelity"].get<double>()) + "," +
                                 format_number(c["std_final_fidelity"].get<double>()) + "," +
                                 format_number(se) + "," +
                                 std::to_string(c["passed"].get<std::size_t>()) + "," +
                                 std::to_string(stats.samples) + "\n";
                        summary += pad(cell_tag(n, layers), 16) + pad(sname, 10) +
                                   pad(std::to_string(c["params"].get<std::size_t>()), 8) +
                                   pad(fixed(c["mean_final_fidelity"].get<double>(), 6), 12) +
                                   pad(fixed(c["std_final_fidelity"].get<double>(), 4), 10) +
                                   pad(fixed(se, 4), 10) +
                                   std::to_string(c["passed"].get<std::size_t>()) + "/" +
                                   std::to_string(stats.samples) + "\n";
                    }
                    cells.push_back(std::move(c));
                }
            }
        }
        tables.emplace_back(cfg.kind == ExperimentKind::NoiseEval ? "noise.csv" : "ensembles.csv",
                            table);
        break;
    }
    }

    RunOutcome out;
    out.output_dir = dir.string();
    auto emit = [&](const std::string &name, const std::string &content) {
        write_file(dir / name, content);
        out.files.push_back((dir / name).string());
    };
    emit("traces.csv", traces_csv(traces));
    for (const auto &[name, content] : tables) {
        emit(name, content);
    }

    json record;
    record["artifact_version"] = kArtifactVersion;
    record["library_version"] = kVersion;
    record["kind"] = to_string(cfg.kind);
    record["config"] = json::parse(cfg.to_json());
    record["seed_lineage"] = {{"master", master}, {"cells", lineage}};
    record["cells"] = cells;
    for (const auto &kind : plot_kinds()) {
        const auto rows = plot_rows(record, kind);
        if (!rows.empty()) {
            emit("plot_" + kind + ".csv", plot_csv(rows));
        }
    }
    emit("summary.txt", summary);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    record["wall_clock_seconds"] = wall;
    out.record_path = (dir / "record.json").string();
    out.files.push_back(out.record_path);
    record["files"] = out.files;
    write_file(out.record_path, record.dump(1) + "\n");
    out.summary = summary;
    return out;
}

} // namespace vqgs
