// Copyright 2026 The steershare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <CLI11.hpp>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <numeric>
#include <sstream>

#include "steershare/entanglement.h"
#include "steershare/measurement.h"
#include "steershare/serialization.h"
#include "steershare/states.h"
#include "steershare/steering.h"

namespace steershare::cli {

using nlohmann::json;

namespace {

// Hand-typed coefficients carry a few digits; accept them when they are this
// close to normalized and rescale.
constexpr double kTypedNormTolerance = 1e-4;

double parse_number(const std::string &token) {
    const char *begin = token.c_str();
    char *end = nullptr;
    errno = 0;
    double v = std::strtod(begin, &end);
    if (token.empty() || end != begin + token.size() || errno == ERANGE || !std::isfinite(v)) {
        throw std::invalid_argument("not a number: '" + token + "'");
    }
    return v;
}

std::vector<double> parse_numbers(const std::string &list, std::size_t expected, const std::string &spec) {
    std::vector<double> out;
    std::string token;
    std::istringstream in(list);
    while (std::getline(in, token, ',')) {
        out.push_back(parse_number(token));
    }
    if (!list.empty() && list.back() == ',') {
        throw std::invalid_argument("trailing ',' in state '" + spec + "'");
    }
    if (out.size() != expected) {
        throw std::invalid_argument(
            "state '" + spec + "' needs " + std::to_string(expected) + " comma-separated numbers");
    }
    return out;
}

void check_typed_norm(double norm2, const std::string &spec) {
    if (std::abs(norm2 - 1.0) > kTypedNormTolerance) {
        throw std::invalid_argument("coefficients in '" + spec + "' are not normalized (sum of squares " + std::to_string(norm2) + ")");
    }
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw IoError("error while reading '" + path + "'");
    }
    return buf.str();
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw IoError("cannot write '" + path + "'");
    }
    f << text;
    f.close();
    if (!f) {
        throw IoError("error while writing '" + path + "'");
    }
}

void emit(const RunConfig &config, const std::string &text, std::ostream &out) {
    if (config.out.empty() || config.out == "-") {
        out << text;
    } else {
        write_file(config.out, text);
    }
}

bool ends_with(const std::string &s, const std::string &suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string dump(const json &j) {
    return j.dump(2) + "\n";
}

ResolvedState prepared_state(const RunConfig &config) {
    ResolvedState s = resolve_state(config.state);
    if (!(config.noise >= 0.0 && config.noise <= 1.0)) {
        throw std::invalid_argument("--noise must lie in [0, 1]");
    }
    if (config.noise > 0.0) {
        s.rho = depolarize(s.rho, config.noise);
    }
    return s;
}

void require_pairs(const DensityMatrix &rho) {
    if (rho.qubit_count() < 2) {
        throw std::invalid_argument("steering needs a state of at least two qubits");
    }
}

std::string steering_csv(const SteeringMatrix &m, const ViolationRule &rule) {
    std::ostringstream out;
    out << "steerer,steered,value,uncertainty,threshold,violated,notation\n";
    char buf[64];
    for (const auto &v : m.values()) {
        out << v.steerer.name() << ',' << v.steered.name() << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", v.value);
        out << buf << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", v.uncertainty);
        out << buf << ',';
        std::snprintf(buf, sizeof(buf), "%.17g", v.threshold);
        out << buf << ',' << (v.violated(rule) ? "true" : "false") << ','
            << format_with_uncertainty(v.value, v.uncertainty) << '\n';
    }
    return out.str();
}

void check_format(const RunConfig &config) {
    if (config.format != "json" && config.format != "csv") {
        throw std::invalid_argument("unknown format '" + config.format + "'");
    }
}

std::uint64_t shot_count(const RunConfig &config) {
    if (!(config.shots >= 0.0) || config.shots != std::floor(config.shots) || config.shots > 1e15) {
        throw std::invalid_argument("--shots must be a nonnegative integer");
    }
    return static_cast<std::uint64_t>(config.shots);
}

SamplingMode sampling_mode(const RunConfig &config, std::uint64_t shots) {
    if (shots == 0) {
        return SamplingMode::exact;
    }
    SamplingMode mode = parse_mode(config.mode);
    if (mode == SamplingMode::exact) {
        throw std::invalid_argument("exact mode is selected with --shots 0");
    }
    return mode;
}

CountsRecord simulate_all(const RunConfig &config, const DensityMatrix &rho) {
    const std::uint64_t shots = shot_count(config);
    const SamplingMode mode = sampling_mode(config, shots);
    if (config.resamples < 0) {
        throw std::invalid_argument("--resamples must be nonnegative");
    }
    auto settings = all_settings(rho.qubit_count());
    CountsRecord rec = simulate_counts(rho, settings, shots, config.seed, mode, config.workers);
    if (mode != SamplingMode::exact) {
        for (const auto &[key, table] : rec.counts) {
            if (std::accumulate(table.begin(), table.end(), 0.0) == 0.0) {
                throw InsufficientCounts("setting '" + key + "' recorded no counts; raise --shots");
            }
        }
    }
    if (!config.counts_out.empty()) {
        if (ends_with(config.counts_out, ".csv")) {
            std::ostringstream csv;
            write_counts_csv(csv, rec);
            write_file(config.counts_out, csv.str());
        } else {
            write_file(config.counts_out, dump(to_json(rec)));
        }
    }
    return rec;
}

json run_header(const RunConfig &config, const DensityMatrix &rho) {
    return json{
        {"command", config.command},
        {"state", config.state},
        {"noise", config.noise},
        {"qubit_count", rho.qubit_count()},
    };
}

int cmd_analyze(const RunConfig &config, std::ostream &out) {
    check_format(config);
    ResolvedState s = prepared_state(config);
    require_pairs(s.rho);
    ViolationRule rule{config.epsilon, config.sigma_k};
    SteeringMatrix m = steering_matrix(s.rho);
    if (config.format == "csv") {
        emit(config, steering_csv(m, rule), out);
        return kExitOk;
    }
    json report = run_header(config, s.rho);
    report["epsilon"] = config.epsilon;
    report["steering"] = to_json(m, rule);
    report["configuration"] = to_json(classify_configuration(m, rule));
    if (s.rho.qubit_count() == 3) {
        report["entanglement"] = entanglement_report(witness_value(s.rho), genuine_by_shareability(m, rule));
    } else {
        report["entanglement"] = nullptr;
    }
    emit(config, dump(report), out);
    return kExitOk;
}

int cmd_sweep(const RunConfig &config, std::ostream &out) {
    check_format(config);
    if (config.resolution < 2) {
        throw std::invalid_argument("--resolution must be at least 2");
    }
    SweepGrid grid;
    grid.resolution = config.resolution;
    std::vector<SweepCell> cells = sweep_region_map(grid, config.workers);
    if (config.format == "csv") {
        std::ostringstream csv;
        write_sweep_csv(csv, cells);
        emit(config, csv.str(), out);
        return kExitOk;
    }
    json rows = json::array();
    for (const auto &c : cells) {
        json row{{"alpha", c.alpha}, {"beta", c.beta}};
        if (c.valid) {
            row["gamma"] = c.gamma;
            json values = json::object();
            for (std::size_t k = 0; k < kSweepPairOrder.size(); ++k) {
                auto [i, j] = kSweepPairOrder[k];
                values[std::string("P_") + PartyLabel{i}.name() + PartyLabel{j}.name()] = c.values[k];
            }
            row["values"] = std::move(values);
            row["category"] = std::string(category_name(c.category));
        } else {
            row["gamma"] = nullptr;
            row["values"] = nullptr;
            row["category"] = "invalid";
        }
        rows.push_back(std::move(row));
    }
    emit(config, dump(json{{"resolution", config.resolution}, {"cells", std::move(rows)}}), out);
    return kExitOk;
}

int cmd_simulate(const RunConfig &config, std::ostream &out) {
    check_format(config);
    ResolvedState s = prepared_state(config);
    require_pairs(s.rho);
    CountsRecord rec = simulate_all(config, s.rho);
    SteeringMatrix m = estimate_steering_matrix(rec, config.resamples, config.seed, config.workers);
    const double noise_margin = sampling_epsilon(rec);
    ViolationRule rule{config.epsilon + noise_margin, config.sigma_k};
    if (config.format == "csv") {
        emit(config, steering_csv(m, rule), out);
        return kExitOk;
    }
    json report = run_header(config, s.rho);
    report["shots"] = rec.shots_per_setting;
    report["seed"] = config.seed;
    report["mode"] = std::string(mode_name(rec.mode));
    report["resamples"] = rec.mode == SamplingMode::exact ? 0 : config.resamples;
    report["sigma_k"] = config.sigma_k;
    report["epsilon"] = config.epsilon;
    report["sampling_epsilon"] = noise_margin;
    report["steering"] = to_json(m, rule);
    report["configuration"] = to_json(classify_configuration(m, rule));
    if (s.rho.qubit_count() == 3) {
        // The witness is evaluated on the state reconstructed from the same counts.
        WitnessReport witness = witness_value(tomography_reconstruct(rec));
        report["entanglement"] = entanglement_report(witness, genuine_by_shareability(m, rule));
    } else {
        report["entanglement"] = nullptr;
    }
    emit(config, dump(report), out);
    return kExitOk;
}

int cmd_tomo(const RunConfig &config, std::ostream &out) {
    if (config.format != "json") {
        throw std::invalid_argument("tomo writes the JSON interchange format only");
    }
    ResolvedState ideal = resolve_state(config.state);
    ResolvedState s = prepared_state(config);
    CountsRecord rec = simulate_all(config, s.rho);
    DensityMatrix recon = tomography_reconstruct(rec);
    const double f = fidelity(recon, ideal.rho);
    json doc = to_json(recon);
    doc["report"] = json{
        {"command", config.command},
        {"state", config.state},
        {"noise", config.noise},
        {"shots", rec.shots_per_setting},
        {"seed", config.seed},
        {"mode", std::string(mode_name(rec.mode))},
        {"fidelity", f},
    };
    emit(config, dump(doc), out);
    return kExitOk;
}

}  // namespace

ResolvedState resolve_state(const std::string &spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument("state '" + spec + "' must look like kind:arguments");
    }
    const std::string kind = spec.substr(0, colon);
    const std::string args = spec.substr(colon + 1);
    if (kind == "w") {
        auto v = parse_numbers(args, 3, spec);
        check_typed_norm(v[0] * v[0] + v[1] * v[1] + v[2] * v[2], spec);
        Ket k = w_like_state(CoefficientTriple::normalized(v[0], v[1], v[2]));
        return {DensityMatrix(k), k};
    }
    if (kind == "wn") {
        double n = parse_number(args);
        if (n != std::floor(n) || n < 2 || n > kMaxQubits) {
            throw std::invalid_argument("'" + args + "' in '" + spec + "' must be an integer from 2 to " + std::to_string(kMaxQubits));
        }
        Ket k = w_n_state(static_cast<int>(n));
        return {DensityMatrix(k), k};
    }
    if (kind == "ghz") {
        auto v = parse_numbers(args, 2, spec);
        const double norm2 = v[0] * v[0] + v[1] * v[1];
        check_typed_norm(norm2, spec);
        const double norm = std::sqrt(norm2);
        Ket k = ghz_like_state(v[0] / norm, v[1] / norm);
        return {DensityMatrix(k), k};
    }
    if (kind == "prep") {
        auto v = parse_numbers(args, 2, spec);
        Ket k = pipeline_state(PrepParams{v[0], v[1]});
        return {DensityMatrix(k), k};
    }
    if (kind == "file") {
        if (args.empty()) {
            throw std::invalid_argument("state '" + spec + "' is missing a path");
        }
        std::string text = read_file(args);
        json j = json::parse(text, nullptr, false);
        if (j.is_discarded()) {
            throw std::invalid_argument("'" + args + "' is not valid JSON");
        }
        LoadedState loaded = state_from_json(j);
        return {std::move(loaded.rho), std::move(loaded.pure)};
    }
    throw std::invalid_argument("unknown state kind '" + kind + "' in '" + spec + "'");
}

int execute(const RunConfig &config, std::ostream &out, std::ostream &err) {
    try {
        if (config.command == "analyze") {
            return cmd_analyze(config, out);
        }
        if (config.command == "sweep") {
            return cmd_sweep(config, out);
        }
        if (config.command == "simulate") {
            return cmd_simulate(config, out);
        }
        if (config.command == "tomo") {
            return cmd_tomo(config, out);
        }
        err << "error: unknown command '" << config.command << "'\n";
        return kExitUsage;
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const InsufficientCounts &e) {
        err << "error: " << e.what() << '\n';
        return kExitStatistics;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    RunConfig config;
    CLI::App app{"Steering shareability analysis of three-qubit states", "steershare"};
    app.require_subcommand(1, 1);

    auto add_state = [&](CLI::App *sub) {
        sub->add_option("--state", config.state, "w:a,b,g | wn:N | ghz:mu,nu | prep:t1,t2 | file:path")->required();
        sub->add_option("--noise", config.noise, "Depolarizing strength p in [0, 1]");
    };
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--out", config.out, "Output path, '-' for stdout");
        sub->add_option("--format", config.format, "json or csv");
        sub->add_option("--workers", config.workers, "Worker threads, 0 for all cores");
    };
    auto add_sampling = [&](CLI::App *sub) {
        sub->add_option("--seed", config.seed, "Random seed");
        sub->add_option("--shots", config.shots, "Shots per setting, 0 for exact probabilities");
        sub->add_option("--mode", config.mode, "multinomial or poissonized");
        sub->add_option("--counts-out", config.counts_out, "Also write the raw counts (.json or .csv)");
    };

    CLI::App *analyze = app.add_subcommand("analyze", "Steering matrix, category, witness and SR verdict of a state");
    add_state(analyze);
    add_common(analyze);
    analyze->add_option("--epsilon", config.epsilon, "Strictness margin below the bound");
    analyze->add_option("--sigma-k", config.sigma_k, "Uncertainty multiplier in the violation rule");

    CLI::App *sweep = app.add_subcommand("sweep", "Region map over the W-like (alpha, beta) plane");
    add_common(sweep);
    sweep->add_option("--resolution", config.resolution, "Grid points per axis");

    CLI::App *simulate = app.add_subcommand("simulate", "Finite-shot estimates of all steering parameters");
    add_state(simulate);
    add_common(simulate);
    add_sampling(simulate);
    simulate->add_option("--resamples", config.resamples, "Poisson resamples for the error bars");
    simulate->add_option("--epsilon", config.epsilon, "Extra strictness margin below the bound");
    simulate->add_option("--sigma-k", config.sigma_k, "Uncertainty multiplier in the violation rule");

    CLI::App *tomo = app.add_subcommand("tomo", "Simulated tomography and fidelity to the ideal state");
    add_state(tomo);
    add_common(tomo);
    add_sampling(tomo);

    std::vector<std::string> storage{"steershare"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto &s : storage) {
        argv.push_back(s.data());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    config.command = app.get_subcommands().front()->get_name();
    if (config.command == "sweep" && sweep->count("--format") == 0) {
        config.format = "csv";
    }
    return execute(config, out, err);
}

}  // namespace steershare::cli
