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

#include "steershare/serialization.h"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace steershare {

using nlohmann::json;

namespace {

json complex_json(Complex z) {
    return json::array({z.real(), z.imag()});
}

Complex complex_from(const json &j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw std::invalid_argument("complex numbers must be [re, im] pairs");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

const json &field(const json &j, const char *name) {
    if (!j.is_object() || !j.contains(name)) {
        throw std::invalid_argument(std::string("missing field '") + name + "'");
    }
    return j.at(name);
}

void check_kind(const json &j, const char *kind) {
    const json &k = field(j, "kind");
    if (!k.is_string() || k.get<std::string>() != kind) {
        throw std::invalid_argument(std::string("expected kind '") + kind + "'");
    }
}

bool is_nonnegative_integer(const json &j) {
    return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0);
}

void check_qubit_count(const json &j, int actual) {
    if (j.contains("qubit_count")) {
        const json &q = j.at("qubit_count");
        if (!q.is_number_integer() || q.get<int>() != actual) {
            throw std::invalid_argument("qubit_count does not match the data");
        }
    }
}

}  // namespace

json to_json(const Ket &ket) {
    json amps = json::array();
    for (std::size_t k = 0; k < ket.dimension(); ++k) {
        amps.push_back(complex_json(ket[k]));
    }
    return json{{"kind", "ket"}, {"qubit_count", ket.qubit_count()}, {"amplitudes", std::move(amps)}};
}

json to_json(const DensityMatrix &rho) {
    json rows = json::array();
    for (std::size_t r = 0; r < rho.dimension(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < rho.dimension(); ++c) {
            row.push_back(complex_json(rho(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return json{{"kind", "density_matrix"}, {"qubit_count", rho.qubit_count()}, {"entries", std::move(rows)}};
}

Ket ket_from_json(const json &j) {
    check_kind(j, "ket");
    const json &amps = field(j, "amplitudes");
    if (!amps.is_array()) {
        throw std::invalid_argument("amplitudes must be an array");
    }
    CVector v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t k = 0; k < amps.size(); ++k) {
        v(static_cast<Eigen::Index>(k)) = complex_from(amps[k]);
    }
    Ket ket(std::move(v));
    check_qubit_count(j, ket.qubit_count());
    return ket;
}

DensityMatrix density_matrix_from_json(const json &j) {
    check_kind(j, "density_matrix");
    const json &rows = field(j, "entries");
    if (!rows.is_array()) {
        throw std::invalid_argument("entries must be an array of rows");
    }
    const auto dim = static_cast<Eigen::Index>(rows.size());
    CMatrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        const json &row = rows[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
            throw std::invalid_argument("density matrix rows must all have length " + std::to_string(dim));
        }
        for (Eigen::Index c = 0; c < dim; ++c) {
            m(r, c) = complex_from(row[static_cast<std::size_t>(c)]);
        }
    }
    DensityMatrix rho(std::move(m));
    check_qubit_count(j, rho.qubit_count());
    return rho;
}

LoadedState state_from_json(const json &j) {
    const json &kind = field(j, "kind");
    if (kind == "ket") {
        Ket k = ket_from_json(j);
        return LoadedState{DensityMatrix(k), k};
    }
    if (kind == "density_matrix") {
        return LoadedState{density_matrix_from_json(j), std::nullopt};
    }
    throw std::invalid_argument("unknown state kind");
}

json to_json(const SteeringMatrix &m, const ViolationRule &rule) {
    bool with_uncertainty = false;
    for (const auto &v : m.values()) {
        with_uncertainty = with_uncertainty || v.uncertainty > 0.0;
    }
    json out = json::array();
    for (const auto &v : m.values()) {
        json e{
            {"steerer", std::string(1, v.steerer.name())},
            {"steered", std::string(1, v.steered.name())},
            {"value", v.value},
            {"threshold", v.threshold},
            {"violated", v.violated(rule)},
        };
        if (with_uncertainty) {
            e["uncertainty"] = v.uncertainty;
        }
        e["notation"] = format_with_uncertainty(v.value, v.uncertainty);
        out.push_back(std::move(e));
    }
    return out;
}

json to_json(const SteeringConfiguration &c) {
    json arrows = json::array();
    for (const auto &[from, to] : c.arrows) {
        arrows.push_back(std::string(1, from.name()) + "->" + std::string(1, to.name()));
    }
    json in_degree = json::object();
    for (std::size_t p = 0; p < c.in_degree.size(); ++p) {
        in_degree[std::string(1, PartyLabel{static_cast<int>(p)}.name())] = c.in_degree[p];
    }
    return json{{"category", std::string(category_name(c.category))}, {"arrows", std::move(arrows)}, {"in_degree", std::move(in_degree)}};
}

json entanglement_report(const std::optional<WitnessReport> &witness, const ShareabilityVerdict &verdict) {
    json out;
    out["witness"] = witness ? json(witness->value) : json(nullptr);
    out["genuine_witness"] = witness ? json(witness->genuine) : json(nullptr);
    out["sr_verdict"] = verdict.genuine ? "Y" : "N";
    out["witnessing_party"] =
        verdict.witnessing_party ? json(std::string(1, verdict.witnessing_party->name())) : json(nullptr);
    return out;
}

std::string outcome_bits(std::size_t outcome, int party_count) {
    std::string s;
    for (int p = 0; p < party_count; ++p) {
        s.push_back(((outcome >> (party_count - 1 - p)) & 1u) ? '1' : '0');
    }
    return s;
}

json to_json(const CountsRecord &rec) {
    json settings = json::object();
    for (const auto &[key, table] : rec.counts) {
        json outcomes = json::object();
        for (std::size_t o = 0; o < table.size(); ++o) {
            if (rec.mode == SamplingMode::exact) {
                outcomes[outcome_bits(o, rec.party_count)] = table[o];
            } else {
                outcomes[outcome_bits(o, rec.party_count)] = static_cast<std::uint64_t>(table[o]);
            }
        }
        settings[key] = std::move(outcomes);
    }
    return json{
        {"mode", std::string(mode_name(rec.mode))},
        {"party_count", rec.party_count},
        {"seed", rec.seed},
        {"shots", rec.shots_per_setting},
        {"settings", std::move(settings)},
    };
}

CountsRecord counts_from_json(const json &j) {
    CountsRecord rec;
    const json &mode = field(j, "mode");
    if (!mode.is_string()) {
        throw std::invalid_argument("mode must be a string");
    }
    rec.mode = parse_mode(mode.get<std::string>());
    const json &parties = field(j, "party_count");
    const json &seed = field(j, "seed");
    const json &shots = field(j, "shots");
    if (!parties.is_number_integer() || !is_nonnegative_integer(seed) || !is_nonnegative_integer(shots)) {
        throw std::invalid_argument("party_count, seed and shots must be nonnegative integers");
    }
    rec.party_count = parties.get<int>();
    if (rec.party_count < 1 || rec.party_count > kMaxQubits) {
        throw std::invalid_argument("party_count out of range");
    }
    rec.seed = seed.get<std::uint64_t>();
    rec.shots_per_setting = shots.get<std::uint64_t>();
    const json &settings = field(j, "settings");
    if (!settings.is_object()) {
        throw std::invalid_argument("settings must be an object");
    }
    const std::size_t dim = std::size_t{1} << rec.party_count;
    for (const auto &[key, outcomes] : settings.items()) {
        MeasurementSetting s = MeasurementSetting::parse(key);
        if (s.party_count() != rec.party_count) {
            throw std::invalid_argument("setting '" + key + "' does not match party_count");
        }
        if (!outcomes.is_object()) {
            throw std::invalid_argument("outcomes of '" + key + "' must be an object");
        }
        std::vector<double> table(dim, 0.0);
        for (const auto &[bits, count] : outcomes.items()) {
            if (bits.size() != static_cast<std::size_t>(rec.party_count) ||
                bits.find_first_not_of("01") != std::string::npos) {
                throw std::invalid_argument("invalid outcome '" + bits + "' in setting '" + key + "'");
            }
            if (!count.is_number() || count.get<double>() < 0.0) {
                throw std::invalid_argument("counts must be nonnegative numbers");
            }
            if (rec.mode != SamplingMode::exact && !is_nonnegative_integer(count)) {
                throw std::invalid_argument("sampled counts must be integers");
            }
            table[std::stoul(bits, nullptr, 2)] = count.get<double>();
        }
        rec.counts[key] = std::move(table);
    }
    return rec;
}

void write_counts_csv(std::ostream &out, const CountsRecord &rec) {
    out << "setting,outcome,count\n";
    char buf[64];
    for (const auto &[key, table] : rec.counts) {
        for (std::size_t o = 0; o < table.size(); ++o) {
            if (rec.mode == SamplingMode::exact) {
                std::snprintf(buf, sizeof(buf), "%.17g", table[o]);
            } else {
                std::snprintf(buf, sizeof(buf), "%.0f", table[o]);
            }
            out << key << ',' << outcome_bits(o, rec.party_count) << ',' << buf << '\n';
        }
    }
}

std::string format_with_uncertainty(double value, double uncertainty) {
    char buf[64];
    if (!std::isfinite(value)) {
        return "nan";
    }
    // Uncertainties at rounding level print as exact values.
    if (!(uncertainty > 1e-12) || !std::isfinite(uncertainty)) {
        std::snprintf(buf, sizeof(buf), "%.4f", value);
        return buf;
    }
    int exponent = static_cast<int>(std::floor(std::log10(uncertainty)));
    long digit = std::lround(uncertainty / std::pow(10.0, exponent));
    if (digit >= 10) {
        digit = 1;
        ++exponent;
    }
    if (exponent >= 0) {
        double scale = std::pow(10.0, exponent);
        std::snprintf(buf, sizeof(buf), "%.0f(%.0f)", std::round(value / scale) * scale, static_cast<double>(digit) * scale);
        return buf;
    }
    std::snprintf(buf, sizeof(buf), "%.*f(%ld)", -exponent, value, digit);
    return buf;
}

}  // namespace steershare
