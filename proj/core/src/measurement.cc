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

#include "steershare/measurement.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "parallel.h"

namespace steershare {

namespace {

constexpr std::uint64_t kSimulationStream = 1;
constexpr std::uint64_t kResampleStream = 0x100;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Maps the axis eigenbasis onto the computational basis (+1 eigenvector -> |0>).
Eigen::Matrix2cd basis_change(PauliAxis axis) {
    const double r = 1.0 / std::numbers::sqrt2;
    const Complex i(0.0, 1.0);
    Eigen::Matrix2cd u;
    switch (axis) {
        case PauliAxis::x:
            u << r, r, r, -r;
            break;
        case PauliAxis::y:
            // H * S^dagger
            u << r, -i * r, r, i * r;
            break;
        case PauliAxis::z:
            u = Eigen::Matrix2cd::Identity();
            break;
    }
    return u;
}

std::size_t bit_of(std::size_t outcome, int party, int party_count) {
    return (outcome >> (party_count - 1 - party)) & 1u;
}

}  // namespace

MeasurementSetting::MeasurementSetting(std::vector<PauliAxis> axes) : axes_(std::move(axes)) {
    if (axes_.empty() || static_cast<int>(axes_.size()) > kMaxQubits) {
        throw std::invalid_argument("a measurement setting needs 1 to " + std::to_string(kMaxQubits) + " axes");
    }
}

MeasurementSetting MeasurementSetting::parse(std::string_view text) {
    std::vector<PauliAxis> axes;
    for (char c : text) {
        axes.push_back(parse_axis(c));
    }
    return MeasurementSetting(std::move(axes));
}

std::string MeasurementSetting::str() const {
    std::string s;
    for (auto a : axes_) {
        s.push_back(axis_name(a));
    }
    return s;
}

std::uint64_t MeasurementSetting::ordinal() const {
    std::uint64_t k = 0;
    for (auto a : axes_) {
        k = 3 * k + static_cast<std::uint64_t>(a);
    }
    return k;
}

std::vector<MeasurementSetting> all_settings(int party_count) {
    if (party_count < 1 || party_count > kMaxQubits) {
        throw std::invalid_argument("party count out of range");
    }
    std::size_t total = 1;
    for (int p = 0; p < party_count; ++p) {
        total *= 3;
    }
    std::vector<MeasurementSetting> out;
    out.reserve(total);
    for (std::size_t k = 0; k < total; ++k) {
        std::vector<PauliAxis> axes(static_cast<std::size_t>(party_count));
        std::size_t rem = k;
        for (int p = party_count - 1; p >= 0; --p) {
            axes[static_cast<std::size_t>(p)] = static_cast<PauliAxis>(rem % 3);
            rem /= 3;
        }
        out.emplace_back(std::move(axes));
    }
    return out;
}

std::string_view mode_name(SamplingMode mode) {
    switch (mode) {
        case SamplingMode::multinomial:
            return "multinomial";
        case SamplingMode::poissonized:
            return "poissonized";
        case SamplingMode::exact:
            return "exact";
    }
    return "unknown";
}

SamplingMode parse_mode(std::string_view name) {
    if (name == "multinomial") {
        return SamplingMode::multinomial;
    }
    if (name == "poissonized") {
        return SamplingMode::poissonized;
    }
    if (name == "exact") {
        return SamplingMode::exact;
    }
    throw std::invalid_argument("unknown sampling mode '" + std::string(name) + "'");
}

const std::vector<double> &CountsRecord::table(const MeasurementSetting &s) const {
    auto it = counts.find(s.str());
    if (it == counts.end()) {
        throw std::invalid_argument("counts record has no setting '" + s.str() + "'");
    }
    return it->second;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
}

std::mt19937_64 task_engine(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return std::mt19937_64(derive_seed(seed, stream, index));
}

std::vector<double> outcome_probabilities(const DensityMatrix &rho, const MeasurementSetting &setting) {
    if (setting.party_count() != rho.qubit_count()) {
        throw std::invalid_argument("setting '" + setting.str() + "' does not match the state's party count");
    }
    CMatrix u = CMatrix::Ones(1, 1);
    for (auto axis : setting.axes()) {
        u = kronecker(u, basis_change(axis));
    }
    CMatrix rotated = u * rho.entries() * u.adjoint();
    std::vector<double> p(rho.dimension());
    for (std::size_t k = 0; k < p.size(); ++k) {
        p[k] = std::max(0.0, rotated(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)).real());
    }
    double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (double &x : p) {
        x /= total;
    }
    return p;
}

CountsRecord simulate_counts(
    const DensityMatrix &rho,
    std::span<const MeasurementSetting> settings,
    std::uint64_t shots,
    std::uint64_t seed,
    SamplingMode mode,
    int workers) {
    if (settings.empty()) {
        throw std::invalid_argument("no measurement settings given");
    }
    if (mode != SamplingMode::exact && shots == 0) {
        throw std::invalid_argument("sampled records need at least one shot per setting");
    }
    for (const auto &s : settings) {
        if (s.party_count() != rho.qubit_count()) {
            throw std::invalid_argument("setting '" + s.str() + "' does not match the state's party count");
        }
    }

    std::vector<std::vector<double>> tables(settings.size());
    detail::parallel_for(settings.size(), workers, [&](std::size_t k) {
        std::vector<double> probs = outcome_probabilities(rho, settings[k]);
        if (mode == SamplingMode::exact) {
            tables[k] = std::move(probs);
            return;
        }
        auto engine = task_engine(seed, kSimulationStream, settings[k].ordinal());
        std::vector<double> counts(probs.size(), 0.0);
        if (mode == SamplingMode::poissonized) {
            for (std::size_t o = 0; o < probs.size(); ++o) {
                double mean = static_cast<double>(shots) * probs[o];
                if (mean > 0.0) {
                    counts[o] = static_cast<double>(std::poisson_distribution<std::uint64_t>(mean)(engine));
                }
            }
        } else {
            // Multinomial as a chain of conditional binomials.
            std::uint64_t remaining = shots;
            double mass = 1.0;
            for (std::size_t o = 0; o + 1 < probs.size() && remaining > 0; ++o) {
                double q = mass > 0.0 ? std::clamp(probs[o] / mass, 0.0, 1.0) : 0.0;
                std::uint64_t drawn = std::binomial_distribution<std::uint64_t>(remaining, q)(engine);
                counts[o] = static_cast<double>(drawn);
                remaining -= drawn;
                mass -= probs[o];
            }
            counts.back() += static_cast<double>(remaining);
        }
        tables[k] = std::move(counts);
    });

    CountsRecord rec;
    rec.party_count = rho.qubit_count();
    rec.shots_per_setting = mode == SamplingMode::exact ? 0 : shots;
    rec.seed = seed;
    rec.mode = mode;
    for (std::size_t k = 0; k < settings.size(); ++k) {
        rec.counts[settings[k].str()] = std::move(tables[k]);
    }
    return rec;
}

namespace {

// Raw count tables feeding one aligned setting of a pair.
struct AxisSources {
    PauliAxis axis;
    std::vector<const std::vector<double> *> tables;
};

struct PairSources {
    int party_count;
    int steerer;
    int steered;
    std::vector<AxisSources> axes;
};

PairSources collect_sources(const CountsRecord &rec, PartyLabel steerer, PartyLabel steered) {
    const int n = rec.party_count;
    if (steerer.index < 0 || steerer.index >= n || steered.index < 0 || steered.index >= n) {
        throw std::invalid_argument("party out of range for counts record");
    }
    if (steerer == steered) {
        throw std::invalid_argument("steerer and steered party must differ");
    }
    PairSources src{n, steerer.index, steered.index, {}};
    for (PauliAxis axis : default_settings()) {
        AxisSources a{axis, {}};
        for (const auto &[key, table] : rec.counts) {
            MeasurementSetting s = MeasurementSetting::parse(key);
            if (s.party_count() != n || table.size() != (std::size_t{1} << n)) {
                throw std::invalid_argument("counts record entry '" + key + "' has the wrong shape");
            }
            if (s.axis(steerer.index) == axis && s.axis(steered.index) == axis) {
                a.tables.push_back(&table);
            }
        }
        if (a.tables.empty()) {
            throw std::invalid_argument(
                std::string("counts record lacks a setting with ") + axis_name(axis) + " on both " + steerer.name() +
                " and " + steered.name());
        }
        src.axes.push_back(std::move(a));
    }
    return src;
}

// Weights indexed by 2 * steerer_bit + steered_bit.
using Marginal = std::array<double, 4>;

void accumulate_marginal(Marginal &m, const std::vector<double> &table, const PairSources &src) {
    for (std::size_t o = 0; o < table.size(); ++o) {
        std::size_t a = bit_of(o, src.steerer, src.party_count);
        std::size_t b = bit_of(o, src.steered, src.party_count);
        m[2 * a + b] += table[o];
    }
}

SettingMoments moments_from_marginal(PauliAxis axis, const Marginal &w) {
    double total = w[0] + w[1] + w[2] + w[3];
    double mean_a = (w[0] + w[1] - w[2] - w[3]) / total;
    double mean_b = (w[0] - w[1] + w[2] - w[3]) / total;
    double cross = (w[0] - w[1] - w[2] + w[3]) / total;
    return complete_moments(axis, mean_a, mean_b, cross);
}

std::vector<Marginal> point_marginals(const CountsRecord &rec, const PairSources &src) {
    std::vector<Marginal> out;
    for (const auto &a : src.axes) {
        Marginal m{};
        for (const auto *t : a.tables) {
            accumulate_marginal(m, *t, src);
        }
        double total = m[0] + m[1] + m[2] + m[3];
        bool sampled = rec.mode != SamplingMode::exact;
        if (!(total > 0.0) || (sampled && total < 2.0)) {
            throw InsufficientCounts(
                std::string("too few counts for the ") + axis_name(a.axis) + " setting of pair " +
                PartyLabel{src.steerer}.name() + PartyLabel{src.steered}.name());
        }
        out.push_back(m);
    }
    return out;
}

PairMoments moments_from_marginals(const PairSources &src, const std::vector<Marginal> &marginals) {
    PairMoments pm;
    for (std::size_t i = 0; i < src.axes.size(); ++i) {
        pm.settings.push_back(moments_from_marginal(src.axes[i].axis, marginals[i]));
    }
    return pm;
}

// Poisson-resampled marginals; an axis whose resampled total is zero keeps
// its original marginal.
std::vector<Marginal> resampled_marginals(
    const PairSources &src, const std::vector<Marginal> &original, std::mt19937_64 &engine) {
    std::vector<Marginal> out;
    for (std::size_t i = 0; i < src.axes.size(); ++i) {
        Marginal m{};
        for (const auto *t : src.axes[i].tables) {
            std::vector<double> drawn(t->size(), 0.0);
            for (std::size_t o = 0; o < t->size(); ++o) {
                double c = (*t)[o];
                if (c > 0.0) {
                    drawn[o] = static_cast<double>(std::poisson_distribution<std::uint64_t>(c)(engine));
                }
            }
            accumulate_marginal(m, drawn, src);
        }
        if (m[0] + m[1] + m[2] + m[3] <= 0.0) {
            m = original[i];
        }
        out.push_back(m);
    }
    return out;
}

std::uint64_t pair_stream(const PairSources &src) {
    return kResampleStream + static_cast<std::uint64_t>(src.steerer * kMaxQubits + src.steered);
}

std::vector<PairMoments> resample_moments(
    const CountsRecord &rec,
    const PairSources &src,
    const std::vector<Marginal> &original,
    int resamples,
    std::uint64_t seed,
    int workers) {
    if (resamples < 0) {
        throw std::invalid_argument("resample count must be nonnegative");
    }
    if (rec.mode == SamplingMode::exact || resamples == 0) {
        return {};
    }
    std::vector<PairMoments> out(static_cast<std::size_t>(resamples));
    detail::parallel_for(out.size(), workers, [&](std::size_t r) {
        auto engine = task_engine(seed, pair_stream(src), r);
        out[r] = moments_from_marginals(src, resampled_marginals(src, original, engine));
    });
    return out;
}

double sample_std(const std::vector<double> &xs) {
    if (xs.size() < 2) {
        return 0.0;
    }
    double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - mean) * (x - mean);
    }
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

MomentsEstimate estimate_moments(
    const CountsRecord &rec, PartyLabel steerer, PartyLabel steered, int resamples, std::uint64_t seed) {
    PairSources src = collect_sources(rec, steerer, steered);
    std::vector<Marginal> marginals = point_marginals(rec, src);
    MomentsEstimate est;
    est.value = moments_from_marginals(src, marginals);
    std::vector<PairMoments> draws = resample_moments(rec, src, marginals, resamples, seed, 1);
    est.resamples = static_cast<int>(draws.size());
    for (std::size_t i = 0; i < est.value.settings.size(); ++i) {
        auto field_std = [&](double SettingMoments::*field) {
            std::vector<double> xs;
            for (const auto &d : draws) {
                xs.push_back(d.settings[i].*field);
            }
            return sample_std(xs);
        };
        SettingMoments u;
        u.axis = est.value.settings[i].axis;
        u.mean_steerer = field_std(&SettingMoments::mean_steerer);
        u.mean_steered = field_std(&SettingMoments::mean_steered);
        u.cross = field_std(&SettingMoments::cross);
        u.variance_steerer = field_std(&SettingMoments::variance_steerer);
        u.variance_steered = field_std(&SettingMoments::variance_steered);
        u.covariance = field_std(&SettingMoments::covariance);
        est.uncertainty.settings.push_back(u);
    }
    return est;
}

EstimateWithError estimate_steering_parameter(
    const CountsRecord &rec, PartyLabel steerer, PartyLabel steered, int resamples, std::uint64_t seed, int workers) {
    PairSources src = collect_sources(rec, steerer, steered);
    std::vector<Marginal> marginals = point_marginals(rec, src);
    EstimateWithError est;
    est.value = steering_parameter_from_moments(moments_from_marginals(src, marginals));
    std::vector<PairMoments> draws = resample_moments(rec, src, marginals, resamples, seed, workers);
    std::vector<double> values;
    values.reserve(draws.size());
    for (const auto &d : draws) {
        values.push_back(steering_parameter_from_moments(d));
    }
    est.uncertainty = sample_std(values);
    est.resamples = static_cast<int>(values.size());
    return est;
}

SteeringMatrix estimate_steering_matrix(const CountsRecord &rec, int resamples, std::uint64_t seed, int workers) {
    const int n = rec.party_count;
    std::vector<SteeringValue> values;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) {
                continue;
            }
            EstimateWithError e = estimate_steering_parameter(rec, PartyLabel{i}, PartyLabel{j}, resamples, seed, workers);
            SteeringValue v;
            v.steerer = PartyLabel{i};
            v.steered = PartyLabel{j};
            v.value = e.value;
            v.uncertainty = e.uncertainty;
            v.threshold = min_variance_bound(3);
            values.push_back(v);
        }
    }
    return SteeringMatrix(n, std::move(values));
}

double sampling_epsilon(const CountsRecord &rec) {
    if (rec.mode == SamplingMode::exact) {
        return 0.0;
    }
    // 99.9% point of chi-squared with two degrees of freedom.
    const double quantile = -2.0 * std::log(1e-3);
    double smallest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < rec.party_count; ++i) {
        for (int j = 0; j < rec.party_count; ++j) {
            if (i == j) {
                continue;
            }
            PairSources src = collect_sources(rec, PartyLabel{i}, PartyLabel{j});
            for (const auto &a : src.axes) {
                double total = 0.0;
                for (const auto *t : a.tables) {
                    total += std::accumulate(t->begin(), t->end(), 0.0);
                }
                smallest = std::min(smallest, total);
            }
        }
    }
    if (!(smallest > 0.0)) {
        throw InsufficientCounts("counts record has an empty aligned setting");
    }
    return static_cast<double>(default_settings().size()) * quantile / smallest;
}

DensityMatrix tomography_reconstruct(const CountsRecord &rec) {
    const int n = rec.party_count;
    const std::vector<MeasurementSetting> settings = all_settings(n);
    const std::size_t dim = std::size_t{1} << n;

    // Per-setting outcome frequencies.
    std::vector<std::vector<double>> freqs;
    for (const auto &s : settings) {
        if (!rec.has(s)) {
            throw std::invalid_argument("tomography needs all " + std::to_string(settings.size()) + " settings; '" + s.str() + "' is missing");
        }
        const auto &t = rec.table(s);
        if (t.size() != dim) {
            throw std::invalid_argument("counts table for '" + s.str() + "' has the wrong size");
        }
        double total = std::accumulate(t.begin(), t.end(), 0.0);
        if (!(total > 0.0)) {
            throw InsufficientCounts("setting '" + s.str() + "' has no counts");
        }
        if (rec.mode == SamplingMode::multinomial && total != static_cast<double>(rec.shots_per_setting)) {
            throw std::invalid_argument("setting '" + s.str() + "' does not hold shots_per_setting counts");
        }
        std::vector<double> f(t.size());
        for (std::size_t o = 0; o < t.size(); ++o) {
            f[o] = t[o] / total;
        }
        freqs.push_back(std::move(f));
    }

    const std::array<Observable, 4> paulis{
        Observable::identity(),
        Observable::pauli(PauliAxis::x),
        Observable::pauli(PauliAxis::y),
        Observable::pauli(PauliAxis::z)};

    std::size_t strings = 1;
    for (int p = 0; p < n; ++p) {
        strings *= 4;
    }
    const auto d = static_cast<Eigen::Index>(dim);
    CMatrix estimate = CMatrix::Zero(d, d);
    for (std::size_t code = 0; code < strings; ++code) {
        // Digits: 0 = I, 1 = X, 2 = Y, 3 = Z; party 0 is the leading digit.
        std::vector<int> digits(static_cast<std::size_t>(n));
        std::size_t rem = code;
        for (int p = n - 1; p >= 0; --p) {
            digits[static_cast<std::size_t>(p)] = static_cast<int>(rem % 4);
            rem /= 4;
        }
        double value = 1.0;
        if (code != 0) {
            double sum = 0.0;
            int matches = 0;
            for (std::size_t k = 0; k < settings.size(); ++k) {
                bool match = true;
                for (int p = 0; p < n && match; ++p) {
                    int dgt = digits[static_cast<std::size_t>(p)];
                    match = dgt == 0 || static_cast<int>(settings[k].axis(p)) == dgt - 1;
                }
                if (!match) {
                    continue;
                }
                double e = 0.0;
                for (std::size_t o = 0; o < dim; ++o) {
                    int parity = 0;
                    for (int p = 0; p < n; ++p) {
                        if (digits[static_cast<std::size_t>(p)] != 0) {
                            parity ^= static_cast<int>(bit_of(o, p, n));
                        }
                    }
                    e += parity ? -freqs[k][o] : freqs[k][o];
                }
                sum += e;
                ++matches;
            }
            value = sum / matches;
        }
        CMatrix op = CMatrix::Ones(1, 1);
        for (int p = 0; p < n; ++p) {
            op = kronecker(op, paulis[static_cast<std::size_t>(digits[static_cast<std::size_t>(p)])].entries());
        }
        estimate += value * op;
    }
    estimate /= static_cast<double>(dim);
    return nearest_physical_state(estimate);
}

}  // namespace steershare
