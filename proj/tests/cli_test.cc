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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "steershare/serialization.h"
#include "steershare/states.h"

using namespace steershare;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
    Result r = run(std::move(args));
    EXPECT_EQ(r.code, 0) << r.err;
    return json::parse(r.out);
}

std::filesystem::path temp_path(const std::string &name) {
    return std::filesystem::temp_directory_path() / ("steershare_cli_test_" + name);
}

// Splits "1.7786(8)" into value and uncertainty.
std::pair<double, double> parse_notation(const std::string &s) {
    auto open = s.find('(');
    std::string value = s.substr(0, open);
    std::string digits = s.substr(open + 1, s.size() - open - 2);
    auto dot = value.find('.');
    int decimals = dot == std::string::npos ? 0 : static_cast<int>(value.size() - dot - 1);
    return {std::stod(value), std::stod(digits) * std::pow(10.0, -decimals)};
}

}  // namespace

TEST(cli_analyze, symmetric_w_state) {
    json r = run_json({"analyze", "--state", "w:0.57735,0.57735,0.57735"});
    ASSERT_EQ(r["steering"].size(), 6u);
    for (const auto &e : r["steering"]) {
        ASSERT_EQ(e["notation"], "1.7778");
        ASSERT_NEAR(e["value"].get<double>(), 16.0 / 9.0, 1e-9);
        ASSERT_TRUE(e["violated"].get<bool>());
    }
    ASSERT_EQ(r["configuration"]["category"], "fully_mutual");
    ASSERT_NEAR(r["entanglement"]["witness"].get<double>(), -1.0 / 3.0, 1e-9);
    ASSERT_EQ(r["entanglement"]["sr_verdict"], "Y");
}

TEST(cli_analyze, monogamous_example) {
    json r = run_json({"analyze", "--state", "w:0.2,0.4,0.8944272"});
    ASSERT_EQ(r["configuration"]["category"], "monogamous");
    ASSERT_EQ(r["configuration"]["arrows"], json({"A->B", "A->C", "B->A"}));
    ASSERT_EQ(r["entanglement"]["sr_verdict"], "N");
    ASSERT_TRUE(r["entanglement"]["witnessing_party"].is_null());
}

TEST(cli_analyze, ghz_is_unsteerable) {
    json r = run_json({"analyze", "--state", "ghz:0.7071068,0.7071068"});
    for (const auto &e : r["steering"]) {
        ASSERT_NEAR(e["value"].get<double>(), 2.0, 1e-9);
        ASSERT_FALSE(e["violated"].get<bool>());
    }
    ASSERT_EQ(r["configuration"]["category"], "unsteerable");
}

TEST(cli_analyze, other_specifiers) {
    json w4 = run_json({"analyze", "--state", "wn:4"});
    ASSERT_EQ(w4["steering"].size(), 12u);
    ASSERT_TRUE(w4["entanglement"].is_null());
    ASSERT_EQ(w4["configuration"]["category"], "unsteerable");

    json prep = run_json({"analyze", "--state", "prep:17.632,22.5"});
    ASSERT_EQ(prep["qubit_count"], 3);

    json noisy = run_json({"analyze", "--state", "wn:3", "--noise", "0.3"});
    ASSERT_TRUE(noisy["entanglement"]["genuine_witness"].get<bool>());

    Result csv = run({"analyze", "--state", "wn:3", "--format", "csv"});
    ASSERT_EQ(csv.code, 0);
    ASSERT_EQ(csv.out.substr(0, csv.out.find('\n')), "steerer,steered,value,uncertainty,threshold,violated,notation");
}

TEST(cli_errors, exit_codes_and_messages) {
    Result r = run({"analyze", "--state", "w:0.2,zz,0.9"});
    ASSERT_EQ(r.code, 2);
    ASSERT_NE(r.err.find("'zz'"), std::string::npos);

    r = run({"analyze", "--state", "qq:1"});
    ASSERT_EQ(r.code, 2);
    ASSERT_NE(r.err.find("'qq'"), std::string::npos);

    ASSERT_EQ(run({"analyze", "--state", "w:1,1,1"}).code, 2);
    ASSERT_EQ(run({"analyze", "--state", "wn:7"}).code, 2);
    ASSERT_EQ(run({"analyze", "--state", "wn:3", "--noise", "2"}).code, 2);
    ASSERT_EQ(run({"analyze", "--state", "wn:3", "--format", "xml"}).code, 2);
    ASSERT_EQ(run({"analyze"}).code, 2);
    ASSERT_EQ(run({}).code, 2);
    ASSERT_EQ(run({"frobnicate"}).code, 2);
    ASSERT_EQ(run({"simulate", "--state", "wn:3", "--shots", "-5"}).code, 2);
    ASSERT_EQ(run({"simulate", "--state", "wn:3", "--shots", "2.5"}).code, 2);
    ASSERT_EQ(run({"sweep", "--resolution", "1"}).code, 2);
    ASSERT_EQ(run({"--help"}).code, 0);

    ASSERT_EQ(run({"analyze", "--state", "file:/nonexistent/state.json"}).code, 3);
    ASSERT_EQ(run({"sweep", "--resolution", "3", "--out", "/nonexistent/dir/out.csv"}).code, 3);

    auto garbage = temp_path("garbage.json");
    std::ofstream(garbage) << "{not json";
    ASSERT_EQ(run({"analyze", "--state", "file:" + garbage.string()}).code, 2);
    std::filesystem::remove(garbage);

    r = run({"simulate", "--state", "wn:3", "--shots", "1", "--mode", "poissonized"});
    ASSERT_EQ(r.code, 4);
}

TEST(cli_sweep, grid_rows_and_labels) {
    Result r = run({"sweep"});
    ASSERT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    ASSERT_EQ(line, "alpha,beta,gamma,P_AB,P_BA,P_AC,P_CA,P_BC,P_CB,category");
    std::size_t rows = 0;
    std::string near_share, near_mono;
    double best_share = 1.0, best_mono = 1.0;
    while (std::getline(in, line)) {
        ++rows;
        double a = std::stod(line.substr(0, line.find(',')));
        double b = std::stod(line.substr(line.find(',') + 1));
        std::string cat = line.substr(line.rfind(',') + 1);
        if (std::hypot(a - 0.5, b - 0.5) < best_share) {
            best_share = std::hypot(a - 0.5, b - 0.5);
            near_share = cat;
        }
        if (std::hypot(a - 0.2, b - 0.4) < best_mono) {
            best_mono = std::hypot(a - 0.2, b - 0.4);
            near_mono = cat;
        }
    }
    ASSERT_EQ(rows, 40000u);
    ASSERT_EQ(near_share, "shareable");
    ASSERT_EQ(near_mono, "monogamous");

    Result again = run({"sweep", "--workers", "3"});
    ASSERT_EQ(again.out, r.out);

    json j = run_json({"sweep", "--resolution", "3", "--format", "json"});
    ASSERT_EQ(j["cells"].size(), 9u);
    ASSERT_EQ(j["cells"][8]["category"], "invalid");
}

TEST(cli_simulate, w_state_at_a_million_shots) {
    Result first = run({"simulate", "--state", "wn:3", "--shots", "1000000"});
    ASSERT_EQ(first.code, 0) << first.err;
    json r = json::parse(first.out);
    for (const auto &e : r["steering"]) {
        auto [value, uncertainty] = parse_notation(e["notation"].get<std::string>());
        ASSERT_NEAR(value, 16.0 / 9.0, 0.01);
        ASSERT_LE(uncertainty, 0.01);
        ASSERT_GT(uncertainty, 0.0);
        ASSERT_TRUE(e["violated"].get<bool>());
    }
    ASSERT_EQ(r["entanglement"]["sr_verdict"], "Y");
    Result second = run({"simulate", "--state", "wn:3", "--shots", "1000000"});
    ASSERT_EQ(first.out, second.out);
    Result other_seed = run({"simulate", "--state", "wn:3", "--shots", "1000000", "--seed", "7"});
    ASSERT_NE(first.out, other_seed.out);
}

TEST(cli_simulate, product_state_reports_no_violations) {
    auto path = temp_path("zero.json");
    std::ofstream(path) << to_json(Ket::basis(3, 0)).dump();
    for (const char *shots : {"1000", "10000", "100000"}) {
        for (const char *seed : {"1", "2", "3", "4", "5"}) {
            json r = run_json({"simulate", "--state", "file:" + path.string(), "--shots", shots, "--seed", seed});
            for (const auto &e : r["steering"]) {
                ASSERT_FALSE(e["violated"].get<bool>()) << shots << " " << seed;
            }
            ASSERT_EQ(r["configuration"]["category"], "unsteerable");
        }
    }
    std::filesystem::remove(path);
}

TEST(cli_simulate, counts_side_file) {
    auto path = temp_path("counts.json");
    auto csv = temp_path("counts.csv");
    ASSERT_EQ(run({"simulate", "--state", "wn:3", "--shots", "500", "--counts-out", path.string()}).code, 0);
    ASSERT_EQ(run({"simulate", "--state", "wn:3", "--shots", "500", "--counts-out", csv.string()}).code, 0);
    std::ifstream in(path);
    CountsRecord rec = counts_from_json(json::parse(in));
    ASSERT_EQ(rec.counts.size(), 27u);
    ASSERT_EQ(rec.seed, 42u);
    std::ifstream csv_in(csv);
    std::string header;
    std::getline(csv_in, header);
    ASSERT_EQ(header, "setting,outcome,count");
    std::filesystem::remove(path);
    std::filesystem::remove(csv);
}

TEST(cli_tomo, fidelity_reports) {
    json pure = run_json({"tomo", "--state", "wn:3", "--shots", "1000000"});
    ASSERT_GE(pure["report"]["fidelity"].get<double>(), 0.999);

    json noisy = run_json({"tomo", "--state", "wn:3", "--shots", "1000000", "--noise", "0.08"});
    ASSERT_NEAR(noisy["report"]["fidelity"].get<double>(), std::sqrt(0.92 + 0.01), 0.01);

    Result exact = run({"tomo", "--state", "wn:3", "--shots", "0"});
    json e = json::parse(exact.out);
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", e["report"]["fidelity"].get<double>());
    ASSERT_STREQ(buf, "1.000000");
    ASSERT_EQ(e["report"]["mode"], "exact");
}

TEST(cli_tomo, output_round_trips_through_file_specifier) {
    auto path = temp_path("recon.json");
    ASSERT_EQ(run({"tomo", "--state", "w:0.2,0.4,0.8944272", "--shots", "20000", "--out", path.string()}).code, 0);
    std::ifstream in(path);
    json doc = json::parse(in);
    DensityMatrix written = density_matrix_from_json(doc);
    cli::ResolvedState loaded = cli::resolve_state("file:" + path.string());
    ASSERT_LE((loaded.rho.entries() - written.entries()).cwiseAbs().maxCoeff(), 1e-15);
    json analyzed = run_json({"analyze", "--state", "file:" + path.string()});
    ASSERT_EQ(analyzed["qubit_count"], 3);
    std::filesystem::remove(path);
}
