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

#ifndef STEERSHARE_TOOLS_CLI_H
#define STEERSHARE_TOOLS_CLI_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "steershare/linalg.h"

namespace steershare::cli {

enum ExitCode {
    kExitOk = 0,
    kExitUsage = 2,
    kExitIo = 3,
    kExitStatistics = 4,
};

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::string state;
    std::string out = "-";
    std::string format = "json";
    std::uint64_t seed = 42;
    double shots = 1e5;
    int resamples = 200;
    double epsilon = 0.0;
    int resolution = 200;
    double noise = 0.0;
    double sigma_k = 1.0;
    std::string mode = "multinomial";
    std::string counts_out;
    int workers = 0;
};

struct ResolvedState {
    DensityMatrix rho;
    std::optional<Ket> pure;
};

/// Parses `w:a,b,g`, `wn:N`, `ghz:mu,nu`, `prep:t1,t2` or `file:path`.
/// Throws std::invalid_argument naming the bad token, IoError for unreadable files.
ResolvedState resolve_state(const std::string &spec);

/// Runs a parsed configuration, writing reports to `out` when the output path is "-".
int execute(const RunConfig &config, std::ostream &out, std::ostream &err);

/// Full command line entry point. `args` excludes the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace steershare::cli

#endif
