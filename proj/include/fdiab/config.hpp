// SPDX-License-Identifier: Apache-2.0
//
// fdiab - link-level simulator for full-duplex mmWave integrated access and backhaul
// Copyright (C) 2026 The fdiab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef FDIAB_CONFIG_HPP
#define FDIAB_CONFIG_HPP

#include "fdiab/hybrid_transceiver.hpp"
#include "fdiab/rfil.hpp"
#include "fdiab/scenario.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace fdiab
{
    inline constexpr int config_schema_version = 1;

    enum class ExperimentId
    {
        e1, // RFIL comparison across structures and phase shifter kinds
        e2, // Channel estimation error sweep
        e3  // Digital SIC ability versus receive RF chains per subarray
    };

    std::string to_string(ExperimentId id);
    ExperimentId experiment_from_string(const std::string &s); // Throws ConfigError
    std::string to_string(Structure s);
    Structure structure_from_string(const std::string &s); // Throws ConfigError

    struct ExperimentSpec
    {
        bool enabled = true;
        std::vector<double> snr_db;
        std::vector<double> sigma_e;             // e2 only
        std::vector<Structure> structures;       // e1, e2
        std::vector<PsKind> ps_kinds;            // e1, e2
        std::vector<int> rx_rf_per_subarray;     // e3 only
    };

    struct ExperimentConfig
    {
        int schema_version = config_schema_version;
        SystemConfig system;
        int trials = 200;
        std::uint64_t master_seed = 1;
        int threads = 1;
        ExperimentSpec e1, e2, e3;

        const ExperimentSpec &spec(ExperimentId id) const;
        ExperimentSpec &spec(ExperimentId id);

        // Validates the system and every enabled experiment. Throws ConfigError naming the rule.
        void validate() const;
    };

    ExperimentConfig default_experiment_config();

    // INI-style text: `key = value` lines grouped under [run], [system], [e1], [e2], [e3].
    // Lists are comma separated. Unknown sections or keys are rejected.
    ExperimentConfig parse_config(std::istream &in);
    ExperimentConfig load_config(const std::string &path);

    // Canonical text form; parse_config(format_config(c)) reproduces c.
    std::string format_config(const ExperimentConfig &cfg);
}

#endif
