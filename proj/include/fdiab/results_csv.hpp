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

#ifndef FDIAB_RESULTS_CSV_HPP
#define FDIAB_RESULTS_CSV_HPP

#include "fdiab/experiment.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace fdiab
{
    // experiment,scheme,link,duplex,snr_db,sigma_e,L,ps_kind,trial,se_bps_hz,rfil_db
    const std::string &csv_header();

    // Rows are written sorted with floats at 6 significant digits. Throws DimensionError for an
    // empty result and IoError for an unwritable path.
    void write_csv(const SweepResult &rows, std::ostream &out);
    void write_csv(const SweepResult &rows, const std::string &path);

    // Throws IoError for a missing file and ConfigError for a malformed header or row.
    SweepResult read_csv(std::istream &in);
    SweepResult read_csv(const std::string &path);

    // figure,scheme,link,duplex,ps_kind,snr_db,sigma_e,L,rfil_db,trials,mean_se,std_se
    void write_figure_csv(const std::vector<FigurePoint> &points, std::ostream &out);

    // Closed-form RF insertion loss of every node for each structure and phase shifter kind:
    // side,structure,ps_kind,total_db
    void write_rfil_budgets(const SystemConfig &cfg, std::ostream &out);
}

#endif
