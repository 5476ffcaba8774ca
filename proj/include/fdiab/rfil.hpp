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

#ifndef FDIAB_RFIL_HPP
#define FDIAB_RFIL_HPP

#include "fdiab/types.hpp"

#include <string>
#include <vector>

namespace fdiab
{
    enum class PsKind
    {
        ideal,
        active,
        passive
    };

    // Static per-component losses of the analog network. An active phase shifter has a
    // negative loss (gain).
    struct RfComponentLosses
    {
        double pd_per_stage_db = 0.6;  // 2-way power divider
        double pc_per_stage_db = 3.6;  // 2-way power combiner
        double ps_active_db = -2.3;
        double ps_passive_db = 8.8;
        PsKind kind = PsKind::passive;

        double pd_db() const { return kind == PsKind::ideal ? 0.0 : pd_per_stage_db; }
        double pc_db() const { return kind == PsKind::ideal ? 0.0 : pc_per_stage_db; }
        double ps_db() const
        {
            switch (kind)
            {
            case PsKind::active:
                return ps_active_db;
            case PsKind::passive:
                return ps_passive_db;
            default:
                return 0.0;
            }
        }

        static RfComponentLosses of(PsKind kind)
        {
            RfComponentLosses l;
            l.kind = kind;
            return l;
        }
    };

    struct RfilEntry
    {
        std::string component; // "PD", "PS" or "PC"
        int stages = 0;        // Cascade stages (1 for the phase shifter)
        double db = 0.0;
    };

    struct RfilBudget
    {
        double total_db = 0.0;
        std::vector<RfilEntry> breakdown;

        double linear_power_loss() const { return std::pow(10.0, total_db / 10.0); }
        double linear_scale() const { return std::pow(10.0, -total_db / 20.0); } // 1/sqrt(L_RF)
    };

    enum class SubarraySide
    {
        tx,      // U dividers (N/U-way) and N phase shifters
        user_rx, // per user: one N/U-way combiner and N/U phase shifters
        iab_rx   // N dividers (N_RF/U-way), N_RF N / U phase shifters, N_RF combiners (N/U-way)
    };

    // ceil(log2(ways)) two-way stages; 0 for a 1-way "divider"
    int cascade_stages(int ways);

    // Loss along one signal path: divider cascade + phase shifter + combiner cascade.
    // tx: N_ant-way divider, N_RF-way combiner. rx: N_RF-way divider, N_ant-way combiner.
    RfilBudget loss_fully_connected(Side side, int n_ant, int n_rf, const RfComponentLosses &losses);

    RfilBudget loss_subarray(SubarraySide side, int n_ant, int n_rf, int num_subarrays,
                             const RfComponentLosses &losses);

    CMat apply_rfil(const CMat &rf_matrix, const RfilBudget &budget);

    std::string to_string(PsKind kind);
    PsKind ps_kind_from_string(const std::string &s); // Throws ConfigError
}

#endif
