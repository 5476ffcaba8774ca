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

#include "fdiab/rfil.hpp"

namespace fdiab
{
    namespace
    {
        RfilBudget compose(int divider_ways, int combiner_ways, const RfComponentLosses &l)
        {
            RfilBudget b;
            const int pd = cascade_stages(divider_ways);
            const int pc = cascade_stages(combiner_ways);
            b.breakdown.push_back({"PD", pd, l.pd_db() * pd});
            b.breakdown.push_back({"PS", 1, l.ps_db()});
            b.breakdown.push_back({"PC", pc, l.pc_db() * pc});
            for (const auto &e : b.breakdown)
                b.total_db += e.db;
            return b;
        }
    }

    int cascade_stages(int ways)
    {
        if (ways < 1)
            throw ConfigError("Divider/combiner must have at least one way.");
        int stages = 0;
        while ((1 << stages) < ways)
            ++stages;
        return stages;
    }

    RfilBudget loss_fully_connected(Side side, int n_ant, int n_rf, const RfComponentLosses &losses)
    {
        if (n_rf < 1 || n_ant < n_rf)
            throw ConfigError("Fully-connected RFIL needs 1 <= N_RF <= N_ant.");
        return side == Side::tx ? compose(n_ant, n_rf, losses) : compose(n_rf, n_ant, losses);
    }

    RfilBudget loss_subarray(SubarraySide side, int n_ant, int n_rf, int num_subarrays,
                             const RfComponentLosses &losses)
    {
        if (num_subarrays < 1 || n_rf < 1 || n_ant < 1)
            throw ConfigError("Subarray RFIL needs positive antenna, RF-chain and subarray counts.");
        if (n_ant % num_subarrays != 0)
            throw ConfigError("Number of subarrays must divide the number of antennas.");
        const int per_sub = n_ant / num_subarrays;
        switch (side)
        {
        case SubarraySide::tx:
            return compose(per_sub, 1, losses);
        case SubarraySide::user_rx:
            return compose(1, per_sub, losses);
        case SubarraySide::iab_rx:
        default:
            if (n_rf % num_subarrays != 0)
                throw ConfigError("Number of subarrays must divide the number of receive RF chains.");
            return compose(n_rf / num_subarrays, per_sub, losses);
        }
    }

    CMat apply_rfil(const CMat &rf_matrix, const RfilBudget &budget)
    {
        return rf_matrix * budget.linear_scale();
    }

    std::string to_string(PsKind kind)
    {
        switch (kind)
        {
        case PsKind::ideal:
            return "ideal";
        case PsKind::active:
            return "active";
        default:
            return "passive";
        }
    }

    PsKind ps_kind_from_string(const std::string &s)
    {
        if (s == "ideal")
            return PsKind::ideal;
        if (s == "active")
            return PsKind::active;
        if (s == "passive")
            return PsKind::passive;
        throw ConfigError("Unknown phase-shifter kind '" + s + "' (expected ideal, active or passive).");
    }
}
