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

#ifndef FDIAB_SCENARIO_HPP
#define FDIAB_SCENARIO_HPP

#include "fdiab/array_geometry.hpp"
#include "fdiab/channel_model.hpp"
#include "fdiab/hybrid_transceiver.hpp"
#include "fdiab/link_evaluation.hpp"
#include "fdiab/path_channel.hpp"
#include "fdiab/rfil.hpp"

#include <cstdint>
#include <vector>

namespace fdiab
{
    // Physical layout of the FD-IAB system: a donor transmits the backhaul to the IAB node,
    // which simultaneously serves U single-stream users on the access link.
    struct SystemConfig
    {
        int num_subcarriers = 512; // K
        int num_taps = 128;        // D
        int num_users = 4;         // U, also the number of subarrays and backhaul streams
        ArrayGeometry donor_array{16, 16};
        ArrayGeometry iab_array{16, 16}; // Same panel size for IAB transmit and receive
        ArrayGeometry user_array{4, 16};
        int tx_rf_chains = 4;       // Donor and IAB transmitters
        int rx_rf_per_subarray = 2; // L at the IAB receiver
        double carrier_hz = 28e9;
        double subcarrier_spacing_hz = 120e3;
        int num_clusters = 5;
        int rays_per_cluster = 10;
        double angle_spread_deg = 10.0;
        double rolloff = 0.5;
        SiChannelConfig si;
        double si_power_db = 85.0;                // SI channel power over backhaul channel power before SIC
        double panel_separation_wavelengths = 10; // IAB transmit/receive panel centers
        double noise_power = 1.0;

        int backhaul_streams() const { return num_users; }
        double wavelength() const { return speed_of_light / carrier_hz; }
        ClusterConfig cluster_config() const;
        ArrayGeometry iab_rx_array() const;

        // Throws ConfigError naming the violated rule
        void validate() const;
    };

    // One Monte Carlo realization of every channel in the system
    struct Drop
    {
        PathChannel backhaul; // donor -> IAB receiver
        PathChannel si;       // IAB transmitter -> IAB receiver, before the SI power scaling
        std::vector<PathChannel> users;
        CMat backhaul_gains;
        CMat si_gains;
        std::vector<CMat> user_gains;
    };

    Drop generate_drop(const SystemConfig &cfg, std::uint64_t seed);

    // Unit-modulus RF stages and the scale-free BB stages of every node
    struct Design
    {
        Structure structure = Structure::subarray;
        int rx_rf_per_subarray = 2;
        HybridTransceiver donor_tx; // RF + SVD precoder
        HybridTransceiver iab_rx;   // RF only; the BB combiner depends on SNR and SI knowledge
        HybridTransceiver iab_tx;   // RF + ZF precoder
        CMat user_rf;               // Column u is user u's analog combiner
    };

    // Throws ConfigError for Structure::full_digital, which has no hybrid stages.
    Design design_transceivers(const SystemConfig &cfg, const Drop &drop, Structure structure,
                               int rx_rf_per_subarray);

    struct LinkBudgets
    {
        RfilBudget donor_tx, iab_rx, iab_tx, user_rx;
        double backhaul_db() const { return donor_tx.total_db + iab_rx.total_db; }
        double access_db() const { return iab_tx.total_db + user_rx.total_db; }
    };

    LinkBudgets rfil_budgets(const SystemConfig &cfg, Structure structure, int rx_rf_per_subarray, PsKind kind);

    struct Links
    {
        BackhaulLink backhaul; // rsi_estimate equals rsi_true (perfect CSI)
        AccessLink access;
        LinkBudgets budgets;
    };

    Links build_links(const SystemConfig &cfg, const Drop &drop, const Design &design, PsKind kind);

    // Replaces the receiver's RSI knowledge with a CEE-perturbed estimate of the true channel
    BackhaulLink with_channel_estimation_error(const BackhaulLink &link, double sigma_e, std::uint64_t seed);
}

#endif
