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

#ifndef FDIAB_LINK_EVALUATION_HPP
#define FDIAB_LINK_EVALUATION_HPP

#include "fdiab/path_channel.hpp"
#include "fdiab/types.hpp"

#include <string>
#include <vector>

namespace fdiab
{
    // SNR = P_r / (K U sigma_n^2) with P_r = P_t / mean path loss. Channels are normalized with the
    // path loss removed, so every data stream on every subcarrier carries P_r / (K U).
    struct SnrPoint
    {
        double snr_db = 0.0;
        double noise_power = 1.0;    // sigma_n^2 per subcarrier
        double received_power = 0.0; // P_r summed over subcarriers and streams
        int num_subcarriers = 1;
        int num_users = 1;

        static SnrPoint make(double snr_db, int num_subcarriers, int num_users, double noise_power = 1.0);

        double snr_linear() const { return received_power / (num_subcarriers * num_users * noise_power); }
        double per_stream_power() const { return received_power / (num_subcarriers * num_users); }
    };

    enum class Link
    {
        backhaul,
        access
    };

    enum class Duplex
    {
        fd,             // Full duplex, MMSE digital SIC from the estimated RSI channel
        hd,             // Half duplex: no SI, half pre-log
        fd_perfect_sic, // Full duplex with the RSI removed entirely
        fd_no_dsic      // Full duplex, RSI-ignorant SVD combiner
    };

    std::string to_string(Link link);
    std::string to_string(Duplex duplex);
    Link link_from_string(const std::string &s);
    Duplex duplex_from_string(const std::string &s);

    struct SeResult
    {
        Link link = Link::backhaul;
        Duplex duplex = Duplex::fd;
        double se_bps_hz = 0.0;
        std::vector<double> per_subcarrier; // Filled on request
        bool regularized = false;           // Interference covariance needed diagonal loading
    };

    // RF-effective quantities of the backhaul link as seen by the IAB receiver baseband.
    struct BackhaulLink
    {
        MatSeq desired;      // W_RF^H H[k] F_RF with RF insertion loss applied
        MatSeq precoder;     // Power-normalized BB precoder of the backhaul transmitter
        MatSeq rsi_true;     // RF-effective residual SI channel (true)
        MatSeq rsi_estimate; // RF-effective residual SI channel known to the receiver
        MatSeq si_precoder;  // BB precoder of the co-located access transmitter
        CMat noise_shape;    // Noise covariance at the RF chain outputs over sigma_n^2

        int num_subcarriers() const { return static_cast<int>(desired.size()); }
    };

    // (1/K) sum_k log2 det(I + Q_k^{-1} S_k) after the BB combiner chosen by `duplex`.
    SeResult se_backhaul(const BackhaulLink &link, const SnrPoint &snr, Duplex duplex,
                         bool per_subcarrier_trace = false);

    struct AccessLink
    {
        MatSeq effective; // U x N_RF stacked user rows (user combiner and RF insertion loss applied)
        MatSeq precoder;  // N_RF x U zero-forcing precoder
        RVec noise_gain;  // ||w_u||^2 of each user's RF combiner before insertion loss
    };

    struct AccessResult
    {
        std::vector<SeResult> per_user;
        SeResult sum;
    };

    AccessResult se_access(const AccessLink &link, const SnrPoint &snr, Duplex duplex);

    // Ideal fully-digital transceiver on both sides: top-n_s eigenmodes with equal power, no SI.
    double se_full_digital(const PathChannel &channel, const CMat &freq_gains, int n_s, const SnrPoint &snr);

    struct SicAbility
    {
        double improvement_pct = 0.0; // (SE_with - SE_without) / SE_without * 100
        double rate_loss = 0.0;       // SE_ideal - SE_with
    };

    SicAbility digital_sic_ability(double se_with_dsic, double se_without_dsic, double se_ideal);
}

#endif
