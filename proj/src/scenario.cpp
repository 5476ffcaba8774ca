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

#include "fdiab/scenario.hpp"
#include "fdiab/seed.hpp"

#include <cmath>

namespace fdiab
{
    ClusterConfig SystemConfig::cluster_config() const
    {
        ClusterConfig c;
        c.num_clusters = num_clusters;
        c.rays_per_cluster = rays_per_cluster;
        c.angle_spread = deg_to_rad(angle_spread_deg);
        c.sampling_time = 1.0 / (num_subcarriers * subcarrier_spacing_hz);
        c.num_taps = num_taps;
        c.rolloff = rolloff;
        return c;
    }

    ArrayGeometry SystemConfig::iab_rx_array() const
    {
        return displaced_panel(iab_array, panel_separation_wavelengths, wavelength());
    }

    void SystemConfig::validate() const
    {
        auto fail = [](const std::string &rule) { throw ConfigError(rule); };
        donor_array.validate();
        iab_array.validate();
        user_array.validate();
        cluster_config().validate();
        si.validate();
        if (num_subcarriers < 1)
            fail("subcarriers: K must be positive");
        if (num_taps > num_subcarriers)
            fail("taps: D must not exceed K (cyclic prefix covers the delay spread)");
        if (num_users < 1)
            fail("users: U must be positive");
        if (donor_array.size() % num_users != 0 || iab_array.size() % num_users != 0)
            fail("subarrays: U must divide the donor and IAB array sizes");
        if (tx_rf_chains < backhaul_streams())
            fail("tx_rf_chains: transmitters need at least one RF chain per stream");
        if (tx_rf_chains % num_users != 0)
            fail("tx_rf_chains: must be a multiple of U so every subarray has the same RF chains");
        if (tx_rf_chains / num_users > donor_array.size() / num_users)
            fail("tx_rf_chains: more RF chains per subarray than antennas");
        if (rx_rf_per_subarray < 1 || rx_rf_per_subarray > iab_array.size() / num_users)
            fail("rx_rf_per_subarray: L must lie in [1, antennas per subarray]");
        if (!rf_chain_rule_satisfied(num_users * rx_rf_per_subarray, backhaul_streams(), num_users))
            fail("rf_chain_rule: IAB receive RF chains must be at least the streams received plus transmitted");
        if (!(carrier_hz > 0.0) || !(subcarrier_spacing_hz > 0.0))
            fail("carrier_hz/subcarrier_spacing_hz: must be positive");
        if (!(noise_power > 0.0))
            fail("noise_power: must be positive");
        if (!(panel_separation_wavelengths > 0.0))
            fail("panel_separation_wavelengths: must be positive");
    }

    Drop generate_drop(const SystemConfig &cfg, std::uint64_t seed)
    {
        const auto cc = cfg.cluster_config();
        SiChannelConfig si = cfg.si;
        si.carrier_hz = cfg.carrier_hz;

        Drop drop;
        drop.backhaul = build_path_channel(sample_cluster_geometry(cc, derive_seed({seed, 1})), cfg.donor_array,
                                           cfg.iab_rx_array(), cc);
        drop.si = build_si_path_channel(cfg.iab_array, cfg.iab_rx_array(), si, cc, derive_seed({seed, 2}));
        for (int u = 0; u < cfg.num_users; ++u)
            drop.users.push_back(build_path_channel(sample_cluster_geometry(cc, derive_seed({seed, 3, std::uint64_t(u)})),
                                                    cfg.iab_array, cfg.user_array, cc));

        const int K = cfg.num_subcarriers;
        drop.backhaul_gains = drop.backhaul.frequency_gains(K);
        drop.si_gains = drop.si.frequency_gains(K);
        for (const auto &u : drop.users)
            drop.user_gains.push_back(u.frequency_gains(K));
        return drop;
    }

    Design design_transceivers(const SystemConfig &cfg, const Drop &drop, Structure structure, int rx_rf_per_subarray)
    {
        if (structure == Structure::full_digital)
            throw ConfigError("The full-digital reference has no hybrid transceiver to design.");
        const int U = cfg.num_users;
        const int tx_per_user = cfg.tx_rf_chains / U;

        Design d;
        d.structure = structure;
        d.rx_rf_per_subarray = rx_rf_per_subarray;
        for (auto *t : {&d.donor_tx, &d.iab_rx, &d.iab_tx})
        {
            t->structure = structure;
            t->num_subarrays = structure == Structure::subarray ? U : 1;
        }

        // Backhaul: genie RF stages from the true channel covariance
        const auto bh_tx = drop.backhaul.covariance(Side::tx, drop.backhaul_gains);
        const auto bh_rx = drop.backhaul.covariance(Side::rx, drop.backhaul_gains);
        if (structure == Structure::fully_connected)
        {
            d.donor_tx.rf = rf_from_covariance(bh_tx, cfg.tx_rf_chains);
            d.iab_rx.rf = rf_from_covariance(bh_rx, U * rx_rf_per_subarray);
        }
        else
        {
            d.donor_tx.rf = rf_subarray_from_covariance(bh_tx, partition_subarrays(cfg.donor_array.size(), U), tx_per_user);
            d.iab_rx.rf = rf_subarray_from_covariance(bh_rx, partition_subarrays(cfg.iab_array.size(), U),
                                                      rx_rf_per_subarray);
        }
        const auto bh_eff = drop.backhaul.effective(d.iab_rx.rf, d.donor_tx.rf, drop.backhaul_gains);
        d.donor_tx.bb = normalize_power(d.donor_tx.rf, bb_svd(bh_eff, cfg.backhaul_streams()).precoder,
                                        cfg.backhaul_streams());

        // Access: each user gets its own analog beam (a subarray in the partially connected case)
        const int n_user = cfg.user_array.size();
        d.user_rf.resize(n_user, U);
        d.iab_tx.rf = CMat::Zero(cfg.iab_array.size(), cfg.tx_rf_chains);
        const auto iab_part = partition_subarrays(cfg.iab_array.size(), U);
        for (int u = 0; u < U; ++u)
        {
            const auto &ch = drop.users[u];
            d.user_rf.col(u) = rf_from_covariance(ch.covariance(Side::rx, drop.user_gains[u]), 1);
            // Transmit beam matched to the channel seen through the user's combiner
            PathChannel combined = ch;
            combined.rx_steering = d.user_rf.col(u).adjoint() * ch.rx_steering;
            const auto tx_cov = combined.covariance(Side::tx, drop.user_gains[u]);
            if (structure == Structure::fully_connected)
                d.iab_tx.rf.middleCols(u * tx_per_user, tx_per_user) = rf_from_covariance(tx_cov, tx_per_user);
            else
            {
                const auto &b = iab_part.blocks[u];
                d.iab_tx.rf.block(b.begin, u * tx_per_user, b.size, tx_per_user) =
                    rf_from_covariance(tx_cov.block(b), tx_per_user);
            }
        }

        MatSeq mu(cfg.num_subcarriers, CMat(U, cfg.tx_rf_chains));
        for (int u = 0; u < U; ++u)
        {
            const auto rows = drop.users[u].effective(d.user_rf.col(u), d.iab_tx.rf, drop.user_gains[u]);
            for (int k = 0; k < cfg.num_subcarriers; ++k)
                mu[k].row(u) = rows[k];
        }
        d.iab_tx.bb = zf_bb_precoder(mu, d.iab_tx.rf);
        return d;
    }

    LinkBudgets rfil_budgets(const SystemConfig &cfg, Structure structure, int rx_rf_per_subarray, PsKind kind)
    {
        const auto losses = RfComponentLosses::of(kind);
        const int U = cfg.num_users;
        LinkBudgets b;
        // Users are single-RF-chain analog receivers in every structure
        b.user_rx = loss_subarray(SubarraySide::user_rx, cfg.user_array.size() * U, U, U, losses);
        if (structure == Structure::fully_connected)
        {
            b.donor_tx = loss_fully_connected(Side::tx, cfg.donor_array.size(), cfg.tx_rf_chains, losses);
            b.iab_tx = loss_fully_connected(Side::tx, cfg.iab_array.size(), cfg.tx_rf_chains, losses);
            b.iab_rx = loss_fully_connected(Side::rx, cfg.iab_array.size(), U * rx_rf_per_subarray, losses);
        }
        else if (structure == Structure::subarray)
        {
            b.donor_tx = loss_subarray(SubarraySide::tx, cfg.donor_array.size(), cfg.tx_rf_chains, U, losses);
            b.iab_tx = loss_subarray(SubarraySide::tx, cfg.iab_array.size(), cfg.tx_rf_chains, U, losses);
            b.iab_rx = loss_subarray(SubarraySide::iab_rx, cfg.iab_array.size(), U * rx_rf_per_subarray, U, losses);
        }
        return b;
    }

    Links build_links(const SystemConfig &cfg, const Drop &drop, const Design &design, PsKind kind)
    {
        Links links;
        links.budgets = rfil_budgets(cfg, design.structure, design.rx_rf_per_subarray, kind);
        const auto &b = links.budgets;

        const CMat donor_rf = apply_rfil(design.donor_tx.rf, b.donor_tx);
        const CMat iab_rx_rf = apply_rfil(design.iab_rx.rf, b.iab_rx);
        const CMat iab_tx_rf = apply_rfil(design.iab_tx.rf, b.iab_tx);
        const CMat user_rf = apply_rfil(design.user_rf, b.user_rx);

        auto &bh = links.backhaul;
        bh.desired = drop.backhaul.effective(iab_rx_rf, donor_rf, drop.backhaul_gains);
        bh.precoder = design.donor_tx.bb;
        const double si_amp = std::pow(10.0, cfg.si_power_db / 20.0);
        bh.rsi_true = apply_residual_sic(drop.si.effective(iab_rx_rf * si_amp, iab_tx_rf, drop.si_gains),
                                         cfg.si.pre_digital_sic_db);
        bh.rsi_estimate = bh.rsi_true;
        bh.si_precoder = design.iab_tx.bb;
        bh.noise_shape = design.iab_rx.rf.adjoint() * design.iab_rx.rf;

        auto &ac = links.access;
        const int U = cfg.num_users;
        ac.effective.assign(cfg.num_subcarriers, CMat(U, cfg.tx_rf_chains));
        ac.noise_gain.resize(U);
        for (int u = 0; u < U; ++u)
        {
            const auto rows = drop.users[u].effective(user_rf.col(u), iab_tx_rf, drop.user_gains[u]);
            for (int k = 0; k < cfg.num_subcarriers; ++k)
                ac.effective[k].row(u) = rows[k];
            ac.noise_gain(u) = design.user_rf.col(u).squaredNorm();
        }
        ac.precoder = design.iab_tx.bb;
        return links;
    }

    BackhaulLink with_channel_estimation_error(const BackhaulLink &link, double sigma_e, std::uint64_t seed)
    {
        BackhaulLink out = link;
        out.rsi_estimate = perturb_effective_channel(link.rsi_true, sigma_e, seed);
        return out;
    }
}
