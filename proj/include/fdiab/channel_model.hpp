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

#ifndef FDIAB_CHANNEL_MODEL_HPP
#define FDIAB_CHANNEL_MODEL_HPP

#include "fdiab/array_geometry.hpp"
#include "fdiab/types.hpp"

#include <cstdint>
#include <limits>
#include <vector>

namespace fdiab
{
    struct ClusterConfig
    {
        int num_clusters = 5;
        int rays_per_cluster = 10;
        double angle_spread = 10.0 * pi / 180.0; // Laplacian scale of the ray offsets [rad]
        double sampling_time = 1.0 / (512 * 120e3); // T_s [s]
        int num_taps = 128;                          // D
        double rolloff = 0.5;                        // Raised-cosine roll-off

        int num_paths() const { return num_clusters * rays_per_cluster; }
        void validate() const;
    };

    struct Direction
    {
        double azimuth = 0.0;
        double elevation = 0.0;
    };

    struct Ray
    {
        cdouble gain;
        double delay = 0.0; // [s]
        Direction aoa;
        Direction aod;
    };

    struct Cluster
    {
        Direction aoa_center;
        Direction aod_center;
        std::vector<Ray> rays;
    };

    using ClusterSet = std::vector<Cluster>;

    // Saleh-Valenzuela drop: central angles uniform, Laplacian ray offsets, uniform delays on
    // [0, D*T_s], Rayleigh gain magnitudes with total expected power 1 and uniform phases.
    ClusterSet sample_cluster_geometry(const ClusterConfig &cfg, std::uint64_t seed);

    // Raised-cosine pulse evaluated at t / T_s
    double raised_cosine(double t_over_ts, double rolloff);

    // Expected energy sum_d p(d - tau/T_s)^2 over d = 0..D-1 with tau ~ U[0, D T_s].
    // Memoized per (D, rolloff).
    double mean_tap_energy(int num_taps, double rolloff);

    // Delay-domain channel: D matrices of size N_r x N_t, normalized so that
    // E[sum_d ||taps[d]||_F^2] = N_t * N_r. Throws DimensionError on an empty cluster set.
    MatSeq assemble_delay_taps(const ClusterSet &clusters, const ArrayGeometry &tx_geom,
                               const ArrayGeometry &rx_geom, const ClusterConfig &cfg);

    struct WidebandChannel
    {
        MatSeq taps; // Delay domain, D entries
        MatSeq freq; // Subcarrier domain, K entries (empty until to_frequency)
        double path_loss_db = 0.0;

        int rows() const { return taps.empty() ? 0 : static_cast<int>(taps.front().rows()); }
        int cols() const { return taps.empty() ? 0 : static_cast<int>(taps.front().cols()); }
        int num_taps() const { return static_cast<int>(taps.size()); }
        int num_subcarriers() const { return static_cast<int>(freq.size()); }
    };

    // freq[k] = sum_d taps[d] exp(-j 2 pi k d / K). Throws ConfigError if D > K.
    void to_frequency(WidebandChannel &channel, int num_subcarriers);

    // 20 log10(4 pi d f_c / c)
    double free_space_path_loss_db(double distance_m, double carrier_hz);

    // Close-in model anchored at 1 m. Throws DomainError for distance < 1 m.
    double ci_path_loss_db(double distance_m, double carrier_hz, double exponent);

    struct SiChannelConfig
    {
        double rician_factor_db = 20.0; // LoS-to-NLoS power ratio; +inf gives pure LoS
        int nlos_clusters = 2;
        int nlos_rays = 4;
        double pre_digital_sic_db = 80.0;
        double carrier_hz = 28e9;

        double wavelength() const { return speed_of_light / carrier_hz; }
        void validate() const;
    };

    // Near-field LoS matrix between two panels: entry (i, j) = (rho / r_ij) exp(-j 2 pi r_ij / lambda)
    // with rho chosen so that ||L||_F^2 = N_t N_r.
    CMat near_field_los(const ArrayGeometry &tx_geom, const ArrayGeometry &rx_geom, double wavelength_m);

    // Self-interference channel: Rician combination of the near-field LoS (tap 0) and a sparse
    // clustered NLoS part using nlos_clusters x nlos_rays paths.
    WidebandChannel gen_si_channel(const ArrayGeometry &tx_geom, const ArrayGeometry &rx_geom,
                                   const SiChannelConfig &cfg, const ClusterConfig &cluster_cfg,
                                   std::uint64_t seed, int num_subcarriers);

    // Scales every matrix by 10^(-sic_db/20). Throws DomainError for sic_db < 0.
    MatSeq apply_residual_sic(const MatSeq &si_freq, double sic_db);

    // Estimated effective channel H_eff[k] - Delta[k]; Delta[k] is i.i.d. circular Gaussian with
    // per-entry variance sigma_e^2 * mean |H_eff[k]_ij|^2.
    MatSeq perturb_effective_channel(const MatSeq &h_eff, double sigma_e, std::uint64_t seed);
}

#endif
