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

#include "fdiab/path_channel.hpp"

#include <atomic>
#include <cmath>
#include <iostream>
#include <limits>

namespace fdiab
{
    CMat PathChannel::frequency_gains(int num_subcarriers) const
    {
        const int D = num_taps();
        CMat twiddle(D, num_subcarriers);
        for (int d = 0; d < D; ++d)
            for (int k = 0; k < num_subcarriers; ++k)
            {
                // Reduce the exponent modulo K before scaling to keep the phase exact
                const long long kd = (static_cast<long long>(k) * d) % num_subcarriers;
                twiddle(d, k) = std::polar(1.0, -2.0 * pi * static_cast<double>(kd) / num_subcarriers);
            }
        return tap_gains * twiddle;
    }

    CMat PathChannel::tap(int d) const
    {
        CMat h = rx_steering * tap_gains.col(d).asDiagonal() * tx_steering.adjoint();
        if (d == 0 && has_flat())
            h += flat;
        return h;
    }

    WidebandChannel PathChannel::materialize(int num_subcarriers) const
    {
        WidebandChannel ch;
        ch.taps.resize(num_taps());
        for (int d = 0; d < num_taps(); ++d)
            ch.taps[d] = tap(d);
        to_frequency(ch, num_subcarriers);
        return ch;
    }

    MatSeq PathChannel::effective(const CMat &combiner, const CMat &precoder, const CMat &freq_gains) const
    {
        if (combiner.rows() != rows() || precoder.rows() != cols())
            throw DimensionError("Combiner/precoder dimensions do not match the channel.");
        const CMat wa = combiner.adjoint() * rx_steering;
        const CMat af = tx_steering.adjoint() * precoder;
        CMat wlf;
        if (has_flat())
            wlf = combiner.adjoint() * flat * precoder;

        MatSeq out(freq_gains.cols());
        for (Eigen::Index k = 0; k < freq_gains.cols(); ++k)
        {
            out[k] = wa * freq_gains.col(k).asDiagonal() * af;
            if (has_flat())
                out[k] += wlf;
        }
        return out;
    }

    FactoredCovariance PathChannel::covariance(Side side, const CMat &freq_gains) const
    {
        if (has_flat())
            throw std::logic_error("Factored covariance is only available for pure multipath channels.");
        const double inv_k = 1.0 / static_cast<double>(freq_gains.cols());
        if (side == Side::tx)
        {
            const CMat gram = rx_steering.adjoint() * rx_steering;
            const CMat corr = freq_gains.conjugate() * freq_gains.transpose() * inv_k;
            return {tx_steering, gram.cwiseProduct(corr)};
        }
        const CMat gram = tx_steering.adjoint() * tx_steering;
        const CMat corr = freq_gains * freq_gains.adjoint() * inv_k;
        return {rx_steering, gram.cwiseProduct(corr)};
    }

    PathChannel PathChannel::scaled(double amplitude) const
    {
        PathChannel out = *this;
        out.tap_gains *= amplitude;
        if (out.has_flat())
            out.flat *= amplitude;
        return out;
    }

    PathChannel build_path_channel(const ClusterSet &clusters, const ArrayGeometry &tx_geom,
                                   const ArrayGeometry &rx_geom, const ClusterConfig &cfg)
    {
        cfg.validate();
        tx_geom.validate();
        rx_geom.validate();
        int num_paths = 0;
        for (const auto &c : clusters)
            num_paths += static_cast<int>(c.rays.size());
        if (num_paths == 0)
            throw DimensionError("Cluster set contains no rays.");

        const double gamma = std::sqrt(static_cast<double>(tx_geom.size()) * rx_geom.size() /
                                       mean_tap_energy(cfg.num_taps, cfg.rolloff));
        PathChannel ch;
        ch.rx_steering.resize(rx_geom.size(), num_paths);
        ch.tx_steering.resize(tx_geom.size(), num_paths);
        ch.tap_gains.resize(num_paths, cfg.num_taps);
        int p = 0;
        for (const auto &c : clusters)
            for (const auto &r : c.rays)
            {
                ch.rx_steering.col(p) = upa_steering(rx_geom, r.aoa.azimuth, r.aoa.elevation);
                ch.tx_steering.col(p) = upa_steering(tx_geom, r.aod.azimuth, r.aod.elevation);
                const double tau = r.delay / cfg.sampling_time;
                for (int d = 0; d < cfg.num_taps; ++d)
                    ch.tap_gains(p, d) = gamma * r.gain * raised_cosine(d - tau, cfg.rolloff);
                ++p;
            }
        return ch;
    }

    PathChannel build_si_path_channel(const ArrayGeometry &tx_geom, const ArrayGeometry &rx_geom,
                                      const SiChannelConfig &cfg, const ClusterConfig &cluster_cfg,
                                      std::uint64_t seed)
    {
        cfg.validate();
        const double lambda = cfg.wavelength();
        const double separation = (rx_geom.origin - tx_geom.origin).norm();
        static std::atomic<bool> warned{false};
        if (separation >= near_field_radius(tx_geom, lambda) && !warned.exchange(true))
            std::cerr << "warning: SI panel separation " << separation
                      << " m is outside the near-field radius; the near-field LoS model may not apply\n";

        const double kappa = db_to_linear(cfg.rician_factor_db);
        const bool pure_los = std::isinf(kappa);
        const double w_los = pure_los ? 1.0 : std::sqrt(kappa / (1.0 + kappa));
        const double w_nlos = pure_los ? 0.0 : std::sqrt(1.0 / (1.0 + kappa));

        PathChannel ch;
        if (pure_los)
        {
            ch.rx_steering.resize(rx_geom.size(), 0);
            ch.tx_steering.resize(tx_geom.size(), 0);
            ch.tap_gains.resize(0, cluster_cfg.num_taps);
        }
        else
        {
            ClusterConfig nlos_cfg = cluster_cfg;
            nlos_cfg.num_clusters = cfg.nlos_clusters;
            nlos_cfg.rays_per_cluster = cfg.nlos_rays;
            ch = build_path_channel(sample_cluster_geometry(nlos_cfg, seed), tx_geom, rx_geom, nlos_cfg);
            ch.tap_gains *= w_nlos;
        }
        ch.flat = near_field_los(tx_geom, rx_geom, lambda) * w_los;
        return ch;
    }
}
