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

#ifndef FDIAB_PATH_CHANNEL_HPP
#define FDIAB_PATH_CHANNEL_HPP

#include "fdiab/array_geometry.hpp"
#include "fdiab/channel_model.hpp"
#include "fdiab/types.hpp"

namespace fdiab
{
    // Covariance in factored form R = basis * core * basis^H, with basis N x P and core P x P
    // Hermitian. Large sparse-multipath arrays never need the dense N x N matrix to be
    // eigendecomposed.
    struct FactoredCovariance
    {
        CMat basis;
        CMat core;

        int dim() const { return static_cast<int>(basis.rows()); }
        CMat dense() const { return basis * core * basis.adjoint(); }

        // Principal sub-block R[range, range]
        FactoredCovariance block(const IndexRange &range) const
        {
            return {basis.middleRows(range.begin, range.size), core};
        }
    };

    // Multipath channel kept as a sum of rank-one ray terms
    //   H(delay d) = A_rx * diag(tap_gains(:, d)) * A_tx^H  (+ flat at d = 0)
    // plus an optional dense term on the first tap (the near-field LoS of the SI channel).
    class PathChannel
    {
    public:
        CMat rx_steering; // N_r x P
        CMat tx_steering; // N_t x P
        CMat tap_gains;   // P x D, includes the pulse shape and normalization
        CMat flat;        // N_r x N_t or empty

        int rows() const { return static_cast<int>(rx_steering.rows()); }
        int cols() const { return static_cast<int>(tx_steering.rows()); }
        int num_paths() const { return static_cast<int>(tap_gains.rows()); }
        int num_taps() const { return static_cast<int>(tap_gains.cols()); }
        bool has_flat() const { return flat.size() != 0; }

        // beta(p, k) = sum_d tap_gains(p, d) exp(-j 2 pi k d / K); P x K
        CMat frequency_gains(int num_subcarriers) const;

        CMat tap(int d) const;

        // Dense delay taps and frequency responses. Throws ConfigError if D > K.
        WidebandChannel materialize(int num_subcarriers) const;

        // combiner^H * H[k] * precoder for every subcarrier. combiner is N_r x a, precoder N_t x b.
        MatSeq effective(const CMat &combiner, const CMat &precoder, const CMat &freq_gains) const;

        // Sample covariance (1/K) sum_k H[k]^H H[k] (tx) or H[k] H[k]^H (rx) without the dense term.
        // Throws std::logic_error if the channel has a flat term.
        FactoredCovariance covariance(Side side, const CMat &freq_gains) const;

        PathChannel scaled(double amplitude) const;
    };

    PathChannel build_path_channel(const ClusterSet &clusters, const ArrayGeometry &tx_geom,
                                   const ArrayGeometry &rx_geom, const ClusterConfig &cfg);

    // SI channel in path form; the flat term carries the weighted near-field LoS.
    PathChannel build_si_path_channel(const ArrayGeometry &tx_geom, const ArrayGeometry &rx_geom,
                                      const SiChannelConfig &cfg, const ClusterConfig &cluster_cfg,
                                      std::uint64_t seed);
}

#endif
