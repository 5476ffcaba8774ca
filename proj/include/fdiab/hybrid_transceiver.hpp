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

#ifndef FDIAB_HYBRID_TRANSCEIVER_HPP
#define FDIAB_HYBRID_TRANSCEIVER_HPP

#include "fdiab/array_geometry.hpp"
#include "fdiab/path_channel.hpp"
#include "fdiab/types.hpp"

namespace fdiab
{
    enum class Structure
    {
        fully_connected,
        subarray,
        full_digital
    };

    // Analog + per-subcarrier digital stages. Precoders and combiners are both stored in
    // column form (N x N_RF and N_RF x N_s); a combiner is applied as W^H.
    struct HybridTransceiver
    {
        CMat rf;     // Unit-modulus nonzero entries before RF insertion loss
        MatSeq bb;   // One per subcarrier
        Structure structure = Structure::fully_connected;
        int num_subarrays = 1;
        double rfil_scale = 1.0; // 1/sqrt(L_RF)

        CMat scaled_rf() const { return rf * rfil_scale; }
    };

    struct EigenPairs
    {
        RVec values;  // Descending
        CMat vectors; // Columns, first significant entry real positive
    };

    // Leading n eigenpairs of a Hermitian matrix
    EigenPairs dominant_eigenpairs(const CMat &hermitian, int n);
    EigenPairs dominant_eigenpairs(const FactoredCovariance &cov, int n);

    // Entry-wise e^{j arg(.)}; exact zeros map to 1
    CMat phase_projection(const CMat &m);

    // (1/K) sum_k H[k]^H H[k] for the transmit side, (1/K) sum_k H[k] H[k]^H for the receive side
    CMat sample_covariance(const MatSeq &freq_channel, Side side);

    // Phase-projected dominant eigenvectors of a covariance, one column per RF chain.
    // Throws ConfigError if n_rf exceeds the dimension, DegenerateInputError for a zero covariance.
    CMat rf_from_covariance(const CMat &covariance, int n_rf);
    CMat rf_from_covariance(const FactoredCovariance &covariance, int n_rf);

    // Block-diagonal RF matrix with n_rf_per_subarray columns per block, each block designed from
    // the covariance sub-block of its elements.
    CMat rf_subarray_from_covariance(const CMat &covariance, const SubarrayPartition &partition,
                                     int n_rf_per_subarray);
    CMat rf_subarray_from_covariance(const FactoredCovariance &covariance, const SubarrayPartition &partition,
                                     int n_rf_per_subarray);

    CMat rf_stage_fully_connected(const MatSeq &freq_channel, Side side, int n_rf);
    CMat rf_stage_subarray(const MatSeq &freq_channel, const SubarrayPartition &partition, Side side,
                           int n_rf_per_subarray);

    struct BbPair
    {
        MatSeq precoder; // Top-N_s right singular vectors per subcarrier
        MatSeq combiner; // Top-N_s left singular vectors per subcarrier
        std::vector<RVec> singular_values;
    };

    // Throws ConfigError if n_s exceeds min(rows, cols) of the effective channel.
    BbPair bb_svd(const MatSeq &effective_channel, int n_s);

    // Zero-forcing precoder H^H (H H^H)^{-1} for stacked per-user effective rows (U x N_RF).
    // Columns are rescaled so that ||rf * f_u|| = 1 (equal power per stream).
    // Throws NearSingularError when the condition number exceeds max_condition.
    MatSeq zf_bb_precoder(const MatSeq &multiuser_effective, const CMat &rf_precoder,
                          double max_condition = 1e10);

    // Linear MMSE combiner for x = H_des F s sqrt(p) + H_rsi F_si s_si sqrt(p_si) + n,
    // E[n n^H] = noise_power * noise_shape. Returns W (N_RF x N_s) = Sigma^{-1} H_des F sqrt(p),
    // where Sigma is built from the estimated RSI channel. Throws DomainError for noise_power <= 0
    // and ConfigError when the receiver has fewer RF chains than transmitted plus received streams.
    CMat mmse_bb_combiner(const CMat &h_des, const CMat &f_des, double p_des, const CMat &h_rsi_estimate,
                          const CMat &f_si, double p_si, double noise_power, const CMat &noise_shape);

    // Rescales every bb[k] so that ||rf * bb[k]||_F^2 = n_s. Throws DegenerateInputError for a
    // zero product.
    MatSeq normalize_power(const CMat &rf_precoder, const MatSeq &bb_precoder, int n_s);

    // Receive RF chains must cover the streams received plus the streams transmitted.
    bool rf_chain_rule_satisfied(int rx_rf_chains, int streams_received, int streams_transmitted);
}

#endif
