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

#include "fdiab/hybrid_transceiver.hpp"

#include <cmath>

namespace fdiab
{
    namespace
    {
        // Rotate each column so that its first significant entry is real and positive
        void fix_column_phases(CMat &v, CMat *companion = nullptr)
        {
            for (Eigen::Index j = 0; j < v.cols(); ++j)
            {
                const double peak = v.col(j).cwiseAbs().maxCoeff();
                if (peak == 0.0)
                    continue;
                for (Eigen::Index i = 0; i < v.rows(); ++i)
                {
                    const double mag = std::abs(v(i, j));
                    if (mag > 1e-8 * peak)
                    {
                        const cdouble rot = std::conj(v(i, j)) / mag;
                        v.col(j) *= rot;
                        if (companion)
                            companion->col(j) *= rot;
                        break;
                    }
                }
            }
        }

        EigenPairs top_pairs(const CMat &hermitian, int n)
        {
            const CMat h = (hermitian + hermitian.adjoint()) * 0.5;
            Eigen::SelfAdjointEigenSolver<CMat> es(h);
            if (es.info() != Eigen::Success)
                throw std::runtime_error("Eigendecomposition failed to converge.");
            const Eigen::Index dim = h.rows();
            EigenPairs out;
            out.values.resize(n);
            out.vectors.resize(dim, n);
            for (int i = 0; i < n; ++i)
            {
                out.values(i) = es.eigenvalues()(dim - 1 - i);
                out.vectors.col(i) = es.eigenvectors().col(dim - 1 - i);
            }
            return out;
        }

        void check_rf_request(int dim, int n_rf)
        {
            if (n_rf < 1)
                throw ConfigError("At least one RF chain is required.");
            if (n_rf > dim)
                throw ConfigError("Number of RF chains (" + std::to_string(n_rf) +
                                  ") exceeds the number of antennas (" + std::to_string(dim) + ").");
        }

        Eigen::Index covariance_dim(const CMat &c) { return c.rows(); }
        Eigen::Index covariance_dim(const FactoredCovariance &c) { return c.dim(); }
        CMat covariance_block(const CMat &c, const IndexRange &b) { return c.block(b.begin, b.begin, b.size, b.size); }
        FactoredCovariance covariance_block(const FactoredCovariance &c, const IndexRange &b) { return c.block(b); }

        template <typename Cov>
        CMat rf_subarray_impl(const Cov &covariance, const SubarrayPartition &partition, int n_rf_per_subarray)
        {
            const int dim = static_cast<int>(covariance_dim(covariance));
            if (partition.num_elements != dim)
                throw ConfigError("Subarray partition covers " + std::to_string(partition.num_elements) +
                                  " elements but the channel has " + std::to_string(dim) + ".");
            check_rf_request(partition.block_size(), n_rf_per_subarray);
            CMat rf = CMat::Zero(dim, partition.num_subarrays() * n_rf_per_subarray);
            for (int u = 0; u < partition.num_subarrays(); ++u)
            {
                const auto &b = partition.blocks[u];
                rf.block(b.begin, u * n_rf_per_subarray, b.size, n_rf_per_subarray) =
                    rf_from_covariance(covariance_block(covariance, b), n_rf_per_subarray);
            }
            return rf;
        }
    }

    EigenPairs dominant_eigenpairs(const CMat &hermitian, int n)
    {
        if (hermitian.rows() != hermitian.cols())
            throw DimensionError("Covariance must be square.");
        check_rf_request(static_cast<int>(hermitian.rows()), n);
        auto out = top_pairs(hermitian, n);
        fix_column_phases(out.vectors);
        return out;
    }

    EigenPairs dominant_eigenpairs(const FactoredCovariance &cov, int n)
    {
        const Eigen::Index dim = cov.basis.rows(), rank = cov.basis.cols();
        check_rf_request(static_cast<int>(dim), n);
        if (rank >= dim || n > rank)
            return dominant_eigenpairs(cov.dense(), n);

        // R = Q (Rr C Rr^H) Q^H with the thin QR basis = Q Rr
        Eigen::HouseholderQR<CMat> qr(cov.basis);
        const CMat q = qr.householderQ() * CMat::Identity(dim, rank);
        const CMat r = qr.matrixQR().topRows(rank).triangularView<Eigen::Upper>();
        auto small = top_pairs(r * cov.core * r.adjoint(), n);
        EigenPairs out{small.values, q * small.vectors};
        fix_column_phases(out.vectors);
        return out;
    }

    CMat phase_projection(const CMat &m)
    {
        return m.unaryExpr([](const cdouble &z)
                           { return z == cdouble(0.0) ? cdouble(1.0) : z / std::abs(z); });
    }

    CMat sample_covariance(const MatSeq &freq_channel, Side side)
    {
        if (freq_channel.empty())
            throw DimensionError("Empty frequency-domain channel.");
        const auto &h0 = freq_channel.front();
        const Eigen::Index dim = side == Side::tx ? h0.cols() : h0.rows();
        CMat r = CMat::Zero(dim, dim);
        for (const auto &h : freq_channel)
        {
            if (h.rows() != h0.rows() || h.cols() != h0.cols())
                throw DimensionError("Inconsistent subcarrier matrix dimensions.");
            if (side == Side::tx)
                r.noalias() += h.adjoint() * h;
            else
                r.noalias() += h * h.adjoint();
        }
        return r / static_cast<double>(freq_channel.size());
    }

    CMat rf_from_covariance(const CMat &covariance, int n_rf)
    {
        check_rf_request(static_cast<int>(covariance.rows()), n_rf);
        if (covariance.cwiseAbs().maxCoeff() == 0.0)
            throw DegenerateInputError("Zero channel covariance; no dominant eigenvector.");
        return phase_projection(dominant_eigenpairs(covariance, n_rf).vectors);
    }

    CMat rf_from_covariance(const FactoredCovariance &covariance, int n_rf)
    {
        check_rf_request(covariance.dim(), n_rf);
        if (covariance.core.size() == 0 || covariance.core.cwiseAbs().maxCoeff() == 0.0)
            throw DegenerateInputError("Zero channel covariance; no dominant eigenvector.");
        return phase_projection(dominant_eigenpairs(covariance, n_rf).vectors);
    }

    CMat rf_subarray_from_covariance(const CMat &covariance, const SubarrayPartition &partition,
                                     int n_rf_per_subarray)
    {
        return rf_subarray_impl(covariance, partition, n_rf_per_subarray);
    }

    CMat rf_subarray_from_covariance(const FactoredCovariance &covariance, const SubarrayPartition &partition,
                                     int n_rf_per_subarray)
    {
        return rf_subarray_impl(covariance, partition, n_rf_per_subarray);
    }

    CMat rf_stage_fully_connected(const MatSeq &freq_channel, Side side, int n_rf)
    {
        return rf_from_covariance(sample_covariance(freq_channel, side), n_rf);
    }

    CMat rf_stage_subarray(const MatSeq &freq_channel, const SubarrayPartition &partition, Side side,
                           int n_rf_per_subarray)
    {
        return rf_subarray_from_covariance(sample_covariance(freq_channel, side), partition, n_rf_per_subarray);
    }

    BbPair bb_svd(const MatSeq &effective_channel, int n_s)
    {
        BbPair out;
        for (const auto &h : effective_channel)
        {
            if (n_s < 1 || n_s > std::min(h.rows(), h.cols()))
                throw ConfigError("Number of streams (" + std::to_string(n_s) +
                                  ") exceeds the effective channel dimensions.");
            Eigen::JacobiSVD<CMat> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
            CMat v = svd.matrixV().leftCols(n_s);
            CMat u = svd.matrixU().leftCols(n_s);
            fix_column_phases(v, &u);
            out.precoder.push_back(std::move(v));
            out.combiner.push_back(std::move(u));
            out.singular_values.push_back(svd.singularValues().head(n_s));
        }
        return out;
    }

    MatSeq zf_bb_precoder(const MatSeq &multiuser_effective, const CMat &rf_precoder, double max_condition)
    {
        MatSeq out;
        out.reserve(multiuser_effective.size());
        for (const auto &h : multiuser_effective)
        {
            if (h.rows() > h.cols())
                throw ConfigError("Zero-forcing needs at least as many RF chains as users.");
            if (rf_precoder.cols() != h.cols())
                throw DimensionError("RF precoder width does not match the effective channel.");
            Eigen::JacobiSVD<CMat> svd(h, Eigen::ComputeThinU | Eigen::ComputeThinV);
            const RVec &s = svd.singularValues();
            const double cond = s(s.size() - 1) > 0.0 ? s(0) / s(s.size() - 1)
                                                      : std::numeric_limits<double>::infinity();
            if (!(cond <= max_condition))
                throw NearSingularError("Rank-deficient multiuser effective channel", cond);

            // Pseudo-inverse V S^-1 U^H
            CMat f = svd.matrixV() * s.cwiseInverse().asDiagonal() * svd.matrixU().adjoint();
            for (Eigen::Index u = 0; u < f.cols(); ++u)
                f.col(u) /= (rf_precoder * f.col(u)).norm();
            out.push_back(std::move(f));
        }
        return out;
    }

    CMat mmse_bb_combiner(const CMat &h_des, const CMat &f_des, double p_des, const CMat &h_rsi_estimate,
                          const CMat &f_si, double p_si, double noise_power, const CMat &noise_shape)
    {
        if (!(noise_power > 0.0))
            throw DomainError("Noise power must be positive.");
        if (!rf_chain_rule_satisfied(static_cast<int>(h_des.rows()), static_cast<int>(f_des.cols()),
                                     static_cast<int>(f_si.cols())))
            throw ConfigError("Receive RF chains (" + std::to_string(h_des.rows()) +
                              ") must be at least the number of received plus transmitted streams.");
        const CMat g = h_des * f_des * std::sqrt(p_des);
        CMat sigma = g * g.adjoint() + noise_power * noise_shape;
        if (h_rsi_estimate.size() != 0 && f_si.size() != 0)
        {
            const CMat gi = h_rsi_estimate * f_si;
            sigma.noalias() += p_si * gi * gi.adjoint();
        }
        return sigma.llt().solve(g);
    }

    MatSeq normalize_power(const CMat &rf_precoder, const MatSeq &bb_precoder, int n_s)
    {
        MatSeq out;
        out.reserve(bb_precoder.size());
        for (const auto &b : bb_precoder)
        {
            const double norm = (rf_precoder * b).norm();
            if (norm == 0.0)
                throw DegenerateInputError("Zero hybrid precoder cannot be power-normalized.");
            out.push_back(b * (std::sqrt(static_cast<double>(n_s)) / norm));
        }
        return out;
    }

    bool rf_chain_rule_satisfied(int rx_rf_chains, int streams_received, int streams_transmitted)
    {
        return rx_rf_chains >= streams_received + streams_transmitted;
    }
}
