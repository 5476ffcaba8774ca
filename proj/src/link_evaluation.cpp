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

#include "fdiab/link_evaluation.hpp"
#include "fdiab/hybrid_transceiver.hpp"

#include <cmath>

namespace fdiab
{
    SnrPoint SnrPoint::make(double snr_db, int num_subcarriers, int num_users, double noise_power)
    {
        if (!(noise_power > 0.0))
            throw DomainError("Noise power must be positive.");
        if (num_subcarriers < 1 || num_users < 1)
            throw ConfigError("SNR point needs positive subcarrier and user counts.");
        SnrPoint s;
        s.snr_db = snr_db;
        s.noise_power = noise_power;
        s.num_subcarriers = num_subcarriers;
        s.num_users = num_users;
        s.received_power = db_to_linear(snr_db) * num_subcarriers * num_users * noise_power;
        return s;
    }

    std::string to_string(Link link) { return link == Link::backhaul ? "backhaul" : "access"; }

    std::string to_string(Duplex duplex)
    {
        switch (duplex)
        {
        case Duplex::fd:
            return "fd";
        case Duplex::hd:
            return "hd";
        case Duplex::fd_perfect_sic:
            return "fd_perfect_sic";
        default:
            return "fd_no_dsic";
        }
    }

    Link link_from_string(const std::string &s)
    {
        if (s == "backhaul")
            return Link::backhaul;
        if (s == "access")
            return Link::access;
        throw ConfigError("Unknown link '" + s + "'.");
    }

    Duplex duplex_from_string(const std::string &s)
    {
        for (auto d : {Duplex::fd, Duplex::hd, Duplex::fd_perfect_sic, Duplex::fd_no_dsic})
            if (to_string(d) == s)
                return d;
        throw ConfigError("Unknown duplex mode '" + s + "'.");
    }

    namespace
    {
        // log2 det(I + Q^{-1} S) for Hermitian S >= 0, Q > 0
        double log2_det_whitened(const CMat &q, const CMat &s, bool &regularized, double loading)
        {
            Eigen::LLT<CMat> llt(q);
            if (llt.info() != Eigen::Success)
            {
                regularized = true;
                llt.compute(q + loading * CMat::Identity(q.rows(), q.cols()));
            }
            const auto l = llt.matrixL();
            CMat m = l.solve(s);
            m = l.solve(m.adjoint()).adjoint(); // L^{-1} S L^{-H}
            CMat a = CMat::Identity(m.rows(), m.cols()) + 0.5 * (m + m.adjoint());
            Eigen::LLT<CMat> la(a);
            double acc = 0.0;
            if (la.info() == Eigen::Success)
            {
                for (Eigen::Index i = 0; i < a.rows(); ++i)
                    acc += 2.0 * std::log2(std::real(la.matrixLLT()(i, i)));
            }
            else
            {
                acc = std::log2(std::max(std::abs(a.determinant()), 1.0));
            }
            return std::max(acc, 0.0);
        }
    }

    SeResult se_backhaul(const BackhaulLink &link, const SnrPoint &snr, Duplex duplex, bool per_subcarrier_trace)
    {
        const int K = link.num_subcarriers();
        if (K == 0 || link.precoder.size() != link.desired.size())
            throw DimensionError("Backhaul link needs one precoder per subcarrier.");
        const bool with_rsi = duplex == Duplex::fd || duplex == Duplex::fd_no_dsic;
        if (with_rsi && (link.rsi_true.size() != link.desired.size() ||
                         link.rsi_estimate.size() != link.desired.size() ||
                         link.si_precoder.size() != link.desired.size()))
            throw DimensionError("Backhaul link is missing the residual SI description.");

        const double p = snr.per_stream_power();
        const double n0 = snr.noise_power;
        const CMat empty;

        SeResult res;
        res.link = Link::backhaul;
        res.duplex = duplex;
        double total = 0.0;
        for (int k = 0; k < K; ++k)
        {
            const CMat &h = link.desired[k];
            const CMat &f = link.precoder[k];
            const int n_s = static_cast<int>(f.cols());

            CMat w;
            if (duplex == Duplex::fd_no_dsic)
            {
                Eigen::JacobiSVD<CMat> svd(h, Eigen::ComputeThinU);
                w = svd.matrixU().leftCols(n_s);
            }
            else if (duplex == Duplex::fd)
                w = mmse_bb_combiner(h, f, p, link.rsi_estimate[k], link.si_precoder[k], p, n0, link.noise_shape);
            else
                w = mmse_bb_combiner(h, f, p, empty, empty, p, n0, link.noise_shape);

            const CMat g = w.adjoint() * h * f;
            const CMat s = p * g * g.adjoint();
            CMat q = n0 * (w.adjoint() * link.noise_shape * w);
            if (with_rsi)
            {
                const CMat gi = w.adjoint() * link.rsi_true[k] * link.si_precoder[k];
                q.noalias() += p * gi * gi.adjoint();
            }
            q = 0.5 * (q + q.adjoint());
            double se_k = log2_det_whitened(q, s, res.regularized, n0 * 1e-6);
            if (duplex == Duplex::hd)
                se_k *= 0.5;
            total += se_k;
            if (per_subcarrier_trace)
                res.per_subcarrier.push_back(se_k);
        }
        res.se_bps_hz = total / K;
        return res;
    }

    AccessResult se_access(const AccessLink &link, const SnrPoint &snr, Duplex duplex)
    {
        const int K = static_cast<int>(link.effective.size());
        if (K == 0 || link.precoder.size() != link.effective.size())
            throw DimensionError("Access link needs one precoder per subcarrier.");
        const int U = static_cast<int>(link.effective.front().rows());
        if (link.noise_gain.size() != U)
            throw DimensionError("Access link needs one noise gain per user.");

        const double p = snr.per_stream_power();
        const double n0 = snr.noise_power;
        const double prelog = duplex == Duplex::hd ? 0.5 : 1.0;

        AccessResult out;
        out.per_user.resize(U);
        for (int u = 0; u < U; ++u)
        {
            out.per_user[u].link = Link::access;
            out.per_user[u].duplex = duplex;
        }
        for (int k = 0; k < K; ++k)
        {
            const CMat g = link.effective[k] * link.precoder[k];
            for (int u = 0; u < U; ++u)
            {
                const double desired = p * std::norm(g(u, u));
                const double mui = p * (g.row(u).squaredNorm() - std::norm(g(u, u)));
                const double sinr = desired / (std::max(mui, 0.0) + n0 * link.noise_gain(u));
                out.per_user[u].se_bps_hz += prelog * std::log2(1.0 + sinr) / K;
            }
        }
        out.sum.link = Link::access;
        out.sum.duplex = duplex;
        for (const auto &r : out.per_user)
            out.sum.se_bps_hz += r.se_bps_hz;
        return out;
    }

    double se_full_digital(const PathChannel &channel, const CMat &freq_gains, int n_s, const SnrPoint &snr)
    {
        if (channel.has_flat())
            throw std::logic_error("Full-digital evaluation expects a pure multipath channel.");
        // H[k] = Qr (Rr diag(beta_k) Rt^H) Qt^H; the singular values live in the small core
        auto thin_r = [](const CMat &a)
        {
            Eigen::HouseholderQR<CMat> qr(a);
            const Eigen::Index r = std::min(a.rows(), a.cols());
            return CMat(qr.matrixQR().topRows(r).triangularView<Eigen::Upper>());
        };
        const CMat rr = thin_r(channel.rx_steering);
        const CMat rt = thin_r(channel.tx_steering);
        if (n_s > std::min(rr.rows(), rt.rows()))
            throw ConfigError("More streams than the full-digital channel rank allows.");

        const double p = snr.per_stream_power();
        double total = 0.0;
        for (Eigen::Index k = 0; k < freq_gains.cols(); ++k)
        {
            const CMat core = rr * freq_gains.col(k).asDiagonal() * rt.adjoint();
            const CMat gram = core * core.adjoint();
            Eigen::SelfAdjointEigenSolver<CMat> es(gram, Eigen::EigenvaluesOnly);
            const RVec &ev = es.eigenvalues();
            for (int i = 0; i < n_s; ++i)
                total += std::log2(1.0 + p * std::max(ev(ev.size() - 1 - i), 0.0) / snr.noise_power);
        }
        return total / freq_gains.cols();
    }

    SicAbility digital_sic_ability(double se_with_dsic, double se_without_dsic, double se_ideal)
    {
        if (!(se_without_dsic > 0.0))
            throw DegenerateInputError("SE without digital SIC must be positive to form an improvement ratio.");
        return {(se_with_dsic - se_without_dsic) / se_without_dsic * 100.0, se_ideal - se_with_dsic};
    }
}
