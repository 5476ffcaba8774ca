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

#include "fdiab/channel_model.hpp"
#include "fdiab/path_channel.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <map>
#include <mutex>
#include <random>

namespace fdiab
{
    void ClusterConfig::validate() const
    {
        if (num_clusters < 1 || rays_per_cluster < 1)
            throw ConfigError("Cluster and ray counts must be positive.");
        if (num_taps < 1)
            throw ConfigError("Number of delay taps D must be positive.");
        if (!(sampling_time > 0.0))
            throw ConfigError("Sampling time T_s must be positive.");
        if (!(rolloff >= 0.0 && rolloff <= 1.0))
            throw ConfigError("Raised-cosine roll-off must lie in [0, 1].");
        if (!(angle_spread >= 0.0))
            throw ConfigError("Angle spread must be non-negative.");
    }

    void SiChannelConfig::validate() const
    {
        if (!(pre_digital_sic_db >= 0.0))
            throw ConfigError("Pre-digital SIC must be non-negative.");
        if (nlos_clusters < 1 || nlos_rays < 1)
            throw ConfigError("SI NLoS cluster and ray counts must be positive.");
        if (!(carrier_hz > 0.0))
            throw ConfigError("Carrier frequency must be positive.");
    }

    namespace
    {
        double wrap_azimuth(double az)
        {
            az = std::remainder(az, 2.0 * pi);
            return std::clamp(az, -pi, pi);
        }

        double clip_elevation(double el) { return std::clamp(el, -pi / 2.0, pi / 2.0); }

        double laplacian(std::mt19937_64 &rng, double scale)
        {
            std::uniform_real_distribution<double> u(-0.5, 0.5);
            const double x = u(rng);
            const double s = x < 0.0 ? -1.0 : 1.0;
            return -scale * s * std::log1p(-2.0 * std::abs(x));
        }

        double sinc(double x)
        {
            if (std::abs(x) < 1e-12)
                return 1.0;
            return std::sin(pi * x) / (pi * x);
        }
    }

    ClusterSet sample_cluster_geometry(const ClusterConfig &cfg, std::uint64_t seed)
    {
        cfg.validate();
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> az_dist(-pi, pi);
        std::uniform_real_distribution<double> el_dist(-pi / 2.0, pi / 2.0);
        std::uniform_real_distribution<double> delay_dist(0.0, cfg.num_taps * cfg.sampling_time);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * pi);

        // Rayleigh scale sigma with E|g|^2 = 2 sigma^2 = 1 / (total paths)
        const double sigma2 = 0.5 / cfg.num_paths();

        ClusterSet clusters(cfg.num_clusters);
        for (auto &c : clusters)
        {
            c.aoa_center = {az_dist(rng), el_dist(rng)};
            c.aod_center = {az_dist(rng), el_dist(rng)};
            c.rays.resize(cfg.rays_per_cluster);
            for (auto &r : c.rays)
            {
                r.aoa.azimuth = wrap_azimuth(c.aoa_center.azimuth + laplacian(rng, cfg.angle_spread));
                r.aoa.elevation = clip_elevation(c.aoa_center.elevation + laplacian(rng, cfg.angle_spread));
                r.aod.azimuth = wrap_azimuth(c.aod_center.azimuth + laplacian(rng, cfg.angle_spread));
                r.aod.elevation = clip_elevation(c.aod_center.elevation + laplacian(rng, cfg.angle_spread));
                r.delay = delay_dist(rng);
                const double mag = std::sqrt(-2.0 * sigma2 * std::log1p(-unit(rng)));
                r.gain = std::polar(mag, phase_dist(rng));
            }
        }
        return clusters;
    }

    double raised_cosine(double x, double rolloff)
    {
        if (rolloff == 0.0)
            return sinc(x);
        const double bx = 2.0 * rolloff * x;
        const double denom = 1.0 - bx * bx;
        if (std::abs(denom) < 1e-10)
            return pi / 4.0 * sinc(1.0 / (2.0 * rolloff));
        return sinc(x) * std::cos(pi * rolloff * x) / denom;
    }

    double mean_tap_energy(int num_taps, double rolloff)
    {
        static std::mutex mtx;
        static std::map<std::pair<int, double>, double> cache;
        {
            std::lock_guard<std::mutex> lock(mtx);
            auto it = cache.find({num_taps, rolloff});
            if (it != cache.end())
                return it->second;
        }

        // Composite Simpson over t in [0, D]
        const int per_unit = 32;
        const int n = num_taps * per_unit;
        const double h = 1.0 / per_unit;
        auto f = [&](double t)
        {
            double s = 0.0;
            for (int d = 0; d < num_taps; ++d)
            {
                const double p = raised_cosine(d - t, rolloff);
                s += p * p;
            }
            return s;
        };
        double acc = f(0.0) + f(num_taps);
        for (int i = 1; i < n; ++i)
            acc += (i % 2 ? 4.0 : 2.0) * f(i * h);
        const double energy = acc * h / 3.0 / num_taps;

        std::lock_guard<std::mutex> lock(mtx);
        cache[{num_taps, rolloff}] = energy;
        return energy;
    }

    MatSeq assemble_delay_taps(const ClusterSet &clusters, const ArrayGeometry &tx_geom,
                               const ArrayGeometry &rx_geom, const ClusterConfig &cfg)
    {
        const auto ch = build_path_channel(clusters, tx_geom, rx_geom, cfg);
        MatSeq taps(ch.num_taps());
        for (int d = 0; d < ch.num_taps(); ++d)
            taps[d] = ch.tap(d);
        return taps;
    }

    void to_frequency(WidebandChannel &channel, int num_subcarriers)
    {
        const int D = channel.num_taps();
        if (num_subcarriers < 1)
            throw ConfigError("Number of subcarriers K must be positive.");
        if (D > num_subcarriers)
            throw ConfigError("Number of delay taps D (" + std::to_string(D) +
                              ") exceeds the number of subcarriers K (" + std::to_string(num_subcarriers) + ").");
        const int rows = channel.rows(), cols = channel.cols();
        channel.freq.assign(num_subcarriers, CMat::Zero(rows, cols));

        Eigen::FFT<double> fft;
        std::vector<cdouble> in(num_subcarriers), out;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
            {
                std::fill(in.begin(), in.end(), cdouble(0.0));
                for (int d = 0; d < D; ++d)
                    in[d] = channel.taps[d](i, j);
                fft.fwd(out, in);
                for (int k = 0; k < num_subcarriers; ++k)
                    channel.freq[k](i, j) = out[k];
            }
    }

    double free_space_path_loss_db(double distance_m, double carrier_hz)
    {
        return 20.0 * std::log10(4.0 * pi * distance_m * carrier_hz / speed_of_light);
    }

    double ci_path_loss_db(double distance_m, double carrier_hz, double exponent)
    {
        if (!(distance_m >= 1.0))
            throw DomainError("CI path loss requires a distance of at least 1 m.");
        return free_space_path_loss_db(1.0, carrier_hz) + 10.0 * exponent * std::log10(distance_m);
    }

    CMat near_field_los(const ArrayGeometry &tx_geom, const ArrayGeometry &rx_geom, double wavelength_m)
    {
        const auto ptx = element_positions(tx_geom, wavelength_m);
        const auto prx = element_positions(rx_geom, wavelength_m);
        CMat los(prx.cols(), ptx.cols());
        for (Eigen::Index i = 0; i < prx.cols(); ++i)
            for (Eigen::Index j = 0; j < ptx.cols(); ++j)
            {
                const double r = (prx.col(i) - ptx.col(j)).norm();
                if (!(r > 0.0))
                    throw DomainError("Coincident transmit and receive elements.");
                los(i, j) = std::polar(1.0 / r, -2.0 * pi * r / wavelength_m);
            }
        los *= std::sqrt(static_cast<double>(los.size())) / los.norm();
        return los;
    }

    WidebandChannel gen_si_channel(const ArrayGeometry &tx_geom, const ArrayGeometry &rx_geom,
                                   const SiChannelConfig &cfg, const ClusterConfig &cluster_cfg,
                                   std::uint64_t seed, int num_subcarriers)
    {
        return build_si_path_channel(tx_geom, rx_geom, cfg, cluster_cfg, seed).materialize(num_subcarriers);
    }

    MatSeq apply_residual_sic(const MatSeq &si_freq, double sic_db)
    {
        if (!(sic_db >= 0.0))
            throw DomainError("SIC attenuation must be non-negative.");
        const double a = std::pow(10.0, -sic_db / 20.0);
        MatSeq out;
        out.reserve(si_freq.size());
        for (const auto &m : si_freq)
            out.push_back(m * a);
        return out;
    }

    MatSeq perturb_effective_channel(const MatSeq &h_eff, double sigma_e, std::uint64_t seed)
    {
        if (!(sigma_e >= 0.0))
            throw DomainError("CEE standard deviation must be non-negative.");
        MatSeq out = h_eff;
        if (sigma_e == 0.0)
            return out;
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> n01(0.0, 1.0);
        for (auto &m : out)
        {
            if (m.size() == 0)
                continue;
            const double mean_power = m.squaredNorm() / static_cast<double>(m.size());
            const double s = sigma_e * std::sqrt(mean_power / 2.0);
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                for (Eigen::Index i = 0; i < m.rows(); ++i)
                {
                    const double re = n01(rng), im = n01(rng);
                    m(i, j) -= cdouble(s * re, s * im);
                }
        }
        return out;
    }
}
