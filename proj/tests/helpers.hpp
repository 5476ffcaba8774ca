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

#ifndef FDIAB_TEST_HELPERS_HPP
#define FDIAB_TEST_HELPERS_HPP

#include "fdiab/config.hpp"
#include "fdiab/scenario.hpp"

#include <random>

namespace fdiab::test
{
    // Scaled-down system that keeps every structural ratio of the default one
    inline SystemConfig tiny_system()
    {
        SystemConfig s;
        s.num_subcarriers = 32;
        s.num_taps = 16;
        s.donor_array = {8, 8};
        s.iab_array = {8, 8};
        s.user_array = {2, 8};
        return s;
    }

    inline ExperimentConfig tiny_experiment()
    {
        auto c = default_experiment_config();
        c.system = tiny_system();
        c.trials = 3;
        c.e1.snr_db = {0, 15};
        c.e2.snr_db = {15, 25};
        c.e2.sigma_e = {0, 0.1};
        c.e3.snr_db = {15};
        c.e3.rx_rf_per_subarray = {2, 4};
        return c;
    }

    inline CMat random_cmat(std::mt19937_64 &rng, Eigen::Index rows, Eigen::Index cols)
    {
        std::normal_distribution<double> n(0.0, std::sqrt(0.5));
        CMat m(rows, cols);
        for (Eigen::Index i = 0; i < m.size(); ++i)
            m(i) = cdouble(n(rng), n(rng));
        return m;
    }

    inline CMat random_phases(std::mt19937_64 &rng, Eigen::Index rows, Eigen::Index cols)
    {
        std::uniform_real_distribution<double> u(-pi, pi);
        CMat m(rows, cols);
        for (Eigen::Index i = 0; i < m.size(); ++i)
            m(i) = std::polar(1.0, u(rng));
        return m;
    }

    inline CMat random_unitary(std::mt19937_64 &rng, Eigen::Index n)
    {
        Eigen::HouseholderQR<CMat> qr(random_cmat(rng, n, n));
        return qr.householderQ() * CMat::Identity(n, n);
    }
}

#endif
