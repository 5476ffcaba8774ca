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

#ifndef FDIAB_TYPES_HPP
#define FDIAB_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdiab
{
    using cdouble = std::complex<double>;
    using CMat = Eigen::MatrixXcd;
    using CVec = Eigen::VectorXcd;
    using RVec = Eigen::VectorXd;
    using Vec3 = Eigen::Vector3d;

    // One matrix per subcarrier (or per delay tap)
    using MatSeq = std::vector<CMat>;

    inline constexpr double pi = std::numbers::pi;
    inline constexpr double speed_of_light = 299792458.0;

    enum class Side
    {
        tx,
        rx
    };

    // Invalid configuration: divisibility, dimension counts, RF-chain rule, D > K.
    class ConfigError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Argument outside the mathematical domain of an operation (angles, distances, powers).
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    class DimensionError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // Zero channel, zero precoder product and similar inputs with no meaningful result.
    class DegenerateInputError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class NearSingularError : public std::runtime_error
    {
    public:
        NearSingularError(const std::string &what, double condition_number)
            : std::runtime_error(what + " (condition number " + std::to_string(condition_number) + ")"),
              condition(condition_number)
        {
        }
        double condition;
    };

    class IoError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
    inline double deg_to_rad(double deg) { return deg * pi / 180.0; }
}

#endif
