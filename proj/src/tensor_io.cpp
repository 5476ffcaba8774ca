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

#include "fdiab/tensor_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace fdiab
{
    namespace
    {
        void put_u32(std::ostream &os, std::uint32_t v)
        {
            const std::array<char, 4> b = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                                           static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
            os.write(b.data(), 4);
        }

        std::uint32_t get_u32(std::istream &is)
        {
            std::array<unsigned char, 4> b{};
            if (!is.read(reinterpret_cast<char *>(b.data()), 4))
                throw IoError("Truncated channel file.");
            return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) | (std::uint32_t(b[2]) << 16) |
                   (std::uint32_t(b[3]) << 24);
        }

        void put_f32(std::ostream &os, double x) { put_u32(os, std::bit_cast<std::uint32_t>(static_cast<float>(x))); }

        double get_f32(std::istream &is) { return std::bit_cast<float>(get_u32(is)); }

        void put_matrix(std::ostream &os, const CMat &m)
        {
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                for (Eigen::Index j = 0; j < m.cols(); ++j)
                {
                    put_f32(os, m(i, j).real());
                    put_f32(os, m(i, j).imag());
                }
        }

        CMat get_matrix(std::istream &is, std::uint32_t rows, std::uint32_t cols)
        {
            CMat m(rows, cols);
            for (std::uint32_t i = 0; i < rows; ++i)
                for (std::uint32_t j = 0; j < cols; ++j)
                {
                    const double re = get_f32(is);
                    m(i, j) = cdouble(re, get_f32(is));
                }
            return m;
        }
    }

    void save_channel(const WidebandChannel &channel, const std::string &path)
    {
        std::ofstream os(path, std::ios::binary);
        if (!os)
            throw IoError("Cannot open '" + path + "' for writing.");
        put_u32(os, channel.rows());
        put_u32(os, channel.cols());
        put_u32(os, channel.num_taps());
        put_u32(os, channel.num_subcarriers());
        for (const auto &m : channel.taps)
            put_matrix(os, m);
        for (const auto &m : channel.freq)
            put_matrix(os, m);
        if (!os)
            throw IoError("Failed writing '" + path + "'.");
    }

    WidebandChannel load_channel(const std::string &path)
    {
        std::ifstream is(path, std::ios::binary);
        if (!is)
            throw IoError("Cannot open '" + path + "' for reading.");
        const auto rows = get_u32(is), cols = get_u32(is), taps = get_u32(is), subcarriers = get_u32(is);
        WidebandChannel ch;
        for (std::uint32_t d = 0; d < taps; ++d)
            ch.taps.push_back(get_matrix(is, rows, cols));
        for (std::uint32_t k = 0; k < subcarriers; ++k)
            ch.freq.push_back(get_matrix(is, rows, cols));
        return ch;
    }
}
