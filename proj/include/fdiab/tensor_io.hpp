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

#ifndef FDIAB_TENSOR_IO_HPP
#define FDIAB_TENSOR_IO_HPP

#include "fdiab/channel_model.hpp"

#include <string>

namespace fdiab
{
    // Binary channel fixture:
    //   header   4 x uint32 little-endian: N_r, N_t, D, K
    //   payload  complex64 little-endian (float real, float imag), each matrix row-major,
    //            D delay taps followed by K subcarrier matrices
    // Throws std::runtime_error on I/O failure or a truncated file.
    void save_channel(const WidebandChannel &channel, const std::string &path);
    WidebandChannel load_channel(const std::string &path);
}

#endif
