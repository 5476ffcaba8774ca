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

#ifndef FDIAB_SEED_HPP
#define FDIAB_SEED_HPP

#include <cstdint>
#include <initializer_list>

namespace fdiab
{
    inline std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    // Order-sensitive hash of a sequence of integers, used to derive independent RNG streams
    inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts)
    {
        std::uint64_t h = 0x6A09E667F3BCC909ULL;
        for (auto p : parts)
            h = splitmix64(h ^ splitmix64(p));
        return h;
    }
}

#endif
