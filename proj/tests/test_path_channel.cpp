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
#include "fdiab/path_channel.hpp"
#include "fdiab/tensor_io.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace fdiab;

namespace
{
    ClusterConfig cfg32()
    {
        ClusterConfig c;
        c.num_taps = 16;
        c.sampling_time = 1.0 / (32 * 120e3);
        return c;
    }
}

TEST_CASE("path form matches the dense tap assembly")
{
    const auto c = cfg32();
    const ArrayGeometry tx{2, 4}, rx{2, 2};
    const auto clusters = sample_cluster_geometry(c, 17);
    const auto pc = build_path_channel(clusters, tx, rx, c);
    const auto dense = pc.materialize(32);

    WidebandChannel ref;
    ref.taps = assemble_delay_taps(clusters, tx, rx, c);
    to_frequency(ref, 32);
    REQUIRE(dense.num_taps() == ref.num_taps());
    for (int d = 0; d < ref.num_taps(); ++d)
        CHECK((dense.taps[d] - ref.taps[d]).norm() <= 1e-12 * (1.0 + ref.taps[d].norm()));
    for (int k = 0; k < 32; ++k)
        CHECK((dense.freq[k] - ref.freq[k]).norm() <= 1e-10 * ref.freq[k].norm());
}

TEST_CASE("effective channel and factored covariance")
{
    std::mt19937_64 rng(3);
    const auto c = cfg32();
    const ArrayGeometry tx{4, 4}, rx{2, 4};
    const auto pc = build_path_channel(sample_cluster_geometry(c, 5), tx, rx, c);
    const auto gains = pc.frequency_gains(32);
    const auto dense = pc.materialize(32);

    const CMat w = test::random_cmat(rng, 8, 3), f = test::random_cmat(rng, 16, 2);
    const auto eff = pc.effective(w, f, gains);
    for (int k = 0; k < 32; ++k)
    {
        const CMat ref = w.adjoint() * dense.freq[k] * f;
        CHECK((eff[k] - ref).norm() < 1e-10 * ref.norm());
    }

    for (auto side : {Side::tx, Side::rx})
    {
        const CMat ref = sample_covariance(dense.freq, side);
        const CMat fac = pc.covariance(side, gains).dense();
        CHECK((fac - ref).norm() < 1e-10 * ref.norm());

        const auto ed = dominant_eigenpairs(ref, 3);
        const auto ef = dominant_eigenpairs(pc.covariance(side, gains), 3);
        for (int i = 0; i < 3; ++i)
        {
            CHECK(ef.values(i) == doctest::Approx(ed.values(i)).epsilon(1e-9));
            // Same phase convention, so the vectors agree entry-wise when eigenvalues are simple
            CHECK((ef.vectors.col(i) - ed.vectors.col(i)).norm() < 1e-6);
        }
    }
}

TEST_CASE("SI path channel materializes to the generated SI channel")
{
    const auto c = cfg32();
    const ArrayGeometry tx{2, 2};
    const ArrayGeometry rx = displaced_panel(tx, 10.0, 299792458.0 / 28e9);
    SiChannelConfig si;
    const auto a = gen_si_channel(tx, rx, si, c, 9, 32);
    const auto b = build_si_path_channel(tx, rx, si, c, 9).materialize(32);
    for (int k = 0; k < 32; ++k)
        CHECK((a.freq[k] - b.freq[k]).norm() <= 1e-12 * a.freq[k].norm());
    CHECK_THROWS_AS(build_si_path_channel(tx, rx, si, c, 9).covariance(Side::tx, CMat::Ones(8, 32)), std::logic_error);
}

TEST_CASE("tensor file round trip")
{
    std::mt19937_64 rng(1);
    WidebandChannel ch;
    for (int d = 0; d < 3; ++d)
        ch.taps.push_back(test::random_cmat(rng, 2, 5));
    to_frequency(ch, 4);

    const auto path = (std::filesystem::temp_directory_path() / "fdiab_tensor_test.bin").string();
    save_channel(ch, path);

    std::ifstream raw(path, std::ios::binary);
    unsigned char header[16];
    raw.read(reinterpret_cast<char *>(header), 16);
    auto u32 = [&](int i) {
        return header[4 * i] | header[4 * i + 1] << 8 | header[4 * i + 2] << 16 | header[4 * i + 3] << 24;
    };
    CHECK(u32(0) == 2);
    CHECK(u32(1) == 5);
    CHECK(u32(2) == 3);
    CHECK(u32(3) == 4);
    raw.seekg(0, std::ios::end);
    CHECK(static_cast<long>(raw.tellg()) == 16 + (3 + 4) * 10 * 8);
    raw.close();

    const auto back = load_channel(path);
    REQUIRE(back.num_taps() == 3);
    REQUIRE(back.num_subcarriers() == 4);
    for (int d = 0; d < 3; ++d)
        CHECK((back.taps[d] - ch.taps[d]).norm() < 1e-6 * ch.taps[d].norm());
    for (int k = 0; k < 4; ++k)
        CHECK((back.freq[k] - ch.freq[k]).norm() < 1e-6 * ch.freq[k].norm());

    // Truncated payload
    std::filesystem::resize_file(path, 40);
    CHECK_THROWS_AS(load_channel(path), IoError);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_channel(path), IoError);
}
