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

#include "fdiab/array_geometry.hpp"

#include <cmath>

namespace fdiab
{
    void ArrayGeometry::validate() const
    {
        if (rows < 1 || cols < 1)
            throw ConfigError("Array must have at least one row and one column.");
        if (!(spacing > 0.0))
            throw ConfigError("Element spacing must be positive.");
    }

    Vec3 column_axis(Orientation o)
    {
        return o == Orientation::broadside_x ? Vec3::UnitY() : Vec3::UnitX();
    }

    Vec3 row_axis(Orientation o)
    {
        return o == Orientation::broadside_z ? Vec3::UnitY() : Vec3::UnitZ();
    }

    CVec upa_steering(const ArrayGeometry &geom, double azimuth, double elevation)
    {
        geom.validate();
        if (!(azimuth >= -pi && azimuth <= pi))
            throw DomainError("Azimuth must lie in [-pi, pi].");
        if (!(elevation >= -pi / 2.0 && elevation <= pi / 2.0))
            throw DomainError("Elevation must lie in [-pi/2, pi/2].");

        const double k = 2.0 * pi * geom.spacing;
        const double u_col = std::sin(azimuth) * std::cos(elevation);
        const double u_row = std::sin(elevation);
        const double amp = 1.0 / std::sqrt(static_cast<double>(geom.size()));

        CVec a(geom.size());
        for (int m = 0; m < geom.rows; ++m)
            for (int n = 0; n < geom.cols; ++n)
                a(m * geom.cols + n) = std::polar(amp, k * (n * u_col + m * u_row));
        return a;
    }

    SubarrayPartition partition_subarrays(int num_elements, int num_subarrays)
    {
        if (num_elements < 1 || num_subarrays < 1)
            throw ConfigError("Element and subarray counts must be positive.");
        if (num_elements % num_subarrays != 0)
            throw ConfigError("Number of subarrays (" + std::to_string(num_subarrays) +
                              ") must divide the number of elements (" + std::to_string(num_elements) + ").");
        SubarrayPartition p;
        p.num_elements = num_elements;
        const int size = num_elements / num_subarrays;
        for (int u = 0; u < num_subarrays; ++u)
            p.blocks.push_back({u * size, size});
        return p;
    }

    Eigen::Matrix3Xd element_positions(const ArrayGeometry &geom, double wavelength_m)
    {
        geom.validate();
        const double pitch = geom.spacing * wavelength_m;
        const Vec3 c = column_axis(geom.orientation) * pitch;
        const Vec3 r = row_axis(geom.orientation) * pitch;
        Eigen::Matrix3Xd pos(3, geom.size());
        for (int m = 0; m < geom.rows; ++m)
            for (int n = 0; n < geom.cols; ++n)
                pos.col(m * geom.cols + n) = geom.origin + n * c + m * r;
        return pos;
    }

    double aperture_diameter(const ArrayGeometry &geom, double wavelength_m)
    {
        const double pitch = geom.spacing * wavelength_m;
        return pitch * std::hypot(geom.rows - 1.0, geom.cols - 1.0);
    }

    double near_field_radius(const ArrayGeometry &geom, double wavelength_m)
    {
        const double d = aperture_diameter(geom, wavelength_m);
        return 2.0 * d * d / wavelength_m;
    }

    ArrayGeometry displaced_panel(const ArrayGeometry &tx, double separation_wavelengths, double wavelength_m)
    {
        ArrayGeometry rx = tx;
        rx.origin = tx.origin + column_axis(tx.orientation) * separation_wavelengths * wavelength_m;
        return rx;
    }
}
