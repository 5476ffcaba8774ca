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

#ifndef FDIAB_ARRAY_GEOMETRY_HPP
#define FDIAB_ARRAY_GEOMETRY_HPP

#include "fdiab/types.hpp"

#include <cstddef>
#include <vector>

namespace fdiab
{
    // Direction of the panel normal. The column axis and row axis of the element grid are
    //   broadside_x: columns along +y, rows along +z
    //   broadside_y: columns along +x, rows along +z
    //   broadside_z: columns along +x, rows along +y
    enum class Orientation
    {
        broadside_x,
        broadside_y,
        broadside_z
    };

    // Uniform planar array. Element (m, n) has linear index m * cols + n.
    struct ArrayGeometry
    {
        int rows = 1;
        int cols = 1;
        double spacing = 0.5; // Element pitch in wavelengths
        Vec3 origin = Vec3::Zero();
        Orientation orientation = Orientation::broadside_x;

        int size() const { return rows * cols; }
        void validate() const; // Throws ConfigError
    };

    // Half-open element index range [begin, begin + size)
    struct IndexRange
    {
        int begin = 0;
        int size = 0;
        int end() const { return begin + size; }
    };

    struct SubarrayPartition
    {
        int num_elements = 0;
        std::vector<IndexRange> blocks;

        int num_subarrays() const { return static_cast<int>(blocks.size()); }
        int block_size() const { return blocks.empty() ? 0 : blocks.front().size; }
    };

    // Unit-norm UPA response in the panel's local frame. The phase of element (m, n) is
    // 2*pi*spacing*(n*sin(az)*cos(el) + m*sin(el)), referenced to element (0, 0).
    // Throws DomainError for az outside [-pi, pi] or el outside [-pi/2, pi/2].
    CVec upa_steering(const ArrayGeometry &geom, double azimuth, double elevation);

    // U contiguous blocks of N/U elements in index order. Throws ConfigError unless U divides N.
    SubarrayPartition partition_subarrays(int num_elements, int num_subarrays);

    // Element coordinates in meters (one column per element).
    Eigen::Matrix3Xd element_positions(const ArrayGeometry &geom, double wavelength_m);

    // Largest inter-element distance (grid diagonal) in meters.
    double aperture_diameter(const ArrayGeometry &geom, double wavelength_m);

    // 2 D^2 / lambda
    double near_field_radius(const ArrayGeometry &geom, double wavelength_m);

    // Receive panel placed next to the transmit panel with the same orientation, displaced
    // along the column axis by `separation_wavelengths` (center to center).
    ArrayGeometry displaced_panel(const ArrayGeometry &tx, double separation_wavelengths, double wavelength_m);

    // Unit vector of the column axis and row axis for an orientation
    Vec3 column_axis(Orientation o);
    Vec3 row_axis(Orientation o);
}

#endif
