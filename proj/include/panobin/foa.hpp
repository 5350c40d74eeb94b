//
//  foa.hpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <cstddef>
#include <vector>

namespace panobin {

// First-order ambisonics clip, ACN channel order [W, Y, Z, X], SN3D
// normalization. W is the omnidirectional component; X, Y, Z are the
// front-back, left-right and up-down dipoles. Samples are kept in double
// precision regardless of the file encoding they came from.
struct FoaClip {
    std::vector<double> w;
    std::vector<double> y;
    std::vector<double> z;
    std::vector<double> x;
    double sample_rate = 0.0;

    std::size_t size() const { return w.size(); }
    double duration() const { return static_cast<double>(size()) / sample_rate; }

    // Throws InvalidArgumentError unless all four channels have identical
    // length >= 1 and sample_rate > 0.
    void validate() const;
};

// Directional energy E(azimuth, elevation) on a regular spherical grid.
// Cell centers, ascending axes; values stored row-major with elevation as
// the slow axis: values[j * azimuth_axis.size() + i].
struct EnergyMap {
    std::vector<double> values;
    std::vector<double> azimuth_axis;   // radians, in (-pi, pi)
    std::vector<double> elevation_axis; // radians, in (-pi/2, pi/2)
    double resolution_deg = 0.0;

    std::size_t n_azimuth() const { return azimuth_axis.size(); }
    std::size_t n_elevation() const { return elevation_axis.size(); }
    double at(std::size_t elevation_idx, std::size_t azimuth_idx) const {
        return values[elevation_idx * azimuth_axis.size() + azimuth_idx];
    }
};

struct SourceDirection {
    double azimuth = 0.0;   // radians in [-pi, pi]
    double elevation = 0.0; // radians in [-pi/2, pi/2]
};

/// Real spherical harmonic basis for first order (SN3D, as used by the
/// ambisonic channels): Y00 = 1, Y1-1 = sin(az)cos(el), Y10 = sin(el),
/// Y11 = cos(az)cos(el). Throws InvalidArgumentError for any other (l, m).
double sh_basis(int l, int m, double azimuth, double elevation);

/// Directional energy map: per cell the time average of
/// |W + Y*sin(az)cos(el) + Z*sin(el) + X*cos(az)cos(el)|^2, i.e. the
/// coherent squared sum over the four channels, cross terms included.
/// The grid uses cell centers az = -pi + (i+0.5)*d, el = -pi/2 + (j+0.5)*d,
/// which keeps the +-pi seam from being double counted.
/// resolution_deg must divide both the 360 degree and 180 degree spans.
EnergyMap energy_map(const FoaClip& clip, double resolution_deg = 2.0);

/// Grid cell of maximum energy. Ties break by scan order: elevation
/// ascending, then azimuth ascending, first maximum wins. An all-zero map
/// returns the first cell; an empty map throws InvalidArgumentError.
SourceDirection localize(const EnergyMap& map);

} // namespace panobin
