//
//  reprojection.hpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <utility>

#include "panobin/image.hpp"
#include "panobin/rotation.hpp"

namespace panobin {

// Equirectangular frames must be 2:1 (width = 2 * height). Column 0 maps to
// azimuth -pi, the middle column to azimuth 0 (forward), and rows run from
// elevation +pi/2 (top) down to -pi/2. Equirect sources disagree on the
// column-to-azimuth sign; this convention is normative here, so a mirror
// flip against some source material is possible.

/// Camera-frame unit ray through the center of pixel (px, py) of an S x S
/// view with the given horizontal FOV. Pixel centers sit at index + 0.5;
/// +X is forward, +Y left, +Z up, matching the ambisonics axes.
Vec3 perspective_ray(double px, double py, int size, double fov_deg);

/// Continuous (column, row) equirect coordinates of a unit direction:
/// col = (azimuth + pi) / 2pi * W (wrapped modulo W),
/// row = (pi/2 - elevation) / pi * H.
std::pair<double, double> ray_to_equirect(const Vec3& dir, int width, int height);

/// Bilinear sample at a continuous (col, row) position; longitude wraps
/// across the +-pi seam, latitude clamps at the poles. Exposed for tests.
void sample_equirect(const Image& frame, double col, double row, std::uint8_t out_rgb[3]);

/// Render one FOV-perspective view: every output pixel is sampled at
/// ray_to_equirect(rot * perspective_ray(px, py)). Deterministic: identical
/// inputs give bit-identical frames.
Image render_view(const Image& frame, const Mat3& rot, double fov_deg, int size);

} // namespace panobin
