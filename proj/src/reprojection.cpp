//
//  reprojection.cpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#include "panobin/reprojection.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "panobin/errors.hpp"

namespace panobin {

namespace {

constexpr double kPi = std::numbers::pi;

int wrap_index(long i, int n) {
    long r = i % n;
    if (r < 0)
        r += n;
    return static_cast<int>(r);
}

} // namespace

Vec3 perspective_ray(double px, double py, int size, double fov_deg) {
    const double half_tan = std::tan(fov_deg * kPi / 360.0);
    const double s = static_cast<double>(size);
    // Normalized device coords in [-1, 1]; image right is -Y (viewer's
    // right), image up is +Z.
    const double ndc_x = 2.0 * (px + 0.5) / s - 1.0;
    const double ndc_y = 2.0 * (py + 0.5) / s - 1.0;
    const Vec3 v{1.0, -ndc_x * half_tan, -ndc_y * half_tan};
    return v.normalized();
}

std::pair<double, double> ray_to_equirect(const Vec3& dir, int width, int height) {
    const double azimuth = std::atan2(dir.y, dir.x);
    const double elevation = std::asin(std::clamp(dir.z, -1.0, 1.0));
    double col = (azimuth + kPi) / (2.0 * kPi) * width;
    const double row = (kPi / 2.0 - elevation) / kPi * height;
    col = std::fmod(col, static_cast<double>(width));
    if (col < 0.0)
        col += width;
    return {col, row};
}

void sample_equirect(const Image& frame, double col, double row, std::uint8_t out_rgb[3]) {
    // Pixel centers at index + 0.5.
    const double x = col - 0.5;
    const double y = row - 0.5;
    const double xf = std::floor(x);
    const double yf = std::floor(y);
    const double fx = x - xf;
    const double fy = y - yf;

    const int x0 = wrap_index(static_cast<long>(xf), frame.width);
    const int x1 = wrap_index(static_cast<long>(xf) + 1, frame.width);
    const int y0 = std::clamp(static_cast<int>(yf), 0, frame.height - 1);
    const int y1 = std::clamp(static_cast<int>(yf) + 1, 0, frame.height - 1);

    const std::uint8_t* p00 = frame.pixel(x0, y0);
    const std::uint8_t* p10 = frame.pixel(x1, y0);
    const std::uint8_t* p01 = frame.pixel(x0, y1);
    const std::uint8_t* p11 = frame.pixel(x1, y1);

    for (int c = 0; c < 3; ++c) {
        const double v = (1.0 - fx) * (1.0 - fy) * p00[c] + fx * (1.0 - fy) * p10[c] +
                         (1.0 - fx) * fy * p01[c] + fx * fy * p11[c];
        out_rgb[c] = static_cast<std::uint8_t>(std::clamp(std::lround(v), 0l, 255l));
    }
}

Image render_view(const Image& frame, const Mat3& rot, double fov_deg, int size) {
    if (frame.width <= 0 || frame.height <= 0)
        throw InvalidArgumentError("equirect frame is empty");
    if (frame.width != 2 * frame.height)
        throw InvalidArgumentError("equirect frame must be 2:1 (width = 2 * height)");
    if (size <= 0)
        throw InvalidArgumentError("view size must be positive");

    Image out(size, size);
    for (int py = 0; py < size; ++py) {
        std::uint8_t* row = out.pixel(0, py);
        for (int px = 0; px < size; ++px) {
            const Vec3 world = rot * perspective_ray(px, py, size, fov_deg);
            const auto [col, r] = ray_to_equirect(world, frame.width, frame.height);
            sample_equirect(frame, col, r, row + 3 * px);
        }
    }
    return out;
}

} // namespace panobin
