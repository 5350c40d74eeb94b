//
//  convolution.cpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#include "panobin/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "panobin/errors.hpp"

namespace panobin {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
    std::size_t p = 1;
    while (p < n)
        p <<= 1;
    return p;
}

} // namespace

Fft::Fft(std::size_t n) : n_(n) {
    if (!is_power_of_two(n))
        throw InvalidArgumentError("FFT size must be a power of two");
    roots_.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        roots_[k] = {std::cos(ang), std::sin(ang)};
    }
}

void Fft::transform(std::vector<std::complex<double>>& a, bool inverse) const {
    if (a.size() != n_)
        throw InvalidArgumentError("FFT buffer size does not match plan size");

    // Bit-reversal permutation.
    for (std::size_t i = 1, j = 0; i < n_; ++i) {
        std::size_t bit = n_ >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }

    for (std::size_t len = 2; len <= n_; len <<= 1) {
        const std::size_t stride = n_ / len;
        const std::size_t half = len / 2;
        for (std::size_t i = 0; i < n_; i += len) {
            for (std::size_t j = 0; j < half; ++j) {
                std::complex<double> w = roots_[j * stride];
                if (inverse)
                    w = std::conj(w);
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + half] * w;
                a[i + j] = u + v;
                a[i + j + half] = u - v;
            }
        }
    }
}

void Fft::forward(std::vector<std::complex<double>>& a) const { transform(a, false); }

void Fft::inverse(std::vector<std::complex<double>>& a) const {
    transform(a, true);
    const double inv_n = 1.0 / static_cast<double>(n_);
    for (auto& v : a)
        v *= inv_n;
}

std::vector<double> convolve_direct(std::span<const double> x, std::span<const double> h) {
    if (x.empty() || h.empty())
        throw InvalidArgumentError("convolution inputs must be non-empty");
    std::vector<double> out(x.size() + h.size() - 1, 0.0);
    for (std::size_t k = 0; k < h.size(); ++k) {
        const double hk = h[k];
        if (hk == 0.0)
            continue;
        for (std::size_t n = 0; n < x.size(); ++n)
            out[n + k] += hk * x[n];
    }
    return out;
}

std::vector<double> convolve_fft(std::span<const double> x, std::span<const double> h) {
    if (x.empty() || h.empty())
        throw InvalidArgumentError("convolution inputs must be non-empty");

    const std::size_t n = x.size();
    const std::size_t l = h.size();
    const std::size_t out_len = n + l - 1;

    // Overlap-add: FFT size covers the kernel with room for a useful block.
    const std::size_t fft_size = next_power_of_two(std::max<std::size_t>(256, 2 * l));
    const std::size_t block = fft_size - (l - 1);
    const Fft fft(fft_size);

    std::vector<std::complex<double>> kernel(fft_size, 0.0);
    for (std::size_t k = 0; k < l; ++k)
        kernel[k] = h[k];
    fft.forward(kernel);

    std::vector<double> out(out_len, 0.0);
    std::vector<std::complex<double>> buf(fft_size);
    for (std::size_t start = 0; start < n; start += block) {
        const std::size_t len = std::min(block, n - start);
        std::fill(buf.begin(), buf.end(), std::complex<double>(0.0, 0.0));
        for (std::size_t i = 0; i < len; ++i)
            buf[i] = x[start + i];
        fft.forward(buf);
        for (std::size_t i = 0; i < fft_size; ++i)
            buf[i] *= kernel[i];
        fft.inverse(buf);
        const std::size_t tail = std::min(len + l - 1, out_len - start);
        for (std::size_t i = 0; i < tail; ++i)
            out[start + i] += buf[i].real();
    }
    return out;
}

std::vector<double> convolve(std::span<const double> x, std::span<const double> h) {
    if (h.size() <= kDirectConvolutionMaxTaps)
        return convolve_direct(x, h);
    return convolve_fft(x, h);
}

} // namespace panobin
