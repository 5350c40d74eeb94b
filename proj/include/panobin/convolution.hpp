//
//  convolution.hpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace panobin {

// Iterative radix-2 FFT with a precomputed root table. Self-contained so
// concurrent clip workers need no plan cache or locking.
class Fft {
public:
    explicit Fft(std::size_t n); // n must be a power of two >= 1

    std::size_t size() const { return n_; }

    void forward(std::vector<std::complex<double>>& a) const;
    void inverse(std::vector<std::complex<double>>& a) const; // scales by 1/n

private:
    void transform(std::vector<std::complex<double>>& a, bool inverse) const;

    std::size_t n_;
    std::vector<std::complex<double>> roots_; // exp(-2*pi*i*k/n), k < n/2
};

/// Direct O(N*L) full linear convolution; output length N + L - 1.
std::vector<double> convolve_direct(std::span<const double> x, std::span<const double> h);

/// Frequency-domain overlap-add full linear convolution; same contract as
/// convolve_direct, validated against it to 1e-9 in tests.
std::vector<double> convolve_fft(std::span<const double> x, std::span<const double> h);

/// Policy entry point: time domain for short kernels (where it is both
/// faster and exact for trivial kernels), overlap-add above the threshold.
std::vector<double> convolve(std::span<const double> x, std::span<const double> h);

inline constexpr std::size_t kDirectConvolutionMaxTaps = 64;

} // namespace panobin
