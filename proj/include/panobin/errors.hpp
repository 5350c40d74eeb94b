//
//  errors.hpp
//  panobin
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <stdexcept>
#include <string>

namespace panobin {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad arguments: unsupported spherical-harmonic order, empty input,
// out-of-range time, mismatched vector dimensions, invalid segmentation.
class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

// Malformed or unsupported file content (WAV layout, channel counts, ...).
class FormatError : public Error {
public:
    using Error::Error;
};

// Filesystem / subprocess I/O failures.
class IoError : public Error {
public:
    using Error::Error;
};

// Structured-text parse failures (manifest lines, sidecar, config).
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace panobin
