#pragma once

#include <stdexcept>
#include <string>

namespace slq {

struct NonPositiveRate : std::runtime_error {
    explicit NonPositiveRate(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateScale : std::runtime_error {
    explicit DegenerateScale(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedDistribution : std::runtime_error {
    explicit UnsupportedDistribution(const std::string& what) : std::runtime_error(what) {}
};

struct NoSuchCustomer : std::runtime_error {
    explicit NoSuchCustomer(const std::string& what) : std::runtime_error(what) {}
};

struct InvariantViolation : std::runtime_error {
    explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

struct GridOutOfRange : std::runtime_error {
    explicit GridOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

struct GridMismatch : std::runtime_error {
    explicit GridMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct EmptySample : std::runtime_error {
    explicit EmptySample(const std::string& what) : std::runtime_error(what) {}
};

struct NonPositiveStep : std::runtime_error {
    explicit NonPositiveStep(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace slq
