#pragma once

#include <stdexcept>
#include <string>

namespace occ {

// Structural defect of a transition matrix (reducible / periodic / bad rows).
// `property` names the failing requirement, e.g. "reducible" or "periodic".
class ChainStructureError : public std::runtime_error {
public:
    ChainStructureError(std::string property, const std::string& what)
        : std::runtime_error(what), property_(std::move(property)) {}
    const std::string& property() const noexcept { return property_; }

private:
    std::string property_;
};

// A bound was requested below its validity threshold in n.
class ThresholdError : public std::runtime_error {
public:
    ThresholdError(double threshold, const std::string& what)
        : std::runtime_error(what), threshold_(threshold) {}
    double threshold() const noexcept { return threshold_; }

private:
    double threshold_;
};

// Exhaustive enumeration or DP size exceeded the configured cap.
class CapExceededError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Operation requires a Markov driver (or some other unavailable capability).
class UnsupportedOperationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace occ
