#pragma once

#include <stdexcept>
#include <string>

namespace fwm {

// Scenario or radar parameters that cannot be synthesized (e.g. Nyquist violation).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Structured-input parse failure; `field` is a dotted path into the document.
struct parse_error : std::runtime_error {
    std::string field;
    parse_error(std::string field_path, const std::string& msg)
        : std::runtime_error(field_path + ": " + msg), field(std::move(field_path)) {}
};

// No spectral peak found outside the clutter exclusion zone.
struct no_target_error : std::runtime_error {
    explicit no_target_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Fewer peaks than an estimator needs.
struct insufficient_peaks_error : std::runtime_error {
    explicit insufficient_peaks_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Track updates must arrive in strictly increasing time order.
struct ordering_error : std::runtime_error {
    explicit ordering_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Summary requested from a track with no updates.
struct empty_track_error : std::runtime_error {
    explicit empty_track_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fwm
