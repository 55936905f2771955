#pragma once

#include <stdexcept>
#include <string>

namespace cnbe {

// Error categories surfaced to callers. Anything recoverable-by-retry is not
// modelled; these all indicate caller error or unusable inputs/files.
struct not_positive_definite_error : std::runtime_error {
    double final_jitter;
    explicit not_positive_definite_error(const std::string& msg, double jitter)
        : std::runtime_error(msg), final_jitter(jitter) {}
};

struct invalid_data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct checkpoint_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct training_failed_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct fit_failed_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cnbe
