#ifndef ATDC_ERROR_HPP
#define ATDC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace atdc {

/// Root of every error thrown by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (parse failures, invariant
/// violations, missing labels, mismatched ids).
class data_error : public error {
public:
    using error::error;
};

/// Filesystem failures while reading or writing.
class io_error : public data_error {
public:
    using data_error::data_error;
};

/// Hyperparameters or generator settings that violate their invariants.
class config_error : public error {
public:
    using error::error;
};

/// Failures of the detection algorithm itself on otherwise valid input.
class algorithm_error : public error {
public:
    using error::error;
};

/// Ratio-of-sums score with zero total intersection.
class zero_denominator_error : public algorithm_error {
public:
    using algorithm_error::algorithm_error;
};

/// No trajectory fell inside the ANT interval after stage 1.
class empty_ant_error : public algorithm_error {
public:
    using algorithm_error::algorithm_error;
};

/// Fewer than two trajectories were handed to a detection run.
class dataset_too_small_error : public data_error {
public:
    using data_error::data_error;
};

} // namespace atdc

#endif // ATDC_ERROR_HPP
