#pragma once

#include <stdexcept>
#include <string>

namespace qmix {

/// Base class of every error thrown by this library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

class empty_input : public error {
public:
    using error::error;
};

class zero_vector : public error {
public:
    using error::error;
};

class dimension_mismatch : public error {
public:
    using error::error;
};

class not_unit_vector : public error {
public:
    using error::error;
};

class not_hermitian : public error {
public:
    using error::error;
};

class empty_ensemble : public error {
public:
    using error::error;
};

class negative_probability : public error {
public:
    using error::error;
};

class probability_sum_not_one : public error {
public:
    using error::error;
};

class negative_eigenvalue : public error {
public:
    using error::error;
};

class non_ascending_times : public error {
public:
    using error::error;
};

/// Raised by the file loaders; the message carries the offending
/// file/field context.
class parse_error : public error {
public:
    using error::error;
};

}  // namespace qmix
