#pragma once

#include <stdexcept>
#include <string>

namespace esplab {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Mismatched matrix/vector/ensemble dimensions.
class dimension_error : public error {
public:
    explicit dimension_error(const std::string& what) : error(what) {}
};

/// Non-finite or otherwise inadmissible numeric input.
class domain_error : public error {
public:
    explicit domain_error(const std::string& what) : error(what) {}
};

/// Parameter value outside the system's parameter space.
class parameter_error : public error {
public:
    explicit parameter_error(const std::string& what) : error(what) {}
};

/// Input segment too short for the requested operation.
class length_error : public error {
public:
    explicit length_error(const std::string& what) : error(what) {}
};

/// Spectral normalization of a matrix with zero spectral radius.
class normalization_error : public error {
public:
    explicit normalization_error(const std::string& what) : error(what) {}
};

/// Invalid experiment configuration (CLI exit code 2).
class config_error : public error {
public:
    explicit config_error(const std::string& what) : error(what) {}
};

/// Non-finite result produced during an experiment (CLI exit code 3).
class numeric_error : public error {
public:
    explicit numeric_error(const std::string& what) : error(what) {}
};

} // namespace esplab
