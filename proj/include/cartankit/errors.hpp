#pragma once

#include <stdexcept>
#include <string>

namespace cartankit {

// Input fails a documented precondition (not PD, not an automorphism, ...).
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// Dimension mismatch between operands.
class shape_error : public validation_error {
public:
    explicit shape_error(const std::string& what) : validation_error(what) {}
};

// A search or size cap was exceeded; the answer is unknown, not negative.
class resource_limit_error : public std::runtime_error {
public:
    explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

// A scenario file lacks data required by the requested computation.
class incomplete_scenario_error : public std::runtime_error {
public:
    explicit incomplete_scenario_error(const std::string& what) : std::runtime_error(what) {}
};

// Cross-checked quantities disagree; indicates corrupted input data.
class inconsistency_error : public std::runtime_error {
public:
    explicit inconsistency_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cartankit
