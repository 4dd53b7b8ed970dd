#pragma once

#include <stdexcept>
#include <string>

namespace mlosim {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (non-positive distance, zero rate, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Scenario generation exhausted its rejection budget.
class GenerationError : public Error {
public:
    using Error::Error;
};

// A scenario violates a structural guarantee (e.g. a station with no usable interface).
class InvalidScenarioError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class UndefinedGainError : public Error {
public:
    using Error::Error;
};

}  // namespace mlosim
