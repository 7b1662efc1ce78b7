#pragma once

#include <stdexcept>
#include <string>

namespace dualdrive {

// Base for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Scenario file failed to parse; carries the offending line.
class ScenarioParseError : public Error {
public:
    ScenarioParseError(int line, const std::string& msg)
        : Error("scenario parse error at line " + std::to_string(line) + ": " + msg),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// A parsed scenario violates an invariant; the message names it.
class ScenarioValidationError : public Error {
public:
    explicit ScenarioValidationError(const std::string& invariant)
        : Error("scenario validation error: " + invariant) {}
};

}  // namespace dualdrive
