#pragma once

#include <stdexcept>
#include <string>

namespace edmselect {

// Invalid argument to an operation (bad index, mismatched sizes, ...).
class ArgumentError : public std::invalid_argument {
public:
    explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

// Malformed input data; carries the offending line where known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, long line = -1)
        : std::runtime_error(line >= 0 ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

// Input uses a feature outside the supported subset (e.g. numeric ARFF attributes).
class UnsupportedFeatureError : public std::runtime_error {
public:
    explicit UnsupportedFeatureError(const std::string& what) : std::runtime_error(what) {}
};

class EmptyDatasetError : public std::runtime_error {
public:
    explicit EmptyDatasetError(const std::string& what) : std::runtime_error(what) {}
};

// A metric has no defined value for the given inputs (e.g. ROC with one class).
class UndefinedMetricError : public std::runtime_error {
public:
    explicit UndefinedMetricError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace edmselect
