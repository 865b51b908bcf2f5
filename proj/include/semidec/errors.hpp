#pragma once

#include <stdexcept>
#include <string>

namespace semidec {

/// Mathematical precondition failures: non-pointed input, completion cap
/// exceeded, torsion where torsion-free is required, dimension mismatches.
/// CLI maps these to exit code 1.
class math_error : public std::runtime_error {
public:
    explicit math_error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input files. CLI maps these to exit code 2.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, int line, int column)
        : std::runtime_error(what + " (line " + std::to_string(line) +
                             ", column " + std::to_string(column) + ")"),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Raised by long-running computations when a cooperative deadline passes.
class timeout_error : public std::runtime_error {
public:
    explicit timeout_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace semidec
