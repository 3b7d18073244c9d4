#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gentle {

// Malformed or out-of-scope user input. Maps to CLI exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Syntax error with a 1-based source position.
class ParseError : public InputError {
public:
    ParseError(int line, int col, const std::string& msg)
        : InputError(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}
    int line() const { return line_; }
    int col() const { return col_; }

private:
    int line_;
    int col_;
};

// A structurally well-formed quiver that violates one or more gentle conditions.
class GentleError : public InputError {
public:
    explicit GentleError(std::vector<std::string> violations)
        : InputError(join(violations)), violations_(std::move(violations)) {}
    const std::vector<std::string>& violations() const { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : "; ") + x;
        return s;
    }
    std::vector<std::string> violations_;
};

// Requested computation lies outside the supported hypotheses.
class ScopeError : public InputError {
public:
    using InputError::InputError;
};

// Arithmetic or internal consistency failure. Maps to CLI exit code 1.
class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace gentle
