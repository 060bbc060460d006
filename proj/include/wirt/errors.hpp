#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wirt {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A sample point lies inside the guard radius of a pole or branch point, or
/// produced a non-finite value. Callers that sample grids count these as skips.
class DomainError : public Error {
public:
    explicit DomainError(std::string what, std::string subexpression = {})
        : Error(std::move(what)), subexpression_(std::move(subexpression)) {}

    const std::string& subexpression() const noexcept { return subexpression_; }
    void set_subexpression(std::string s) { subexpression_ = std::move(s); }

private:
    std::string subexpression_;
};

/// Evaluation failed at a point where skipping is not allowed (quadrature nodes).
class EvaluationError : public Error {
public:
    using Error::Error;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
        : Error(make_message(offset, expected, found)), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    static std::string make_message(std::size_t offset, const std::vector<std::string>& expected,
                                    const std::string& found) {
        std::string msg = "syntax error at offset " + std::to_string(offset) + ": found " + found;
        if (!expected.empty()) {
            msg += ", expected one of {";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i) msg += ", ";
                msg += expected[i];
            }
            msg += "}";
        }
        return msg;
    }

    std::size_t offset_;
    std::vector<std::string> expected_;
};

class UnknownIdentifierError : public Error {
public:
    UnknownIdentifierError(std::size_t offset, std::string name)
        : Error("unknown identifier '" + name + "' at offset " + std::to_string(offset)),
          offset_(offset), name_(std::move(name)) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::string& name() const noexcept { return name_; }

private:
    std::size_t offset_;
    std::string name_;
};

/// Malformed contour or region description.
class InvalidSpecError : public Error {
public:
    using Error::Error;
};

/// More than the permitted fraction of grid samples were non-evaluable.
class ExcessiveSkipsError : public Error {
public:
    ExcessiveSkipsError(std::size_t skipped, std::size_t total)
        : Error("excessive skips: " + std::to_string(skipped) + " of " + std::to_string(total) +
                " sample points were not evaluable"),
          skipped_(skipped), total_(total) {}

    std::size_t skipped() const noexcept { return skipped_; }
    std::size_t total() const noexcept { return total_; }

private:
    std::size_t skipped_;
    std::size_t total_;
};

}  // namespace wirt
