#pragma once

#include <Eigen/Dense>

#include <compare>
#include <stdexcept>
#include <string>

namespace rankclose {

using Index = Eigen::Index;
using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Position of one matrix entry, 0-based.
struct Entry {
    Index row = 0;
    Index col = 0;

    friend auto operator<=>(const Entry &, const Entry &) = default;
};

/// Rejected input: malformed files, out-of-range parameters, dimension mismatches.
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed text in one of the mask / matrix formats. `line` is 1-based.
class ParseError : public InputError {
  public:
    ParseError(std::size_t line, const std::string &what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

} // namespace rankclose
