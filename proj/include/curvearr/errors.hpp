#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace curvearr {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Expression text does not match the grammar.
class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& what)
        : Error(what), offset_(offset), expected_(std::move(expected)) {}

    std::size_t offset() const { return offset_; }
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

/// Evaluation left the domain of the expression (division by an interval containing 0,
/// negative power of zero).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Rejected user input: bad region of interest, bad tolerance, non sign-definite denominator.
class InputError : public Error {
public:
    using Error::Error;
};

/// A box rectangle in real coordinates, as decimal strings of exact dyadics.
using RectText = std::array<std::string, 4>;

/// Subdivision reached the depth limit without the box predicates becoming conclusive.
/// Usually means the input is not simple (singular curve, tangential intersection).
class ResolutionLimit : public Error {
public:
    ResolutionLimit(const std::string& stage, RectText box, int depth)
        : Error("resolution limit reached in " + stage + " at depth " + std::to_string(depth) +
                " on box [" + box[0] + "," + box[1] + "," + box[2] + "," + box[3] + "]"),
          stage_(stage), box_(std::move(box)), depth_(depth) {}

    const std::string& stage() const { return stage_; }
    const RectText& box() const { return box_; }
    int depth() const { return depth_; }

private:
    std::string stage_;
    RectText box_;
    int depth_;
};

/// A common root could not be isolated away from the boundary of the region of interest.
class BoundaryRoot : public Error {
public:
    BoundaryRoot(RectText box, int depth)
        : Error("root cannot be separated from the region boundary at depth " + std::to_string(depth) +
                " near box [" + box[0] + "," + box[1] + "," + box[2] + "," + box[3] + "]"),
          box_(std::move(box)), depth_(depth) {}

    const RectText& box() const { return box_; }
    int depth() const { return depth_; }

private:
    RectText box_;
    int depth_;
};

/// Broken internal invariant. Indicates a bug or an input outside the supported class.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace curvearr
