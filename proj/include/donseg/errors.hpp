// donseg - Difference of Normals toolkit for unorganized point clouds
//
// Exception types shared by every module.

#ifndef DONSEG_ERRORS_HPP
#define DONSEG_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace donseg {

/// @brief Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Missing, unreadable or unwritable file.
class IoError : public Error {
 public:
  using Error::Error;
};

/// @brief Malformed file content.
///
/// `record()` is the 1-based line number for text formats and the 1-based
/// vertex number for binary PLY; 0 when the error concerns the header as a
/// whole.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t record)
      : Error(what), record_(record) {}

  std::size_t record() const noexcept { return record_; }

 private:
  std::size_t record_;
};

/// A parameter violated its documented domain (radius, threshold, box...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Requested per-point attribute does not exist on the cloud.
class UnknownAttribute : public Error {
 public:
  using Error::Error;
};

/// A class sample without any usable points.
class EmptyClass : public Error {
 public:
  using Error::Error;
};

/// Class label not present in a statistics table.
class UnknownClass : public Error {
 public:
  using Error::Error;
};

/// Point index outside the cloud.
class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

}  // namespace donseg

#endif  // DONSEG_ERRORS_HPP
