#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nerkit {

// Base for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad input: malformed files, misaligned corpora, violated preconditions
// that a caller can fix. The CLI maps this to exit code 1.
class InputError : public Error {
 public:
  using Error::Error;
};

// Ill-formed tag sequence detected under the strict repair policy.
// Carries the first offending position and its tag.
class DecodeError : public InputError {
 public:
  DecodeError(std::size_t index, std::string tag, const std::string& what)
      : InputError(what), index_(index), tag_(std::move(tag)) {}

  std::size_t index() const { return index_; }
  const std::string& tag() const { return tag_; }

 private:
  std::size_t index_;
  std::string tag_;
};

}  // namespace nerkit
