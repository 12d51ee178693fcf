#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace reeb {

// Root of every error the library raises on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad literal, unknown field, violated type invariant.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// Some iterate of an elliptic block lands on an integer rotation, i.e. the
// iterate is degenerate.
class DegenerateIterate : public Error {
 public:
  DegenerateIterate(std::size_t block, std::int64_t iterate, const std::string& what)
      : Error(what), block_(block), iterate_(iterate) {}

  std::size_t block() const noexcept { return block_; }
  std::int64_t iterate() const noexcept { return iterate_; }

 private:
  std::size_t block_;
  std::int64_t iterate_;
};

class IterateOutOfCertifiedRange : public Error {
 public:
  using Error::Error;
};

class SearchExhausted : public Error {
 public:
  using Error::Error;
};

class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

class ZeroMeanIndex : public Error {
 public:
  using Error::Error;
};

class CertificateMismatch : public Error {
 public:
  using Error::Error;
};

// A system violates one of its mechanically checkable hypotheses.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace reeb
