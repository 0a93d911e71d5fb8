#pragma once

#include <stdexcept>
#include <string>

namespace udisc {

// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Matrix / eigensolver errors.
class EmptyMatrix : public Error {
 public:
  using Error::Error;
};
class NonSquare : public Error {
 public:
  using Error::Error;
};
class NotHermitian : public Error {
 public:
  using Error::Error;
};
class NoConvergence : public Error {
 public:
  using Error::Error;
};
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Family errors.
class NotMinimal : public Error {
 public:
  using Error::Error;
};
class LengthMismatch : public Error {
 public:
  using Error::Error;
};
class IndexMismatch : public Error {
 public:
  using Error::Error;
};

// POVM errors.
class NotAPOVM : public Error {
 public:
  using Error::Error;
};
class NotDistinguishing : public Error {
 public:
  using Error::Error;
};

// Mixed-family errors.
class InvalidDensityMatrix : public Error {
 public:
  using Error::Error;
};
class NotDistinguishable : public Error {
 public:
  using Error::Error;
};

// Lattice / coherent-state errors.
class TailTooLarge : public Error {
 public:
  using Error::Error;
};
class DegenerateLattice : public Error {
 public:
  using Error::Error;
};
class SizeCap : public Error {
 public:
  using Error::Error;
};
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

// Malformed inputs (bad JSON, bad arguments) that do not fit a more
// specific category.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

}  // namespace udisc
