#pragma once

#include <stdexcept>
#include <string>

namespace ewit {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes that do not fit together (non-square input, wrong subsystem dims, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A matrix that was required to be Hermitian / symmetric is not.
class SymmetryError : public Error {
 public:
  using Error::Error;
};

/// A matrix that was required to be positive semidefinite has a clearly negative eigenvalue.
class NotPsdError : public Error {
 public:
  using Error::Error;
};

/// Parameter outside the domain of a state family or closed form.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Tr(rho O_i x O'_j) came out with a non-negligible imaginary part.
class ImaginaryResidueError : public Error {
 public:
  using Error::Error;
};

/// File could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ewit
