#pragma once

#include <stdexcept>
#include <string>

namespace xdiff {

// Diffusion matrix fails d11 > 0 and 4*d11*d22 - (d12 + d21)^2 > 0.
class PositiveDefinitenessViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Edge channel requested with d21 == 0.
class ZeroCouplingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Residual has zero variance or zero norm; the metric is +infinity.
class DegenerateResidual : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class InvalidGrid : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inverse transform left an imaginary residue above round-off.
class NonRealResult : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedFile : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Requires2D : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownKind : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace xdiff
