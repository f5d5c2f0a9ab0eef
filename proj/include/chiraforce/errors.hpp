#pragma once

#include <stdexcept>
#include <string>

namespace chiraforce {

/// Shape or rank contract violated by a tensor operation.
class rank_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Physically meaningless input: near-resonant frequency, non-orthonormal
/// frame, non-positive molecular size and the like.
class physical_input_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed or schema-violating input file.
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An observable that must be real carried a non-negligible imaginary part.
class realness_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace chiraforce
