#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hypergeo {

/// Base of every error thrown by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (log of zero, |z| >= 1 for
/// the Taylor series, ...).
class domain_error : public error {
 public:
  using error::error;
};

/// Argument hit a pole of Gamma at z = -n.
class pole_error : public domain_error {
 public:
  pole_error(long n, const std::string& what) : domain_error(what), n_(n) {}
  long pole() const noexcept { return n_; }

 private:
  long n_;
};

/// |z| lies in the neighbourhood of the unit circle where neither the
/// Taylor series nor the expansion at infinity is used.
class annulus_error : public domain_error {
 public:
  using domain_error::domain_error;
};

/// Invalid hypergeometric parameters (lower parameter at a nonpositive
/// integer, size mismatch).
class parameter_error : public error {
 public:
  using error::error;
};

/// Upper parameters differ by an integer where the generic formula needs
/// them not to.
class degeneracy_error : public error {
 public:
  using error::error;
};

/// Integer-difference normalization cannot be carried out (a contiguity
/// raise would pass through a zero parameter, or a case the conjectured
/// reduction does not cover).
class unsupported_degeneracy_error : public degeneracy_error {
 public:
  using degeneracy_error::degeneracy_error;
};

/// Q(-alpha-i) = 0 for some i >= 1 in the recurrence at infinity.
class resonance_error : public error {
 public:
  using error::error;
};

/// A structural identity (pole cancellation, ...) failed numerically.
class consistency_error : public error {
 public:
  using error::error;
};

class parse_error : public error {
 public:
  parse_error(std::size_t position, const std::string& what)
      : error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace hypergeo
