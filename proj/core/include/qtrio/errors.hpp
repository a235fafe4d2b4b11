#pragma once

#include <stdexcept>
#include <string>

namespace qtrio {

/// A denominator q-Pochhammer factor vanished before summation started.
/// `param_index` identifies the lower parameter (the implicit (q;q)_k factor
/// gets index = number of explicit lower parameters), `k` the first length
/// at which the factor is zero.
class PoleError : public std::runtime_error {
 public:
  PoleError(int param_index, int k, const std::string& what)
      : std::runtime_error(what), param_index_(param_index), k_(k) {}
  int param_index() const { return param_index_; }
  int k() const { return k_; }

 private:
  int param_index_;
  int k_;
};

/// A named denominator factor of the parameter variety vanished.
class GenericityError : public std::runtime_error {
 public:
  explicit GenericityError(const std::string& factor)
      : std::runtime_error("genericity violated: " + factor), factor_(factor) {}
  const std::string& factor() const { return factor_; }

 private:
  std::string factor_;
};

/// Favard-style nondegeneracy failed when assembling an LP from family data.
class NondegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Battery resampling gave up after the configured number of attempts.
class GenericityExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qtrio
