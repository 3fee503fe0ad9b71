#pragma once

#include <stdexcept>
#include <string>

namespace hdvar {

/// Operand shapes do not agree (e.g. beta length != design columns).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The two hypotheses have equal total variance, so the posterior is flat
/// and no informative decision exists.
class DegenerateHypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

inline void require_dims(bool ok, const std::string& what) {
  if (!ok) throw DimensionError(what);
}

}  // namespace detail
}  // namespace hdvar
