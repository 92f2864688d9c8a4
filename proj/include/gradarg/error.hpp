#ifndef GRADARG_ERROR_HPP
#define GRADARG_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace gradarg {

enum class ErrorKind {
  duplicate_id,
  unknown_id,
  missing_argument,
  weight_out_of_range,
  syntax_error,
  dimension_mismatch,
  invalid_parameter,
  negative_coefficient,
  empty_combination,
  unsupported_kernel,
  malformed_file,
  not_an_isomorphism,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::duplicate_id: return "duplicate-id";
    case ErrorKind::unknown_id: return "unknown-id";
    case ErrorKind::missing_argument: return "missing-argument";
    case ErrorKind::weight_out_of_range: return "weight-out-of-range";
    case ErrorKind::syntax_error: return "syntax-error";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::negative_coefficient: return "negative-coefficient";
    case ErrorKind::empty_combination: return "empty-combination";
    case ErrorKind::unsupported_kernel: return "unsupported-kernel";
    case ErrorKind::malformed_file: return "malformed-file";
    case ErrorKind::not_an_isomorphism: return "not-an-isomorphism";
  }
  return "unknown";
}

/// Every precondition failure in the library is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

namespace detail {

inline void require_same_size(std::size_t got, std::size_t expected, std::string_view what) {
  if (got != expected) {
    throw Error(ErrorKind::dimension_mismatch, std::string(what) + " has " + std::to_string(got) +
                                                   " entries, expected " + std::to_string(expected));
  }
}

}  // namespace detail
}  // namespace gradarg

#endif  // GRADARG_ERROR_HPP
