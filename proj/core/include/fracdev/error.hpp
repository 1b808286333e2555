#pragma once

#include <stdexcept>
#include <string>

namespace fracdev {

/// Error raised by every fracdev operation. `code()` is a stable,
/// machine-readable identifier (e.g. "invalid_argument", "empty_sample");
/// `what()` names the violated condition.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message);

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

namespace errc {
inline constexpr const char* invalid_argument = "invalid_argument";
inline constexpr const char* empty_sample = "empty_sample";
inline constexpr const char* gaussian_tail = "gaussian_tail";
inline constexpr const char* off_grid = "off_grid";
inline constexpr const char* non_dyadic = "non_dyadic";
inline constexpr const char* quadrature = "quadrature_nonconvergence";
inline constexpr const char* not_applicable = "not_applicable";
inline constexpr const char* degenerate_design = "degenerate_design";
inline constexpr const char* io = "io";
}  // namespace errc

/// Throws Error(code, message) unless `condition` holds.
void require(bool condition, const char* code, const std::string& message);

}  // namespace fracdev
