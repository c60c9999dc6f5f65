#ifndef GRAPHLIM_ERROR_HPP
#define GRAPHLIM_ERROR_HPP

#include <cstdio>
#include <stdexcept>
#include <string>

namespace graphlim {

/// Raised when an exact computation would exceed a configured size or work
/// bound. `bound()` names the limit that was hit.
class BoundExceeded : public std::runtime_error {
 public:
  BoundExceeded(std::string bound, const std::string& detail)
      : std::runtime_error(bound + ": " + detail), bound_(std::move(bound)) {}

  const std::string& bound() const { return bound_; }

 private:
  std::string bound_;
};

/// Work amounts in bound messages, e.g. "8.1e+09".
inline std::string work_text(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

}  // namespace graphlim

#endif  // GRAPHLIM_ERROR_HPP
