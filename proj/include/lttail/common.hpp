#ifndef LTTAIL_COMMON_HPP
#define LTTAIL_COMMON_HPP

#include <stdexcept>
#include <string>

namespace lttail {

enum class ErrorCode {
  invalid_argument = 1,  // bad construction parameters
  domain = 2,            // input outside an operation's domain
  accuracy = 3,          // numerical routine failed to meet tolerance
  unsupported = 4,       // operation not defined for this model
  no_solution = 5        // root bracketing / solver failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Neumaier-compensated accumulator for long Monte Carlo sums.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace lttail

#endif
