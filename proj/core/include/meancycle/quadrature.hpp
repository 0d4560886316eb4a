#pragma once
#include <functional>

namespace meancycle {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int segments = 0;
  bool converged = false;
};

// globally adaptive Gauss-Kronrod 7/15: repeatedly bisects the segment
// with the largest error estimate until the summed estimate falls under
// abs_tol or the segment budget runs out
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                    double abs_tol, int max_segments = 2000);

} // namespace meancycle
