#pragma once

namespace meancycle {

// regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a);
// series for x < a+1, continued fraction otherwise; relative accuracy
// near machine epsilon for moderate a
double gamma_p(double a, double x);

} // namespace meancycle
