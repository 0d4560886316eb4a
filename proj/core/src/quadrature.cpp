#include "meancycle/quadrature.hpp"

#include <cmath>
#include <queue>
#include <vector>

namespace meancycle {

namespace {

// 15-point Kronrod nodes on [-1,1] with embedded 7-point Gauss rule
constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Segment {
  double lo, hi, value, err;
  bool operator<(const Segment& o) const { return err < o.err; }
};

Segment eval_gk15(const std::function<double(double)>& f, double lo, double hi) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double fk[15];
  for (int i = 0; i < 7; ++i) {
    fk[i] = f(mid - half * xgk[i]);
    fk[14 - i] = f(mid + half * xgk[i]);
  }
  fk[7] = f(mid);
  double kronrod = 0.0;
  for (int i = 0; i < 7; ++i) kronrod += wgk[i] * (fk[i] + fk[14 - i]);
  kronrod += wgk[7] * fk[7];
  kronrod *= half;
  // Gauss points are the odd-indexed Kronrod points
  double gauss = wg[3] * fk[7];
  gauss += wg[0] * (fk[1] + fk[13]);
  gauss += wg[1] * (fk[3] + fk[11]);
  gauss += wg[2] * (fk[5] + fk[9]);
  gauss *= half;
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

} // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                                    double abs_tol, int max_segments) {
  QuadratureResult out;
  if (lo == hi) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Segment> queue;
  queue.push(eval_gk15(f, lo, hi));
  out.segments = 1;
  double total_err = queue.top().err;
  while (total_err > abs_tol && out.segments < max_segments) {
    const Segment worst = queue.top();
    queue.pop();
    total_err -= worst.err;
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) {
      // interval at floating-point resolution, keep as is
      queue.push({worst.lo, worst.hi, worst.value, 0.0});
      continue;
    }
    const Segment left = eval_gk15(f, worst.lo, mid);
    const Segment right = eval_gk15(f, mid, worst.hi);
    total_err += left.err + right.err;
    queue.push(left);
    queue.push(right);
    ++out.segments;
  }
  double total = 0.0;
  while (!queue.empty()) {
    total += queue.top().value;
    queue.pop();
  }
  out.value = total;
  out.error_estimate = total_err;
  out.converged = total_err <= abs_tol;
  return out;
}

} // namespace meancycle
