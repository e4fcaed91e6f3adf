#pragma once

#include <cmath>
#include <vector>

#include "volent/errors.hpp"

namespace volent {

struct LineFit {
  double slope = 0;
  double intercept = 0;
  double residual_rms = 0;
};

/// Ordinary least squares for y = slope*x + intercept.
inline LineFit fit_line(const std::vector<double>& xs,
                        const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw ParameterOutOfRangeError("fit: need at least two points");
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double denom = n * sxx - sx * sx;
  LineFit fit;
  if (denom == 0) {
    fit.slope = 0;
    fit.intercept = sy / n;
  } else {
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
  }
  double ss = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
    ss += r * r;
  }
  fit.residual_rms = std::sqrt(ss / n);
  return fit;
}

}  // namespace volent
