#include "cardvote/fit.hpp"

#include <cmath>
#include <vector>

#include "cardvote/errors.hpp"

namespace cardvote {

SlopeFit fit_slope(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw DataError("slope fit needs at least 3 points");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto [m, r] = points[i];
    if (i > 0 && !(m > points[i - 1].first)) throw DataError("m must be strictly increasing");
    if (!(m > 0)) throw DataError("m must be positive");
    if (!(r > 0)) throw DataError("ratio must be positive to take its logarithm");
    xs.push_back(std::log(m));
    ys.push_back(std::log(r));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  SlopeFit fit{};
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double e = ys[i] - (fit.intercept + fit.slope * xs[i]);
    rss += e * e;
  }
  fit.residual = std::sqrt(rss / n);
  return fit;
}

}  // namespace cardvote
