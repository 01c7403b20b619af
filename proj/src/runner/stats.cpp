#include <algorithm>
#include <cmath>
#include <set>

#include <boost/math/statistics/linear_regression.hpp>
#include <boost/math/statistics/univariate_statistics.hpp>

#include "steerkit/runner.hpp"

namespace steerkit::runner {

namespace bstat = boost::math::statistics;

std::size_t freedman_diaconis_bins(const std::vector<double> &values) {
  if (values.size() < 2) return 1;
  std::vector<double> v = values;
  const double iqr = bstat::interquartile_range(v);
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double range = *hi - *lo;
  if (range <= 0) return 1;
  if (iqr <= 0) return std::max<std::size_t>(1, std::size_t(std::ceil(std::sqrt(double(v.size())))));
  const double width = 2 * iqr / std::cbrt(double(v.size()));
  return std::max<std::size_t>(1, std::size_t(std::ceil(range / width)));
}

Histogram histogram(const std::vector<double> &values, const std::string &label, std::size_t n,
                    std::optional<std::size_t> bins) {
  Histogram h;
  h.label = label;
  h.n = n;
  h.total = values.size();
  if (values.empty()) return h;
  std::vector<double> v = values;
  const std::size_t k = bins.value_or(freedman_diaconis_bins(v));
  double lo = *std::min_element(v.begin(), v.end()), hi = *std::max_element(v.begin(), v.end());
  if (hi <= lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  h.edges.resize(k + 1);
  for (std::size_t i = 0; i <= k; ++i) h.edges[i] = lo + (hi - lo) * double(i) / double(k);
  h.counts.assign(k, 0);
  for (double x : v) {
    auto b = std::size_t(std::floor((x - lo) / (hi - lo) * double(k)));
    h.counts[std::min(b, k - 1)] += 1;
  }
  h.mean = bstat::mean(v);
  h.std = v.size() > 1 ? std::sqrt(bstat::sample_variance(v)) : 0.0;
  return h;
}

json to_json(const Histogram &h) {
  json e = json::array(), c = json::array();
  for (double x : h.edges) e.push_back(number(x));
  for (auto x : h.counts) c.push_back(x);
  return {{"label", h.label}, {"n", h.n},     {"edges", e},        {"counts", c},
          {"mean", number(h.mean)}, {"std", number(h.std)}, {"total", h.total}, {"normalized", h.normalized}};
}

LinearFit least_squares(const std::vector<double> &x, const std::vector<double> &y) {
  if (x.size() != y.size()) throw std::invalid_argument("least_squares: size mismatch");
  if (std::set<double>(x.begin(), x.end()).size() < 2) throw std::runtime_error("least_squares: degenerate fit");
  LinearFit f;
  f.points = x.size();
  auto [c0, c1, r2] = bstat::simple_ordinary_least_squares_with_R_squared(x, y);
  f.intercept = c0;
  f.slope = c1;
  f.r2 = r2;
  return f;
}

SizeSummary summarize(std::size_t n, const std::vector<double> &values) {
  SizeSummary s;
  s.n = n;
  s.count = values.size();
  if (values.empty()) return s;
  s.mean = bstat::mean(values);
  s.variance = values.size() > 1 ? bstat::sample_variance(values) : 0.0;
  return s;
}

namespace {

LinearFit log_fit(const std::vector<SizeSummary> &sizes, bool use_variance, int parity) {
  std::vector<double> x, y;
  for (auto &s : sizes) {
    if (parity >= 0 && int(s.n % 2) != parity) continue;
    const double v = use_variance ? s.variance : s.mean;
    if (!(v > 0)) continue;
    x.push_back(std::log(double(s.n)));
    y.push_back(std::log(v));
  }
  return least_squares(x, y);
}

}  // namespace

ScalingFit scaling_fit(const std::vector<SizeSummary> &sizes, bool split_parity) {
  std::set<std::size_t> distinct;
  for (auto &s : sizes) distinct.insert(s.n);
  if (distinct.size() < 3) throw std::runtime_error("scaling_fit: needs at least three system sizes");
  ScalingFit f;
  f.mean = log_fit(sizes, false, -1);
  try {
    f.variance = log_fit(sizes, true, -1);
  } catch (const std::runtime_error &) {
    f.variance = LinearFit{};
  }
  if (split_parity) {
    for (int parity : {1, 0}) {
      try {
        auto fit = log_fit(sizes, false, parity);
        (parity ? f.odd_mean : f.even_mean) = fit;
      } catch (const std::runtime_error &) {
      }
    }
  }
  return f;
}

json to_json(const ScalingFit &f) {
  auto lf = [](const LinearFit &l) {
    return json{{"exponent", number(l.slope)}, {"log_prefactor", number(l.intercept)}, {"r2", number(l.r2)},
                {"points", l.points}};
  };
  json j{{"mean", lf(f.mean)}, {"variance", lf(f.variance)}};
  if (f.odd_mean) j["odd_mean"] = lf(*f.odd_mean);
  if (f.even_mean) j["even_mean"] = lf(*f.even_mean);
  return j;
}

}  // namespace steerkit::runner
