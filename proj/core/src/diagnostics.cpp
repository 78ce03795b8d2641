#include "hardball/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hardball {

double mean(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("empty series");
  double s = 0.0;
  for (double v : x) s += v;
  return s / double(x.size());
}

double variance(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / double(n - 1);
}

AcfResult autocorrelation(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 4) return {0.0, 1.0, false};
  const double m = mean(x);
  double c0 = 0.0;
  for (double v : x) c0 += (v - m) * (v - m);
  c0 /= double(n);
  AcfResult r;
  if (c0 <= 1e-300) {  // constant series carries no information
    r.tau = double(n);
    r.ess = 1.0;
    r.converged = false;
    return r;
  }

  const std::size_t w_max = n / 3;
  double tau = 0.0;
  bool found = false;
  for (std::size_t w = 1; w <= w_max; ++w) {
    double c = 0.0;
    for (std::size_t i = 0; i + w < n; ++i) c += (x[i] - m) * (x[i + w] - m);
    tau += c / (double(n) * c0);
    if (double(w) >= 5.0 * tau) {
      found = true;
      r.tau = tau;
      break;
    }
  }
  if (!found) r.tau = tau;
  r.tau = std::max(r.tau, 0.0);
  r.ess = double(n) / (2.0 * r.tau + 1.0);
  r.converged = found;
  return r;
}

double correlated_sem(std::span<const double> x) {
  const AcfResult a = autocorrelation(x);
  return std::sqrt(variance(x) * (2.0 * a.tau + 1.0) / double(x.size()));
}

double ks_distance(std::span<const double> sample,
                   const std::function<double(double)>& cdf) {
  if (sample.empty()) throw std::invalid_argument("empty sample");
  std::vector<double> s(sample.begin(), sample.end());
  std::sort(s.begin(), s.end());
  const double n = double(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = cdf(s[i]);
    d = std::max(d, std::abs(double(i + 1) / n - f));
    d = std::max(d, std::abs(f - double(i) / n));
  }
  return d;
}

WilsonInterval wilson(double successes, double n_eff, double z) {
  if (n_eff <= 0) return {0.0, 1.0};
  const double p = std::clamp(successes / n_eff, 0.0, 1.0);
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n_eff;
  const double center = (p + z2 / (2.0 * n_eff)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n_eff + z2 / (4.0 * n_eff * n_eff)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

}  // namespace hardball
