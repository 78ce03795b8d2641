#ifndef HARDBALL_DIAGNOSTICS_HPP_
#define HARDBALL_DIAGNOSTICS_HPP_

#include <functional>
#include <span>

namespace hardball {

// Integrated autocorrelation of a scalar chain, with the convention
// tau = sum_{t >= 1} rho_t, so an i.i.d. series has tau ~ 0 and an AR(1)
// series with coefficient phi has tau ~ phi / (1 - phi).
struct AcfResult {
  double tau = 0.0;
  double ess = 0.0;       // n / (2 tau + 1)
  bool converged = true;  // false if no admissible window was found
};

// Adaptive-window estimate: the window W is the smallest lag with
// W >= 5 * tau_W, capped at n / 3. A (numerically) constant series is
// reported as not converged with ess = 1.
AcfResult autocorrelation(std::span<const double> x);

double mean(std::span<const double> x);
double variance(std::span<const double> x);  // unbiased, 0 for n < 2

// Standard error of the mean of a correlated series: sd * sqrt((2 tau + 1)/n).
double correlated_sem(std::span<const double> x);

// Kolmogorov-Smirnov distance sup |F_n - F| between the empirical law of the
// sample and the given cdf. The sample need not be sorted.
double ks_distance(std::span<const double> sample,
                   const std::function<double(double)>& cdf);

struct WilsonInterval {
  double lo = 0.0, hi = 1.0;
};

// Wilson score interval for a binomial proportion; n_eff may be fractional
// (e.g. an effective sample size).
WilsonInterval wilson(double successes, double n_eff, double z = 1.959963985);

}  // namespace hardball

#endif  // HARDBALL_DIAGNOSTICS_HPP_
