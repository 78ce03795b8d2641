#include "hardball/packing.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hardball/sampler.hpp"

namespace hardball {

namespace {

constexpr double kRoot3 = 1.7320508075688772;

// Lattice points are anchor + i*(2 rho, 0) + j*(rho, rho sqrt(3)): column j
// sits at x_2 = anchor_2 + j rho sqrt(3) and holds discs every 2 rho along
// the first axis, offset by rho on odd columns. Bands are x_1 windows of
// width 2 rho, each holding at most one disc per column.
long scan_band(const HoneycombSpec& h, const Vessel& vessel, long band,
               long j_lo, long j_hi, std::vector<std::array<double, 2>>& out,
               long budget) {
  long added = 0;
  double c[2];
  const double band_lo = h.anchor[0] + 2.0 * h.rho * double(band);
  for (long j = j_lo; j <= j_hi && added < budget; ++j) {
    c[1] = h.anchor[1] + h.rho * kRoot3 * double(j);
    // The unique i with x_1 in [band_lo, band_lo + 2 rho).
    const double offset = h.rho * double(j);
    const long i = long(std::ceil((2.0 * h.rho * double(band) - offset) /
                                      (2.0 * h.rho) -
                                  1e-12));
    c[0] = h.anchor[0] + offset + 2.0 * h.rho * double(i);
    if (c[0] >= band_lo + 2.0 * h.rho - 1e-12 * h.rho) continue;
    if (vessel.contains_ball(std::span<const double>(c, 2), h.rho)) {
      out.push_back({c[0], c[1]});
      ++added;
    }
  }
  return added;
}

}  // namespace

std::vector<std::array<double, 2>> honeycomb_in_region(const HoneycombSpec& h,
                                                       const Vessel& vessel,
                                                       long count_limit) {
  if (vessel.dim != 2)
    throw std::invalid_argument("honeycomb_in_region needs d = 2");
  if (h.rho <= 0) throw std::invalid_argument("rho must be > 0");
  if (count_limit < 0) throw std::invalid_argument("count_limit must be >= 0");

  std::vector<double> lo, hi;
  vessel.lateral_bounds(0.0, lo, hi);
  const long j_lo =
      long(std::ceil((lo[0] + h.rho - h.anchor[1]) / (h.rho * kRoot3) - 1e-12));
  const long j_hi = long(
      std::floor((hi[0] - h.rho - h.anchor[1]) / (h.rho * kRoot3) + 1e-12));
  std::vector<std::array<double, 2>> out;
  if (j_lo > j_hi) return out;

  constexpr long kMaxEmptyBands = 64;  // tolerate gaps near a rough floor
  constexpr long kMaxBands = 1 << 22;
  const long budget = count_limit + 2 * (j_hi - j_lo + 1);
  // Below the anchor the vessel floor terminates the scan, so that side is
  // enumerated exhaustively; above, the count limit caps it (plus one band
  // of slack so truncation keeps the lowest discs).
  long empty = 0;
  for (long step = 1; step < kMaxBands && long(out.size()) < budget; ++step) {
    empty = scan_band(h, vessel, -step, j_lo, j_hi, out, budget) ? 0 : empty + 1;
    if (empty > kMaxEmptyBands) break;
  }
  empty = 0;
  for (long step = 0; step < kMaxBands && long(out.size()) < budget; ++step) {
    empty = scan_band(h, vessel, step, j_lo, j_hi, out, budget) ? 0 : empty + 1;
    if (empty > kMaxEmptyBands) break;
  }
  std::sort(out.begin(), out.end());
  if (long(out.size()) > count_limit) out.resize(std::size_t(count_limit));
  return out;
}

std::vector<std::array<double, 2>> lowest_n(
    std::span<const std::array<double, 2>> centers, std::size_t n) {
  if (n > centers.size())
    throw std::invalid_argument("asked for more centers than provided");
  std::vector<std::size_t> idx(centers.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return centers[a] < centers[b];
  });
  std::vector<std::array<double, 2>> out;
  out.reserve(std::min(n, centers.size()));
  for (std::size_t i = 0; i < idx.size() && out.size() < n; ++i)
    out.push_back(centers[idx[i]]);
  return out;
}

Configuration compact_down(const ModelSpec& spec, Configuration cfg) {
  spec.validate();
  if (!is_valid(spec, cfg))
    throw std::invalid_argument("configuration is invalid");
  const int n = spec.n();
  const int d = spec.d;
  std::vector<double> lat(d - 1);
  std::vector<int> order(n);

  for (int pass = 0; pass < 1000; ++pass) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return cfg.center(a)[0] < cfg.center(b)[0];
    });
    double moved = 0.0;
    for (int k : order) {
      auto ck = cfg.center(k);
      const double r = spec.radii[k];
      for (int i = 1; i < d; ++i) lat[i - 1] = ck[i];
      double target = spec.vessel.floor_height(lat, r);
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        auto cj = cfg.center(j);
        double dlat2 = 0.0;
        for (int i = 1; i < d; ++i) {
          const double t = ck[i] - cj[i];
          dlat2 += t * t;
        }
        const double rsum = r + spec.radii[j];
        if (dlat2 >= rsum * rsum) continue;
        // Resting height against j, nudged so strict overlap checks pass.
        const double rest = cj[0] + std::sqrt(rsum * rsum - dlat2) + 1e-12;
        if (rest <= ck[0] + 1e-12) target = std::max(target, rest);
      }
      if (target < ck[0]) {
        moved = std::max(moved, ck[0] - target);
        ck[0] = target;
      }
    }
    if (moved <= 1e-9) break;
  }
  if (!is_valid(spec, cfg))
    throw std::runtime_error("compaction produced an invalid configuration");
  return cfg;
}

C1Result c1_estimate(const ModelSpec& spec, int restarts,
                     std::span<const double> lambda_schedule,
                     long sweeps_per_stage, std::uint64_t seed) {
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  C1Result best;
  bool have = false;
  for (int i = 0; i < restarts; ++i) {
    AnnealResult a =
        anneal(spec, lambda_schedule, sweeps_per_stage, seed + std::uint64_t(i));
    for (Configuration* cand : {&a.best_cfg, &a.final_cfg}) {
      Configuration packed = compact_down(spec, std::move(*cand));
      const double w = weighted_cm(spec, packed);
      if (!have || w < best.value) {
        best.value = w;
        best.argmin = std::move(packed);
        have = true;
      }
    }
  }
  return best;
}

}  // namespace hardball
