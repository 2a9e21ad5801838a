#include "ruinadjust/ruin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace ruinadjust {

namespace {

double quiet_nan() { return std::numeric_limits<double>::quiet_NaN(); }

// Per-chunk accumulators; merged in chunk order so the totals are independent
// of how chunks were assigned to threads.
struct ChunkAcc {
  std::vector<long> ruin_count;
  std::vector<double> time_sum;       // first-passage times
  std::vector<double> overshoot_sum;  // e^{w (Y_T - u)} at first passage
  long solvent_drifting = 0;

  explicit ChunkAcc(std::size_t n_u)
      : ruin_count(n_u, 0), time_sum(n_u, 0.0), overshoot_sum(n_u, 0.0) {}
};

}  // namespace

RuinStudy simulate_ruin(const ModelSpec& spec, const std::vector<double>& u_grid,
                        long horizon, long paths, std::uint64_t seed,
                        unsigned threads) {
  validate(spec);
  if (horizon < 1) throw SpecError("simulate_ruin: horizon must be at least 1");
  if (paths < 100) throw SpecError("simulate_ruin: need at least 100 paths");
  if (u_grid.empty()) throw SpecError("simulate_ruin: empty reserve grid");
  for (std::size_t i = 0; i < u_grid.size(); ++i) {
    if (!(u_grid[i] >= 0.0) || !std::isfinite(u_grid[i])) {
      throw SpecError("simulate_ruin: reserves must be non-negative and finite");
    }
    if (i > 0 && !(u_grid[i] > u_grid[i - 1])) {
      throw SpecError("simulate_ruin: reserve grid must be strictly increasing");
    }
  }

  const std::size_t n_u = u_grid.size();
  // Overshoot diagnostic only where the exact-formula reasoning applies.
  const bool track_overshoot = spec.kind == ModelKind::IID;
  const double w_ref = track_overshoot ? analytic_w_iid(spec.innovation) : 0.0;

  constexpr long kChunk = 4096;
  const long n_chunks = (paths + kChunk - 1) / kChunk;
  std::vector<ChunkAcc> chunks(static_cast<std::size_t>(n_chunks), ChunkAcc(n_u));

  auto run_chunk = [&](long chunk_idx) {
    ChunkAcc& acc = chunks[static_cast<std::size_t>(chunk_idx)];
    const long first = chunk_idx * kChunk;
    const long last = std::min(paths, first + kChunk);
    for (long p = first; p < last; ++p) {
      ModelPath path(spec, split_seed(seed, static_cast<std::uint64_t>(p)));
      double y = 0.0;
      std::size_t next_u = 0;  // smallest reserve not yet crossed
      for (long n = 1; n <= horizon && next_u < n_u; ++n) {
        y += path.next();
        while (next_u < n_u && y > u_grid[next_u]) {
          acc.ruin_count[next_u] += 1;
          acc.time_sum[next_u] += static_cast<double>(n);
          if (track_overshoot) {
            acc.overshoot_sum[next_u] += std::exp(w_ref * (y - u_grid[next_u]));
          }
          ++next_u;
        }
      }
      // Paths that never reached the largest reserve ran the full horizon, so
      // y is the terminal surplus; below zero means drifting away from ruin.
      if (next_u < n_u && y < 0.0) acc.solvent_drifting += 1;
    }
  };

  unsigned n_threads = threads == 0 ? std::thread::hardware_concurrency() : threads;
  if (n_threads == 0) n_threads = 1;
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(n_chunks));
  if (n_threads <= 1) {
    for (long ci = 0; ci < n_chunks; ++ci) run_chunk(ci);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned th = 0; th < n_threads; ++th) {
      pool.emplace_back([&, th] {
        for (long ci = static_cast<long>(th); ci < n_chunks;
             ci += static_cast<long>(n_threads)) {
          run_chunk(ci);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  RuinStudy study;
  study.u_grid = u_grid;
  study.horizon = horizon;
  study.paths = paths;
  study.ruin_count.assign(n_u, 0);
  study.ruin_freq.assign(n_u, 0.0);
  study.freq_stderr.assign(n_u, 0.0);
  study.ruin_time_mean.assign(n_u, quiet_nan());
  study.overshoot_factor.assign(n_u, quiet_nan());
  study.overshoot_w = w_ref;

  long solvent_drifting = 0;
  std::vector<double> time_sum(n_u, 0.0), overshoot_sum(n_u, 0.0);
  for (const ChunkAcc& acc : chunks) {
    for (std::size_t i = 0; i < n_u; ++i) {
      study.ruin_count[i] += acc.ruin_count[i];
      time_sum[i] += acc.time_sum[i];
      overshoot_sum[i] += acc.overshoot_sum[i];
    }
    solvent_drifting += acc.solvent_drifting;
  }
  study.solvent_drifting_frac =
      static_cast<double>(solvent_drifting) / static_cast<double>(paths);

  for (std::size_t i = 0; i < n_u; ++i) {
    const double p = static_cast<double>(study.ruin_count[i]) / static_cast<double>(paths);
    study.ruin_freq[i] = p;
    study.freq_stderr[i] = std::sqrt(p * (1.0 - p) / static_cast<double>(paths));
    if (study.ruin_count[i] > 0) {
      study.ruin_time_mean[i] = time_sum[i] / static_cast<double>(study.ruin_count[i]);
      if (track_overshoot) {
        study.overshoot_factor[i] =
            overshoot_sum[i] / static_cast<double>(study.ruin_count[i]);
      }
    }
  }

  // Least-squares fit of log frequency on u, restricted to reserves with at
  // least 25 ruined paths so the log is not MC-noise dominated.
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < n_u; ++i) {
    if (study.ruin_count[i] >= 25) {
      xs.push_back(u_grid[i]);
      ys.push_back(std::log(study.ruin_freq[i]));
    }
  }
  study.slope_points = static_cast<int>(xs.size());
  if (xs.size() >= 2) {
    const std::size_t m = xs.size();
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      sx += xs[i];
      sy += ys[i];
    }
    const double mx = sx / static_cast<double>(m), my = sy / static_cast<double>(m);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      sxx += (xs[i] - mx) * (xs[i] - mx);
      sxy += (xs[i] - mx) * (ys[i] - my);
    }
    study.slope_fit = sxy / sxx;
    study.slope_defined = true;
    if (m > 2) {
      const double intercept = my - study.slope_fit * mx;
      double ss_res = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        const double resid = ys[i] - (intercept + study.slope_fit * xs[i]);
        ss_res += resid * resid;
      }
      study.slope_stderr =
          std::sqrt(ss_res / static_cast<double>(m - 2)) / std::sqrt(sxx);
    } else {
      study.slope_stderr = quiet_nan();
    }
  } else {
    study.slope_fit = quiet_nan();
    study.slope_stderr = quiet_nan();
    study.slope_defined = false;
  }
  return study;
}

LundbergCheck lundberg_check(const RuinStudy& study, double w_ref, double tol) {
  if (!study.slope_defined) {
    throw EstimationError("lundberg_check: study has no defined decay slope");
  }
  if (!(tol > 0.0)) throw SpecError("lundberg_check: tolerance must be positive");
  LundbergCheck check;
  check.w_ref = w_ref;
  check.tol = tol;
  check.abs_diff = std::abs(-study.slope_fit - w_ref);
  check.pass = check.abs_diff <= tol;
  return check;
}

}  // namespace ruinadjust
