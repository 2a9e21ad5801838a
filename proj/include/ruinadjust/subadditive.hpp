#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ruinadjust/processes.hpp"

namespace ruinadjust {

// A finite sequence h(1)..h(N) with its approximate-subadditivity allowance
// Delta(1)..Delta(N): h(n+m) <= h(n) + h(m) + Delta(n+m) is the hypothesis.
// Delta must be non-decreasing.
struct SubadditiveSeq {
  std::vector<double> h;      // h[i] is h(i+1)
  std::vector<double> delta;  // delta[i] is Delta(i+1)
};

void validate(const SubadditiveSeq& seq);  // throws SpecError

struct LimitEstimate {
  double lambda_hat = 0.0;           // h(N)/N
  std::vector<int> m_values;         // 1..floor(N/2)
  std::vector<double> bound_at_m;    // upper bound on the limit at each m
  bool tail_exact = false;           // trailing Delta constant: closed-form tail used
  bool violation_found = false;      // some pair broke the hypothesis beyond
                                     // rounding slack (1e-12 x the h scale)
  int violation_n = 0;
  int violation_m = 0;
  double worst_violation = 0.0;      // max over pairs of h(n+m)-h(n)-h(m)-Delta(n+m)
};

// Evaluates lambda_hat = h(N)/N and, for each m <= N/2, the bound
//   h(m)/m - Delta(m)/m + 4 * sum_{r=2m..N} Delta(r)/(r(r+1))  [+ tail]
// where the tail beyond N is Delta(N)/(N+1) when Delta is constant over its
// trailing quarter (at least 2 entries), else omitted (truncated sum only,
// flagged via tail_exact = false). Every (n, m) pair with n + m <= N is also
// scanned for violations of the subadditivity hypothesis. Requires N >= 4.
LimitEstimate estimate_limit(const SubadditiveSeq& seq);

// Monte Carlo check that the exponential moments of prefix sums factorize up
// to the e^{4tD} allowance.
struct CgfSubadditivityCheck {
  double t = 0.0;
  double shift_bound = 0.0;        // the D actually used
  int n_max = 0;
  int reps = 0;
  std::vector<double> log_mgf;     // index n-1 holds log E-hat e^{t S_n}
  std::vector<double> se_log;      // delta-method standard error of each entry
  int worst_n = 0;                 // pair maximizing margin - noise
  int worst_m = 0;
  double worst_margin = 0.0;       // log E-hat[n+m] - log E-hat[n] - log E-hat[m] - 4tD
  double worst_noise = 0.0;        // 3 x summed standard errors at that pair
  bool violated = false;           // worst_margin > worst_noise
};

// Estimates log E e^{t S_n} for n = 1..n_max from `reps` independent paths
// (one level-split seed per replication) and scans all pairs n + m <= n_max.
// shift_bound < 0 selects a model default for D: 0 for IID, |a| E|eps| for
// MA1, |a|/(1-|a|) E|eps| for AR1; other models need an explicit value.
CgfSubadditivityCheck check_cgf_subadditivity(const ModelSpec& spec, double t,
                                              int n_max, std::uint64_t seed,
                                              int reps = 4000,
                                              double shift_bound = -1.0);

}  // namespace ruinadjust
