#pragma once

#include <string>
#include <vector>

#include "ruinadjust/adjust.hpp"
#include "ruinadjust/empirical.hpp"
#include "ruinadjust/processes.hpp"
#include "ruinadjust/ruin.hpp"

namespace ruinadjust {

// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double x);

// Single-column format, header `x`, one value per row. Ingestion rejects
// missing/multi-column/non-numeric/non-finite rows with guidance (SpecError);
// an unreadable file is an IoError. At least 2 data rows are required.
Sample read_sample_csv(const std::string& path);
void write_sample_csv(const std::string& path, const std::vector<double>& values);

// Header `t,value,bounded`; value column is empty on unbounded rows.
void write_curve_csv(const std::string& path, const CgfCurve& curve);

// Header `r,w_hat,ci_lo,ci_hi`; failed fits leave the numeric fields empty.
void write_trace_csv(const std::string& path, const RSelection& selection);

// Header `u,ruin_freq,stderr,mean_ruin_time`.
void write_ruin_csv(const std::string& path, const RuinStudy& study);

// Header `w_hat`, one successful replicate per row, replicate order.
void write_replicates_csv(const std::string& path, const std::vector<double>& values);

}  // namespace ruinadjust
