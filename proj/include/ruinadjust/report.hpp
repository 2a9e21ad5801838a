#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ruinadjust/adjust.hpp"
#include "ruinadjust/empirical.hpp"
#include "ruinadjust/processes.hpp"
#include "ruinadjust/rootfind.hpp"
#include "ruinadjust/ruin.hpp"
#include "ruinadjust/subadditive.hpp"

namespace ruinadjust {

// Every JSON report carries {"schema_version": 1, "report_type": <name>} and
// validates against schemas/report.schema.json shipped in the repo.
inline constexpr int kSchemaVersion = 1;

nlohmann::json existence_to_json(const ExistenceReport& report);
nlohmann::json estimate_to_json(const AdjustmentEstimate& est);

// report_type "estimate": independent and block estimates side by side.
// Either half may instead carry {"error": ..., "existence": {...}} when that
// stage failed; `w_i_json`/`w_d_json` are passed in pre-built for that reason.
nlohmann::json estimate_report(const nlohmann::json& w_i_json,
                               const nlohmann::json& w_d_json,
                               const std::string& input_origin);

// report_type "select_r".
nlohmann::json select_r_report(const RSelection& selection,
                               const std::string& input_origin);

// report_type "mc_study".
nlohmann::json mc_study_report(const McStudy& study, const ModelSpec& spec,
                               std::size_t n, int r, std::uint64_t master_seed);

// report_type "ruin".
nlohmann::json ruin_report(const RuinStudy& study, const ModelSpec& spec,
                           std::uint64_t seed);

// report_type "subadd_check".
nlohmann::json subadd_check_report(const CgfSubadditivityCheck& check,
                                   const ModelSpec& spec, std::uint64_t seed);

// Summary of an empirical scaled-cumulant curve whose values live in the CSV
// at `csv_path`. `grid_rule` records how the grid was chosen (e.g. the
// default "[0, 1.5*w_hat_i], 101 points" rule or "explicit").
nlohmann::json curve_summary(const CgfCurve& curve, double t_max,
                             const std::string& grid_rule,
                             const std::string& csv_path);

// report_type "curve": curve_summary plus the standard header and input origin.
nlohmann::json curve_report(const CgfCurve& curve, const std::string& input_origin,
                            double t_max, const std::string& grid_rule,
                            const std::string& csv_path);

// report_type "simulate_meta": provenance sidecar for a simulated sample CSV.
nlohmann::json simulate_meta_report(const ModelSpec& spec, std::size_t n,
                                    std::uint64_t seed,
                                    const std::string& csv_path);

// Serializes with 2-space indentation and a trailing newline. IoError on
// failure to write.
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace ruinadjust
