#ifndef FORTREND_REPORT_HPP
#define FORTREND_REPORT_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fortrend/fitjoint.hpp"
#include "fortrend/forecast.hpp"
#include "fortrend/scoring.hpp"

namespace fortrend {

using json = nlohmann::ordered_json;

inline constexpr int report_schema_version = 1;
inline constexpr const char* tool_name = "fortrend";
inline constexpr const char* tool_version = "1.0.0";

json to_json(const FoRModel& m, const GaugeRecord& gauge);
json to_json(const TemporalModel& tm);
json to_json(const FitResult& res);
json to_json(const ScoreReport& s);
json to_json(const GapReport& g);

/// Full run report: dataset summary, config echo (enough to reproduce the
/// run bit-identically), per-variant fit + score, rankings, and the
/// parameter-counting ledger.
json run_report(const Dataset& d, const FitConfig& cfg, BicMode mode,
                const std::vector<VariantOutcome>& outcomes,
                const std::vector<std::pair<Variant, ScoreReport>>& scores,
                const std::vector<RankEntry>& ranking);

/// Residual table as CSV: year,observed,predicted,residual.
std::string residuals_csv(const FitResult& res);

/// Summary-table-shaped CSV: variant,alpha1..alphaN,r2,bic,mape,mape_kind.
std::string summary_csv(const AttributeSchema& schema,
                        const std::vector<VariantOutcome>& outcomes,
                        const std::vector<std::pair<Variant, ScoreReport>>& scores,
                        BicMode mode);

/// Human-readable fixed-width summary table of the same content.
std::string summary_text(const AttributeSchema& schema,
                         const std::vector<VariantOutcome>& outcomes,
                         const std::vector<std::pair<Variant, ScoreReport>>& scores,
                         const std::vector<RankEntry>& ranking, BicMode mode);

std::string gap_report_text(const GapReport& g);

/// Serialized with a trailing newline, 2-space indent; byte-stable for
/// identical inputs.
std::string dump_json(const json& j);

/// Inverses of the model serializers, for reloading saved fit reports.
FoRModel for_model_from_json(const json& j);
TemporalModel temporal_from_json(const json& j);

} // namespace fortrend

#endif
