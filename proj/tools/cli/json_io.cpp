#include "cli/json_io.hpp"

namespace driftlab {

void to_json(nlohmann::json& j, const KsResult& r) {
  j = nlohmann::json{{"per_dim_statistic", r.per_dim_statistic},
                     {"per_dim_p", r.per_dim_p},
                     {"overall_statistic", r.overall_statistic},
                     {"adjusted_p", r.adjusted_p},
                     {"drift_detected", r.drift_detected},
                     {"dims", r.dims},
                     {"alpha", r.alpha}};
}

void from_json(const nlohmann::json& j, KsResult& r) {
  j.at("per_dim_statistic").get_to(r.per_dim_statistic);
  j.at("per_dim_p").get_to(r.per_dim_p);
  j.at("overall_statistic").get_to(r.overall_statistic);
  j.at("adjusted_p").get_to(r.adjusted_p);
  j.at("drift_detected").get_to(r.drift_detected);
  j.at("dims").get_to(r.dims);
  j.at("alpha").get_to(r.alpha);
}

void to_json(nlohmann::json& j, const MmdResult& r) {
  j = nlohmann::json{{"statistic", r.statistic},
                     {"p_value", r.p_value},
                     {"permutations", r.permutations},
                     {"sigma_used", r.sigma_used},
                     {"drift_detected", r.drift_detected},
                     {"reference_rows_used", r.reference_rows_used},
                     {"current_rows_used", r.current_rows_used},
                     {"subsampled", r.subsampled}};
}

void from_json(const nlohmann::json& j, MmdResult& r) {
  j.at("statistic").get_to(r.statistic);
  j.at("p_value").get_to(r.p_value);
  j.at("permutations").get_to(r.permutations);
  j.at("sigma_used").get_to(r.sigma_used);
  j.at("drift_detected").get_to(r.drift_detected);
  j.at("reference_rows_used").get_to(r.reference_rows_used);
  j.at("current_rows_used").get_to(r.current_rows_used);
  j.at("subsampled").get_to(r.subsampled);
}

}  // namespace driftlab
