#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "amos/engine.hpp"
#include "amos/metrics.hpp"

namespace amos {

/// Engine report as a JSON object (schema tag "amos_report_v1").
/// Wall-clock fields are emitted only when include_timings is set, so
/// default output is bit-reproducible given the seed.
nlohmann::json report_to_json(const AmosReport& report, bool include_timings = false);

/// Result of clustering one connected component inside a full-graph run.
struct ComponentResult {
    NodeSet nodes;                    ///< original node ids
    bool trivial = false;             ///< too small for the engine, one cluster
    std::optional<AmosReport> report; ///< set when the engine ran
};

/// Whole-input clustering document: global labels plus per-component
/// engine reports and a record of the preprocessing applied.
struct ClusterDocument {
    int n = 0;
    int m = 0;
    int final_k = 0;
    std::vector<int> labels;
    std::vector<ComponentResult> components;
    bool any_exhausted = false;
    AmosConfig config;
    std::string input_path;
    std::string format;
    bool binarized = false;
};

nlohmann::json cluster_document_to_json(const ClusterDocument& doc,
                                        bool include_timings = false);

nlohmann::json metrics_to_json(const Graph& g, const std::vector<int>& labels,
                               const std::vector<int>* truth);

} // namespace amos
