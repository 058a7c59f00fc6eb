#include "amos/report.hpp"

namespace amos {

namespace {

using nlohmann::ordered_json;

ordered_json pair_to_json(const PairStats& p) {
    ordered_json j;
    j["i"] = p.i;
    j["j"] = p.j;
    j["n_i"] = p.n_i;
    j["n_j"] = p.n_j;
    j["m_ij"] = p.m_ij;
    j["p_hat"] = p.p_hat;
    j["w_bar"] = p.w_bar;
    j["t_hat"] = p.t_hat;
    j["p_value"] = p.p_value;
    j["has_cross_edges"] = p.has_cross_edges;
    j["degenerate_vtest"] = p.degenerate_vtest;
    if (p.p_value_reversed) j["p_value_reversed"] = *p.p_value_reversed;
    return j;
}

ordered_json iteration_to_json(const IterationRecord& rec, bool include_timings) {
    ordered_json j;
    j["k"] = rec.k;
    j["cluster_sizes"] = rec.cluster_sizes;
    j["within_edges"] = rec.within_edges;
    j["failing_stage"] = to_string(rec.failing);
    if (rec.first_failing_pair) {
        j["first_failing_pair"] = {{"i", rec.first_failing_pair->first},
                                   {"j", rec.first_failing_pair->second}};
    } else {
        j["first_failing_pair"] = nullptr;
    }
    j["degenerate_gap"] = rec.degenerate_gap;
    ordered_json pairs = ordered_json::array();
    for (const auto& p : rec.pairs) pairs.push_back(pair_to_json(p));
    j["pairs"] = pairs;
    if (rec.homogeneous) {
        j["estimates"] = {{"p_hat", rec.homogeneous->p_hat},
                          {"w_bar", rec.homogeneous->w_bar},
                          {"t_hat", rec.homogeneous->t_hat},
                          {"has_cross_edges", rec.homogeneous->has_cross_edges}};
    } else {
        j["estimates"] = nullptr;
    }
    j["t_lb"] = rec.t_lb ? ordered_json(*rec.t_lb) : ordered_json(nullptr);
    if (rec.glrt) {
        j["glrt"] = {{"pass", rec.glrt->pass},
                     {"statistic", rec.glrt->statistic},
                     {"lower", rec.glrt->lower},
                     {"upper", rec.glrt->upper},
                     {"low_side", rec.glrt->low_side}};
    } else {
        j["glrt"] = nullptr;
    }
    j["inhomogeneous_product"] =
        rec.inhomogeneous_product ? ordered_json(*rec.inhomogeneous_product) : ordered_json(nullptr);
    if (include_timings) {
        j["timings_ms"] = {{"embedding", rec.ms_embedding},
                           {"kmeans", rec.ms_kmeans},
                           {"tests", rec.ms_tests}};
    }
    return j;
}

ordered_json config_to_json(const AmosConfig& cfg) {
    ordered_json j;
    j["eta"] = cfg.eta;
    j["alpha"] = cfg.alpha;
    j["alpha_prime"] = cfg.alpha_prime;
    j["k_max"] = cfg.k_max;
    j["seed"] = cfg.seed;
    j["restarts"] = cfg.restarts;
    j["normalize"] = cfg.normalize;
    return j;
}

} // namespace

nlohmann::json report_to_json(const AmosReport& report, bool include_timings) {
    ordered_json j;
    j["schema"] = "amos_report_v1";
    j["final_k"] = report.final_k;
    j["termination"] =
        report.termination == Termination::reliable ? "reliable" : "k_max_exhausted";
    j["labels"] = report.partition.labels;
    j["cluster_sizes"] = report.partition.sizes;
    ordered_json iters = ordered_json::array();
    for (const auto& rec : report.iterations)
        iters.push_back(iteration_to_json(rec, include_timings));
    j["iterations"] = iters;
    if (include_timings) j["total_ms"] = report.ms_total;
    return j;
}

nlohmann::json cluster_document_to_json(const ClusterDocument& doc, bool include_timings) {
    ordered_json j;
    j["schema"] = "amos_report_v1";
    j["input"] = doc.input_path;
    j["n"] = doc.n;
    j["m"] = doc.m;
    j["final_k"] = doc.final_k;
    j["termination"] = doc.any_exhausted ? "k_max_exhausted" : "reliable";
    j["labels"] = doc.labels;
    j["preprocessing"] = {{"format", doc.format},
                          {"binarized", doc.binarized},
                          {"normalized", doc.config.normalize}};
    j["config"] = config_to_json(doc.config);
    ordered_json comps = ordered_json::array();
    for (const auto& comp : doc.components) {
        ordered_json c;
        c["nodes"] = comp.nodes;
        c["trivial"] = comp.trivial;
        c["report"] = comp.report ? report_to_json(*comp.report, include_timings)
                                  : nlohmann::json(nullptr);
        comps.push_back(c);
    }
    j["components"] = comps;
    return j;
}

nlohmann::json metrics_to_json(const Graph& g, const std::vector<int>& labels,
                               const std::vector<int>* truth) {
    ordered_json j;
    j["schema"] = "amos_metrics_v1";
    j["n"] = g.node_count();
    j["m"] = g.edge_count();
    int k = 0;
    for (int l : labels) k = std::max(k, l + 1);
    j["k"] = k;

    const ClusterQuality c = conductance(g, labels);
    const ClusterQuality nc = normalized_cut(g, labels);
    j["conductance"] = {{"average", c.average}, {"max", c.max}, {"per_cluster", c.per_cluster}};
    j["normalized_cut"] = {
        {"average", nc.average}, {"max", nc.max}, {"per_cluster", nc.per_cluster}};
    j["nmi_normalization"] = "arithmetic_mean_entropy";

    if (truth) {
        j["nmi"] = nmi(labels, *truth);
        j["rand_index"] = rand_index(labels, *truth);
        j["f_measure"] = f_measure(labels, *truth);
    }
    return j;
}

} // namespace amos
