// amos: spectral graph clustering with automated model order selection.
//
// Subcommands:
//   cluster   select the number of clusters of a graph and label its nodes
//   generate  sample a synthetic random-interconnection-model graph
//   evaluate  score a labeling with internal (and optional external) metrics
//   sweep     phase-transition sweep over the interconnectivity parameter t
//
// Exit codes: 0 success, 1 usage error, 2 data error,
//             3 reliability not reached (iteration cap exhausted).

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "amos/engine.hpp"
#include "amos/io.hpp"
#include "amos/metrics.hpp"
#include "amos/report.hpp"
#include "amos/rim_gen.hpp"
#include "amos/sweep.hpp"

namespace {

struct LoadOptions {
    std::string format = "edgelist";
    bool one_based = false;
    bool binarize = false;
};

void add_load_options(CLI::App* cmd, LoadOptions& opt) {
    cmd->add_option("--format", opt.format, "Input format: edgelist or mtx")
        ->check(CLI::IsMember({"edgelist", "mtx"}))
        ->capture_default_str();
    cmd->add_flag("--one-based", opt.one_based,
                  "Edge-list node ids start at 1 (MatrixMarket always does)");
    cmd->add_flag("--binarize", opt.binarize, "Replace all edge weights with 1");
}

amos::Graph load(const std::string& path, const LoadOptions& opt) {
    const auto format = opt.format == "mtx" ? amos::GraphFormat::matrix_market
                                            : amos::GraphFormat::edge_list;
    const auto indexing =
        opt.one_based ? amos::Indexing::one_based : amos::Indexing::zero_based;
    amos::Graph g = amos::load_graph_file(path, format, indexing);
    if (opt.binarize) g = amos::binarize(g);
    return g;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw amos::DataError("cannot write '" + path + "'");
    out << content;
}

nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw amos::DataError("cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw amos::DataError("'" + path + "': " + e.what());
    }
}

std::vector<double> parse_grid(const std::string& csv) {
    std::vector<double> grid;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            grid.push_back(std::stod(tok));
        } catch (const std::exception&) {
            throw amos::DataError("bad t grid value '" + tok + "'");
        }
    }
    return grid;
}

int cmd_cluster(const std::string& input, const LoadOptions& load_opt,
                const amos::AmosConfig& cfg, const std::string& report_path,
                const std::string& labels_path, bool timings) {
    const amos::Graph g = load(input, load_opt);

    amos::ClusterDocument doc;
    doc.input_path = input;
    doc.format = load_opt.format;
    doc.binarized = load_opt.binarize;
    doc.config = cfg;
    doc.n = g.node_count();
    doc.m = g.edge_count();
    doc.labels.assign(g.node_count(), -1);

    const amos::Components comps = amos::connected_components(g);
    std::vector<amos::NodeSet> nodes_of(comps.count);
    for (int u = 0; u < g.node_count(); ++u) nodes_of[comps.labels[u]].push_back(u);

    int next_cluster = 0;
    for (int c = 0; c < comps.count; ++c) {
        amos::ComponentResult comp;
        comp.nodes = nodes_of[c];
        // components below 4 nodes cannot be certified at any k (the
        // phase-transition bound needs every cluster to hold at least k >= 2
        // nodes, impossible once a 3-node component is split), so they are
        // reported as single clusters
        if (static_cast<int>(comp.nodes.size()) < 4) {
            comp.trivial = true;
            for (int u : comp.nodes) doc.labels[u] = next_cluster;
            ++next_cluster;
        } else {
            amos::AmosConfig comp_cfg = cfg;
            comp_cfg.seed = amos::rng::mix(cfg.seed, {0xc09a90u, static_cast<std::uint64_t>(c)});
            const amos::Graph sub = amos::subgraph(g, comp.nodes);
            comp.report = amos::run_amos(sub, comp_cfg);
            if (comp.report->termination == amos::Termination::k_max_exhausted)
                doc.any_exhausted = true;
            for (std::size_t i = 0; i < comp.nodes.size(); ++i)
                doc.labels[comp.nodes[i]] =
                    next_cluster + comp.report->partition.labels[i];
            next_cluster += comp.report->final_k;
        }
        doc.components.push_back(std::move(comp));
    }
    doc.final_k = next_cluster;

    const std::string rendered = amos::cluster_document_to_json(doc, timings).dump(2) + "\n";
    if (report_path.empty())
        std::cout << rendered;
    else
        write_text_file(report_path, rendered);
    if (!labels_path.empty()) {
        std::ostringstream out;
        amos::write_labels(out, doc.labels);
        write_text_file(labels_path, out.str());
    }
    std::cerr << "clustered " << doc.n << " nodes into " << doc.final_k << " clusters ("
              << doc.components.size() << " component(s))\n";
    return doc.any_exhausted ? 3 : 0;
}

int cmd_generate(const std::string& spec_path, std::uint64_t seed, bool seed_set,
                 const std::string& edges_path, const std::string& labels_path) {
    amos::RimSpec spec = amos::rim_spec_from_json(read_json_file(spec_path));
    if (seed_set) spec.seed = seed;
    const amos::RimSample sample = amos::generate_rim(spec);

    std::ostringstream edges;
    amos::write_edge_list(edges, sample.graph);
    write_text_file(edges_path, edges.str());
    std::ostringstream labels;
    amos::write_labels(labels, sample.labels);
    write_text_file(labels_path, labels.str());
    std::cerr << "generated " << sample.graph.node_count() << " nodes, "
              << sample.graph.edge_count() << " edges (empirical t = "
              << amos::empirical_t(sample.graph, sample.labels) << ")\n";
    return 0;
}

int cmd_evaluate(const std::string& graph_path, const LoadOptions& load_opt,
                 const std::string& labels_path, const std::string& truth_path,
                 const std::string& out_path) {
    const amos::Graph g = load(graph_path, load_opt);
    const std::vector<int> labels = amos::load_labels_file(labels_path);
    if (static_cast<int>(labels.size()) != g.node_count())
        throw amos::DataError("labels file has " + std::to_string(labels.size()) +
                              " entries for " + std::to_string(g.node_count()) + " nodes");
    std::vector<int> truth;
    if (!truth_path.empty()) {
        truth = amos::load_labels_file(truth_path);
        if (truth.size() != labels.size())
            throw amos::DataError("truth file length does not match labels");
    }
    const nlohmann::json j =
        amos::metrics_to_json(g, labels, truth_path.empty() ? nullptr : &truth);
    const std::string rendered = j.dump(2) + "\n";
    if (out_path.empty())
        std::cout << rendered;
    else
        write_text_file(out_path, rendered);
    return 0;
}

int cmd_sweep(const std::string& spec_path, const amos::SweepConfig& cfg,
              const std::string& out_path) {
    amos::RimSpec base = amos::rim_spec_from_json(read_json_file(spec_path));
    const std::vector<amos::SweepRow> rows = amos::run_sweep(base, cfg);
    std::ostringstream csv;
    amos::write_sweep_csv(csv, rows);
    if (out_path.empty())
        std::cout << csv.str();
    else
        write_text_file(out_path, csv.str());
    int violations = 0;
    for (const auto& r : rows) violations += r.violation ? 1 : 0;
    std::cerr << "swept " << cfg.t_grid.size() << " grid points x " << cfg.trials
              << " trials; " << violations << " perturbation-bound violation(s)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"AMOS: spectral graph clustering with automated model order selection"};
    app.require_subcommand(1);

    // cluster
    auto* cluster = app.add_subcommand("cluster", "Cluster a graph file");
    std::string cl_input;
    LoadOptions cl_load;
    amos::AmosConfig cl_cfg;
    std::string cl_report, cl_labels;
    bool cl_no_normalize = false, cl_timings = false;
    cluster->add_option("graph", cl_input, "Graph file")->required();
    add_load_options(cluster, cl_load);
    cluster->add_option("--eta", cl_cfg.eta, "Per-pair V-test significance level")
        ->capture_default_str();
    cluster->add_option("--alpha", cl_cfg.alpha, "Homogeneity test level")
        ->capture_default_str();
    cluster->add_option("--alpha-prime", cl_cfg.alpha_prime,
                        "Inhomogeneous phase-transition test level")
        ->capture_default_str();
    cluster->add_option("--kmax", cl_cfg.k_max, "Iteration cap on the cluster count")
        ->capture_default_str();
    cluster->add_option("--seed", cl_cfg.seed, "Random seed")->capture_default_str();
    cluster->add_option("--restarts", cl_cfg.restarts, "K-means restarts")
        ->capture_default_str();
    cluster->add_flag("--no-normalize", cl_no_normalize,
                      "Cluster the raw weights instead of degree-normalized ones");
    cluster->add_flag("--timings", cl_timings, "Include wall-clock timings in the report");
    cluster->add_option("--out", cl_report, "Report JSON path (default: stdout)");
    cluster->add_option("--labels-out", cl_labels, "Write one label per node to this file");

    // generate
    auto* generate = app.add_subcommand("generate", "Generate a synthetic RIM graph");
    std::string gen_spec, gen_edges = "rim.edges", gen_labels = "rim.labels";
    std::uint64_t gen_seed = 0;
    generate->add_option("spec", gen_spec, "RIM spec JSON file")->required();
    auto* gen_seed_opt = generate->add_option("--seed", gen_seed, "Override the spec seed");
    generate->add_option("--edges-out", gen_edges, "Edge list output path")
        ->capture_default_str();
    generate->add_option("--labels-out", gen_labels, "Ground-truth labels output path")
        ->capture_default_str();

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Score a labeling of a graph");
    std::string ev_graph, ev_labels, ev_truth, ev_out;
    LoadOptions ev_load;
    evaluate->add_option("graph", ev_graph, "Graph file")->required();
    evaluate->add_option("labels", ev_labels, "Labels file, one integer per line")
        ->required();
    evaluate->add_option("--truth", ev_truth, "Ground-truth labels for external metrics");
    evaluate->add_option("--out", ev_out, "Metrics JSON path (default: stdout)");
    add_load_options(evaluate, ev_load);

    // sweep
    auto* sweep = app.add_subcommand(
        "sweep",
        "Sweep the interconnectivity parameter t over a homogeneous RIM family.\n"
        "Each grid value t maps to cross probability p = min(t, 0.95) with constant\n"
        "cross weight t/p. CSV columns: t,trial,seed,nmi,sin_theta,frob_diff,\n"
        "delta_t,bound,t_lb,t_ub,sub_threshold,violation");
    std::string sw_spec, sw_grid, sw_out;
    amos::SweepConfig sw_cfg;
    sweep->add_option("spec", sw_spec, "RIM spec JSON (sizes and internal recipes)")
        ->required();
    sweep->add_option("--t-grid", sw_grid, "Comma-separated increasing t values")
        ->required();
    sweep->add_option("--trials", sw_cfg.trials, "Trials per grid point")
        ->capture_default_str();
    sweep->add_option("--seed", sw_cfg.seed, "Random seed")->capture_default_str();
    sweep->add_option("--restarts", sw_cfg.restarts, "K-means restarts")
        ->capture_default_str();
    sweep->add_option("--out", sw_out, "CSV output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (cluster->parsed()) {
            cl_cfg.normalize = !cl_no_normalize;
            return cmd_cluster(cl_input, cl_load, cl_cfg, cl_report, cl_labels, cl_timings);
        }
        if (generate->parsed())
            return cmd_generate(gen_spec, gen_seed, gen_seed_opt->count() > 0, gen_edges,
                                gen_labels);
        if (evaluate->parsed())
            return cmd_evaluate(ev_graph, ev_load, ev_labels, ev_truth, ev_out);
        if (sweep->parsed()) {
            sw_cfg.t_grid = parse_grid(sw_grid);
            return cmd_sweep(sw_spec, sw_cfg, sw_out);
        }
    } catch (const amos::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
