#include "amos/engine.hpp"

#include <chrono>
#include <stdexcept>

#include "amos/kmeans.hpp"
#include "amos/spectral.hpp"

namespace amos {

namespace {

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
}

} // namespace

void AmosConfig::validate() const {
    auto in_unit = [](double v) { return v > 0.0 && v < 1.0; };
    if (!in_unit(eta) || !in_unit(alpha) || !in_unit(alpha_prime))
        throw std::invalid_argument("AmosConfig: eta, alpha, alpha_prime must be in (0, 1)");
    if (k_max < 2) throw std::invalid_argument("AmosConfig: k_max must be >= 2");
    if (restarts < 1) throw std::invalid_argument("AmosConfig: restarts must be >= 1");
}

const char* to_string(FailingStage s) {
    switch (s) {
    case FailingStage::rim_test: return "rim_test";
    case FailingStage::glrt: return "glrt";
    case FailingStage::homogeneous_pt: return "homogeneous_pt";
    case FailingStage::inhomogeneous_pt: return "inhomogeneous_pt";
    case FailingStage::none: return "none";
    }
    return "unknown";
}

AmosReport run_amos(const Graph& g_in, const AmosConfig& cfg) {
    cfg.validate();
    const int n = g_in.node_count();
    if (n < 3) throw DataError("run_amos requires at least 3 nodes");
    if (connected_components(g_in).count != 1)
        throw DataError("run_amos requires a connected graph; split components first");

    const auto total_start = std::chrono::steady_clock::now();
    const Graph g = cfg.normalize ? degree_normalize(g_in) : g_in;
    const int k_cap = std::min(cfg.k_max, n - 1);

    AmosReport report;
    for (int k = 2; k <= k_cap; ++k) {
        IterationRecord rec;
        rec.k = k;

        auto stage_start = std::chrono::steady_clock::now();
        const SpectralEmbedding emb = embedding(g, k);
        rec.degenerate_gap = emb.degenerate_gap;
        rec.ms_embedding = ms_since(stage_start);

        stage_start = std::chrono::steady_clock::now();
        const KmeansResult km =
            kmeans(emb.basis, k, cfg.restarts, rng::mix(cfg.seed, {0xa305u, static_cast<std::uint64_t>(k)}));
        const Partition part = Partition::from_labels(g, km.labels);
        rec.cluster_sizes = part.sizes;
        rec.within_edges = part.within_edges;
        rec.ms_kmeans = ms_since(stage_start);

        stage_start = std::chrono::steady_clock::now();
        rec.pairs = pair_estimates(g, part);

        // local homogeneity testing: the decision uses the first failing
        // pair in (i, j) order, matching the reference loop; the remaining
        // p-values stay recorded as diagnostics
        for (const auto& p : rec.pairs) {
            if (p.p_value <= cfg.eta) {
                rec.failing = FailingStage::rim_test;
                rec.first_failing_pair = std::make_pair(p.i, p.j);
                break;
            }
        }
        if (rec.failing == FailingStage::rim_test) {
            rec.ms_tests = ms_since(stage_start);
            report.iterations.push_back(std::move(rec));
            continue;
        }

        const HomogeneousStats hom = homogeneous_estimates(g, part, rec.pairs);
        rec.homogeneous = hom;

        // At k = 2 the likelihood ratio test has C(2,2) - 1 = 0 degrees of
        // freedom and its statistic is identically zero, so it cannot
        // certify homogeneity; such iterations go through the
        // significance-controlled inhomogeneous test below, which for one
        // pair is the alpha'-level test of t_hat against t_lb.
        bool glrt_pass = false;
        if (k >= 3) {
            const GlrtResult glrt = glrt_homogeneity_test(rec.pairs, hom, cfg.alpha);
            rec.glrt = glrt;
            glrt_pass = glrt.pass;
        }

        bool reliable = false;
        if (part.min_size() < k) {
            // partial eigenvalue sums are undefined; the partition cannot be
            // certified, treat as a phase-transition failure
            rec.t_lb.reset();
            rec.failing =
                glrt_pass ? FailingStage::homogeneous_pt : FailingStage::inhomogeneous_pt;
        } else {
            const double t_lb = t_lb_estimate(g, part);
            rec.t_lb = t_lb;
            if (glrt_pass) {
                reliable = hom.t_hat < t_lb;
                if (!reliable) rec.failing = FailingStage::homogeneous_pt;
            } else {
                const InhomogeneousTestResult inhom =
                    inhomogeneous_pt_test(rec.pairs, t_lb, cfg.alpha_prime);
                rec.inhomogeneous_product = inhom.product;
                reliable = inhom.pass;
                if (!reliable) rec.failing = FailingStage::inhomogeneous_pt;
            }
        }
        rec.ms_tests = ms_since(stage_start);
        report.iterations.push_back(std::move(rec));

        if (reliable) {
            report.final_k = k;
            report.partition = part;
            report.termination = Termination::reliable;
            report.ms_total = ms_since(total_start);
            return report;
        }
        if (k == k_cap) {
            report.final_k = k;
            report.partition = part;
        }
    }
    report.termination = Termination::k_max_exhausted;
    report.ms_total = ms_since(total_start);
    return report;
}

} // namespace amos
