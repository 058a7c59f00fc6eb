#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "amos/rim_gen.hpp"

namespace amos {

struct SweepConfig {
    std::vector<double> t_grid; ///< strictly increasing, all > 0
    int trials = 10;
    std::uint64_t seed = 1;
    int restarts = 20;
};

/// One (t, trial) observation of the phase-transition sweep.
struct SweepRow {
    double t = 0.0;
    int trial = 0;
    std::uint64_t seed = 0;   ///< stream seed of the main draw
    double nmi = 0.0;         ///< clustering at the planted K vs ground truth
    double sin_theta = 0.0;   ///< subspace distance to an independent reference draw
    double frob_diff = 0.0;   ///< ||L - L_ref||_F
    double delta_t = 0.0;     ///< min{t, |lambda_{K+1}(L/n) - t|}
    double bound = 0.0;       ///< frob_diff / (n * delta_t)
    double t_lb = 0.0;        ///< from the planted partition
    double t_ub = 0.0;        ///< t_lb * n_max / n_min
    bool sub_threshold = false; ///< t < t_lb
    bool violation = false;     ///< sub-threshold and sin_theta > bound
};

/// Runs the sweep over a homogeneous RIM family. Each grid value t maps
/// to cross probability p = min(t, 0.95) with constant cross weight t/p:
/// plain Bernoulli edges below the threshold, weighted edges to reach
/// t > 1 (a Bernoulli parameter cannot exceed 1). Internal recipes come
/// from `base`; its cross_p/weight fields are ignored.
std::vector<SweepRow> run_sweep(const RimSpec& base, const SweepConfig& cfg);

/// Column order: t,trial,seed,nmi,sin_theta,frob_diff,delta_t,bound,
/// t_lb,t_ub,sub_threshold,violation
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

} // namespace amos
