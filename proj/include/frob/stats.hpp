#pragma once

#include <functional>

#include "frob/dag.hpp"

namespace frob {

using TargetFn = std::function<double(const Vec&)>;

// Samples (x_i, y_i) with ||x|| <= 1 and |y| <= 1; noise is bounded uniform
// with half-width <= 1 - sup|f*| so the bound on y is exact.
struct Dataset {
    std::vector<Vec> xs;
    Vec ys;
    std::uint64_t seed = 0;
    double noise_half_width = 0.0;
    int input_dim = 0;
};

Dataset generate_data(const DagSpec& target, int n, std::uint64_t seed, double noise_half_width);
Dataset generate_data_fn(const TargetFn& target, int dim, double target_sup, int n,
                         std::uint64_t seed, double noise_half_width);

// norm schedule K(n) = multiplier * n^e with e from the worst-case path:
// e = max_v (1/2) (2L + (D+L) d_in) / (2L + (D+L) d_in + 4 alpha*).
double schedule_K_exponent(const DagSpec& target);
double schedule_K(const DagSpec& target, std::int64_t n, double multiplier = 1.0);

struct OptimizerConfig {
    int epochs = 500;
    int batch_size = 32;
    double step = 1e-2;
    double decay_per_epoch = 0.97;
    std::uint64_t seed = 1;
};

struct EpochRecord {
    int epoch;
    double train_loss;
    double kappa_value;
};

struct ErmResult {
    Network trained;        // clipped network (chi_1 after the trained core)
    Network trained_core;   // pre-clip core, kappa-constrained
    double kappa_core = 0.0;
    double empirical_risk = 0.0;
    double K_used = 0.0;
    std::vector<EpochRecord> trace;
};

// Projected mini-batch SGD over the clipped, norm-constrained class: after
// every update the hidden layers are rescaled to unit mass and the final
// matrix is shrunk by min(1, K/kappa).
ErmResult erm_train(const Dataset& data, int width, int depth, double K, const OptimizerConfig& cfg);

// Theorem-prescribed width/depth for a DAG target at budget K.
int prescribed_depth(const DagSpec& target);
int prescribed_width(const DagSpec& target, double K, int floor_width = 8);

struct ExcessRiskEstimate {
    double estimate = 0.0;
    double stderr_value = 0.0;
    double risk_trained = 0.0;
    double risk_oracle = 0.0;
};

// Paired Monte Carlo estimate of R(f_hat) - R(f*) on fresh draws.
ExcessRiskEstimate excess_risk(const Network& trained, const DagSpec& target, int mc_count,
                               std::uint64_t seed, double noise_half_width);

struct RademacherCheck {
    double estimate = 0.0; // heuristic ascent lower estimate, averaged over sign draws
    double bound = 0.0;    // (sqrt(2 log(2) D) + 1) K / sqrt(n)
    std::vector<double> per_draw;
};

struct AscentConfig {
    int steps = 400;
    double step = 0.05;
    double decay = 0.995;
};

RademacherCheck rademacher_check(int dim, int width, int depth, double K, int n, std::uint64_t seed,
                                 int sign_draws, const AscentConfig& cfg = {});

double rademacher_bound(int depth, double K, int n);

} // namespace frob
