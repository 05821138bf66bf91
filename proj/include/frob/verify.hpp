#pragma once

#include "frob/batch_eval.hpp"
#include "frob/dag.hpp"

namespace frob {

struct SupErrorResult {
    double max_abs_error = 0.0; // after local refinement
    Vec argmax_point;
    double coarse_error = 0.0; // before refinement
    std::int64_t coarse_index = 0;
};

// Probe-set sup of |net - reference| (a lower bound on the true sup), with
// one local zoom (10x finer grid in a one-cell neighborhood of the argmax).
SupErrorResult sup_error(const Network& net, const ScalarFn& reference, const ProbePlan& plan);

struct NormAuditEntry {
    std::string field;
    double expected = 0.0;
    double actual = 0.0;
    double relative_error = 0.0;
    bool pass = true;
};

struct NormAuditReport {
    std::vector<NormAuditEntry> entries;
    int kappa_violations = 0;
    int layer_violations = 0;
    bool budget_violation = false;
    bool pass = true;
};

// Recomputes kappa and every per-layer augmented norm from raw weights and
// flags relative deviations beyond 1e-12 against the certificate.
NormAuditReport audit_norms(const Network& net, const FrobeniusCertificate& cert);

struct PartitionCheckResult {
    double max_residual = 0.0;
    int max_active = 0; // hats simultaneously nonzero at a probe
};

// Exact reference hats: residual of sum_n prod_i hat(N x_i - n_i) - 1.
PartitionCheckResult check_partition_of_unity(int N, int d, const ProbePlan& plan);

struct SweepPoint {
    double budget = 0.0;
    int k = 0;
    int N = 0;
    double measured_error = 0.0;
    double certified_bound = 0.0;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    double fitted_slope = 0.0;
    double theoretical_exponent = 0.0;
    std::vector<std::string> notes;
};

// Compiles the target per budget, measures probe-sup error, fits an OLS
// log-log slope. Needs >= 3 budgets spanning >= 2 decades; budgets infeasible
// at k = 1 are dropped with a note.
SweepResult rate_sweep(const FunctionOracle& target, const std::vector<double>& budgets,
                       const ProbePlan& plan, std::size_t weight_cap = kDefaultWeightCap);

struct CriticalPathResult {
    std::vector<int> path;            // node index per level 1..L
    std::vector<std::string> path_ids;
    std::vector<Vec> node_abs_errors; // per level, per node, at the argmax probe
    Vec argmax_point;
    double max_abs_error = 0.0;
};

// Empirical critical path: at the probe of maximal composed error, per-node
// discrepancies are computed from the retained subnets and the path is traced
// backward from the output, picking the max-error parent (ties toward the
// lowest node index).
CriticalPathResult trace_critical_path(const DagCompileResult& compiled, const ProbePlan& plan);

// least-squares slope of log10(y) against log10(x)
double log_log_slope(const std::vector<double>& xs, const std::vector<double>& ys);

} // namespace frob
