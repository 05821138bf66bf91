#pragma once

#include <functional>

#include "frob/network.hpp"
#include "frob/probe.hpp"

namespace frob {

// Data-parallel kernels with a serial reference implementation. The parallel
// versions write per-index slots and reduce serially, so results are
// identical to the serial path bit for bit regardless of thread count.

// Evaluates net at every probe of the plan; returns outputs row-major
// (probe-major). Serial reference.
Vec evaluate_batch_serial(const Network& net, const ProbePlan& plan);
// OpenMP over probes.
Vec evaluate_batch(const Network& net, const ProbePlan& plan);

// max_i |net(x_i) - reference(x_i)| with the first attaining index.
struct SupScanResult {
    double max_abs_error = 0.0;
    std::int64_t arg_index = 0;
};

using ScalarFn = std::function<double(const Vec&)>;

SupScanResult sup_scan_serial(const Network& net, const ScalarFn& reference, const ProbePlan& plan);
SupScanResult sup_scan(const Network& net, const ScalarFn& reference, const ProbePlan& plan);

// mean of fn over the plan's points (serial deterministic reduction).
double mean_scan(const ScalarFn& fn, const ProbePlan& plan);

} // namespace frob
