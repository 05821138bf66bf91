#include "frob/batch_eval.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "frob/summation.hpp"

namespace frob {

Vec evaluate_batch_serial(const Network& net, const ProbePlan& plan) {
    if (plan.dim() != net.input_dim) throw std::invalid_argument("evaluate_batch: dimension mismatch");
    const std::int64_t n = plan.effective_count();
    Vec out(static_cast<std::size_t>(n) * net.output_dim);
    Evaluator ev(net);
    for (std::int64_t i = 0; i < n; ++i) {
        const Vec x = plan.point(i);
        ev(x.data(), out.data() + static_cast<std::size_t>(i) * net.output_dim);
    }
    return out;
}

Vec evaluate_batch(const Network& net, const ProbePlan& plan) {
    if (plan.dim() != net.input_dim) throw std::invalid_argument("evaluate_batch: dimension mismatch");
    const std::int64_t n = plan.effective_count();
    Vec out(static_cast<std::size_t>(n) * net.output_dim);
#pragma omp parallel
    {
        Evaluator ev(net);
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            const Vec x = plan.point(i);
            ev(x.data(), out.data() + static_cast<std::size_t>(i) * net.output_dim);
        }
    }
    return out;
}

namespace {

SupScanResult reduce_errors(const Vec& errs) {
    SupScanResult res;
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(errs.size()); ++i) {
        if (errs[i] > res.max_abs_error) {
            res.max_abs_error = errs[i];
            res.arg_index = i;
        }
    }
    return res;
}

} // namespace

SupScanResult sup_scan_serial(const Network& net, const ScalarFn& reference, const ProbePlan& plan) {
    if (net.output_dim != 1) throw std::invalid_argument("sup_scan: scalar-output networks only");
    const std::int64_t n = plan.effective_count();
    Vec errs(n);
    Evaluator ev(net);
    for (std::int64_t i = 0; i < n; ++i) {
        const Vec x = plan.point(i);
        double y;
        ev(x.data(), &y);
        errs[i] = std::abs(y - reference(x));
    }
    return reduce_errors(errs);
}

SupScanResult sup_scan(const Network& net, const ScalarFn& reference, const ProbePlan& plan) {
    if (net.output_dim != 1) throw std::invalid_argument("sup_scan: scalar-output networks only");
    const std::int64_t n = plan.effective_count();
    Vec errs(n);
#pragma omp parallel
    {
        Evaluator ev(net);
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) {
            const Vec x = plan.point(i);
            double y;
            ev(x.data(), &y);
            errs[i] = std::abs(y - reference(x));
        }
    }
    return reduce_errors(errs);
}

double mean_scan(const ScalarFn& fn, const ProbePlan& plan) {
    const std::int64_t n = plan.effective_count();
    Vec vals(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) vals[i] = fn(plan.point(i));
    KahanSum s;
    for (double v : vals) s.add(v);
    return s.value() / static_cast<double>(n);
}

} // namespace frob
