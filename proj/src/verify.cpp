#include "frob/verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "frob/errors.hpp"
#include "frob/primitives.hpp"
#include "frob/summation.hpp"

namespace frob {

SupErrorResult sup_error(const Network& net, const ScalarFn& reference, const ProbePlan& plan) {
    const SupScanResult coarse = sup_scan(net, reference, plan);
    SupErrorResult res;
    res.coarse_error = coarse.max_abs_error;
    res.coarse_index = coarse.arg_index;
    res.max_abs_error = coarse.max_abs_error;
    res.argmax_point = plan.point(coarse.arg_index);

    // one local zoom: 10x finer grid on a one-cell neighborhood of the argmax
    const int d = plan.dim();
    Box cell(d);
    const std::int64_t n = plan.effective_count();
    for (int i = 0; i < d; ++i) {
        const double span = plan.box[i].hi - plan.box[i].lo;
        const double h = span / std::max<std::int64_t>(1, static_cast<std::int64_t>(
                                                              std::round(std::pow(double(n), 1.0 / d))));
        cell[i].lo = std::max(plan.box[i].lo, res.argmax_point[i] - h);
        cell[i].hi = std::min(plan.box[i].hi, res.argmax_point[i] + h);
    }
    std::int64_t zoom_count = 1;
    for (int i = 0; i < d; ++i) zoom_count *= 21;
    const ProbePlan zoom = ProbePlan::grid(cell, zoom_count);
    const SupScanResult fine = sup_scan(net, reference, zoom);
    if (fine.max_abs_error > res.max_abs_error) {
        res.max_abs_error = fine.max_abs_error;
        res.argmax_point = zoom.point(fine.arg_index);
    }
    return res;
}

NormAuditReport audit_norms(const Network& net, const FrobeniusCertificate& cert) {
    NormAuditReport report;
    auto check = [&](const std::string& field, double expected, double actual, bool is_kappa) {
        NormAuditEntry e;
        e.field = field;
        e.expected = expected;
        e.actual = actual;
        const double denom = std::max({std::abs(expected), std::abs(actual), 1e-300});
        e.relative_error = std::abs(expected - actual) / denom;
        e.pass = e.relative_error <= 1e-12;
        if (!e.pass) {
            if (is_kappa)
                ++report.kappa_violations;
            else
                ++report.layer_violations;
        }
        report.entries.push_back(std::move(e));
    };

    check("kappa", cert.kappa, kappa(net), true);
    const auto norms = per_layer_augmented_norms(net);
    if (norms.size() != cert.per_layer_augmented_norms.size()) {
        NormAuditEntry e;
        e.field = "layer_count";
        e.expected = static_cast<double>(cert.per_layer_augmented_norms.size());
        e.actual = static_cast<double>(norms.size());
        e.relative_error = 1.0;
        e.pass = false;
        ++report.layer_violations;
        report.entries.push_back(std::move(e));
    } else {
        for (std::size_t i = 0; i < norms.size(); ++i)
            check("layer_" + std::to_string(i), cert.per_layer_augmented_norms[i], norms[i], false);
    }
    if (cert.satisfied && kappa(net) > cert.budget * (1.0 + 1e-12) + 1e-300) {
        report.budget_violation = true;
        NormAuditEntry e;
        e.field = "budget";
        e.expected = cert.budget;
        e.actual = kappa(net);
        e.relative_error = (kappa(net) - cert.budget) / std::max(cert.budget, 1e-300);
        e.pass = false;
        report.entries.push_back(std::move(e));
    }
    report.pass = report.kappa_violations == 0 && report.layer_violations == 0 && !report.budget_violation;
    return report;
}

PartitionCheckResult check_partition_of_unity(int N, int d, const ProbePlan& plan) {
    if (plan.dim() != d) throw std::invalid_argument("check_partition_of_unity: plan dimension mismatch");
    PartitionCheckResult res;
    const std::int64_t count = plan.effective_count();
    std::vector<double> residuals(count);
    std::vector<int> actives(count);
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < count; ++i) {
        const Vec x = plan.point(i);
        std::vector<int> n(d, 0);
        KahanSum sum;
        int active = 0;
        do {
            const double v = hat_product_reference(N, n, x);
            sum.add(v);
            if (v > 0.0) ++active;
        } while (advance_grid_point(n, N));
        residuals[i] = std::abs(sum.value() - 1.0);
        actives[i] = active;
    }
    for (std::int64_t i = 0; i < count; ++i) {
        res.max_residual = std::max(res.max_residual, residuals[i]);
        res.max_active = std::max(res.max_active, actives[i]);
    }
    return res;
}

double log_log_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw std::invalid_argument("log_log_slope: need >= 2 points");
    const std::size_t n = xs.size();
    double mx = 0.0, my = 0.0;
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        lx[i] = std::log10(xs[i]);
        ly[i] = std::log10(std::max(ys[i], 1e-300));
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        num += (lx[i] - mx) * (ly[i] - my);
        den += (lx[i] - mx) * (lx[i] - mx);
    }
    return num / den;
}

SweepResult rate_sweep(const FunctionOracle& target, const std::vector<double>& budgets,
                       const ProbePlan& plan, std::size_t weight_cap) {
    if (budgets.size() < 3) throw config_error("rate_sweep: need at least 3 budget points");
    std::vector<double> sorted = budgets;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() <= 0.0) throw config_error("rate_sweep: budgets must be positive");
    if (std::log10(sorted.back() / sorted.front()) < 2.0 - 1e-9)
        throw config_error("rate_sweep: budgets must span at least 2 decades");

    SweepResult res;
    res.theoretical_exponent = holder_rate_exponent(target.dim, target.r, target.alpha);
    for (double K : sorted) {
        int k = 0;
        try {
            k = holder_k_for_budget(target, K);
        } catch (const budget_infeasible_error& e) {
            res.notes.push_back("budget " + std::to_string(K) + " infeasible, dropped (" + e.what() + ")");
            continue;
        }
        HolderCompileResult compiled = compile_holder(target, k, weight_cap);
        const SupErrorResult sup = sup_error(compiled.network, target.eval, plan);
        SweepPoint p;
        p.budget = K;
        p.k = compiled.chosen_k;
        p.N = compiled.chosen_N;
        p.measured_error = sup.max_abs_error;
        p.certified_bound = compiled.error_bound;
        res.points.push_back(p);
    }
    if (res.points.size() >= 2) {
        std::vector<double> ks, errs;
        for (const auto& p : res.points) {
            ks.push_back(p.budget);
            errs.push_back(p.measured_error);
        }
        res.fitted_slope = log_log_slope(ks, errs);
    }
    return res;
}

CriticalPathResult trace_critical_path(const DagCompileResult& compiled, const ProbePlan& plan) {
    const DagSpec& spec = compiled.spec;
    const int L = spec.level_count();
    CriticalPathResult res;

    const SupScanResult scan =
        sup_scan(compiled.net, [&](const Vec& x) { return spec.eval_exact(x); }, plan);
    res.max_abs_error = scan.max_abs_error;
    res.argmax_point = plan.point(scan.arg_index);
    const Vec& x = res.argmax_point;

    // normalized exact values and subnet wires at the argmax probe
    const auto raw = spec.eval_levels(x);
    Vec wires(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) wires[i] = 0.5 * (x[i] + 1.0);
    res.node_abs_errors.resize(L);
    for (int l = 0; l < L; ++l) {
        const auto& nodes = spec.levels[l];
        Vec next(nodes.size());
        res.node_abs_errors[l].resize(nodes.size());
        for (std::size_t v = 0; v < nodes.size(); ++v) {
            Vec args(nodes[v].parents.size());
            for (std::size_t j = 0; j < args.size(); ++j) args[j] = wires[nodes[v].parents[j]];
            next[v] = evaluate(compiled.node_nets[l][v].net, args)[0];
            const double exact_norm =
                (l + 1 < L) ? raw[l][v] / (2.0 * nodes[v].range_bound) + 0.5 : raw[l][v];
            res.node_abs_errors[l][v] = std::abs(next[v] - exact_norm);
        }
        wires = std::move(next);
    }

    // backward trace from the output node, max-error parent per level
    res.path.assign(L, 0);
    res.path[L - 1] = 0;
    for (int l = L - 2; l >= 0; --l) {
        const auto& parents = spec.levels[l + 1][res.path[l + 1]].parents;
        int best = parents.front();
        for (int p : parents) {
            const double e = res.node_abs_errors[l][p];
            const double eb = res.node_abs_errors[l][best];
            if (e > eb || (e == eb && p < best)) best = p;
        }
        res.path[l] = best;
    }
    for (int l = 0; l < L; ++l) res.path_ids.push_back(spec.levels[l][res.path[l]].id);
    return res;
}

} // namespace frob
