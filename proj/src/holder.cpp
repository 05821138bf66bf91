#include "frob/holder.hpp"

#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "frob/errors.hpp"

namespace frob {

int tuned_grid_resolution(double alpha, int k) {
    const double raw = std::pow(static_cast<double>(k), 2.0 / alpha);
    return std::max(1, static_cast<int>(std::ceil(raw - 1e-9)));
}

int holder_depth(int d, int r) {
    return 2 * static_cast<int>(std::ceil(std::log2(static_cast<double>(d + r)))) + 2;
}

double holder_error_bound(int d, int r, double alpha, int N, int k) {
    const double dr = std::pow(static_cast<double>(d), r);
    const double twod = std::pow(2.0, d);
    return twod * dr * std::pow(static_cast<double>(N), -alpha) +
           6.0 * twod * (d + r) * dr / (static_cast<double>(k) * k);
}

double holder_rate_exponent(int d, int r, double alpha) {
    const int D = holder_depth(d, r);
    return 2.0 * alpha / (2.0 + d * (D + 1.0));
}

double holder_kappa_formula(int d, int r, int N) {
    const double terms = std::pow(static_cast<double>(N) + 1.0, d) * std::pow(static_cast<double>(d), r);
    const int D = holder_depth(d, r);
    return std::pow(terms + 1.0, (D + 1.0) / 2.0) * patch_kappa_bound(d, r, N);
}

std::vector<TaylorCoefficient> taylor_coefficients(const FunctionOracle& oracle, int N) {
    const int d = oracle.dim;
    for (const auto& iv : oracle.domain)
        if (iv.lo != 0.0 || iv.hi != 1.0)
            throw std::invalid_argument("taylor_coefficients: oracle must live on the unit cube "
                                        "(range_normalize first)");
    const auto s_list = multi_indices_up_to(d, oracle.r);
    std::vector<TaylorCoefficient> out;
    out.reserve(static_cast<std::size_t>(grid_point_count(d, N)) * s_list.size());
    std::vector<int> n(d, 0);
    Vec point(d);
    do {
        for (int i = 0; i < d; ++i) point[i] = static_cast<double>(n[i]) / N;
        for (const auto& s : s_list) {
            const double c = oracle.partial(s, point) / factorial(s);
            if (std::abs(c) > oracle.holder_norm_bound + 1e-9)
                throw oracle_inconsistency_error(
                    "taylor coefficient " + std::to_string(c) +
                    " exceeds the declared Holder bound " + std::to_string(oracle.holder_norm_bound));
            out.push_back({n, s, c});
        }
    } while (advance_grid_point(n, N));
    return out;
}

namespace {

// rough structural weight count of one patch, used only for the size guardrail
std::size_t patch_weight_estimate(int d, int r, int k) {
    const int t = d + r;
    return static_cast<std::size_t>(60) * t * k + 40 * t;
}

} // namespace

HolderCompileResult compile_holder(const FunctionOracle& oracle, int k, std::size_t weight_cap) {
    if (k < 1) throw std::invalid_argument("compile_holder: k must be >= 1");
    const int d = oracle.dim;
    const int r = oracle.r;
    const int N = tuned_grid_resolution(oracle.alpha, k);

    const auto coeffs_full = taylor_coefficients(oracle, N);
    const std::size_t M = coeffs_full.size();
    const std::size_t predicted = M * patch_weight_estimate(d, r, k);
    if (predicted > weight_cap)
        throw config_error("compile_holder: predicted weight count " + std::to_string(predicted) +
                           " exceeds cap " + std::to_string(weight_cap) +
                           " (use the DAG compiler for higher ambient dimension)");

    std::vector<CertifiedNet> patches(M);
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(M); ++i) {
        const auto& tc = coeffs_full[i];
        patches[i] = build_taylor_patch(tc.n, tc.s, N, k, d, r);
    }
    std::vector<double> c(M);
    for (std::size_t i = 0; i < M; ++i) c[i] = coeffs_full[i].value;

    CertifiedNet combined = linear_combine_consuming(std::move(patches), c);

    HolderCompileResult res;
    res.network = std::move(combined.net);
    res.certificate = std::move(combined.cert);
    res.certificate.budget = holder_kappa_formula(d, r, N);
    res.certificate.satisfied = res.certificate.check_satisfied();
    if (oracle.finite_difference) {
        AlgebraStep warn;
        warn.kind = "note";
        warn.note = "taylor coefficients from finite-difference partials (step 1e-5)";
        res.certificate.derivation.push_back(std::move(warn));
        res.finite_difference_warning = true;
    }
    res.error_bound = holder_error_bound(d, r, oracle.alpha, N, k);
    res.chosen_N = N;
    res.chosen_k = k;
    res.rate_exponent = holder_rate_exponent(d, r, oracle.alpha);
    return res;
}

int holder_k_for_budget(const FunctionOracle& oracle, double K) {
    if (K < 1.0) throw budget_infeasible_error("budget below 1", holder_kappa_formula(oracle.dim, oracle.r, 1));
    const int d = oracle.dim;
    const int r = oracle.r;
    int best = 0;
    for (int k = 1; k <= 1'000'000; ++k) {
        const int N = tuned_grid_resolution(oracle.alpha, k);
        if (holder_kappa_formula(d, r, N) <= K)
            best = k;
        else
            break;
    }
    if (best == 0)
        throw budget_infeasible_error("budget too small for k = 1",
                                      holder_kappa_formula(d, r, tuned_grid_resolution(oracle.alpha, 1)));
    return best;
}

HolderCompileResult compile_holder_for_budget(const FunctionOracle& oracle, double K,
                                              std::size_t weight_cap) {
    return compile_holder(oracle, holder_k_for_budget(oracle, K), weight_cap);
}

Vec NormalizedOracle::to_raw_input(const Vec& u) const {
    Vec x(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) x[i] = 2.0 * in_scales[i] * u[i] - in_scales[i];
    return x;
}

Vec NormalizedOracle::to_unit_input(const Vec& x) const {
    Vec u(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) u[i] = (x[i] + in_scales[i]) / (2.0 * in_scales[i]);
    return u;
}

double NormalizedOracle::to_raw_output(double h) const {
    return output_normalized ? 2.0 * out_scale * (h - 0.5) : h;
}

NormalizedOracle range_normalize(const FunctionOracle& g, const Vec& in_scales, double out_scale,
                                 bool normalize_output) {
    if (static_cast<int>(in_scales.size()) != g.dim)
        throw std::invalid_argument("range_normalize: scale arity mismatch");
    for (double s : in_scales)
        if (s <= 0.0) throw std::invalid_argument("range_normalize: input scales must be positive");
    if (out_scale <= 0.0) throw std::invalid_argument("range_normalize: output scale must be positive");

    NormalizedOracle norm;
    norm.in_scales = in_scales;
    norm.out_scale = out_scale;
    norm.output_normalized = normalize_output;

    FunctionOracle h;
    h.dim = g.dim;
    h.alpha = g.alpha;
    h.r = g.r;
    h.domain = unit_box(g.dim);
    h.range_bound = normalize_output ? 1.0 : g.range_bound;
    h.finite_difference = g.finite_difference;
    const double in_max = *std::max_element(in_scales.begin(), in_scales.end());
    const double deriv_scale = std::pow(std::max(1.0, 2.0 * in_max), std::max(1, g.r));
    h.holder_norm_bound = normalize_output
                              ? 0.5 + g.holder_norm_bound * deriv_scale / (2.0 * out_scale)
                              : g.holder_norm_bound * deriv_scale;
    const auto g_partial = g.partial;
    const Vec scales = in_scales;
    const int dim = g.dim;
    h.partial = [g_partial, scales, out_scale, normalize_output, dim](const MultiIndex& s, const Vec& u) {
        Vec x(dim);
        for (int i = 0; i < dim; ++i) x[i] = 2.0 * scales[i] * u[i] - scales[i];
        double v = g_partial(s, x);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < s[i]; ++j) v *= 2.0 * scales[i];
        if (normalize_output) {
            v /= 2.0 * out_scale;
            if (order(s) == 0) v += 0.5;
        }
        return v;
    };
    auto p = h.partial;
    h.eval = [p, dim](const Vec& u) { return p(MultiIndex(dim, 0), u); };
    norm.oracle = std::move(h);
    return norm;
}

} // namespace frob
