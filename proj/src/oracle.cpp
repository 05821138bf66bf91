#include "frob/oracle.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "frob/errors.hpp"

namespace frob {

int holder_order(double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("holder_order: alpha must be positive");
    const double c = std::ceil(alpha);
    if (c == alpha) return static_cast<int>(alpha) - 1;
    return static_cast<int>(c) - 1;
}

namespace {

double falling_factorial(int e, int s) {
    double f = 1.0;
    for (int j = 0; j < s; ++j) f *= (e - j);
    return f;
}

} // namespace

FunctionOracle make_polynomial(int dim, std::vector<PolyTerm> terms, double alpha, Box domain,
                               double range_bound, double holder_norm_bound) {
    for (const auto& t : terms)
        if (static_cast<int>(t.exponents.size()) != dim)
            throw std::invalid_argument("make_polynomial: exponent arity mismatch");
    FunctionOracle o;
    o.dim = dim;
    o.alpha = alpha;
    o.r = holder_order(alpha);
    o.domain = std::move(domain);
    o.range_bound = range_bound;
    o.holder_norm_bound = holder_norm_bound;
    auto shared = std::make_shared<std::vector<PolyTerm>>(std::move(terms));
    o.partial = [shared, dim](const MultiIndex& s, const Vec& x) {
        double total = 0.0;
        for (const auto& t : *shared) {
            double v = t.coef;
            for (int i = 0; i < dim && v != 0.0; ++i) {
                if (s[i] > t.exponents[i]) {
                    v = 0.0;
                    break;
                }
                v *= falling_factorial(t.exponents[i], s[i]);
                const int rem = t.exponents[i] - s[i];
                for (int j = 0; j < rem; ++j) v *= x[i];
            }
            total += v;
        }
        return total;
    };
    auto p = o.partial;
    o.eval = [p, dim](const Vec& x) { return p(MultiIndex(dim, 0), x); };
    return o;
}

FunctionOracle make_sine(int dim, double offset, double amplitude, double freq, double phase,
                         double alpha, Box domain, double range_bound, double holder_norm_bound) {
    FunctionOracle o;
    o.dim = dim;
    o.alpha = alpha;
    o.r = holder_order(alpha);
    o.domain = std::move(domain);
    o.range_bound = range_bound;
    o.holder_norm_bound = holder_norm_bound;
    o.partial = [=](const MultiIndex& s, const Vec& x) {
        double mean = 0.0;
        for (double v : x) mean += v;
        mean /= dim;
        const int m = order(s);
        const double arg = freq * mean + phase + m * 1.5707963267948966;
        double v = amplitude * std::sin(arg) * std::pow(freq / dim, m);
        if (m == 0) v += offset;
        return v;
    };
    auto p = o.partial;
    o.eval = [p, dim](const Vec& x) { return p(MultiIndex(dim, 0), x); };
    return o;
}

FunctionOracle with_finite_difference_partials(FunctionOracle oracle) {
    const double step = 1e-5;
    auto eval = oracle.eval;
    const int dim = oracle.dim;
    oracle.partial = [eval, dim, step](const MultiIndex& s, const Vec& x) {
        // nested central differences, one coordinate at a time
        std::function<double(MultiIndex, Vec)> rec = [&](MultiIndex rem, Vec pt) -> double {
            for (int i = 0; i < dim; ++i) {
                if (rem[i] > 0) {
                    --rem[i];
                    Vec hi = pt, lo = pt;
                    hi[i] += step;
                    lo[i] -= step;
                    return (rec(rem, hi) - rec(rem, lo)) / (2.0 * step);
                }
            }
            return eval(pt);
        };
        return rec(s, x);
    };
    oracle.finite_difference = true;
    return oracle;
}

FunctionOracle holder_gallery_target(const std::string& name) {
    if (name == "holder-square") {
        // x^2 on [0,1]; C^2 norm = sup|h| + sup|h'| + Lip(h') = 1 + 2 + 2
        return make_polynomial(1, {{1.0, {2}}}, 2.0, unit_box(1), 1.0, 5.0);
    }
    if (name == "holder-sq2d") {
        // (x1+x2)^2/4 on [0,1]^2
        return make_polynomial(2, {{0.25, {2, 0}}, {0.5, {1, 1}}, {0.25, {0, 2}}}, 2.0, unit_box(2),
                               1.0, 4.5);
    }
    if (name == "holder-1d-a2") {
        // 0.5 + 0.4 sin(3x) on [0,1]
        return make_sine(1, 0.5, 0.4, 3.0, 0.0, 2.0, unit_box(1), 0.9, 5.7);
    }
    if (name == "holder-lin1d") {
        return make_polynomial(1, {{1.0, {1}}}, 2.0, unit_box(1), 1.0, 2.0);
    }
    throw config_error("unknown holder gallery target: " + name);
}

std::vector<std::string> holder_gallery_names() {
    return {"holder-square", "holder-sq2d", "holder-1d-a2", "holder-lin1d"};
}

} // namespace frob
