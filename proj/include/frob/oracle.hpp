#pragma once

#include <functional>
#include <string>
#include <vector>

#include "frob/multiindex.hpp"
#include "frob/spmat.hpp"

namespace frob {

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

using Box = std::vector<Interval>;

inline Box unit_box(int dim) { return Box(dim, Interval{0.0, 1.0}); }
inline Box symmetric_box(int dim, double radius) { return Box(dim, Interval{-radius, radius}); }

// Black-box target with exact partial-derivative evaluators up to order r.
// alpha = r + beta with beta in (0, 1].
struct FunctionOracle {
    int dim = 1;
    double alpha = 1.0;
    int r = 0;
    Box domain;
    double range_bound = 1.0;       // |h| <= range_bound on the domain
    double holder_norm_bound = 1.0; // declared Holder-norm bound, checked against coefficients
    bool finite_difference = false; // partials come from the FD adapter
    std::function<double(const Vec&)> eval;
    // must cover every multi-index with |s| <= r; s = 0 returns eval
    std::function<double(const MultiIndex&, const Vec&)> partial;
};

// derivative order implied by alpha: r = ceil(alpha) - 1 for non-integer
// alpha, alpha - 1 otherwise
int holder_order(double alpha);

// Polynomial sum of terms coef * prod x_i^{exp_i}, with exact partials.
struct PolyTerm {
    double coef;
    std::vector<int> exponents;
};
FunctionOracle make_polynomial(int dim, std::vector<PolyTerm> terms, double alpha, Box domain,
                               double range_bound, double holder_norm_bound);

// offset + amplitude * sin(freq * mean(x) + phase), with exact partials.
FunctionOracle make_sine(int dim, double offset, double amplitude, double freq, double phase,
                         double alpha, Box domain, double range_bound, double holder_norm_bound);

// Central finite differences (step 1e-5) for oracles without analytic
// partials; flagged so compilation results carry a warning.
FunctionOracle with_finite_difference_partials(FunctionOracle oracle);

// Named targets for the CLI and the test gallery (unit-domain oracles).
FunctionOracle holder_gallery_target(const std::string& name);
std::vector<std::string> holder_gallery_names();

} // namespace frob
