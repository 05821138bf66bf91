#pragma once

#include "frob/oracle.hpp"
#include "frob/primitives.hpp"

namespace frob {

struct TaylorCoefficient {
    std::vector<int> n; // grid point in {0..N}^d
    MultiIndex s;       // derivative multi-index, |s| <= r
    double value;       // partial(s, n/N) / s!
};

// Coefficients in lexicographic (n, s) order. Throws oracle_inconsistency_error
// if any |c| exceeds the declared Holder bound by more than 1e-9.
std::vector<TaylorCoefficient> taylor_coefficients(const FunctionOracle& oracle, int N);

struct HolderCompileResult {
    Network network;
    FrobeniusCertificate certificate;
    double error_bound = 0.0; // 2^d d^r N^-alpha + 6 2^d (d+r) d^r / k^2
    int chosen_N = 0;
    int chosen_k = 0;
    double rate_exponent = 0.0; // 2 alpha / (2 + d (D+1))
    bool finite_difference_warning = false;
};

// grid resolution tuned to the width parameter: ceil(k^{2/alpha})
int tuned_grid_resolution(double alpha, int k);

int holder_depth(int d, int r); // 2 ceil(log2(d+r)) + 2
double holder_error_bound(int d, int r, double alpha, int N, int k);
double holder_rate_exponent(int d, int r, double alpha);

// Certified kappa bound of the compiled sum of patches:
// ((N+1)^d d^r + 1)^{(D+1)/2} * patch bound.
double holder_kappa_formula(int d, int r, int N);

inline constexpr std::size_t kDefaultWeightCap = 100'000'000;

// Full construction: one localized Taylor patch per (grid point, derivative
// index), combined in a single N-ary linear combination. Refuses with a size
// estimate when the predicted weight count exceeds the cap.
HolderCompileResult compile_holder(const FunctionOracle& oracle, int k,
                                   std::size_t weight_cap = kDefaultWeightCap);

// Largest k whose certified kappa formula stays within K.
HolderCompileResult compile_holder_for_budget(const FunctionOracle& oracle, double K,
                                              std::size_t weight_cap = kDefaultWeightCap);
int holder_k_for_budget(const FunctionOracle& oracle, double K);

// Affine reduction of an oracle on prod_i [-R_i, R_i] with |g| <= R_out to the
// unit cube; partials are chain-rule scaled. When normalize_output is set the
// range is mapped into [0,1] (the final DAG level keeps its raw range).
struct NormalizedOracle {
    FunctionOracle oracle;
    Vec in_scales;
    double out_scale = 1.0;
    bool output_normalized = true;

    Vec to_raw_input(const Vec& u) const;   // u in [0,1]^d -> x in the raw box
    Vec to_unit_input(const Vec& x) const;  // inverse
    double to_raw_output(double h) const;   // h -> g value
};

NormalizedOracle range_normalize(const FunctionOracle& g, const Vec& in_scales, double out_scale,
                                 bool normalize_output = true);

} // namespace frob
