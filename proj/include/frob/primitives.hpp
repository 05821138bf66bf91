#pragma once

#include "frob/algebra.hpp"
#include "frob/multiindex.hpp"

namespace frob {

// One-hidden-layer Riemann-sum square approximator on [0,1]:
// width k, depth 1, |x^2 - net(x)| <= 1/(2k^2), kappa <= 3 for every k.
CertifiedNet build_square(int k);
double square_kappa_closed_form(int k); // (2/sqrt(k)) * sqrt((16k^2+12k-1)/(12k))

// Two-input multiplier psi_k on [-1,1]^2: width 6k, depth 2, kappa <= 360,
// |xy - net(x,y)| <= 3/k^2, and net(x,y) is exactly zero whenever x or y is
// exactly zero. const_left/const_right replace an input by the constant 1
// (folded into the first-layer bias), used for padding in the monomial tree.
CertifiedNet build_product(int k);
CertifiedNet build_product_unit(int k, bool const_left, bool const_right);

// Pre-clip combination 2(phi((x+y)/2) - phi(x/2) - phi(y/2)); exposed for the
// composition bound checks.
CertifiedNet build_product_core(int k, bool const_left = false, bool const_right = false);

// Binary-tree monomial approximator of x_1 * ... * x_d on [-1,1]^d:
// depth 2*ceil(log2(d)), width <= 6dk, sup error <= 6d/k^2, exact zero when
// any x_i = 0.
CertifiedNet build_monomial(int d, int k);
double monomial_kappa_bound(int d); // 722^s * 2^{7s(s-1)/4}, s = ceil(log2(d))

// Internal tree on m = 2^levels slots, the first `arity` of which are real
// inputs and the rest constant ones. Exposed for the per-level error
// recursion tests.
CertifiedNet monomial_tree(int k, int arity, int m);
CertifiedNet monomial_tree_stage(int k, int pair_count, const std::vector<bool>& const_slots);

// One-dimensional hat relu(1 - relu(Nx - n) - relu(n - Nx)): depth 2,
// support [(n-1)/N, (n+1)/N], range [0,1], kappa <= 2*sqrt(15)*N.
CertifiedNet build_hat(int N, int n);

// Depth-2 realization of x -> x - n/N, kappa <= 2*sqrt(15).
CertifiedNet build_shift(int n, int N);

// Localized Taylor patch: hats for every coordinate, s_i shift factors per
// coordinate, multiplied by the monomial tree on d+r slots. Zero outside
// ||x - n/N||_inf <= 1/N; sup error vs the exact patch <= 6(d+r)/k^2.
CertifiedNet build_taylor_patch(const std::vector<int>& n, const MultiIndex& s, int N, int k, int d,
                                int r);
double patch_kappa_bound(int d, int r, int N);
double patch_error_bound(int d, int r, int k); // 6(d+r)/k^2

// Tensor hat approximated through the tree (the exact product is never
// materialized as a network).
CertifiedNet build_hat_product(int N, const std::vector<int>& n, int k);

// Exact reference oracles for verification.
double hat_reference(double t);                                            // max(0, 1-|t|)
double hat_product_reference(int N, const std::vector<int>& n, const Vec& x);
double patch_reference(const std::vector<int>& n, const MultiIndex& s, int N, const Vec& x);

} // namespace frob
