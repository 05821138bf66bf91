#pragma once

#include "frob/network.hpp"

namespace frob {

// A network together with its certificate; what every closure operation
// consumes and produces.
struct CertifiedNet {
    Network net;
    FrobeniusCertificate cert;
};

CertifiedNet certify_fresh(Network net, double budget, std::string step_kind, std::string note = "");

// Normal form: hidden layers scaled so sqrt(||A||_F^2 + ||b||^2) <= 1, all
// scale factors absorbed into the final matrix, whose Frobenius norm then
// equals kappa of the input network. Function-preserving. Note kappa of the
// rescaled parameterization itself is generally larger; certificates keep
// tracking the original value.
Network rescale(const Network& net);

// sum_i coeffs[i] * nets[i]; operands must share depth, input dim, output dim.
// Zero-coefficient operands are dropped from the block construction; the bound
// still uses the full coefficient vector.
CertifiedNet linear_combine(const std::vector<CertifiedNet>& nets, const std::vector<double>& coeffs);

// Consuming variant for large operand sets: operands are dismantled as they
// are copied into the block structure.
CertifiedNet linear_combine_consuming(std::vector<CertifiedNet>&& nets, const std::vector<double>& coeffs);

// (nets[0](x), ..., nets[n-1](x)); operands must share depth and input dim.
CertifiedNet concatenate(const std::vector<CertifiedNet>& nets);

// Like concatenate, but operand i reads input coordinates col_maps[i] of a
// total_inputs-wide input vector. The selection is folded into each operand's
// first layer and costs neither depth nor Frobenius mass.
CertifiedNet concatenate_routed(const std::vector<CertifiedNet>& nets, int total_inputs,
                                const std::vector<std::vector<int>>& col_maps);

// outer after inner.
CertifiedNet compose(const CertifiedNet& outer, const CertifiedNet& inner);

// Extends depth to target_depth by appending relu(x) - relu(-x) identity pairs
// behind the final layer.
CertifiedNet depth_pad(const CertifiedNet& net, int target_depth);

// chi_B after net (scalar output only); tracked via the composition rule.
CertifiedNet clip(const CertifiedNet& net, double B);

// Depth-D all-zero network with the given dimensions (empty linear combines).
Network zero_network(int input_dim, int output_dim, int depth);

// Bound formulas, exposed so budget allocation can predict certificates
// without building networks.
double combine_bound(int depth, const std::vector<double>& coeffs, const std::vector<double>& kappas);
double concat_bound(int depth, const std::vector<double>& kappas);
double compose_bound(int inner_depth, double inner_kappa, double outer_kappa);
double depth_pad_bound(int out_dim, double kappa_in);

} // namespace frob
