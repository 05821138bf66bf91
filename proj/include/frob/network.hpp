#pragma once

#include <optional>
#include <string>
#include <vector>

#include "frob/spmat.hpp"

namespace frob {

// One record per algebra operation that produced a network, kept so a
// certificate can be audited step by step.
struct AlgebraStep {
    std::string kind; // rescale | linear_combine | concatenate | compose | depth_pad | clip | primitive:*
    std::vector<double> operand_kappas;
    std::vector<double> coefficients;
    double bound_applied = 0.0;
    int depth_in = 0;
    int depth_out = 0;
    std::string note;
};

// kappa is always the exact recomputed value; budget is the certified upper
// bound carried through the construction. Rate certificates quote the budget,
// verification checks the exact value against it.
struct FrobeniusCertificate {
    double kappa = 0.0;
    double budget = 0.0;
    std::vector<double> per_layer_augmented_norms;
    std::vector<AlgebraStep> derivation;
    bool satisfied = true;

    bool check_satisfied(double rel_tol = 1e-12) const {
        return kappa <= budget * (1.0 + rel_tol) + 1e-300;
    }
};

struct Layer {
    SpMat weight;
    Vec bias;
};

// Explicit ReLU network: x -> A_D relu(A_{D-1} relu(... relu(A_0 x + b_0) ...) + b_{D-1}).
// Depth-0 networks (pure linear maps) are legal.
struct Network {
    std::vector<Layer> hidden;
    SpMat final_weight;
    int input_dim = 0;
    int output_dim = 0;

    int depth() const { return static_cast<int>(hidden.size()); }
    int width() const;
    std::size_t weight_count() const;

    void validate() const; // throws std::invalid_argument on malformed structure
};

inline double relu(double x) { return x > 0.0 ? x : 0.0; }

// Single-point evaluation; pure and thread-safe.
Vec evaluate(const Network& net, const Vec& x);

// Evaluation with caller-provided scratch; avoids allocation in probe loops.
class Evaluator {
public:
    explicit Evaluator(const Network& net);
    void operator()(const double* x, double* y);
    const Network& net() const { return *net_; }

private:
    const Network* net_;
    Vec buf_a_, buf_b_;
};

// kappa(theta) = ||A_D||_F * prod_l sqrt(||A_l||_F^2 + ||b_l||_2^2 + 1)
double kappa(const Network& net);
std::vector<double> per_layer_augmented_norms(const Network& net);
double bias_norm_sq(const Vec& bias);

// Bias-free homogeneous form: one matrix per layer, biases absorbed into an
// appended constant coordinate.
struct AugmentedNetwork {
    std::vector<SpMat> matrices; // tilde A_0 ... tilde A_D
    int input_dim = 0;
    int output_dim = 0;
};

AugmentedNetwork to_augmented(const Network& net);
Vec evaluate_augmented(const AugmentedNetwork& aug, const Vec& x); // x without the constant coordinate
double augmented_norm_product(const AugmentedNetwork& aug);

// chi_B(t) = relu(t) - relu(-t) - relu(t - B) + relu(-t - B), as a width-4,
// depth-1 network. clip() composes it after a scalar-output network.
Network build_chi(double B);
std::pair<Network, FrobeniusCertificate> clip(const Network& net, const FrobeniusCertificate& cert, double B);

// File round-trip. Layers are written dense below a size threshold and as
// explicit (row, col, value) entries above it; both forms are bit-exact.
std::string serialize(const Network& net, const FrobeniusCertificate& cert);
std::pair<Network, FrobeniusCertificate> deserialize(const std::string& text);

} // namespace frob
