#pragma once

#include "frob/algebra.hpp"
#include "frob/rng.hpp"

namespace frob::test {

// dense random network for property tests
inline Network random_net(Rng& rng, int input_dim, int output_dim, int depth, int max_width = 5) {
    Network net;
    net.input_dim = input_dim;
    net.output_dim = output_dim;
    int prev = input_dim;
    for (int l = 0; l < depth; ++l) {
        const int w = static_cast<int>(rng.uniform_int(1, max_width));
        Vec weights(static_cast<std::size_t>(w) * prev);
        Vec bias(w);
        for (auto& v : weights) v = rng.uniform(-2.0, 2.0);
        for (auto& v : bias) v = rng.uniform(-1.0, 1.0);
        net.hidden.push_back({SpMat::from_dense(w, prev, weights), std::move(bias)});
        prev = w;
    }
    Vec fin(static_cast<std::size_t>(output_dim) * prev);
    for (auto& v : fin) v = rng.uniform(-2.0, 2.0);
    net.final_weight = SpMat::from_dense(output_dim, prev, fin);
    return net;
}

inline CertifiedNet certified(Network net) {
    const double k = kappa(net);
    return certify_fresh(std::move(net), k, "test:random");
}

// scalar identity x -> relu(x) - relu(-x), depth 1
inline Network identity_net() {
    Network net;
    net.input_dim = 1;
    net.output_dim = 1;
    net.hidden.push_back({SpMat::from_dense(2, 1, {1.0, -1.0}), Vec{0.0, 0.0}});
    net.final_weight = SpMat::from_dense(1, 2, {1.0, -1.0});
    return net;
}

} // namespace frob::test
