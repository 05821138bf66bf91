#include "frob/primitives.hpp"

#include <cmath>
#include <stdexcept>

#include "frob/summation.hpp"

namespace frob {

double square_kappa_closed_form(int k) {
    const double kd = k;
    return (2.0 / std::sqrt(kd)) * std::sqrt((16.0 * kd * kd + 12.0 * kd - 1.0) / (12.0 * kd));
}

CertifiedNet build_square(int k) {
    if (k < 1) throw std::invalid_argument("build_square: k must be >= 1");
    Network net;
    net.input_dim = 1;
    net.output_dim = 1;
    SpMat w(k, 1);
    Vec bias(k);
    for (int i = 1; i <= k; ++i) {
        w.begin_row();
        w.push(0, 1.0);
        bias[i - 1] = -(2.0 * i - 1.0) / (2.0 * k);
    }
    w.finalize();
    net.hidden.push_back({std::move(w), std::move(bias)});
    SpMat f(1, k);
    f.begin_row();
    for (int i = 0; i < k; ++i) f.push(i, 2.0 / k);
    f.finalize();
    net.final_weight = std::move(f);
    return certify_fresh(std::move(net), 3.0, "primitive:square");
}

namespace {

struct PsiBlockStats {
    double weight_sq = 0.0;
    double bias_sq = 0.0;
};

// Interleaved pre-clip multiplier core. Hidden units are laid out as triples
// (block1_j, block2_j, block3_j) and the final row pairs them with exactly
// negated coefficients: this makes the cancellations that produce zeros on
// the coordinate axes exact in floating point, which the generic block-order
// combine cannot guarantee. Constant inputs are folded into the bias with the
// same fl(t + w/2) expression in every block so the pairing survives.
Network psi_core_net(int k, bool const_left, bool const_right, PsiBlockStats stats[3]) {
    const int n_real = (const_left ? 0 : 1) + (const_right ? 0 : 1);
    Network net;
    net.input_dim = n_real;
    net.output_dim = 1;
    const int col_x = const_left ? -1 : 0;
    const int col_y = const_right ? -1 : (const_left ? 0 : 1);

    SpMat w(6 * k, n_real);
    Vec bias(6 * k);
    SpMat fin(1, 6 * k);
    fin.begin_row();
    const double c_out = 4.0 / k; // combine coefficient 2 times final entry 2/k
    int unit = 0;
    for (int half = 0; half < 2; ++half) {
        const double sign = (half == 0) ? 1.0 : -1.0;
        for (int i = 1; i <= k; ++i) {
            const double t = -(2.0 * i - 1.0) / (2.0 * k);
            const double wv = 0.5 * sign;
            // block 1: (x + y) / 2
            {
                double b = t;
                w.begin_row();
                if (!const_left) w.push(col_x, wv); else b = b + wv;
                if (!const_right) w.push(col_y, wv); else b = b + wv;
                bias[unit] = b;
                stats[0].weight_sq += (const_left ? 0.0 : wv * wv) + (const_right ? 0.0 : wv * wv);
                stats[0].bias_sq += b * b;
                fin.push(unit, c_out);
                ++unit;
            }
            // block 2: x / 2
            {
                double b = t;
                w.begin_row();
                if (!const_left) w.push(col_x, wv); else b = b + wv;
                bias[unit] = b;
                stats[1].weight_sq += const_left ? 0.0 : wv * wv;
                stats[1].bias_sq += b * b;
                fin.push(unit, -c_out);
                ++unit;
            }
            // block 3: y / 2
            {
                double b = t;
                w.begin_row();
                if (!const_right) w.push(col_y, wv); else b = b + wv;
                bias[unit] = b;
                stats[2].weight_sq += const_right ? 0.0 : wv * wv;
                stats[2].bias_sq += b * b;
                fin.push(unit, -c_out);
                ++unit;
            }
        }
    }
    w.finalize();
    fin.finalize();
    net.hidden.push_back({std::move(w), std::move(bias)});
    net.final_weight = std::move(fin);
    return net;
}

} // namespace

CertifiedNet build_product_core(int k, bool const_left, bool const_right) {
    if (k < 1) throw std::invalid_argument("build_product_core: k must be >= 1");
    PsiBlockStats stats[3];
    Network net = psi_core_net(k, const_left, const_right, stats);

    FrobeniusCertificate cert;
    cert.kappa = kappa(net);
    cert.budget = 48.0;
    cert.per_layer_augmented_norms = per_layer_augmented_norms(net);
    // standalone-block kappas for the recorded combination bound
    std::vector<double> block_kappas;
    const double final_norm = std::sqrt(8.0 / k); // ||(2/k, ..., 2/k)||_F over 2k entries
    for (int b = 0; b < 3; ++b)
        block_kappas.push_back(final_norm * std::sqrt(stats[b].weight_sq + stats[b].bias_sq + 1.0));
    AlgebraStep step;
    step.kind = "primitive:product_core";
    step.operand_kappas = block_kappas;
    step.coefficients = {2.0, -2.0, -2.0};
    step.bound_applied = combine_bound(1, step.coefficients, block_kappas);
    step.depth_in = 1;
    step.depth_out = 1;
    cert.derivation.push_back(std::move(step));
    cert.satisfied = cert.check_satisfied();
    return {std::move(net), std::move(cert)};
}

CertifiedNet build_product_unit(int k, bool const_left, bool const_right) {
    CertifiedNet core = build_product_core(k, const_left, const_right);
    CertifiedNet out = clip(core, 1.0);
    out.cert.budget = 360.0;
    out.cert.satisfied = out.cert.check_satisfied();
    return out;
}

CertifiedNet build_product(int k) { return build_product_unit(k, false, false); }

double monomial_kappa_bound(int d) {
    const double s = std::ceil(std::log2(static_cast<double>(d)));
    return std::pow(722.0, s) * std::pow(2.0, 7.0 * s * (s - 1.0) / 4.0);
}

CertifiedNet monomial_tree_stage(int k, int pair_count, const std::vector<bool>& const_slots) {
    // wire index of slot i among the real (non-constant) slots
    std::vector<int> wire_of(const_slots.size(), -1);
    int real_wires = 0;
    for (std::size_t i = 0; i < const_slots.size(); ++i)
        if (!const_slots[i]) wire_of[i] = real_wires++;
    std::vector<CertifiedNet> nodes;
    std::vector<std::vector<int>> maps;
    for (int j = 0; j < pair_count; ++j) {
        const bool cl = const_slots[2 * j];
        const bool cr = const_slots[2 * j + 1];
        nodes.push_back(build_product_unit(k, cl, cr));
        std::vector<int> map;
        if (!cl) map.push_back(wire_of[2 * j]);
        if (!cr) map.push_back(wire_of[2 * j + 1]);
        maps.push_back(std::move(map));
    }
    return concatenate_routed(nodes, real_wires, maps);
}

CertifiedNet monomial_tree(int k, int arity, int m) {
    if (m < 2 || (m & (m - 1)) != 0) throw std::invalid_argument("monomial_tree: m must be a power of two >= 2");
    if (arity < 1 || arity > m) throw std::invalid_argument("monomial_tree: arity out of range");
    std::vector<bool> const_slots(m, false);
    for (int i = arity; i < m; ++i) const_slots[i] = true;

    CertifiedNet acc;
    bool have = false;
    int wires = m;
    while (wires > 1) {
        const int pairs = wires / 2;
        CertifiedNet stage = monomial_tree_stage(k, pairs, const_slots);
        acc = have ? compose(stage, acc) : std::move(stage);
        have = true;
        wires = pairs;
        const_slots.assign(wires, false); // upper levels read real tree outputs
    }
    return acc;
}

CertifiedNet build_monomial(int d, int k) {
    if (d < 2) throw std::invalid_argument("build_monomial: d must be >= 2 (a single factor is the identity)");
    if (k < 1) throw std::invalid_argument("build_monomial: k must be >= 1");
    const int s = static_cast<int>(std::ceil(std::log2(static_cast<double>(d))));
    const int m = 1 << s;
    CertifiedNet tree = monomial_tree(k, d, m);
    tree.cert.budget = monomial_kappa_bound(d);
    tree.cert.satisfied = tree.cert.check_satisfied();
    return tree;
}

CertifiedNet build_hat(int N, int n) {
    if (N < 1 || n < 0 || n > N) throw std::invalid_argument("build_hat: require 1 <= N and 0 <= n <= N");
    Network net;
    net.input_dim = 1;
    net.output_dim = 1;
    SpMat w0(2, 1);
    w0.begin_row();
    w0.push(0, static_cast<double>(N));
    w0.begin_row();
    w0.push(0, -static_cast<double>(N));
    w0.finalize();
    net.hidden.push_back({std::move(w0), Vec{-static_cast<double>(n), static_cast<double>(n)}});
    SpMat w1(1, 2);
    w1.begin_row();
    w1.push(0, -1.0);
    w1.push(1, -1.0);
    w1.finalize();
    net.hidden.push_back({std::move(w1), Vec{1.0}});
    net.final_weight = SpMat::from_dense(1, 1, {1.0});
    return certify_fresh(std::move(net), 2.0 * std::sqrt(15.0) * N, "primitive:hat");
}

CertifiedNet build_shift(int n, int N) {
    if (N < 1 || n < 0 || n > N) throw std::invalid_argument("build_shift: require 1 <= N and 0 <= n <= N");
    const double c = static_cast<double>(n) / N;
    Network net;
    net.input_dim = 1;
    net.output_dim = 1;
    SpMat w0(2, 1);
    w0.begin_row();
    w0.push(0, 1.0);
    w0.begin_row();
    w0.push(0, -1.0);
    w0.finalize();
    net.hidden.push_back({std::move(w0), Vec{-c, c}});
    net.hidden.push_back({SpMat::identity(2), Vec{0.0, 0.0}});
    SpMat f(1, 2);
    f.begin_row();
    f.push(0, 1.0);
    f.push(1, -1.0);
    f.finalize();
    net.final_weight = std::move(f);
    return certify_fresh(std::move(net), 2.0 * std::sqrt(15.0), "primitive:shift");
}

double patch_kappa_bound(int d, int r, int N) {
    const double q = std::ceil(std::log2(2.0 * (d + r)));
    return 8.0 * (d + r) * (d + r) * N * std::pow(722.0, q) * std::pow(2.0, (7.0 * q * q - 7.0 * q) / 4.0);
}

double patch_error_bound(int d, int r, int k) { return 6.0 * (d + r) / (static_cast<double>(k) * k); }

CertifiedNet build_taylor_patch(const std::vector<int>& n, const MultiIndex& s, int N, int k, int d,
                                int r) {
    if (static_cast<int>(n.size()) != d || static_cast<int>(s.size()) != d)
        throw std::invalid_argument("build_taylor_patch: multi-index dimension mismatch");
    if (order(s) > r) throw std::invalid_argument("build_taylor_patch: |s| must be <= r");
    for (int i = 0; i < d; ++i)
        if (n[i] < 0 || n[i] > N) throw std::invalid_argument("build_taylor_patch: grid point out of range");

    const int t = d + r;
    if (t == 1) {
        // single factor: the patch is the hat itself
        CertifiedNet hat = build_hat(N, n[0]);
        hat.cert.budget = patch_kappa_bound(d, r, N);
        hat.cert.satisfied = hat.cert.check_satisfied();
        return hat;
    }

    std::vector<CertifiedNet> features;
    std::vector<std::vector<int>> maps;
    for (int i = 0; i < d; ++i) {
        features.push_back(build_hat(N, n[i]));
        maps.push_back({i});
    }
    for (int i = 0; i < d; ++i) {
        for (int rep = 0; rep < s[i]; ++rep) {
            features.push_back(build_shift(n[i], N));
            maps.push_back({i});
        }
    }
    CertifiedNet feature_net = concatenate_routed(features, d, maps);

    const int t_real = d + order(s);
    const int m = 1 << static_cast<int>(std::ceil(std::log2(static_cast<double>(t))));
    CertifiedNet tree = monomial_tree(k, t_real, m);
    CertifiedNet patch = compose(tree, feature_net);
    patch.cert.budget = patch_kappa_bound(d, r, N);
    patch.cert.satisfied = patch.cert.check_satisfied();
    return patch;
}

CertifiedNet build_hat_product(int N, const std::vector<int>& n, int k) {
    const int d = static_cast<int>(n.size());
    return build_taylor_patch(n, MultiIndex(d, 0), N, k, d, 0);
}

double hat_reference(double t) { return std::max(0.0, 1.0 - std::abs(t)); }

double hat_product_reference(int N, const std::vector<int>& n, const Vec& x) {
    double p = 1.0;
    for (std::size_t i = 0; i < n.size(); ++i) p *= hat_reference(N * x[i] - n[i]);
    return p;
}

double patch_reference(const std::vector<int>& n, const MultiIndex& s, int N, const Vec& x) {
    double p = hat_product_reference(N, n, x);
    for (std::size_t i = 0; i < n.size(); ++i)
        for (int rep = 0; rep < s[i]; ++rep) p *= (x[i] - static_cast<double>(n[i]) / N);
    return p;
}

} // namespace frob
