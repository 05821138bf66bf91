#include "frob/algebra.hpp"

#include <cmath>
#include <stdexcept>

#include "frob/summation.hpp"

namespace frob {

namespace {

// entrywise A + B over identical shapes
SpMat sp_add(const SpMat& a, const SpMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("sp_add: shape mismatch");
    SpMat out(a.rows(), a.cols());
    out.reserve(a.nnz() + b.nnz());
    for (int r = 0; r < a.rows(); ++r) {
        out.begin_row();
        std::size_t i = a.row_begin(r), j = b.row_begin(r);
        while (i < a.row_end(r) || j < b.row_end(r)) {
            if (j >= b.row_end(r) || (i < a.row_end(r) && a.entry_col(i) < b.entry_col(j))) {
                out.push(a.entry_col(i), a.entry_val(i));
                ++i;
            } else if (i >= a.row_end(r) || b.entry_col(j) < a.entry_col(i)) {
                out.push(b.entry_col(j), b.entry_val(j));
                ++j;
            } else {
                out.push(a.entry_col(i), a.entry_val(i) + b.entry_val(j));
                ++i;
                ++j;
            }
        }
    }
    out.finalize();
    return out;
}

Vec concat_vecs(const std::vector<const Vec*>& vs) {
    Vec out;
    for (const auto* v : vs) out.insert(out.end(), v->begin(), v->end());
    return out;
}

void rescale_in_place(Network& net) {
    // A_l and b_l see differently scaled signals once upstream layers shrink:
    // the layer matrix divides by its own s_l, the bias by the accumulated
    // product (every factor is >= 1, so the unit-mass claim survives).
    double absorbed = 1.0;
    for (auto& l : net.hidden) {
        const double s = std::sqrt(l.weight.frobenius_sq() + bias_norm_sq(l.bias) + 1.0);
        l.weight = l.weight.scaled(1.0 / s);
        absorbed *= s;
        for (auto& b : l.bias) b /= absorbed;
    }
    net.final_weight = net.final_weight.scaled(absorbed);
}

} // namespace

CertifiedNet certify_fresh(Network net, double budget, std::string step_kind, std::string note) {
    FrobeniusCertificate cert;
    cert.kappa = kappa(net);
    cert.budget = budget;
    cert.per_layer_augmented_norms = per_layer_augmented_norms(net);
    AlgebraStep step;
    step.kind = std::move(step_kind);
    step.bound_applied = budget;
    step.depth_in = 0;
    step.depth_out = net.depth();
    step.note = std::move(note);
    cert.derivation.push_back(std::move(step));
    cert.satisfied = cert.check_satisfied();
    return {std::move(net), std::move(cert)};
}

Network rescale(const Network& net) {
    Network out = net;
    rescale_in_place(out);
    return out;
}

double combine_bound(int depth, const std::vector<double>& coeffs, const std::vector<double>& kappas) {
    if (depth == 0) {
        // depth-0 closure: plain triangle inequality on the summed matrices
        double b = 0.0;
        for (std::size_t i = 0; i < coeffs.size(); ++i) b += std::abs(coeffs[i]) * kappas[i];
        return b;
    }
    KahanSum s;
    for (std::size_t i = 0; i < coeffs.size(); ++i) s.add(coeffs[i] * kappas[i] * coeffs[i] * kappas[i]);
    return std::pow(std::sqrt(static_cast<double>(coeffs.size()) + 1.0), depth) * std::sqrt(s.value());
}

double concat_bound(int depth, const std::vector<double>& kappas) {
    KahanSum s;
    for (double k : kappas) s.add(k * k);
    return std::pow(std::sqrt(static_cast<double>(kappas.size()) + 1.0), depth) * std::sqrt(s.value());
}

double compose_bound(int inner_depth, double inner_kappa, double outer_kappa) {
    return std::pow(std::sqrt(2.0), inner_depth) * outer_kappa *
           std::sqrt(inner_kappa * inner_kappa + 2.0);
}

double depth_pad_bound(int out_dim, double kappa_in) {
    return std::sqrt(2.0 * out_dim) * std::sqrt(2.0 * kappa_in * kappa_in + 1.0);
}

Network zero_network(int input_dim, int output_dim, int depth) {
    Network z;
    z.input_dim = input_dim;
    z.output_dim = output_dim;
    int cur = input_dim;
    for (int i = 0; i < depth; ++i) {
        SpMat w(1, cur);
        w.finalize();
        z.hidden.push_back({std::move(w), Vec{0.0}});
        cur = 1;
    }
    SpMat f(output_dim, cur);
    f.finalize();
    z.final_weight = std::move(f);
    return z;
}

namespace {

// Shared block assembly for linear_combine / concatenate. Operands are
// rescaled in place, hidden layers become block-diagonal (the first layer is
// a vertical stack since every block reads the same input), and the final
// layer is an hstack of coefficient-scaled blocks (combine) or a block
// diagonal (concatenate). Consumed layers are released as soon as they are
// copied out, which keeps the peak footprint near a single copy for the
// patch combines with tens of millions of weights.
CertifiedNet assemble_parallel(std::vector<CertifiedNet>& nets, const std::vector<double>* coeffs,
                               const char* kind) {
    if (nets.empty()) throw std::invalid_argument(std::string(kind) + ": no operands");
    const int depth = nets[0].net.depth();
    const int input_dim = nets[0].net.input_dim;
    for (const auto& cn : nets) {
        if (cn.net.depth() != depth)
            throw std::invalid_argument(std::string(kind) + ": depth mismatch (depth_pad first)");
        if (cn.net.input_dim != input_dim)
            throw std::invalid_argument(std::string(kind) + ": input dimension mismatch");
    }
    const bool combine = coeffs != nullptr;
    if (combine) {
        for (const auto& cn : nets)
            if (cn.net.output_dim != nets[0].net.output_dim)
                throw std::invalid_argument("linear_combine: output dimension mismatch");
    }

    std::vector<double> exact_kappas, budget_kappas;
    for (const auto& cn : nets) {
        exact_kappas.push_back(cn.cert.kappa);
        budget_kappas.push_back(cn.cert.budget);
    }

    // drop zero-coefficient operands from the block construction
    std::vector<Network*> kept;
    std::vector<double> kept_coeffs;
    for (std::size_t i = 0; i < nets.size(); ++i) {
        if (combine && (*coeffs)[i] == 0.0) continue;
        rescale_in_place(nets[i].net);
        kept.push_back(&nets[i].net);
        kept_coeffs.push_back(combine ? (*coeffs)[i] : 1.0);
    }

    Network out;
    out.input_dim = input_dim;
    int total_out = 0;
    for (const auto& cn : nets) total_out += cn.net.output_dim;
    out.output_dim = combine ? nets[0].net.output_dim : total_out;

    if (kept.empty()) {
        out = zero_network(input_dim, out.output_dim, depth);
    } else {
        for (int l = 0; l < depth; ++l) {
            std::vector<const SpMat*> ws;
            std::vector<const Vec*> bs;
            for (auto* n : kept) {
                ws.push_back(&n->hidden[l].weight);
                bs.push_back(&n->hidden[l].bias);
            }
            SpMat w = (l == 0) ? vstack(ws) : block_diag(ws);
            Vec b = concat_vecs(bs);
            out.hidden.push_back({std::move(w), std::move(b)});
            for (auto* n : kept) n->hidden[l] = Layer{};
        }
        std::vector<SpMat> scaled_finals;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            scaled_finals.push_back(combine && kept_coeffs[i] != 1.0
                                        ? kept[i]->final_weight.scaled(kept_coeffs[i])
                                        : std::move(kept[i]->final_weight));
            kept[i]->final_weight = SpMat();
        }
        std::vector<const SpMat*> fs;
        for (const auto& f : scaled_finals) fs.push_back(&f);
        if (combine) {
            if (depth == 0) {
                SpMat sum = scaled_finals[0];
                for (std::size_t i = 1; i < scaled_finals.size(); ++i) sum = sp_add(sum, scaled_finals[i]);
                out.final_weight = std::move(sum);
            } else {
                out.final_weight = hstack(fs);
            }
        } else {
            // depth-0 operands share the input, so outputs stack vertically
            out.final_weight = (depth == 0) ? vstack(fs) : block_diag(fs);
        }
    }

    FrobeniusCertificate cert;
    cert.kappa = kappa(out);
    const std::vector<double> full_coeffs = combine ? *coeffs : std::vector<double>(nets.size(), 1.0);
    cert.budget = combine ? combine_bound(depth, full_coeffs, budget_kappas)
                          : concat_bound(depth, budget_kappas);
    cert.per_layer_augmented_norms = per_layer_augmented_norms(out);
    AlgebraStep step;
    step.kind = kind;
    step.operand_kappas = std::move(exact_kappas);
    if (combine) step.coefficients = *coeffs;
    step.bound_applied = combine ? combine_bound(depth, full_coeffs, step.operand_kappas)
                                 : concat_bound(depth, step.operand_kappas);
    step.depth_in = depth;
    step.depth_out = depth;
    cert.derivation.push_back(std::move(step));
    cert.satisfied = cert.check_satisfied();
    return {std::move(out), std::move(cert)};
}

} // namespace

CertifiedNet linear_combine(const std::vector<CertifiedNet>& nets, const std::vector<double>& coeffs) {
    if (nets.size() != coeffs.size()) throw std::invalid_argument("linear_combine: coefficient count mismatch");
    std::vector<CertifiedNet> work = nets;
    return assemble_parallel(work, &coeffs, "linear_combine");
}

CertifiedNet linear_combine_consuming(std::vector<CertifiedNet>&& nets, const std::vector<double>& coeffs) {
    if (nets.size() != coeffs.size()) throw std::invalid_argument("linear_combine: coefficient count mismatch");
    std::vector<CertifiedNet> work = std::move(nets);
    return assemble_parallel(work, &coeffs, "linear_combine");
}

CertifiedNet concatenate(const std::vector<CertifiedNet>& nets) {
    std::vector<CertifiedNet> work = nets;
    return assemble_parallel(work, nullptr, "concatenate");
}

CertifiedNet concatenate_routed(const std::vector<CertifiedNet>& nets, int total_inputs,
                                const std::vector<std::vector<int>>& col_maps) {
    if (nets.size() != col_maps.size())
        throw std::invalid_argument("concatenate_routed: map count mismatch");
    std::vector<CertifiedNet> routed;
    routed.reserve(nets.size());
    for (std::size_t i = 0; i < nets.size(); ++i) {
        CertifiedNet cn = nets[i];
        if (static_cast<int>(col_maps[i].size()) != cn.net.input_dim)
            throw std::invalid_argument("concatenate_routed: map arity mismatch");
        if (cn.net.depth() == 0) {
            cn.net.final_weight = scatter_columns(cn.net.final_weight, total_inputs, col_maps[i]);
        } else {
            cn.net.hidden[0].weight = scatter_columns(cn.net.hidden[0].weight, total_inputs, col_maps[i]);
        }
        cn.net.input_dim = total_inputs;
        routed.push_back(std::move(cn));
    }
    return assemble_parallel(routed, nullptr, "concatenate");
}

CertifiedNet compose(const CertifiedNet& outer, const CertifiedNet& inner) {
    if (inner.net.output_dim != outer.net.input_dim)
        throw std::invalid_argument("compose: interface dimension mismatch");
    // Only the inner operand is rescaled: the outer's own kappa decomposition
    // already pays for its layers, and the interface estimate trades the
    // outer's first-layer norm against sqrt(kappa_inner^2 + 2).
    Network in = rescale(inner.net);
    Network ou = outer.net;
    const int d1 = in.depth();

    Network out;
    out.input_dim = in.input_dim;
    out.output_dim = ou.output_dim;
    out.hidden = std::move(in.hidden);
    if (ou.depth() == 0) {
        out.final_weight = ou.final_weight.multiply(in.final_weight);
    } else {
        out.hidden.push_back({ou.hidden[0].weight.multiply(in.final_weight), std::move(ou.hidden[0].bias)});
        for (std::size_t l = 1; l < ou.hidden.size(); ++l) out.hidden.push_back(std::move(ou.hidden[l]));
        out.final_weight = std::move(ou.final_weight);
    }

    FrobeniusCertificate cert;
    cert.kappa = kappa(out);
    cert.budget = compose_bound(d1, inner.cert.budget, outer.cert.budget);
    cert.per_layer_augmented_norms = per_layer_augmented_norms(out);
    cert.derivation = inner.cert.derivation;
    AlgebraStep step;
    step.kind = "compose";
    step.operand_kappas = {inner.cert.kappa, outer.cert.kappa};
    step.bound_applied = compose_bound(d1, inner.cert.kappa, outer.cert.kappa);
    step.depth_in = d1;
    step.depth_out = out.depth();
    cert.derivation.push_back(std::move(step));
    cert.satisfied = cert.check_satisfied();
    return {std::move(out), std::move(cert)};
}

CertifiedNet depth_pad(const CertifiedNet& net, int target_depth) {
    if (target_depth < net.net.depth())
        throw std::invalid_argument("depth_pad: target depth below current depth");
    CertifiedNet cur = net;
    while (cur.net.depth() < target_depth) {
        const double kappa_in = cur.cert.kappa;
        const double budget_in = cur.cert.budget;
        const int d_in = cur.net.depth();
        Network r = rescale(cur.net);
        const SpMat neg = r.final_weight.negated();
        const int m = r.output_dim;
        Network padded;
        padded.input_dim = r.input_dim;
        padded.output_dim = m;
        padded.hidden = std::move(r.hidden);
        padded.hidden.push_back({vstack({&r.final_weight, &neg}), Vec(2 * m, 0.0)});
        const SpMat id = SpMat::identity(m);
        const SpMat nid = id.negated();
        padded.final_weight = hstack({&id, &nid});

        // the rescaled hidden stack contributes at most sqrt(2) per layer
        const double slack = std::pow(std::sqrt(2.0), d_in);
        FrobeniusCertificate cert;
        cert.kappa = kappa(padded);
        cert.budget = slack * depth_pad_bound(m, budget_in);
        cert.per_layer_augmented_norms = per_layer_augmented_norms(padded);
        cert.derivation = std::move(cur.cert.derivation);
        AlgebraStep step;
        step.kind = "depth_pad";
        step.operand_kappas = {kappa_in};
        step.bound_applied = slack * depth_pad_bound(m, kappa_in);
        step.depth_in = d_in;
        step.depth_out = padded.depth();
        cert.derivation.push_back(std::move(step));
        cert.satisfied = cert.check_satisfied();
        cur = {std::move(padded), std::move(cert)};
    }
    return cur;
}

CertifiedNet clip(const CertifiedNet& net, double B) {
    if (net.net.output_dim != 1)
        throw std::invalid_argument("clip: requires scalar output (concatenate clipped components instead)");
    const double chi_kappa = 2.0 * std::sqrt(5.0 + 2.0 * B * B);
    CertifiedNet chi = certify_fresh(build_chi(B), chi_kappa, "primitive:chi");
    CertifiedNet out = compose(chi, net);
    out.cert.derivation.back().kind = "clip";
    out.cert.derivation.back().coefficients = {B};
    return out;
}

} // namespace frob
