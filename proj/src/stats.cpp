#include "frob/stats.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "frob/errors.hpp"
#include "frob/rng.hpp"
#include "frob/summation.hpp"

namespace frob {

Dataset generate_data_fn(const TargetFn& target, int dim, double target_sup, int n,
                         std::uint64_t seed, double noise_half_width) {
    if (target_sup > 1.0 + 1e-12)
        throw std::invalid_argument("generate_data: target must map into [-1,1]");
    if (noise_half_width < 0.0 || noise_half_width > 1.0 - target_sup + 1e-12)
        throw std::invalid_argument("generate_data: noise half-width must lie in [0, 1 - sup|f*|]");
    Dataset d;
    d.seed = seed;
    d.noise_half_width = noise_half_width;
    d.input_dim = dim;
    Rng rng(seed, 0x5eed);
    d.xs.reserve(n);
    d.ys.reserve(n);
    for (int i = 0; i < n; ++i) {
        Vec x = rng.ball_point(dim);
        double y = target(x);
        if (noise_half_width > 0.0) y += rng.uniform(-noise_half_width, noise_half_width);
        d.xs.push_back(std::move(x));
        d.ys.push_back(y);
    }
    return d;
}

Dataset generate_data(const DagSpec& target, int n, std::uint64_t seed, double noise_half_width) {
    target.validate();
    return generate_data_fn([&target](const Vec& x) { return target.eval_exact(x); },
                            target.input_dim, target.output_range_bound(), n, seed, noise_half_width);
}

double schedule_K_exponent(const DagSpec& target) {
    const int L = target.level_count();
    const int D = target.theorem_depth();
    const auto rates = rate_table(target).per_node;
    double e = 0.0;
    for (const auto& nr : rates) {
        const double X = 2.0 * L + (D + L) * static_cast<double>(nr.d_in);
        e = std::max(e, 0.5 * X / (X + 4.0 * nr.alpha_star));
    }
    return e;
}

double schedule_K(const DagSpec& target, std::int64_t n, double multiplier) {
    if (n < 1) throw std::invalid_argument("schedule_K: n must be >= 1");
    return multiplier * std::pow(static_cast<double>(n), schedule_K_exponent(target));
}

int prescribed_depth(const DagSpec& target) { return target.theorem_depth(); }

int prescribed_width(const DagSpec& target, double K, int floor_width) {
    const int D = target.theorem_depth();
    const int L = target.level_count();
    double w = 0.0;
    for (const auto& nr : rate_table(target).per_node) {
        const double expo = (2.0 * nr.d_in + nr.alpha) / ((D + L) * static_cast<double>(nr.d_in) + 2.0 * L);
        w = std::max(w, std::pow(K, expo));
    }
    return std::max(floor_width, static_cast<int>(std::ceil(w)));
}

namespace {

// Dense trainable multilayer perceptron with scalar output. Kept separate
// from the sparse Network type: training needs contiguous storage and cheap
// in-place updates.
struct DenseNet {
    int input_dim = 0;
    std::vector<int> widths; // hidden layer widths
    std::vector<Vec> w;      // hidden weights, row-major widths[l] x prev
    std::vector<Vec> b;
    Vec final_w; // 1 x widths.back()

    static DenseNet init(int input_dim, int width, int depth, Rng& rng) {
        DenseNet net;
        net.input_dim = input_dim;
        net.widths.assign(depth, width);
        int prev = input_dim;
        for (int l = 0; l < depth; ++l) {
            const double scale = 1.0 / std::sqrt(static_cast<double>(prev));
            net.w.emplace_back(static_cast<std::size_t>(width) * prev);
            net.b.emplace_back(width, 0.0);
            for (auto& v : net.w.back()) v = scale * rng.normal();
            prev = width;
        }
        net.final_w.assign(prev, 0.0);
        const double scale = 1.0 / std::sqrt(static_cast<double>(prev));
        for (auto& v : net.final_w) v = scale * rng.normal();
        return net;
    }

    int depth() const { return static_cast<int>(widths.size()); }

    double kappa_value() const {
        double k = 0.0;
        for (double v : final_w) k += v * v;
        k = std::sqrt(k);
        for (int l = 0; l < depth(); ++l) {
            double m = 1.0;
            for (double v : w[l]) m += v * v;
            for (double v : b[l]) m += v * v;
            k *= std::sqrt(m);
        }
        return k;
    }

    // Rescale to exactly unit hidden mass, then shrink the final row to meet
    // K. Unit mass (rather than the certificate algebra's mass/(mass+1) form)
    // makes the projection idempotent, so repeated application cannot inflate
    // kappa and eat the norm budget. Biases divide by the accumulated product
    // since their inputs already arrive scaled down by upstream factors.
    void project(double K) {
        double absorbed = 1.0;
        for (int l = 0; l < depth(); ++l) {
            double mass = 0.0;
            for (double v : w[l]) mass += v * v;
            for (double v : b[l]) mass += v * v;
            const double s = (mass > 0.0) ? std::sqrt(mass) : 1.0;
            for (auto& v : w[l]) v /= s;
            absorbed *= s;
            for (auto& v : b[l]) v /= absorbed;
        }
        for (auto& v : final_w) v *= absorbed;
        const double k = kappa_value();
        if (k > K) {
            const double shrink = (k > 0.0) ? K / k : 0.0;
            for (auto& v : final_w) v *= shrink;
        }
    }

    Network to_network() const {
        Network net;
        net.input_dim = input_dim;
        net.output_dim = 1;
        int prev = input_dim;
        for (int l = 0; l < depth(); ++l) {
            net.hidden.push_back({SpMat::from_dense(widths[l], prev, w[l]), b[l]});
            prev = widths[l];
        }
        net.final_weight = SpMat::from_dense(1, prev, final_w);
        return net;
    }
};

// forward pass storing activations; returns clipped output
struct ForwardScratch {
    std::vector<Vec> act;     // post-relu activations per hidden layer
    std::vector<Vec> pre;     // pre-relu values
    double raw = 0.0;         // final linear output
    double clipped = 0.0;     // chi_1(raw)
};

void forward(const DenseNet& net, const Vec& x, ForwardScratch& s) {
    const int D = net.depth();
    s.act.resize(D);
    s.pre.resize(D);
    const Vec* cur = &x;
    int prev = net.input_dim;
    for (int l = 0; l < D; ++l) {
        const int m = net.widths[l];
        s.pre[l].assign(m, 0.0);
        s.act[l].assign(m, 0.0);
        for (int r = 0; r < m; ++r) {
            double acc = net.b[l][r];
            const double* row = net.w[l].data() + static_cast<std::size_t>(r) * prev;
            for (int c = 0; c < prev; ++c) acc += row[c] * (*cur)[c];
            s.pre[l][r] = acc;
            s.act[l][r] = acc > 0.0 ? acc : 0.0;
        }
        cur = &s.act[l];
        prev = m;
    }
    double out = 0.0;
    for (int c = 0; c < prev; ++c) out += net.final_w[c] * (*cur)[c];
    s.raw = out;
    s.clipped = std::max(-1.0, std::min(1.0, out));
}

struct Gradients {
    std::vector<Vec> w, b;
    Vec final_w;

    void zero_like(const DenseNet& net) {
        w.resize(net.depth());
        b.resize(net.depth());
        for (int l = 0; l < net.depth(); ++l) {
            w[l].assign(net.w[l].size(), 0.0);
            b[l].assign(net.b[l].size(), 0.0);
        }
        final_w.assign(net.final_w.size(), 0.0);
    }
};

// Layer-normalized first-order step: each layer moves by at most `step`
// relative to its own magnitude. The per-update rescale projection pumps all
// scale into the final matrix, so raw uniform-step SGD would take steps a few
// orders of magnitude too large for the normalized hidden layers.
void apply_update(DenseNet& net, const Gradients& g, double step, double sign) {
    // Hidden layers live on unit-mass spheres after the projection, and their
    // radial gradient component is functionally dead (positive homogeneity
    // moves it into the final matrix, ratcheting kappa). The step therefore
    // uses the tangential component for hidden layers, trust-clipped so no
    // group moves by more than `step` relative to its own size.
    auto group_step = [&](Vec& w, const Vec& gw, Vec* b, const Vec* gb, bool tangent) {
        double wn = 0.0, dot = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            wn += w[i] * w[i];
            dot += w[i] * gw[i];
        }
        if (b) {
            for (std::size_t i = 0; i < b->size(); ++i) {
                wn += (*b)[i] * (*b)[i];
                dot += (*b)[i] * (*gb)[i];
            }
        }
        const double radial = (tangent && wn > 0.0) ? dot / wn : 0.0;
        double gn = 0.0;
        for (std::size_t i = 0; i < gw.size(); ++i) {
            const double v = gw[i] - radial * w[i];
            gn += v * v;
        }
        if (b) {
            for (std::size_t i = 0; i < gb->size(); ++i) {
                const double v = (*gb)[i] - radial * (*b)[i];
                gn += v * v;
            }
        }
        if (gn == 0.0) return;
        const double ratio = std::min(1.0, std::max(std::sqrt(wn), 1e-3) / std::sqrt(gn));
        const double scale = sign * step * ratio;
        for (std::size_t i = 0; i < w.size(); ++i) w[i] += scale * (gw[i] - radial * w[i]);
        if (b)
            for (std::size_t i = 0; i < b->size(); ++i) (*b)[i] += scale * ((*gb)[i] - radial * (*b)[i]);
    };
    for (int l = 0; l < net.depth(); ++l) group_step(net.w[l], g.w[l], &net.b[l], &g.b[l], true);
    group_step(net.final_w, g.final_w, nullptr, nullptr, false);
}

// accumulates gradients of dout * raw_output with respect to the parameters
void backward_from_raw(const DenseNet& net, const Vec& x, const ForwardScratch& s, double dout,
                       Gradients& g) {
    const int D = net.depth();
    const Vec& last = D > 0 ? s.act[D - 1] : x;
    Vec delta(last.size());
    for (std::size_t c = 0; c < last.size(); ++c) {
        g.final_w[c] += dout * last[c];
        delta[c] = dout * net.final_w[c];
    }
    for (int l = D - 1; l >= 0; --l) {
        const int m = net.widths[l];
        const int prev = (l == 0) ? net.input_dim : net.widths[l - 1];
        const Vec& below = (l == 0) ? x : s.act[l - 1];
        Vec next_delta(prev, 0.0);
        for (int r = 0; r < m; ++r) {
            const double dr = (s.pre[l][r] > 0.0) ? delta[r] : 0.0;
            if (dr == 0.0) continue;
            double* wrow_g = g.w[l].data() + static_cast<std::size_t>(r) * prev;
            const double* wrow = net.w[l].data() + static_cast<std::size_t>(r) * prev;
            for (int c = 0; c < prev; ++c) {
                wrow_g[c] += dr * below[c];
                next_delta[c] += dr * wrow[c];
            }
            g.b[l][r] += dr;
        }
        delta = std::move(next_delta);
    }
}

// d/dparams of (chi_1(f(x)) - y)^2
void backward(const DenseNet& net, const Vec& x, const ForwardScratch& s, double y, Gradients& g) {
    double dout = 2.0 * (s.clipped - y);
    if (s.raw > 1.0 || s.raw < -1.0) dout = 0.0; // clip saturation
    backward_from_raw(net, x, s, dout, g);
}

double empirical_risk_of(const DenseNet& net, const Dataset& data) {
    ForwardScratch s;
    KahanSum sum;
    for (std::size_t i = 0; i < data.xs.size(); ++i) {
        forward(net, data.xs[i], s);
        const double e = s.clipped - data.ys[i];
        sum.add(e * e);
    }
    return sum.value() / static_cast<double>(data.xs.size());
}

} // namespace

ErmResult erm_train(const Dataset& data, int width, int depth, double K, const OptimizerConfig& cfg) {
    if (data.xs.empty()) throw std::invalid_argument("erm_train: empty dataset");
    if (K < 0.0) throw std::invalid_argument("erm_train: K must be nonnegative");
    const int n = static_cast<int>(data.xs.size());
    Rng rng(cfg.seed, 0x7a11);
    DenseNet net = DenseNet::init(data.input_dim, width, depth, rng);
    net.project(K);

    ErmResult result;
    result.K_used = K;
    const double initial_loss = empirical_risk_of(net, data);
    int divergence_streak = 0;

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    Gradients grads;
    ForwardScratch scratch;
    double step = cfg.step;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        // deterministic shuffle
        for (int i = n - 1; i > 0; --i)
            std::swap(order[i], order[rng.uniform_int(0, i)]);
        for (int start = 0; start < n; start += cfg.batch_size) {
            const int stop = std::min(n, start + cfg.batch_size);
            grads.zero_like(net);
            for (int i = start; i < stop; ++i) {
                forward(net, data.xs[order[i]], scratch);
                backward(net, data.xs[order[i]], scratch, data.ys[order[i]], grads);
            }
            apply_update(net, grads, step, -1.0);
            net.project(K);
        }
        step *= cfg.decay_per_epoch;
        const double loss = empirical_risk_of(net, data);
        result.trace.push_back({epoch, loss, net.kappa_value()});
        if (loss > initial_loss * 10.0 && initial_loss > 0.0) {
            if (++divergence_streak >= 5)
                throw training_failure_error("erm_train: loss exceeded 10x initial for 5 epochs (epoch " +
                                             std::to_string(epoch) + ")");
        } else {
            divergence_streak = 0;
        }
    }

    result.trained_core = net.to_network();
    result.kappa_core = kappa(result.trained_core);
    CertifiedNet clipped = clip(
        {result.trained_core, FrobeniusCertificate{result.kappa_core, std::max(K, result.kappa_core), {}, {}, true}},
        1.0);
    result.trained = std::move(clipped.net);
    result.empirical_risk = empirical_risk_of(net, data);
    return result;
}

ExcessRiskEstimate excess_risk(const Network& trained, const DagSpec& target, int mc_count,
                               std::uint64_t seed, double noise_half_width) {
    ExcessRiskEstimate res;
    Rng rng(seed, 0xec3);
    Evaluator ev(trained);
    KahanSum diff_sum, diff_sq, rf, ro;
    for (int i = 0; i < mc_count; ++i) {
        const Vec x = rng.ball_point(target.input_dim);
        const double fstar = target.eval_exact(x);
        double y = fstar;
        if (noise_half_width > 0.0) y += rng.uniform(-noise_half_width, noise_half_width);
        double fhat;
        ev(x.data(), &fhat);
        const double a = (fhat - y) * (fhat - y);
        const double b = (fstar - y) * (fstar - y);
        diff_sum.add(a - b);
        diff_sq.add((a - b) * (a - b));
        rf.add(a);
        ro.add(b);
    }
    const double m = static_cast<double>(mc_count);
    res.estimate = diff_sum.value() / m;
    const double var = std::max(0.0, diff_sq.value() / m - res.estimate * res.estimate);
    res.stderr_value = std::sqrt(var / m);
    res.risk_trained = rf.value() / m;
    res.risk_oracle = ro.value() / m;
    return res;
}

double rademacher_bound(int depth, double K, int n) {
    return (std::sqrt(2.0 * std::log(2.0) * depth) + 1.0) * K / std::sqrt(static_cast<double>(n));
}

RademacherCheck rademacher_check(int dim, int width, int depth, double K, int n, std::uint64_t seed,
                                 int sign_draws, const AscentConfig& cfg) {
    RademacherCheck res;
    res.bound = rademacher_bound(depth, K, n);
    Rng data_rng(seed, 0xda7a);
    std::vector<Vec> xs;
    xs.reserve(n);
    for (int i = 0; i < n; ++i) xs.push_back(data_rng.ball_point(dim));

    for (int draw = 0; draw < sign_draws; ++draw) {
        Rng rng(seed, 0x51f + draw);
        Vec signs(n);
        for (auto& s : signs) s = (rng.next() & 1) ? 1.0 : -1.0;
        DenseNet net = DenseNet::init(dim, width, depth, rng);
        net.project(K);

        Gradients grads;
        ForwardScratch scratch;
        double best = 0.0; // the zero function is always in the class
        double step = cfg.step;
        for (int it = 0; it < cfg.steps; ++it) {
            grads.zero_like(net);
            KahanSum obj;
            for (int i = 0; i < n; ++i) {
                forward(net, xs[i], scratch);
                obj.add(signs[i] * scratch.raw);
                backward_from_raw(net, xs[i], scratch, signs[i], grads);
            }
            best = std::max(best, obj.value() / n);
            apply_update(net, grads, step, +1.0);
            net.project(K);
            step *= cfg.decay;
        }
        {
            KahanSum obj;
            for (int i = 0; i < n; ++i) {
                forward(net, xs[i], scratch);
                obj.add(signs[i] * scratch.raw);
            }
            best = std::max(best, obj.value() / n);
        }
        res.per_draw.push_back(best);
    }
    KahanSum mean;
    for (double v : res.per_draw) mean.add(v);
    res.estimate = mean.value() / std::max<std::size_t>(1, res.per_draw.size());
    return res;
}

} // namespace frob
