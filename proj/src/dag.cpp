#include "frob/dag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "frob/errors.hpp"
#include "frob/probe.hpp"

namespace frob {

void DagSpec::validate() const {
    if (input_dim < 1) throw std::invalid_argument("dag: input_dim must be >= 1");
    if (levels.empty()) throw std::invalid_argument("dag: at least one level required");
    if (levels.back().size() != 1) throw std::invalid_argument("dag: top level must have exactly one node");
    int prev = input_dim;
    for (std::size_t l = 0; l < levels.size(); ++l) {
        if (levels[l].empty()) throw std::invalid_argument("dag: empty level");
        for (const auto& node : levels[l]) {
            if (node.parents.empty()) throw std::invalid_argument("dag: node " + node.id + " has no parents");
            std::set<int> seen;
            for (int p : node.parents) {
                if (p < 0 || p >= prev)
                    throw std::invalid_argument("dag: node " + node.id + " has an invalid parent index");
                if (!seen.insert(p).second)
                    throw std::invalid_argument("dag: node " + node.id + " repeats a parent");
            }
            if (node.oracle.dim != static_cast<int>(node.parents.size()))
                throw std::invalid_argument("dag: node " + node.id + " oracle arity mismatch");
            if (node.range_bound <= 0.0)
                throw std::invalid_argument("dag: node " + node.id + " needs a positive range bound");
        }
        prev = static_cast<int>(levels[l].size());
    }
}

double DagSpec::parent_range(int level_index, int parent) const {
    if (level_index == 0) return 1.0; // inputs live in [-1,1]
    return levels[level_index - 1][parent].range_bound;
}

std::vector<Vec> DagSpec::eval_levels(const Vec& x) const {
    std::vector<Vec> values;
    Vec prev = x;
    for (std::size_t l = 0; l < levels.size(); ++l) {
        Vec cur(levels[l].size());
        for (std::size_t i = 0; i < levels[l].size(); ++i) {
            const auto& node = levels[l][i];
            Vec args(node.parents.size());
            for (std::size_t j = 0; j < node.parents.size(); ++j) args[j] = prev[node.parents[j]];
            cur[i] = node.oracle.eval(args);
        }
        values.push_back(cur);
        prev = values.back();
    }
    return values;
}

double DagSpec::eval_exact(const Vec& x) const { return eval_levels(x).back()[0]; }

int DagSpec::max_fan_in() const {
    int m = 1;
    for (const auto& level : levels)
        for (const auto& node : level) m = std::max(m, static_cast<int>(node.parents.size()));
    return m;
}

int DagSpec::max_log_term() const {
    int m = 0;
    for (const auto& level : levels)
        for (const auto& node : level) {
            const int t = static_cast<int>(node.parents.size()) + node.oracle.r;
            m = std::max(m, static_cast<int>(std::ceil(std::log2(static_cast<double>(t)))));
        }
    return m;
}

int DagSpec::theorem_depth() const {
    return 2 * level_count() * max_log_term() + 2 * level_count();
}

std::vector<double> effective_regularity(const DagSpec& spec, const std::vector<int>& path) {
    const int L = spec.level_count();
    if (static_cast<int>(path.size()) != L)
        throw std::invalid_argument("effective_regularity: path must name one node per level");
    for (int l = 0; l < L; ++l) {
        if (path[l] < 0 || path[l] >= static_cast<int>(spec.levels[l].size()))
            throw std::invalid_argument("effective_regularity: node index out of range");
        if (l + 1 < L) {
            const auto& parents = spec.levels[l + 1][path[l + 1]].parents;
            if (std::find(parents.begin(), parents.end(), path[l]) == parents.end())
                throw std::invalid_argument("effective_regularity: path does not respect edges");
        }
    }
    std::vector<double> alpha_star(L);
    for (int l = 0; l < L; ++l) {
        double a = spec.levels[l][path[l]].oracle.alpha;
        for (int m = l + 1; m < L; ++m) a *= std::min(spec.levels[m][path[m]].oracle.alpha, 1.0);
        alpha_star[l] = a;
    }
    return alpha_star;
}

namespace {

// Worst-case (smallest) product of min(alpha, 1) over upward paths, per node.
// suffix[l][i] covers the segment strictly above node (l, i); nodes that
// cannot reach the output keep a sentinel of -1.
std::vector<std::vector<double>> worst_suffix(const DagSpec& spec) {
    const int L = spec.level_count();
    std::vector<std::vector<double>> suffix(L);
    for (int l = 0; l < L; ++l) suffix[l].assign(spec.levels[l].size(), -1.0);
    suffix[L - 1][0] = 1.0;
    for (int l = L - 1; l >= 1; --l) {
        for (std::size_t i = 0; i < spec.levels[l].size(); ++i) {
            if (suffix[l][i] < 0.0) continue;
            const auto& node = spec.levels[l][i];
            const double via = std::min(node.oracle.alpha, 1.0) * suffix[l][i];
            for (int p : node.parents) {
                double& slot = suffix[l - 1][p];
                if (slot < 0.0 || via < slot) slot = via;
            }
        }
    }
    return suffix;
}

double node_rate_exponent(double alpha_star, int d_in, int D, int L) {
    return 2.0 * alpha_star / (2.0 * L + (D + L) * static_cast<double>(d_in));
}

std::vector<NodeRate> per_node_rates(const DagSpec& spec) {
    const int L = spec.level_count();
    const int D = spec.theorem_depth();
    const auto suffix = worst_suffix(spec);
    std::vector<NodeRate> rates;
    for (int l = 0; l < L; ++l) {
        for (std::size_t i = 0; i < spec.levels[l].size(); ++i) {
            const auto& node = spec.levels[l][i];
            NodeRate r;
            r.id = node.id;
            r.level = l + 1;
            r.index = static_cast<int>(i);
            r.d_in = static_cast<int>(node.parents.size());
            r.alpha = node.oracle.alpha;
            r.r = node.oracle.r;
            r.alpha_star = suffix[l][i] < 0.0 ? node.oracle.alpha : node.oracle.alpha * suffix[l][i];
            r.exponent = node_rate_exponent(r.alpha_star, r.d_in, D, L);
            r.width_threshold_exponent =
                (2.0 * r.d_in + r.alpha) / ((D + L) * static_cast<double>(r.d_in) + 2.0 * L);
            rates.push_back(std::move(r));
        }
    }
    return rates;
}

} // namespace

BudgetAllocation allocate_budgets(const DagSpec& spec, double K, std::size_t weight_cap) {
    spec.validate();
    const int L = spec.level_count();
    const int S = spec.max_log_term();
    const int level_depth = 2 * S + 2;
    const int d = spec.input_dim;

    // fold of the input normalization u = (x+1)/2 into the first level
    const double fold_factor = std::sqrt(std::max(2.0, 0.5 * d + 0.25));

    // padded certificate bound of one node given its pre-pad bound
    auto padded_bound = [&](const DagNode& node, double b) {
        const int own_depth = holder_depth(static_cast<int>(node.parents.size()), node.oracle.r);
        for (int depth = own_depth; depth < level_depth; ++depth)
            b = std::pow(std::sqrt(2.0), depth) * depth_pad_bound(1, b);
        return b;
    };

    // chained global bound when every node certificate is at ceiling C
    auto global_bound = [&](double C) {
        double acc = 0.0;
        for (int l = 0; l < L; ++l) {
            std::vector<double> ks;
            for (const auto& node : spec.levels[l]) ks.push_back(padded_bound(node, C));
            double level = concat_bound(level_depth, ks);
            if (l == 0) level *= fold_factor;
            acc = (l == 0) ? level : compose_bound(l * level_depth, acc, level);
        }
        return acc;
    };

    // per-node certified bound as a function of k, and the largest k allowed
    // by the weight cap
    auto node_formula = [&](const DagNode& node, int k) {
        const int din = static_cast<int>(node.parents.size());
        return holder_kappa_formula(din, node.oracle.r, tuned_grid_resolution(node.oracle.alpha, k));
    };
    auto node_cap_k = [&](const DagNode& node) {
        const int din = static_cast<int>(node.parents.size());
        const int r = node.oracle.r;
        int k = 1;
        while (k < 100000) {
            const int N = tuned_grid_resolution(node.oracle.alpha, k + 1);
            const double patches = std::pow(static_cast<double>(N + 1), din) *
                                   static_cast<double>(multi_indices_up_to(din, r).size());
            const double per_patch = 60.0 * (din + r) * (k + 1) + 40.0 * (din + r);
            if (patches * per_patch > static_cast<double>(weight_cap) / 4.0) break;
            ++k;
        }
        return k;
    };

    double min_ceiling = 0.0;
    for (const auto& level : spec.levels)
        for (const auto& node : level) min_ceiling = std::max(min_ceiling, node_formula(node, 1));
    const double min_feasible_K = global_bound(min_ceiling);
    if (K < min_feasible_K)
        throw budget_infeasible_error("dag budget cannot fund k = 1 at every node", min_feasible_K);

    // largest common ceiling with global_bound(C) <= K (bisection in log space)
    double lo = std::log(min_ceiling), hi = std::log(std::max(min_ceiling * 2.0, K));
    while (global_bound(std::exp(hi)) <= K && hi < 900.0) hi += 1.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (global_bound(std::exp(mid)) <= K)
            lo = mid;
        else
            hi = mid;
    }
    const double C = std::exp(lo);

    BudgetAllocation alloc;
    alloc.common_ceiling = C;
    for (int l = 0; l < L; ++l) {
        std::vector<int> ks;
        std::vector<double> Ks;
        for (const auto& node : spec.levels[l]) {
            const int cap_k = node_cap_k(node);
            int k = 0;
            for (int cand = 1; cand <= cap_k; ++cand) {
                if (node_formula(node, cand) <= C)
                    k = cand;
                else
                    break;
            }
            if (k == 0)
                throw budget_infeasible_error("dag budget cannot fund k = 1 at node " + node.id,
                                              min_feasible_K);
            ks.push_back(k);
            Ks.push_back(node_formula(node, k));
        }
        alloc.node_k.push_back(std::move(ks));
        alloc.node_K.push_back(std::move(Ks));
    }
    alloc.predicted_global_bound = global_bound(C);
    alloc.derivation.push_back("level depth " + std::to_string(level_depth) + ", levels " +
                               std::to_string(L));
    alloc.derivation.push_back("input fold factor " + std::to_string(fold_factor));
    alloc.derivation.push_back("common per-node ceiling " + std::to_string(C));
    return alloc;
}

namespace {

// u = (x + 1)/2 absorbed into the first hidden layer
void fold_input_affine(Network& net) {
    if (net.depth() == 0) throw std::logic_error("fold_input_affine: needs a hidden layer");
    Layer& l = net.hidden[0];
    SpMat folded(l.weight.rows(), l.weight.cols());
    folded.reserve(l.weight.nnz());
    for (int r = 0; r < l.weight.rows(); ++r) {
        double shift = 0.0;
        for (std::size_t k = l.weight.row_begin(r); k < l.weight.row_end(r); ++k)
            shift += 0.5 * l.weight.entry_val(k);
        l.bias[r] += shift;
        folded.begin_row();
        for (std::size_t k = l.weight.row_begin(r); k < l.weight.row_end(r); ++k)
            folded.push(l.weight.entry_col(k), 0.5 * l.weight.entry_val(k));
    }
    folded.finalize();
    l.weight = std::move(folded);
}

} // namespace

DagCompileResult compile_dag(const DagSpec& spec, double K, std::size_t weight_cap) {
    spec.validate();
    const int L = spec.level_count();
    const int S = spec.max_log_term();
    const int level_depth = 2 * S + 2;
    const BudgetAllocation alloc = allocate_budgets(spec, K, weight_cap);

    // declared-range probing: node oracles must stay inside their range bounds
    {
        ProbePlan plan = ProbePlan::halton(symmetric_box(spec.input_dim, 1.0), 256, 17);
        for (std::int64_t i = 0; i < plan.effective_count(); ++i) {
            const auto values = spec.eval_levels(plan.point(i));
            for (int l = 0; l < L; ++l)
                for (std::size_t v = 0; v < values[l].size(); ++v)
                    if (std::abs(values[l][v]) > spec.levels[l][v].range_bound + 1e-9)
                        throw oracle_inconsistency_error("node " + spec.levels[l][v].id +
                                                         " exceeds its declared range bound");
        }
    }

    DagCompileResult result;
    result.node_nets.resize(L);
    result.node_oracles.resize(L);

    CertifiedNet assembled;
    for (int l = 0; l < L; ++l) {
        std::vector<CertifiedNet> padded;
        std::vector<std::vector<int>> maps;
        const int prev_width = (l == 0) ? spec.input_dim : static_cast<int>(spec.levels[l - 1].size());
        for (std::size_t v = 0; v < spec.levels[l].size(); ++v) {
            const auto& node = spec.levels[l][v];
            Vec in_scales;
            for (int p : node.parents) in_scales.push_back(spec.parent_range(l, p));
            NormalizedOracle normalized =
                range_normalize(node.oracle, in_scales, node.range_bound, l + 1 < L);
            HolderCompileResult compiled = compile_holder(normalized.oracle, alloc.node_k[l][v], weight_cap);
            CertifiedNet node_net{std::move(compiled.network), std::move(compiled.certificate)};
            result.node_oracles[l].push_back(std::move(normalized));
            result.node_nets[l].push_back(node_net);

            padded.push_back(depth_pad(node_net, level_depth));
            maps.push_back(node.parents);
        }
        CertifiedNet level_net = concatenate_routed(padded, prev_width, maps);
        if (l == 0) {
            fold_input_affine(level_net.net);
            level_net.cert.kappa = kappa(level_net.net);
            level_net.cert.per_layer_augmented_norms = per_layer_augmented_norms(level_net.net);
            const double fold_factor = std::sqrt(std::max(2.0, 0.5 * spec.input_dim + 0.25));
            level_net.cert.budget *= fold_factor;
            AlgebraStep step;
            step.kind = "input_fold";
            step.bound_applied = level_net.cert.budget;
            step.note = "u = (x+1)/2 absorbed into the first layer";
            level_net.cert.derivation.push_back(std::move(step));
            level_net.cert.satisfied = level_net.cert.check_satisfied();
            assembled = std::move(level_net);
        } else {
            assembled = compose(level_net, assembled);
        }
    }

    if (assembled.net.depth() != spec.theorem_depth())
        throw std::logic_error("compile_dag: depth identity violated");

    FrobeniusCertificate cert = std::move(assembled.cert);
    cert.budget = K;
    cert.satisfied = cert.check_satisfied();
    if (!cert.satisfied)
        throw certificate_violation_error("compile_dag: assembled kappa exceeds the global budget");
    for (const auto& line : alloc.derivation) {
        AlgebraStep s;
        s.kind = "note";
        s.note = line;
        cert.derivation.push_back(std::move(s));
    }

    // rate certificate
    RateCertificate rate;
    rate.per_node = per_node_rates(spec);
    rate.worst_case_rate_exponent = std::numeric_limits<double>::infinity();
    for (auto& nr : rate.per_node) {
        nr.node_k = alloc.node_k[nr.level - 1][nr.index];
        nr.node_K = alloc.node_K[nr.level - 1][nr.index];
        const auto& node = spec.levels[nr.level - 1][nr.index];
        nr.node_error_bound = holder_error_bound(
            nr.d_in, nr.r, node.oracle.alpha, tuned_grid_resolution(node.oracle.alpha, nr.node_k),
            nr.node_k);
        rate.worst_case_rate_exponent = std::min(rate.worst_case_rate_exponent, nr.exponent);
    }
    // Forward error recursion A_l = F_l * A_{l-1}^{min(alpha,1)} + B_l. The
    // per-level factor covers both the sqrt(max fan-in) of the propagation
    // step and the node Holder scale (the normalized oracles are not unit
    // balls, so sqrt(fan-in) alone would not dominate).
    {
        const double dhat = std::sqrt(static_cast<double>(spec.max_fan_in()));
        double A = 0.0;
        std::size_t idx = 0;
        for (int l = 0; l < L; ++l) {
            double worst = 0.0;
            for (std::size_t v = 0; v < spec.levels[l].size(); ++v, ++idx) {
                const auto& nr = rate.per_node[idx];
                const double tilde = std::min(nr.alpha, 1.0);
                const double scale = std::max(dhat, result.node_oracles[l][v].oracle.holder_norm_bound);
                worst = std::max(worst, scale * std::pow(A, tilde) + nr.node_error_bound);
            }
            A = worst;
        }
        rate.total_error_bound = A;
    }
    rate.depth_D = assembled.net.depth();
    rate.width_W = assembled.net.width();
    rate.global_K = K;

    result.net = std::move(assembled.net);
    result.cert = std::move(cert);
    result.rate = std::move(rate);
    result.spec = spec;
    return result;
}

RateTable rate_table(const DagSpec& spec) {
    spec.validate();
    const int L = spec.level_count();
    const int D = spec.theorem_depth();
    RateTable table;
    table.per_node = per_node_rates(spec);

    // enumerate root-to-leaf paths (descending from the output node)
    std::vector<int> cur(L, 0);
    std::vector<PathRate> paths;
    auto rec = [&](auto&& self, int level) -> void {
        if (level < 0) {
            PathRate pr;
            pr.nodes = cur;
            double worst = std::numeric_limits<double>::infinity();
            const auto alpha_star = effective_regularity(spec, cur);
            for (int l = 0; l < L; ++l) {
                const auto& node = spec.levels[l][cur[l]];
                pr.ids.push_back(node.id);
                worst = std::min(worst, node_rate_exponent(alpha_star[l],
                                                           static_cast<int>(node.parents.size()), D, L));
            }
            pr.exponent = worst;
            paths.push_back(std::move(pr));
            return;
        }
        if (level == L - 1) {
            cur[level] = 0;
            self(self, level - 1);
            return;
        }
        for (int p : spec.levels[level + 1][cur[level + 1]].parents) {
            cur[level] = p;
            self(self, level - 1);
        }
    };
    rec(rec, L - 1);
    table.paths = std::move(paths);
    table.worst_case_rate_exponent = std::numeric_limits<double>::infinity();
    for (const auto& p : table.paths)
        table.worst_case_rate_exponent = std::min(table.worst_case_rate_exponent, p.exponent);

    // Remark closed forms
    RemarkForms rf;
    // multi-index shape: L == 2, single top node
    if (L == 2) {
        const auto& top = spec.levels[1][0];
        const int s = static_cast<int>(top.parents.size());
        rf.multi_index = true;
        rf.C1 = 2.0 * std::ceil(std::log2(static_cast<double>(s + top.oracle.r))) + 5.0;
        rf.multi_index_exponent = top.oracle.alpha / (rf.C1 * s);
    }
    // binary tree shape: every node has fan-in 2 and the input count is 2^L
    {
        bool binary = (spec.input_dim == (1 << L));
        for (const auto& level : spec.levels)
            for (const auto& node : level)
                if (node.parents.size() != 2) binary = false;
        if (binary) {
            rf.binary_tree = true;
            int max_term = 0;
            for (const auto& level : spec.levels)
                for (const auto& node : level)
                    max_term = std::max(
                        max_term, static_cast<int>(std::ceil(std::log2(2.0 + node.oracle.r))));
            rf.C2 = 2.0 * max_term + 4.0;
            double worst_alpha_star = std::numeric_limits<double>::infinity();
            for (const auto& nr : table.per_node) worst_alpha_star = std::min(worst_alpha_star, nr.alpha_star);
            rf.binary_tree_exponent = worst_alpha_star / (rf.C2 * std::log2(static_cast<double>(spec.input_dim)));
        }
    }
    // constant level form with c = L
    {
        rf.constant_level_c = L;
        rf.C3 = L * spec.max_log_term() + 2.5;
        double worst = std::numeric_limits<double>::infinity();
        for (const auto& nr : table.per_node) worst = std::min(worst, nr.alpha_star / (rf.C3 * nr.d_in));
        rf.constant_level_exponent = worst;
    }
    table.remarks = rf;
    return table;
}

namespace {

FunctionOracle builtin_node_oracle(const nlohmann::json& oj, const Box& domain, double alpha,
                                   double range_bound, std::optional<double> declared_holder_bound) {
    const std::string kind = oj.at("kind").get<std::string>();
    const int dim = static_cast<int>(domain.size());
    double in_max = 0.0;
    for (const auto& iv : domain) in_max = std::max(in_max, std::abs(iv.hi));

    if (kind == "affine") {
        const Vec w = oj.at("weights").get<Vec>();
        const double b = oj.value("offset", 0.0);
        if (static_cast<int>(w.size()) != dim) throw config_error("affine: weight arity mismatch");
        std::vector<PolyTerm> terms;
        if (b != 0.0) terms.push_back({b, std::vector<int>(dim, 0)});
        for (int i = 0; i < dim; ++i) {
            if (w[i] == 0.0) continue;
            std::vector<int> e(dim, 0);
            e[i] = 1;
            terms.push_back({w[i], e});
        }
        double wsum = std::abs(b);
        for (double v : w) wsum += std::abs(v);
        const double bound = declared_holder_bound.value_or(wsum * (1.0 + in_max) + 1.0);
        return make_polynomial(dim, std::move(terms), alpha, domain, range_bound, bound);
    }
    if (kind == "product") {
        std::vector<int> e(dim, 1);
        double prod = 1.0, deriv_sum = 0.0;
        for (const auto& iv : domain) prod *= std::abs(iv.hi);
        for (int i = 0; i < dim; ++i) deriv_sum += prod / std::max(1e-12, std::abs(domain[i].hi));
        const double bound = declared_holder_bound.value_or(prod + deriv_sum + deriv_sum + 1.0);
        return make_polynomial(dim, {{1.0, e}}, alpha, domain, range_bound, bound);
    }
    if (kind == "mean") {
        std::vector<PolyTerm> terms;
        for (int i = 0; i < dim; ++i) {
            std::vector<int> e(dim, 0);
            e[i] = 1;
            terms.push_back({1.0 / dim, e});
        }
        const double bound = declared_holder_bound.value_or(in_max + 1.0 + 1.0);
        return make_polynomial(dim, std::move(terms), alpha, domain, range_bound, bound);
    }
    if (kind == "polynomial") {
        std::vector<PolyTerm> terms;
        for (const auto& tj : oj.at("terms"))
            terms.push_back({tj.at("coef").get<double>(), tj.at("exponents").get<std::vector<int>>()});
        const double bound = declared_holder_bound.value_or(50.0);
        return make_polynomial(dim, std::move(terms), alpha, domain, range_bound, bound);
    }
    if (kind == "scaled-sine") {
        const double offset = oj.value("offset", 0.0);
        const double amplitude = oj.at("amplitude").get<double>();
        const double freq = oj.at("freq").get<double>();
        const double phase = oj.value("phase", 0.0);
        const double f = std::abs(freq);
        const double bound = declared_holder_bound.value_or(
            std::abs(offset) + std::abs(amplitude) * (1.0 + f + f * f) * std::max(1.0, in_max) + 1.0);
        return make_sine(dim, offset, amplitude, freq, phase, alpha, domain, range_bound, bound);
    }
    throw config_error("unknown node oracle kind: " + kind);
}

} // namespace

DagSpec parse_dag_spec(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("dag spec: ") + e.what(), e.byte);
    }
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (key != "name" && key != "levels" && key != "edges" && key != "nodes")
            throw config_error("dag spec: unknown key '" + key + "'");
    }
    DagSpec spec;
    spec.name = j.value("name", "dag");
    const auto levels = j.at("levels").get<std::vector<std::vector<std::string>>>();
    if (levels.size() < 2) throw config_error("dag spec: need level 0 plus at least one level");
    spec.input_dim = static_cast<int>(levels[0].size());

    std::map<std::string, std::vector<std::string>> edge_map;
    for (const auto& ej : j.at("edges")) {
        for (const auto& [key, value] : ej.items()) {
            (void)value;
            if (key != "child" && key != "parents") throw config_error("dag spec: unknown edge key '" + key + "'");
        }
        edge_map[ej.at("child").get<std::string>()] = ej.at("parents").get<std::vector<std::string>>();
    }
    const auto& nodes = j.at("nodes");

    std::map<std::string, int> prev_index;
    for (std::size_t i = 0; i < levels[0].size(); ++i) prev_index[levels[0][i]] = static_cast<int>(i);
    std::vector<double> prev_ranges(levels[0].size(), 1.0);

    for (std::size_t l = 1; l < levels.size(); ++l) {
        std::vector<DagNode> level_nodes;
        std::map<std::string, int> cur_index;
        std::vector<double> cur_ranges;
        for (std::size_t i = 0; i < levels[l].size(); ++i) {
            const std::string& id = levels[l][i];
            if (!edge_map.count(id)) throw config_error("dag spec: node " + id + " has no edges entry");
            if (!nodes.contains(id)) throw config_error("dag spec: node " + id + " has no nodes entry");
            const auto& nj = nodes.at(id);
            for (const auto& [key, value] : nj.items()) {
                (void)value;
                if (key != "oracle" && key != "alpha" && key != "range_bound" && key != "holder_norm_bound")
                    throw config_error("dag spec: unknown node key '" + key + "'");
            }
            DagNode node;
            node.id = id;
            for (const auto& pid : edge_map.at(id)) {
                if (!prev_index.count(pid))
                    throw config_error("dag spec: node " + id + " references unknown parent " + pid);
                node.parents.push_back(prev_index.at(pid));
            }
            node.range_bound = nj.at("range_bound").get<double>();
            const double alpha = nj.at("alpha").get<double>();
            Box domain;
            for (int p : node.parents) domain.push_back({-prev_ranges[p], prev_ranges[p]});
            std::optional<double> hb;
            if (nj.contains("holder_norm_bound")) hb = nj.at("holder_norm_bound").get<double>();
            node.oracle = builtin_node_oracle(nj.at("oracle"), domain, alpha, node.range_bound, hb);
            cur_index[id] = static_cast<int>(i);
            cur_ranges.push_back(node.range_bound);
            level_nodes.push_back(std::move(node));
        }
        spec.levels.push_back(std::move(level_nodes));
        prev_index = std::move(cur_index);
        prev_ranges = std::move(cur_ranges);
    }
    spec.validate();
    return spec;
}

namespace {

DagNode make_node(std::string id, std::vector<int> parents, FunctionOracle oracle, double range_bound) {
    DagNode n;
    n.id = std::move(id);
    n.parents = std::move(parents);
    n.oracle = std::move(oracle);
    n.range_bound = range_bound;
    return n;
}

Box parent_box(const std::vector<double>& ranges, const std::vector<int>& parents) {
    Box b;
    for (int p : parents) b.push_back({-ranges[p], ranges[p]});
    return b;
}

} // namespace

DagSpec dag_gallery(const std::string& name) {
    auto product2 = [](const Box& box) {
        return make_polynomial(2, {{1.0, {1, 1}}}, 2.0, box, std::abs(box[0].hi) * std::abs(box[1].hi),
                               4.0);
    };
    auto mean2 = [](const Box& box) {
        double r = 0.5 * (std::abs(box[0].hi) + std::abs(box[1].hi));
        return make_polynomial(2, {{0.5, {1, 0}}, {0.5, {0, 1}}}, 2.0, box, r, r + 2.0);
    };

    if (name == "binarytree-d4") {
        DagSpec spec;
        spec.name = name;
        spec.input_dim = 4;
        std::vector<double> in_ranges(4, 1.0);
        spec.levels.push_back({make_node("p01", {0, 1}, product2(parent_box(in_ranges, {0, 1})), 1.0),
                               make_node("p23", {2, 3}, product2(parent_box(in_ranges, {2, 3})), 1.0)});
        std::vector<double> l1_ranges{1.0, 1.0};
        spec.levels.push_back({make_node("out", {0, 1}, mean2(parent_box(l1_ranges, {0, 1})), 1.0)});
        spec.validate();
        return spec;
    }
    if (name == "binarytree-d8") {
        DagSpec spec;
        spec.name = name;
        spec.input_dim = 8;
        std::vector<double> in_ranges(8, 1.0);
        std::vector<DagNode> l1;
        for (int i = 0; i < 4; ++i)
            l1.push_back(make_node("p" + std::to_string(i), {2 * i, 2 * i + 1},
                                   product2(parent_box(in_ranges, {2 * i, 2 * i + 1})), 1.0));
        spec.levels.push_back(std::move(l1));
        std::vector<double> r1(4, 1.0);
        spec.levels.push_back({make_node("m0", {0, 1}, mean2(parent_box(r1, {0, 1})), 1.0),
                               make_node("m1", {2, 3}, mean2(parent_box(r1, {2, 3})), 1.0)});
        std::vector<double> r2(2, 1.0);
        spec.levels.push_back({make_node("out", {0, 1}, mean2(parent_box(r2, {0, 1})), 1.0)});
        spec.validate();
        return spec;
    }
    if (name == "constlevel-L3") {
        DagSpec spec;
        spec.name = name;
        spec.input_dim = 3;
        std::vector<double> in_ranges(3, 1.0);
        FunctionOracle sine1 = make_sine(1, 0.0, 0.8, 1.2, 0.0, 2.0, parent_box(in_ranges, {2}), 0.8, 3.0);
        spec.levels.push_back({make_node("a0", {0, 1}, mean2(parent_box(in_ranges, {0, 1})), 1.0),
                               make_node("a1", {1, 2}, product2(parent_box(in_ranges, {1, 2})), 1.0),
                               make_node("a2", {2}, std::move(sine1), 0.8)});
        std::vector<double> r1{1.0, 1.0, 0.8};
        spec.levels.push_back({make_node("b0", {0, 1}, mean2(parent_box(r1, {0, 1})), 1.0),
                               make_node("b1", {1, 2}, product2(parent_box(r1, {1, 2})), 0.8)});
        std::vector<double> r2{1.0, 0.8};
        spec.levels.push_back({make_node("out", {0, 1}, mean2(parent_box(r2, {0, 1})), 0.9)});
        spec.validate();
        return spec;
    }
    if (name == "multiindex-s2") {
        DagSpec spec;
        spec.name = name;
        spec.input_dim = 3;
        const Box in_box = symmetric_box(3, 1.0);
        FunctionOracle a0 =
            make_polynomial(3, {{0.5, {1, 0, 0}}, {0.3, {0, 1, 0}}, {0.2, {0, 0, 1}}}, 2.0, in_box, 1.0, 3.0);
        FunctionOracle a1 =
            make_polynomial(3, {{0.2, {1, 0, 0}}, {-0.4, {0, 1, 0}}, {0.4, {0, 0, 1}}}, 2.0, in_box, 1.0, 3.0);
        spec.levels.push_back({make_node("w0", {0, 1, 2}, std::move(a0), 1.0),
                               make_node("w1", {0, 1, 2}, std::move(a1), 1.0)});
        std::vector<double> r1{1.0, 1.0};
        spec.levels.push_back({make_node("out", {0, 1}, product2(parent_box(r1, {0, 1})), 1.0)});
        spec.validate();
        return spec;
    }
    if (name == "multiindex-s3") {
        DagSpec spec;
        spec.name = name;
        spec.input_dim = 4;
        const Box in_box = symmetric_box(4, 1.0);
        std::vector<DagNode> l1;
        const std::vector<Vec> ws = {{0.4, 0.3, 0.2, 0.1}, {0.1, -0.3, 0.4, 0.2}, {-0.2, 0.2, 0.3, 0.3}};
        for (int i = 0; i < 3; ++i) {
            std::vector<PolyTerm> terms;
            for (int c = 0; c < 4; ++c) {
                std::vector<int> e(4, 0);
                e[c] = 1;
                terms.push_back({ws[i][c], e});
            }
            l1.push_back(make_node("w" + std::to_string(i), {0, 1, 2, 3},
                                   make_polynomial(4, std::move(terms), 2.0, in_box, 1.0, 3.0), 1.0));
        }
        spec.levels.push_back(std::move(l1));
        FunctionOracle top =
            make_polynomial(3, {{1.0, {1, 1, 1}}}, 2.0, symmetric_box(3, 1.0), 1.0, 8.0);
        spec.levels.push_back({make_node("out", {0, 1, 2}, std::move(top), 1.0)});
        spec.validate();
        return spec;
    }
    throw config_error("unknown dag gallery target: " + name);
}

std::vector<std::string> dag_gallery_names() {
    return {"binarytree-d4", "binarytree-d8", "constlevel-L3", "multiindex-s2", "multiindex-s3"};
}

} // namespace frob
