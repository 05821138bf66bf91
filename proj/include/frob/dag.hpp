#pragma once

#include <optional>

#include "frob/holder.hpp"

namespace frob {

// One non-input node of a leveled DAG: which previous-level outputs it reads
// and the local function it applies to them (on the raw, unnormalized box).
struct DagNode {
    std::string id;
    std::vector<int> parents; // indices into the previous level
    FunctionOracle oracle;    // dim == parents.size(), domain = prod [-R_u, R_u]
    double range_bound = 1.0; // |g_v| <= range_bound
};

struct DagSpec {
    std::string name;
    int input_dim = 0;                        // level-0 width; inputs live in [-1,1]
    std::vector<std::vector<DagNode>> levels; // levels 1..L, last has exactly one node

    int level_count() const { return static_cast<int>(levels.size()); }
    void validate() const;

    // exact composed evaluation (raw node values)
    std::vector<Vec> eval_levels(const Vec& x) const;
    double eval_exact(const Vec& x) const;

    double output_range_bound() const { return levels.back()[0].range_bound; }
    double parent_range(int level_index, int parent) const; // level_index: 0-based into levels
    int max_fan_in() const;
    int max_log_term() const;  // max over nodes of ceil(log2(d_in + r))
    int theorem_depth() const; // 2 L max_log_term + 2 L
};

// alpha* along an explicit root-to-leaf path (one node index per level,
// checked against the parent lists).
std::vector<double> effective_regularity(const DagSpec& spec, const std::vector<int>& path);

struct NodeRate {
    std::string id;
    int level = 0; // 1-based
    int index = 0;
    int d_in = 0;
    double alpha = 0.0;
    int r = 0;
    double alpha_star = 0.0; // worst case over upward paths
    double exponent = 0.0;   // 2 alpha* / (2L + (D+L) d_in)
    double width_threshold_exponent = 0.0;
    int node_k = 0;
    double node_K = 0.0;
    double node_error_bound = 0.0;
};

struct RateCertificate {
    std::vector<NodeRate> per_node;
    double worst_case_rate_exponent = 0.0;
    double total_error_bound = 0.0; // forward error recursion value
    int depth_D = 0;
    int width_W = 0;
    double global_K = 0.0;
};

struct BudgetAllocation {
    double common_ceiling = 0.0;              // shared per-node certificate ceiling
    std::vector<std::vector<int>> node_k;     // per level, per node
    std::vector<std::vector<double>> node_K;  // certified per-node bound at node_k
    double predicted_global_bound = 0.0;
    std::vector<std::string> derivation;
};

BudgetAllocation allocate_budgets(const DagSpec& spec, double K,
                                  std::size_t weight_cap = kDefaultWeightCap);

struct DagCompileResult {
    Network net;
    FrobeniusCertificate cert;
    RateCertificate rate;
    DagSpec spec;
    // per level: normalized-space node subnets and their oracles, retained
    // for critical-path tracing
    std::vector<std::vector<CertifiedNet>> node_nets;
    std::vector<std::vector<NormalizedOracle>> node_oracles;
};

DagCompileResult compile_dag(const DagSpec& spec, double K, std::size_t weight_cap = kDefaultWeightCap);

struct PathRate {
    std::vector<int> nodes; // node index per level 1..L
    std::vector<std::string> ids;
    double exponent = 0.0; // min over the path's nodes
};

// Closed-form instantiations for recognizable shapes.
struct RemarkForms {
    bool multi_index = false;
    double C1 = 0.0, multi_index_exponent = 0.0;
    bool binary_tree = false;
    double C2 = 0.0, binary_tree_exponent = 0.0;
    int constant_level_c = 0;
    double C3 = 0.0, constant_level_exponent = 0.0;
};

struct RateTable {
    std::vector<NodeRate> per_node;
    std::vector<PathRate> paths;
    double worst_case_rate_exponent = 0.0;
    RemarkForms remarks;
};

RateTable rate_table(const DagSpec& spec);

// Built-in gallery specs and the on-disk format.
DagSpec dag_gallery(const std::string& name);
std::vector<std::string> dag_gallery_names();
DagSpec parse_dag_spec(const std::string& json_text);

} // namespace frob
