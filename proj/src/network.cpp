#include "frob/network.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "frob/errors.hpp"
#include "frob/summation.hpp"

namespace frob {

int Network::width() const {
    int w = std::max(input_dim, output_dim);
    for (const auto& l : hidden) w = std::max(w, l.weight.rows());
    return w;
}

std::size_t Network::weight_count() const {
    std::size_t n = final_weight.nnz();
    for (const auto& l : hidden) n += l.weight.nnz() + l.bias.size();
    return n;
}

void Network::validate() const {
    int cur = input_dim;
    for (std::size_t i = 0; i < hidden.size(); ++i) {
        const auto& l = hidden[i];
        if (l.weight.cols() != cur)
            throw std::invalid_argument("network: layer " + std::to_string(i) + " column mismatch");
        if (static_cast<int>(l.bias.size()) != l.weight.rows())
            throw std::invalid_argument("network: layer " + std::to_string(i) + " bias size mismatch");
        if (!l.weight.all_finite()) throw std::invalid_argument("network: non-finite weight");
        for (double b : l.bias)
            if (!std::isfinite(b)) throw std::invalid_argument("network: non-finite bias");
        cur = l.weight.rows();
    }
    if (final_weight.cols() != cur) throw std::invalid_argument("network: final layer column mismatch");
    if (final_weight.rows() != output_dim) throw std::invalid_argument("network: output dim mismatch");
    if (!final_weight.all_finite()) throw std::invalid_argument("network: non-finite final weight");
}

Evaluator::Evaluator(const Network& net) : net_(&net) {
    int w = net.width();
    buf_a_.resize(w);
    buf_b_.resize(w);
}

void Evaluator::operator()(const double* x, double* y) {
    const Network& n = *net_;
    const double* cur = x;
    double* a = buf_a_.data();
    double* b = buf_b_.data();
    for (const auto& layer : n.hidden) {
        layer.weight.apply(cur, a);
        const int rows = layer.weight.rows();
        for (int r = 0; r < rows; ++r) a[r] = relu(a[r] + layer.bias[r]);
        cur = a;
        std::swap(a, b);
    }
    n.final_weight.apply(cur, y);
}

Vec evaluate(const Network& net, const Vec& x) {
    if (static_cast<int>(x.size()) != net.input_dim)
        throw std::invalid_argument("evaluate: input dimension mismatch");
    Evaluator ev(net);
    Vec y(net.output_dim);
    ev(x.data(), y.data());
    return y;
}

double bias_norm_sq(const Vec& bias) {
    KahanSum s;
    for (double b : bias) s.add(b * b);
    return s.value();
}

std::vector<double> per_layer_augmented_norms(const Network& net) {
    std::vector<double> norms;
    norms.reserve(net.hidden.size());
    for (const auto& l : net.hidden)
        norms.push_back(std::sqrt(l.weight.frobenius_sq() + bias_norm_sq(l.bias) + 1.0));
    return norms;
}

double kappa(const Network& net) {
    double k = net.final_weight.frobenius();
    for (double n : per_layer_augmented_norms(net)) k *= n;
    return k;
}

AugmentedNetwork to_augmented(const Network& net) {
    AugmentedNetwork aug;
    aug.input_dim = net.input_dim;
    aug.output_dim = net.output_dim;
    int cur = net.input_dim;
    for (const auto& l : net.hidden) {
        SpMat m(l.weight.rows() + 1, cur + 1);
        m.reserve(l.weight.nnz() + l.bias.size() + 1);
        for (int r = 0; r < l.weight.rows(); ++r) {
            m.begin_row();
            for (std::size_t k = l.weight.row_begin(r); k < l.weight.row_end(r); ++k)
                m.push(l.weight.entry_col(k), l.weight.entry_val(k));
            if (l.bias[r] != 0.0) m.push(cur, l.bias[r]);
        }
        m.begin_row();
        m.push(cur, 1.0);
        m.finalize();
        aug.matrices.push_back(std::move(m));
        cur = l.weight.rows();
    }
    // final: (A_D, 0)
    SpMat f(net.output_dim, cur + 1);
    f.reserve(net.final_weight.nnz());
    for (int r = 0; r < net.output_dim; ++r) {
        f.begin_row();
        for (std::size_t k = net.final_weight.row_begin(r); k < net.final_weight.row_end(r); ++k)
            f.push(net.final_weight.entry_col(k), net.final_weight.entry_val(k));
    }
    f.finalize();
    aug.matrices.push_back(std::move(f));
    return aug;
}

Vec evaluate_augmented(const AugmentedNetwork& aug, const Vec& x) {
    if (static_cast<int>(x.size()) != aug.input_dim)
        throw std::invalid_argument("evaluate_augmented: input dimension mismatch");
    Vec cur = x;
    cur.push_back(1.0);
    for (std::size_t i = 0; i + 1 < aug.matrices.size(); ++i) {
        Vec next = aug.matrices[i].apply(cur);
        for (auto& v : next) v = relu(v);
        cur = std::move(next);
    }
    return aug.matrices.back().apply(cur);
}

double augmented_norm_product(const AugmentedNetwork& aug) {
    double p = 1.0;
    for (const auto& m : aug.matrices) p *= m.frobenius();
    return p;
}

Network build_chi(double B) {
    Network chi;
    chi.input_dim = 1;
    chi.output_dim = 1;
    SpMat w(4, 1);
    w.begin_row();
    w.push(0, 1.0);
    w.begin_row();
    w.push(0, -1.0);
    w.begin_row();
    w.push(0, 1.0);
    w.begin_row();
    w.push(0, -1.0);
    w.finalize();
    chi.hidden.push_back({std::move(w), Vec{0.0, 0.0, -B, -B}});
    chi.final_weight = SpMat::from_dense(1, 4, {1.0, -1.0, -1.0, 1.0});
    return chi;
}

namespace {

constexpr std::size_t kDenseSerializationCap = 1 << 16;

nlohmann::json matrix_to_json(const SpMat& m) {
    nlohmann::json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    if (static_cast<std::size_t>(m.rows()) * m.cols() <= kDenseSerializationCap) {
        j["weights"] = m.to_dense();
    } else {
        nlohmann::json entries = nlohmann::json::array();
        m.for_each([&](int r, int c, double v) { entries.push_back({r, c, v}); });
        j["entries"] = std::move(entries);
    }
    return j;
}

SpMat matrix_from_json(const nlohmann::json& j) {
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    if (j.contains("weights")) {
        return SpMat::from_dense(rows, cols, j.at("weights").get<Vec>());
    }
    SpMat m(rows, cols);
    const auto& entries = j.at("entries");
    m.reserve(entries.size());
    int cur_row = -1;
    for (const auto& e : entries) {
        const int r = e.at(0).get<int>();
        if (r < cur_row) throw config_error("network file: entries out of row order");
        while (cur_row < r) {
            m.begin_row();
            ++cur_row;
        }
        m.push(e.at(1).get<int>(), e.at(2).get<double>());
    }
    m.finalize();
    return m;
}

} // namespace

std::string serialize(const Network& net, const FrobeniusCertificate& cert) {
    nlohmann::json j;
    j["version"] = 1;
    j["input_dim"] = net.input_dim;
    j["output_dim"] = net.output_dim;
    nlohmann::json layers = nlohmann::json::array();
    for (const auto& l : net.hidden) {
        nlohmann::json lj = matrix_to_json(l.weight);
        lj["bias"] = l.bias;
        layers.push_back(std::move(lj));
    }
    j["layers"] = std::move(layers);
    j["final"] = matrix_to_json(net.final_weight);
    j["certificate"] = {{"kappa", cert.kappa},
                        {"budget", cert.budget},
                        {"per_layer_norms", cert.per_layer_augmented_norms},
                        {"satisfied", cert.satisfied}};
    return j.dump(1);
}

std::pair<Network, FrobeniusCertificate> deserialize(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(std::string("network file: ") + e.what(), e.byte);
    }
    try {
        Network net;
        net.input_dim = j.at("input_dim").get<int>();
        net.output_dim = j.at("output_dim").get<int>();
        for (const auto& lj : j.at("layers"))
            net.hidden.push_back({matrix_from_json(lj), lj.at("bias").get<Vec>()});
        net.final_weight = matrix_from_json(j.at("final"));
        net.validate();
        FrobeniusCertificate cert;
        const auto& cj = j.at("certificate");
        cert.kappa = cj.at("kappa").get<double>();
        cert.budget = cj.at("budget").get<double>();
        cert.per_layer_augmented_norms = cj.at("per_layer_norms").get<std::vector<double>>();
        cert.satisfied = cj.at("satisfied").get<bool>();
        return {std::move(net), std::move(cert)};
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("network file: ") + e.what(), 0);
    }
}

} // namespace frob
