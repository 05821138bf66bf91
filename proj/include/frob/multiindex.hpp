#pragma once

#include <cstdint>
#include <vector>

namespace frob {

using MultiIndex = std::vector<int>;

inline int order(const MultiIndex& s) {
    int n = 0;
    for (int v : s) n += v;
    return n;
}

inline double factorial(const MultiIndex& s) {
    double f = 1.0;
    for (int v : s)
        for (int i = 2; i <= v; ++i) f *= i;
    return f;
}

// All multi-indices in dimension dim with |s|_1 <= max_order, lexicographic.
inline std::vector<MultiIndex> multi_indices_up_to(int dim, int max_order) {
    std::vector<MultiIndex> out;
    MultiIndex cur(dim, 0);
    // counting in lexicographic order via odometer with budget pruning
    auto rec = [&](auto&& self, int pos, int budget) -> void {
        if (pos == dim) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= budget; ++v) {
            cur[pos] = v;
            self(self, pos + 1, budget - v);
        }
        cur[pos] = 0;
    };
    rec(rec, 0, max_order);
    return out;
}

// Odometer over grid points {0..N}^dim, lexicographic. Returns false when done.
inline bool advance_grid_point(std::vector<int>& n, int N) {
    for (int i = static_cast<int>(n.size()) - 1; i >= 0; --i) {
        if (n[i] < N) {
            ++n[i];
            for (std::size_t j = i + 1; j < n.size(); ++j) n[j] = 0;
            return true;
        }
    }
    return false;
}

inline std::int64_t grid_point_count(int dim, int N) {
    std::int64_t c = 1;
    for (int i = 0; i < dim; ++i) c *= (N + 1);
    return c;
}

} // namespace frob
