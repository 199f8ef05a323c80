#pragma once

#include "feather/graph.hpp"
#include "feather/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

namespace feather::testutil {

/// Connected-ish random graph: a spanning chain plus extra random edges,
/// optionally with random weights in [0.1, 2).
inline Graph random_graph(std::mt19937_64& gen, std::size_t n, std::size_t extra_edges,
                          bool weighted) {
    std::vector<WeightedEdge> edges;
    edges.reserve(n - 1 + extra_edges);
    for (std::size_t u = 1; u < n; ++u) {
        const double w = weighted ? rng::uniform(gen, 0.1, 2.0) : 1.0;
        edges.push_back({u - 1, u, w});
    }
    for (std::size_t i = 0; i < extra_edges; ++i) {
        const std::size_t u = rng::uniform_index(gen, n);
        const std::size_t w = rng::uniform_index(gen, n);
        if (u == w) continue;
        const double weight = weighted ? rng::uniform(gen, 0.1, 2.0) : 1.0;
        edges.push_back({u, w, weight});
    }
    return from_edge_list(edges, n);
}

inline std::vector<std::size_t> random_permutation(std::mt19937_64& gen, std::size_t n) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i) {
        std::swap(perm[i - 1], perm[rng::uniform_index(gen, i)]);
    }
    return perm;
}

inline std::vector<double> random_feature(std::mt19937_64& gen, std::size_t n, double lo,
                                          double hi) {
    std::vector<double> x(n);
    for (double& v : x) v = rng::uniform(gen, lo, hi);
    return x;
}

/// Two Bernoulli blocks of equal size with dense intra-block and sparse
/// cross-block edges. Nodes [0, block) get class 0, the rest class 1.
inline Graph two_block_graph(std::uint64_t seed, std::size_t block, double p_intra,
                             double p_inter) {
    std::mt19937_64 gen(seed);
    const std::size_t n = 2 * block;
    std::vector<WeightedEdge> edges;
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t w = u + 1; w < n; ++w) {
            const bool same = (u < block) == (w < block);
            if (rng::uniform_unit(gen) < (same ? p_intra : p_inter)) edges.push_back({u, w, 1.0});
        }
    }
    return from_edge_list(edges, n);
}

/// Unique scratch directory under the system temp root, removed on scope exit.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("feather_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace feather::testutil
