#include "feather/graph.hpp"

#include "feather/errors.hpp"
#include "feather/rng.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>
#include <utility>

namespace feather {

namespace {

struct Triple {
    std::size_t u, w;
    double value;
};

std::string node_pair(std::size_t u, std::size_t w) {
    return "(" + std::to_string(u) + ", " + std::to_string(w) + ")";
}

/// Builds canonical CSR rows from undirected triples with u <= w and no
/// duplicate pairs. Emits both directions of each off-diagonal triple.
void build_canonical_rows(std::size_t n, std::vector<Triple>& canon,
                          std::vector<std::size_t>& offsets, std::vector<std::size_t>& cols,
                          std::vector<double>& vals) {
    std::vector<Triple> stored;
    stored.reserve(2 * canon.size());
    for (const Triple& t : canon) {
        stored.push_back(t);
        if (t.u != t.w) stored.push_back({t.w, t.u, t.value});
    }
    std::sort(stored.begin(), stored.end(), [](const Triple& a, const Triple& b) {
        return a.u != b.u ? a.u < b.u : a.w < b.w;
    });

    offsets.assign(n + 1, 0);
    cols.resize(stored.size());
    vals.resize(stored.size());
    for (std::size_t i = 0; i < stored.size(); ++i) {
        ++offsets[stored[i].u + 1];
        cols[i] = stored[i].w;
        vals[i] = stored[i].value;
    }
    for (std::size_t u = 0; u < n; ++u) offsets[u + 1] += offsets[u];
}

}  // namespace

Graph make_graph_from_canonical_rows(std::size_t n, std::vector<std::size_t> offsets,
                                     std::vector<std::size_t> cols, std::vector<double> vals) {
    Graph g;
    g.num_nodes_ = n;
    g.row_offsets_ = std::move(offsets);
    g.cols_ = std::move(cols);
    g.weights_ = std::move(vals);
    return g;
}

std::size_t Graph::num_edges() const noexcept {
    std::size_t count = 0;
    for (std::size_t u = 0; u < num_nodes_; ++u) {
        for (std::size_t e = row_offsets_[u]; e < row_offsets_[u + 1]; ++e) {
            if (cols_[e] >= u) ++count;
        }
    }
    return count;
}

std::vector<double> Graph::weighted_degrees() const {
    std::vector<double> degrees(num_nodes_, 0.0);
    for (std::size_t u = 0; u < num_nodes_; ++u) {
        double sum = 0.0;
        for (std::size_t e = row_offsets_[u]; e < row_offsets_[u + 1]; ++e) sum += weights_[e];
        degrees[u] = sum;
    }
    return degrees;
}

void FeatureSet::validate(std::size_t num_nodes) const {
    if (features.size() != names.size()) {
        throw ShapeMismatch("feature set has " + std::to_string(features.size()) +
                            " vectors but " + std::to_string(names.size()) + " names");
    }
    for (std::size_t i = 0; i < features.size(); ++i) {
        if (features[i].size() != num_nodes) {
            throw ShapeMismatch("feature '" + names[i] + "' has " +
                                std::to_string(features[i].size()) + " values, expected " +
                                std::to_string(num_nodes));
        }
        for (double v : features[i]) {
            if (!std::isfinite(v)) {
                throw ShapeMismatch("feature '" + names[i] + "' contains a non-finite value");
            }
        }
    }
}

Graph from_edge_list(std::span<const WeightedEdge> edges, std::optional<std::size_t> num_nodes,
                     bool strict) {
    std::size_t n = num_nodes.value_or(0);
    for (const WeightedEdge& e : edges) {
        if (!(e.weight >= 0.0) || !std::isfinite(e.weight)) {
            throw InvalidWeight("edge " + node_pair(e.source, e.target) + " has weight " +
                                std::to_string(e.weight));
        }
        if (num_nodes && (e.source >= *num_nodes || e.target >= *num_nodes)) {
            throw IndexOutOfRange("edge " + node_pair(e.source, e.target) +
                                  " outside declared node count " + std::to_string(*num_nodes));
        }
        if (!num_nodes) n = std::max({n, e.source + 1, e.target + 1});
    }

    // Directed accumulation: identical (u, w) statements sum.
    std::vector<Triple> directed;
    directed.reserve(edges.size());
    for (const WeightedEdge& e : edges) directed.push_back({e.source, e.target, e.weight});
    std::sort(directed.begin(), directed.end(), [](const Triple& a, const Triple& b) {
        return a.u != b.u ? a.u < b.u : a.w < b.w;
    });
    std::vector<Triple> summed;
    for (const Triple& t : directed) {
        if (!summed.empty() && summed.back().u == t.u && summed.back().w == t.w) {
            summed.back().value += t.value;
        } else {
            summed.push_back(t);
        }
    }

    // Symmetric closure, keyed by the unordered pair.
    std::vector<Triple> canon;
    canon.reserve(summed.size());
    for (const Triple& t : summed) {
        canon.push_back({std::min(t.u, t.w), std::max(t.u, t.w), t.value});
    }
    std::sort(canon.begin(), canon.end(), [](const Triple& a, const Triple& b) {
        return a.u != b.u ? a.u < b.u : a.w < b.w;
    });
    std::vector<Triple> merged;
    for (const Triple& t : canon) {
        if (!merged.empty() && merged.back().u == t.u && merged.back().w == t.w) {
            if (strict && merged.back().value != t.value) {
                throw InvalidWeight("asymmetric weights for edge " + node_pair(t.u, t.w) +
                                    " under strict ingestion");
            }
            merged.back().value = std::max(merged.back().value, t.value);
        } else {
            merged.push_back(t);
        }
    }

    std::vector<std::size_t> offsets, cols;
    std::vector<double> vals;
    build_canonical_rows(n, merged, offsets, cols, vals);
    return make_graph_from_canonical_rows(n, std::move(offsets), std::move(cols), std::move(vals));
}

std::vector<WeightedEdge> to_edge_list(const Graph& g) {
    std::vector<WeightedEdge> edges;
    edges.reserve(g.num_edges());
    auto offsets = g.row_offsets();
    auto cols = g.col_indices();
    auto weights = g.weights();
    for (std::size_t u = 0; u < g.num_nodes(); ++u) {
        for (std::size_t e = offsets[u]; e < offsets[u + 1]; ++e) {
            if (cols[e] >= u) edges.push_back({u, cols[e], weights[e]});
        }
    }
    return edges;
}

RowStochasticMatrix normalize(const Graph& g) {
    const std::size_t n = g.num_nodes();
    auto offsets = g.row_offsets();
    auto cols = g.col_indices();
    auto weights = g.weights();

    RowStochasticMatrix m;
    m.num_nodes_ = n;
    m.row_offsets_.assign(1, 0);
    m.row_offsets_.reserve(n + 1);
    m.cols_.reserve(g.num_entries());
    m.values_.reserve(g.num_entries());

    for (std::size_t u = 0; u < n; ++u) {
        const std::size_t begin = offsets[u];
        const std::size_t end = offsets[u + 1];
        double degree = 0.0;
        for (std::size_t e = begin; e < end; ++e) degree += weights[e];

        if (degree == 0.0) {
            m.cols_.push_back(u);
            m.values_.push_back(1.0);
        } else {
            double partial = 0.0;
            for (std::size_t e = begin; e < end; ++e) {
                double p = weights[e] / degree;
                if (e + 1 == end) {
                    // Residue of the sequential sum lands on the last entry,
                    // so row sums are exactly 1 in the fixed reduction order.
                    p = std::clamp(1.0 - partial, 0.0, 1.0);
                } else {
                    partial += p;
                }
                m.cols_.push_back(cols[e]);
                m.values_.push_back(p);
            }
        }
        m.row_offsets_.push_back(m.cols_.size());
    }
    return m;
}

std::vector<double> log_degree_feature(const Graph& g) {
    std::vector<double> out = g.weighted_degrees();
    for (double& v : out) v = std::log1p(v);
    return out;
}

std::vector<double> clustering_coefficient_feature(const Graph& g) {
    const std::size_t n = g.num_nodes();

    // Unweighted skeleton adjacency, sorted per row.
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t u = 0; u < n; ++u) {
        auto cols = g.neighbors(u);
        auto vals = g.row_weights(u);
        for (std::size_t e = 0; e < cols.size(); ++e) {
            if (cols[e] != u && vals[e] > 0.0) adj[u].push_back(cols[e]);
        }
    }

    std::vector<double> out(n, 0.0);
    for (std::size_t u = 0; u < n; ++u) {
        const std::size_t deg = adj[u].size();
        if (deg < 2) continue;
        std::size_t wedge_closures = 0;
        for (std::size_t v : adj[u]) {
            // |N(u) ∩ N(v)| counts each triangle through (u, v) once.
            const auto& nu = adj[u];
            const auto& nv = adj[v];
            std::size_t i = 0, j = 0;
            while (i < nu.size() && j < nv.size()) {
                if (nu[i] < nv[j]) {
                    ++i;
                } else if (nu[i] > nv[j]) {
                    ++j;
                } else {
                    ++wedge_closures;
                    ++i;
                    ++j;
                }
            }
        }
        const double triangles = static_cast<double>(wedge_closures) / 2.0;
        out[u] = 2.0 * triangles / (static_cast<double>(deg) * static_cast<double>(deg - 1));
    }
    return out;
}

Graph erdos_renyi(std::size_t n, std::size_t edges_per_node, std::uint64_t seed) {
    if (n < 2) throw InvalidDomain("erdos_renyi needs at least 2 nodes");
    if (edges_per_node < 1) throw InvalidDomain("erdos_renyi needs edges_per_node >= 1");
    const std::size_t m = n * edges_per_node;
    const std::size_t possible = n * (n - 1) / 2;
    if (m > possible) {
        throw TooDense("requested " + std::to_string(m) + " edges, but " + std::to_string(n) +
                       " nodes admit only " + std::to_string(possible));
    }

    std::mt19937_64 gen(seed);
    std::vector<WeightedEdge> edges;
    edges.reserve(m);

    if (m * 3 >= possible) {
        // Dense regime: partial Fisher-Yates over the full pair list.
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        pairs.reserve(possible);
        for (std::size_t u = 0; u < n; ++u) {
            for (std::size_t w = u + 1; w < n; ++w) pairs.emplace_back(u, w);
        }
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t j = i + rng::uniform_index(gen, pairs.size() - i);
            std::swap(pairs[i], pairs[j]);
            edges.push_back({pairs[i].first, pairs[i].second, 1.0});
        }
    } else {
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(2 * m);
        while (edges.size() < m) {
            const std::size_t u = rng::uniform_index(gen, n);
            const std::size_t w = rng::uniform_index(gen, n);
            if (u == w) continue;
            const std::size_t lo = std::min(u, w), hi = std::max(u, w);
            const std::uint64_t key = static_cast<std::uint64_t>(lo) * n + hi;
            if (seen.insert(key).second) edges.push_back({lo, hi, 1.0});
        }
    }
    return from_edge_list(edges, n);
}

Graph permute(const Graph& g, std::span<const std::size_t> perm) {
    const std::size_t n = g.num_nodes();
    if (perm.size() != n) {
        throw InvalidPermutation("permutation length " + std::to_string(perm.size()) +
                                 " does not match node count " + std::to_string(n));
    }
    std::vector<bool> hit(n, false);
    for (std::size_t image : perm) {
        if (image >= n || hit[image]) throw InvalidPermutation("mapping is not a bijection");
        hit[image] = true;
    }

    std::vector<Triple> canon;
    canon.reserve(g.num_edges());
    auto offsets = g.row_offsets();
    auto cols = g.col_indices();
    auto weights = g.weights();
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t e = offsets[u]; e < offsets[u + 1]; ++e) {
            if (cols[e] < u) continue;
            const std::size_t pu = perm[u];
            const std::size_t pw = perm[cols[e]];
            canon.push_back({std::min(pu, pw), std::max(pu, pw), weights[e]});
        }
    }

    std::vector<std::size_t> new_offsets, new_cols;
    std::vector<double> new_vals;
    build_canonical_rows(n, canon, new_offsets, new_cols, new_vals);
    return make_graph_from_canonical_rows(n, std::move(new_offsets), std::move(new_cols),
                                          std::move(new_vals));
}

}  // namespace feather
