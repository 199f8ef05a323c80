#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace feather {

/// One undirected edge statement. Listing (u, w) and (w, u) with the same
/// weight describes the same edge; exact duplicates of a directed statement
/// accumulate by weight summation.
struct WeightedEdge {
    std::size_t source = 0;
    std::size_t target = 0;
    double weight = 1.0;
};

/// Undirected weighted graph in canonical CSR form: both directions of every
/// edge are stored, column indices are strictly increasing within each row,
/// and all weights are nonnegative.
class Graph {
public:
    Graph() = default;

    std::size_t num_nodes() const noexcept { return num_nodes_; }
    std::size_t num_entries() const noexcept { return cols_.size(); }

    /// Count of undirected edges (self-loops count once).
    std::size_t num_edges() const noexcept;

    std::span<const std::size_t> row_offsets() const noexcept { return row_offsets_; }
    std::span<const std::size_t> col_indices() const noexcept { return cols_; }
    std::span<const double> weights() const noexcept { return weights_; }

    std::span<const std::size_t> neighbors(std::size_t u) const {
        return {cols_.data() + row_offsets_[u], cols_.data() + row_offsets_[u + 1]};
    }
    std::span<const double> row_weights(std::size_t u) const {
        return {weights_.data() + row_offsets_[u], weights_.data() + row_offsets_[u + 1]};
    }

    /// Weighted degree of every node (row weight sums).
    std::vector<double> weighted_degrees() const;

    bool operator==(const Graph&) const = default;

private:
    friend Graph make_graph_from_canonical_rows(std::size_t, std::vector<std::size_t>,
                                                std::vector<std::size_t>, std::vector<double>);

    std::size_t num_nodes_ = 0;
    std::vector<std::size_t> row_offsets_ = {0};
    std::vector<std::size_t> cols_;
    std::vector<double> weights_;
};

/// Random-walk transition matrix, same CSR layout as Graph. Every row sums
/// to 1 under sequential column-order summation and all entries lie in [0, 1].
class RowStochasticMatrix {
public:
    RowStochasticMatrix() = default;

    std::size_t num_nodes() const noexcept { return num_nodes_; }
    std::size_t num_entries() const noexcept { return cols_.size(); }

    std::span<const std::size_t> row_offsets() const noexcept { return row_offsets_; }
    std::span<const std::size_t> col_indices() const noexcept { return cols_; }
    std::span<const double> values() const noexcept { return values_; }

    std::span<const std::size_t> neighbors(std::size_t u) const {
        return {cols_.data() + row_offsets_[u], cols_.data() + row_offsets_[u + 1]};
    }
    std::span<const double> row_values(std::size_t u) const {
        return {values_.data() + row_offsets_[u], values_.data() + row_offsets_[u + 1]};
    }

    bool operator==(const RowStochasticMatrix&) const = default;

private:
    friend RowStochasticMatrix normalize(const Graph& g);

    std::size_t num_nodes_ = 0;
    std::vector<std::size_t> row_offsets_ = {0};
    std::vector<std::size_t> cols_;
    std::vector<double> values_;
};

/// Named node feature vectors, one value per node each.
struct FeatureSet {
    std::vector<std::vector<double>> features;
    std::vector<std::string> names;

    std::size_t count() const noexcept { return features.size(); }

    /// Throws ShapeMismatch unless every vector has num_nodes finite values.
    void validate(std::size_t num_nodes) const;
};

/// Builds a canonical Graph from edge statements.
///
/// Directed duplicates of the same (u, w) statement sum their weights; the
/// symmetric closure then takes the larger of the two directions, so a list
/// that already contains both directions of an edge round-trips unchanged.
/// With strict = true, mirror statements whose accumulated weights differ
/// are rejected instead.
Graph from_edge_list(std::span<const WeightedEdge> edges,
                     std::optional<std::size_t> num_nodes = std::nullopt,
                     bool strict = false);

/// Canonical export: one statement per undirected edge with source < target
/// (self-loops once). Feeding the result back to from_edge_list reproduces
/// the graph exactly.
std::vector<WeightedEdge> to_edge_list(const Graph& g);

/// Row-normalizes the adjacency matrix into random-walk transition
/// probabilities. A node with zero weighted degree gets a unit self-loop so
/// its row stays stochastic. In every row the highest-column entry absorbs
/// the division rounding residue, making the sequential row sum exactly 1.
RowStochasticMatrix normalize(const Graph& g);

/// ln(1 + weighted degree) per node.
std::vector<double> log_degree_feature(const Graph& g);

/// Local clustering coefficient per node, computed on the unweighted
/// skeleton (positive weights only, self-loops ignored). Nodes of skeleton
/// degree below 2 get 0.
std::vector<double> clustering_coefficient_feature(const Graph& g);

/// G(n, m) sample with m = n * edges_per_node distinct undirected edges of
/// unit weight, drawn uniformly without replacement. Deterministic in seed.
Graph erdos_renyi(std::size_t n, std::size_t edges_per_node, std::uint64_t seed);

/// Relabels nodes through a bijection: edge (u, w) maps to (perm[u], perm[w]).
Graph permute(const Graph& g, std::span<const std::size_t> perm);

}  // namespace feather
