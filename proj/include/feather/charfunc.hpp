#pragma once

#include "feather/graph.hpp"
#include "feather/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace feather {

/// Points at which node characteristic functions are sampled: one vector of
/// d points per feature, shared across all walk scales 1..r.
struct EvaluationGrid {
    std::vector<std::vector<double>> points;  // k vectors of length d
    std::size_t d = 0;
    std::size_t r = 0;

    std::size_t feature_count() const noexcept { return points.size(); }

    /// Throws unless shapes are consistent, every point is finite,
    /// and d, r >= 1.
    void validate() const;
};

/// Grid with every point drawn i.i.d. uniform on [lo, hi), deterministic
/// in seed. Points are drawn feature-major.
EvaluationGrid make_grid(std::size_t k, std::size_t d, std::size_t r, double lo = 0.0,
                         double hi = 5.0, std::uint64_t seed = 0);

/// Grid with every point equal to value.
EvaluationGrid constant_grid(std::size_t k, std::size_t d, std::size_t r, double value);

/// Node embedding holding characteristic function samples for k features at
/// d points and scales 1..r. Column order is feature-major, then scale, then
/// the real block before the imaginary block, then point index.
class EmbeddingMatrix {
public:
    EmbeddingMatrix() = default;
    EmbeddingMatrix(std::size_t num_nodes, std::size_t k, std::size_t d, std::size_t r)
        : num_nodes_(num_nodes), k_(k), d_(d), r_(r), values_(num_nodes * 2 * k * d * r, 0.0) {}

    std::size_t num_nodes() const noexcept { return num_nodes_; }
    std::size_t feature_count() const noexcept { return k_; }
    std::size_t point_count() const noexcept { return d_; }
    std::size_t scale_count() const noexcept { return r_; }
    std::size_t width() const noexcept { return 2 * k_ * d_ * r_; }

    /// part 0 selects the real block, part 1 the imaginary block.
    /// scale is 1-based.
    std::size_t column(std::size_t feature, std::size_t scale, int part, std::size_t point) const {
        return ((feature * r_ + (scale - 1)) * 2 + static_cast<std::size_t>(part)) * d_ + point;
    }

    double at(std::size_t node, std::size_t col) const { return values_[node * width() + col]; }
    double& at(std::size_t node, std::size_t col) { return values_[node * width() + col]; }

    std::span<const double> row(std::size_t node) const {
        return {values_.data() + node * width(), width()};
    }
    std::span<double> row(std::size_t node) {
        return {values_.data() + node * width(), width()};
    }

    const std::vector<double>& values() const noexcept { return values_; }

    /// One label per column, e.g. "degree_s2_re_7".
    std::vector<std::string> column_labels(std::span<const std::string> feature_names) const;

    bool operator==(const EmbeddingMatrix&) const = default;

private:
    std::size_t num_nodes_ = 0;
    std::size_t k_ = 0, d_ = 0, r_ = 0;
    std::vector<double> values_;
};

/// Single-node characteristic function value at one evaluation point and one
/// scale, computed with r sparse vector-matrix products of the indicator of
/// u. Returns (real, imaginary).
std::pair<double, double> node_charfunc(const RowStochasticMatrix& ahat,
                                        std::span<const double> x, std::size_t u, double theta,
                                        std::size_t r);

/// Evaluates the characteristic functions of all features at every node for
/// scales 1..grid.r: per feature the cos/sin images of the outer product
/// x ⊗ Θ are propagated iteratively through the transition matrix, one
/// sparse multiplication per scale. Per-row reductions run in a fixed order,
/// so the result is bit-identical for any thread count.
EmbeddingMatrix feather_embed(const RowStochasticMatrix& ahat, const FeatureSet& features,
                              const EvaluationGrid& grid, int threads = 1);

/// Notation-faithful variant: scale s uses its own grid per_scale[s-1] and
/// recomputes the s-step propagation from scratch. With identical grids the
/// output matches feather_embed bit for bit.
EmbeddingMatrix feather_embed_fresh(const RowStochasticMatrix& ahat, const FeatureSet& features,
                                    std::span<const EvaluationGrid> per_scale, int threads = 1);

/// Dense r-th power of the transition matrix by naive repeated
/// multiplication. Verification oracle; refuses more than 2048 nodes.
Matrix dense_power_oracle(const RowStochasticMatrix& ahat, std::size_t r);

/// Effect of corrupting feature value x[w] by epsilon on every node's
/// characteristic function value, with the per-node tie-strength bounds.
struct CorruptionDelta {
    std::vector<double> delta_re;  // |Re(u; x) - Re(u; x')| per node
    std::vector<double> delta_im;
    std::vector<double> bound;  // 2 * (A^r)[u, w] per node
    double max_delta_re = 0.0;
    double max_delta_im = 0.0;
};

CorruptionDelta corruption_delta(const RowStochasticMatrix& ahat, std::span<const double> x,
                                 std::size_t w, double epsilon, double theta, std::size_t r);

}  // namespace feather
