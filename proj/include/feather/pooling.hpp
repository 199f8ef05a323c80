#pragma once

#include "feather/charfunc.hpp"
#include "feather/graph.hpp"

#include <string>
#include <vector>

namespace feather {

enum class PoolMode { Mean, Max, Min };

PoolMode parse_pool_mode(const std::string& name);
std::string pool_mode_name(PoolMode mode);

/// Whole-graph descriptor: a columnwise aggregate of an embedding, laid out
/// like the embedding columns.
struct PooledDescriptor {
    std::vector<double> values;
    PoolMode mode = PoolMode::Mean;
    std::size_t k = 0, d = 0, r = 0;
};

/// Columnwise mean, max, or min over all node rows. The mean sums rows in
/// index order and divides by the node count.
PooledDescriptor pool(const EmbeddingMatrix& z, PoolMode mode);

/// normalize -> feather_embed -> pool in one call.
PooledDescriptor graph_descriptor(const Graph& g, const FeatureSet& features,
                                  const EvaluationGrid& grid, PoolMode mode, int threads = 1);

}  // namespace feather
