#include "feather/pooling.hpp"

#include "feather/errors.hpp"

#include <algorithm>

namespace feather {

PoolMode parse_pool_mode(const std::string& name) {
    if (name == "mean") return PoolMode::Mean;
    if (name == "max") return PoolMode::Max;
    if (name == "min") return PoolMode::Min;
    throw ConfigError("unknown pool mode '" + name + "', expected mean, max, or min");
}

std::string pool_mode_name(PoolMode mode) {
    switch (mode) {
        case PoolMode::Mean: return "mean";
        case PoolMode::Max: return "max";
        case PoolMode::Min: return "min";
    }
    return "?";
}

PooledDescriptor pool(const EmbeddingMatrix& z, PoolMode mode) {
    if (z.num_nodes() == 0) throw EmptyEmbedding("cannot pool an embedding with zero rows");
    const std::size_t width = z.width();

    PooledDescriptor out;
    out.mode = mode;
    out.k = z.feature_count();
    out.d = z.point_count();
    out.r = z.scale_count();
    out.values.assign(z.row(0).begin(), z.row(0).end());

    for (std::size_t u = 1; u < z.num_nodes(); ++u) {
        auto row = z.row(u);
        switch (mode) {
            case PoolMode::Mean:
                for (std::size_t c = 0; c < width; ++c) out.values[c] += row[c];
                break;
            case PoolMode::Max:
                for (std::size_t c = 0; c < width; ++c) out.values[c] = std::max(out.values[c], row[c]);
                break;
            case PoolMode::Min:
                for (std::size_t c = 0; c < width; ++c) out.values[c] = std::min(out.values[c], row[c]);
                break;
        }
    }
    if (mode == PoolMode::Mean) {
        const double inv = 1.0 / static_cast<double>(z.num_nodes());
        for (double& v : out.values) v *= inv;
    }
    return out;
}

PooledDescriptor graph_descriptor(const Graph& g, const FeatureSet& features,
                                  const EvaluationGrid& grid, PoolMode mode, int threads) {
    return pool(feather_embed(normalize(g), features, grid, threads), mode);
}

}  // namespace feather
