#include "feather/charfunc.hpp"

#include "feather/errors.hpp"
#include "feather/parallel.hpp"
#include "feather/rng.hpp"

#include <cmath>
#include <cstring>
#include <random>
#include <string>

namespace feather {

namespace {

/// out = ahat * in for row-major n x d blocks. Each output row accumulates
/// over the CSR entries of its source row in column order.
void propagate(const RowStochasticMatrix& ahat, const double* in, double* out, std::size_t d,
               int threads) {
    auto offsets = ahat.row_offsets();
    auto cols = ahat.col_indices();
    auto vals = ahat.values();
    parallel_for(ahat.num_nodes(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t u = begin; u < end; ++u) {
            double* row = out + u * d;
            std::memset(row, 0, d * sizeof(double));
            for (std::size_t e = offsets[u]; e < offsets[u + 1]; ++e) {
                const double a = vals[e];
                const double* src = in + cols[e] * d;
                for (std::size_t j = 0; j < d; ++j) row[j] += a * src[j];
            }
        }
    });
}

void fill_waves(const std::vector<double>& x, const std::vector<double>& theta, double* cos_out,
                double* sin_out, int threads) {
    const std::size_t d = theta.size();
    parallel_for(x.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t u = begin; u < end; ++u) {
            for (std::size_t j = 0; j < d; ++j) {
                const double arg = theta[j] * x[u];
                cos_out[u * d + j] = std::cos(arg);
                sin_out[u * d + j] = std::sin(arg);
            }
        }
    });
}

void check_embed_inputs(const RowStochasticMatrix& ahat, const FeatureSet& features,
                        const EvaluationGrid& grid) {
    grid.validate();
    features.validate(ahat.num_nodes());
    if (features.count() != grid.feature_count()) {
        throw ShapeMismatch("grid covers " + std::to_string(grid.feature_count()) +
                            " features, feature set has " + std::to_string(features.count()));
    }
}

void store_blocks(EmbeddingMatrix& z, std::size_t feature, std::size_t scale,
                  const double* re_block, const double* im_block) {
    const std::size_t d = z.point_count();
    const std::size_t re0 = z.column(feature, scale, 0, 0);
    const std::size_t im0 = z.column(feature, scale, 1, 0);
    for (std::size_t u = 0; u < z.num_nodes(); ++u) {
        double* row = z.row(u).data();
        std::memcpy(row + re0, re_block + u * d, d * sizeof(double));
        std::memcpy(row + im0, im_block + u * d, d * sizeof(double));
    }
}

}  // namespace

void EvaluationGrid::validate() const {
    if (d < 1 || r < 1) throw ShapeMismatch("evaluation grid needs d >= 1 and r >= 1");
    if (points.empty()) throw ShapeMismatch("evaluation grid has no feature point vectors");
    for (const auto& theta : points) {
        if (theta.size() != d) {
            throw ShapeMismatch("point vector of length " + std::to_string(theta.size()) +
                                " does not match d = " + std::to_string(d));
        }
        for (double v : theta) {
            if (!std::isfinite(v)) throw ShapeMismatch("evaluation point is not finite");
        }
    }
}

EvaluationGrid make_grid(std::size_t k, std::size_t d, std::size_t r, double lo, double hi,
                         std::uint64_t seed) {
    if (!(lo < hi)) {
        throw InvalidDomain("grid domain [" + std::to_string(lo) + ", " + std::to_string(hi) +
                            ") is empty");
    }
    if (k < 1 || d < 1 || r < 1) throw InvalidDomain("make_grid needs k, d, r >= 1");
    EvaluationGrid grid;
    grid.d = d;
    grid.r = r;
    grid.points.resize(k);
    std::mt19937_64 gen(seed);
    for (std::size_t i = 0; i < k; ++i) {
        grid.points[i].resize(d);
        for (std::size_t j = 0; j < d; ++j) grid.points[i][j] = rng::uniform(gen, lo, hi);
    }
    return grid;
}

EvaluationGrid constant_grid(std::size_t k, std::size_t d, std::size_t r, double value) {
    if (k < 1 || d < 1 || r < 1) throw InvalidDomain("constant_grid needs k, d, r >= 1");
    EvaluationGrid grid;
    grid.d = d;
    grid.r = r;
    grid.points.assign(k, std::vector<double>(d, value));
    return grid;
}

std::vector<std::string> EmbeddingMatrix::column_labels(
    std::span<const std::string> feature_names) const {
    std::vector<std::string> labels(width());
    for (std::size_t i = 0; i < k_; ++i) {
        const std::string name =
            i < feature_names.size() ? feature_names[i] : "f" + std::to_string(i);
        for (std::size_t s = 1; s <= r_; ++s) {
            for (int part = 0; part < 2; ++part) {
                for (std::size_t j = 0; j < d_; ++j) {
                    labels[column(i, s, part, j)] = name + "_s" + std::to_string(s) +
                                                    (part == 0 ? "_re_" : "_im_") +
                                                    std::to_string(j);
                }
            }
        }
    }
    return labels;
}

std::pair<double, double> node_charfunc(const RowStochasticMatrix& ahat,
                                        std::span<const double> x, std::size_t u, double theta,
                                        std::size_t r) {
    const std::size_t n = ahat.num_nodes();
    if (u >= n) {
        throw IndexOutOfRange("node " + std::to_string(u) + " outside graph of " +
                              std::to_string(n) + " nodes");
    }
    if (x.size() != n) throw ShapeMismatch("feature vector length does not match graph");
    if (r < 1) throw ShapeMismatch("scale r must be at least 1");

    // walk[w] = (A^s)[u, w], built by left-multiplying the indicator of u.
    std::vector<double> walk(n, 0.0), next(n, 0.0);
    walk[u] = 1.0;
    auto offsets = ahat.row_offsets();
    auto cols = ahat.col_indices();
    auto vals = ahat.values();
    for (std::size_t s = 0; s < r; ++s) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t v = 0; v < n; ++v) {
            const double p = walk[v];
            if (p == 0.0) continue;
            for (std::size_t e = offsets[v]; e < offsets[v + 1]; ++e) {
                next[cols[e]] += p * vals[e];
            }
        }
        walk.swap(next);
    }

    double re = 0.0, im = 0.0;
    for (std::size_t w = 0; w < n; ++w) {
        if (walk[w] == 0.0) continue;
        re += walk[w] * std::cos(theta * x[w]);
        im += walk[w] * std::sin(theta * x[w]);
    }
    return {re, im};
}

EmbeddingMatrix feather_embed(const RowStochasticMatrix& ahat, const FeatureSet& features,
                              const EvaluationGrid& grid, int threads) {
    check_embed_inputs(ahat, features, grid);
    const std::size_t n = ahat.num_nodes();
    const std::size_t k = features.count();
    const std::size_t d = grid.d;

    EmbeddingMatrix z(n, k, d, grid.r);
    std::vector<double> re(n * d), im(n * d), scratch(n * d);
    for (std::size_t i = 0; i < k; ++i) {
        fill_waves(features.features[i], grid.points[i], re.data(), im.data(), threads);
        for (std::size_t s = 1; s <= grid.r; ++s) {
            propagate(ahat, re.data(), scratch.data(), d, threads);
            re.swap(scratch);
            propagate(ahat, im.data(), scratch.data(), d, threads);
            im.swap(scratch);
            store_blocks(z, i, s, re.data(), im.data());
        }
    }
    return z;
}

EmbeddingMatrix feather_embed_fresh(const RowStochasticMatrix& ahat, const FeatureSet& features,
                                    std::span<const EvaluationGrid> per_scale, int threads) {
    if (per_scale.empty()) throw ShapeMismatch("fresh-power mode needs one grid per scale");
    const std::size_t r = per_scale.size();
    const std::size_t d = per_scale.front().d;
    for (const EvaluationGrid& g : per_scale) {
        check_embed_inputs(ahat, features, g);
        if (g.d != d) throw ShapeMismatch("per-scale grids must share d");
    }

    const std::size_t n = ahat.num_nodes();
    const std::size_t k = features.count();
    EmbeddingMatrix z(n, k, d, r);
    std::vector<double> re(n * d), im(n * d), scratch(n * d);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t s = 1; s <= r; ++s) {
            fill_waves(features.features[i], per_scale[s - 1].points[i], re.data(), im.data(),
                       threads);
            for (std::size_t step = 0; step < s; ++step) {
                propagate(ahat, re.data(), scratch.data(), d, threads);
                re.swap(scratch);
                propagate(ahat, im.data(), scratch.data(), d, threads);
                im.swap(scratch);
            }
            store_blocks(z, i, s, re.data(), im.data());
        }
    }
    return z;
}

Matrix dense_power_oracle(const RowStochasticMatrix& ahat, std::size_t r) {
    const std::size_t n = ahat.num_nodes();
    if (n > 2048) {
        throw OracleSizeExceeded("dense oracle limited to 2048 nodes, got " + std::to_string(n));
    }
    if (r < 1) throw ShapeMismatch("scale r must be at least 1");

    Matrix dense(n, n);
    auto offsets = ahat.row_offsets();
    auto cols = ahat.col_indices();
    auto vals = ahat.values();
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t e = offsets[u]; e < offsets[u + 1]; ++e) dense(u, cols[e]) = vals[e];
    }

    Matrix power = dense;
    for (std::size_t s = 1; s < r; ++s) power = multiply(power, dense);
    return power;
}

CorruptionDelta corruption_delta(const RowStochasticMatrix& ahat, std::span<const double> x,
                                 std::size_t w, double epsilon, double theta, std::size_t r) {
    const std::size_t n = ahat.num_nodes();
    if (w >= n) {
        throw IndexOutOfRange("node " + std::to_string(w) + " outside graph of " +
                              std::to_string(n) + " nodes");
    }
    if (x.size() != n) throw ShapeMismatch("feature vector length does not match graph");

    std::vector<double> clean_re(n), clean_im(n), corrupt_re(n), corrupt_im(n);
    for (std::size_t v = 0; v < n; ++v) {
        clean_re[v] = std::cos(theta * x[v]);
        clean_im[v] = std::sin(theta * x[v]);
        const double xv = v == w ? x[v] + epsilon : x[v];
        corrupt_re[v] = std::cos(theta * xv);
        corrupt_im[v] = std::sin(theta * xv);
    }

    // Column w of A^r doubles as the tie-strength bound.
    std::vector<double> column(n, 0.0);
    column[w] = 1.0;

    std::vector<double> scratch(n);
    for (std::size_t s = 0; s < r; ++s) {
        propagate(ahat, clean_re.data(), scratch.data(), 1, 1);
        clean_re.swap(scratch);
        propagate(ahat, clean_im.data(), scratch.data(), 1, 1);
        clean_im.swap(scratch);
        propagate(ahat, corrupt_re.data(), scratch.data(), 1, 1);
        corrupt_re.swap(scratch);
        propagate(ahat, corrupt_im.data(), scratch.data(), 1, 1);
        corrupt_im.swap(scratch);
        propagate(ahat, column.data(), scratch.data(), 1, 1);
        column.swap(scratch);
    }

    CorruptionDelta out;
    out.delta_re.resize(n);
    out.delta_im.resize(n);
    out.bound.resize(n);
    for (std::size_t u = 0; u < n; ++u) {
        out.delta_re[u] = std::abs(clean_re[u] - corrupt_re[u]);
        out.delta_im[u] = std::abs(clean_im[u] - corrupt_im[u]);
        out.bound[u] = 2.0 * column[u];
        out.max_delta_re = std::max(out.max_delta_re, out.delta_re[u]);
        out.max_delta_im = std::max(out.max_delta_im, out.delta_im[u]);
    }
    return out;
}

}  // namespace feather
