#include "feather/pooling.hpp"

#include "feather/errors.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace feather;

TEST_CASE("pool: identical rows, mixed rows, empty input") {
    EmbeddingMatrix z(3, 1, 1, 1);  // width 2
    for (std::size_t u = 0; u < 3; ++u) {
        z.at(u, 0) = 0.25;
        z.at(u, 1) = -0.5;
    }
    for (PoolMode mode : {PoolMode::Mean, PoolMode::Max, PoolMode::Min}) {
        const PooledDescriptor d = pool(z, mode);
        CHECK(d.values == std::vector<double>{0.25, -0.5});
    }

    EmbeddingMatrix two(2, 1, 1, 1);
    two.at(0, 0) = 0.0;
    two.at(0, 1) = 1.0;
    two.at(1, 0) = 1.0;
    two.at(1, 1) = 0.0;
    CHECK(pool(two, PoolMode::Mean).values == std::vector<double>{0.5, 0.5});
    CHECK(pool(two, PoolMode::Max).values == std::vector<double>{1.0, 1.0});
    CHECK(pool(two, PoolMode::Min).values == std::vector<double>{0.0, 0.0});

    CHECK_THROWS_AS(pool(EmbeddingMatrix(0, 1, 1, 1), PoolMode::Mean), EmptyEmbedding);
}

TEST_CASE("graph_descriptor: single node evaluates the bare wave") {
    const Graph one = from_edge_list(std::vector<WeightedEdge>{}, 1);
    FeatureSet fs{{std::vector<double>{0.7}}, {"x"}};
    const EvaluationGrid grid = make_grid(1, 4, 2, 0.0, 5.0, 3);
    const PooledDescriptor d = graph_descriptor(one, fs, grid, PoolMode::Mean);
    for (std::size_t s = 1; s <= 2; ++s) {
        for (std::size_t j = 0; j < 4; ++j) {
            const double theta = grid.points[0][j];
            EmbeddingMatrix layout(1, 1, 4, 2);
            CHECK(d.values[layout.column(0, s, 0, j)] ==
                  doctest::Approx(std::cos(theta * 0.7)).epsilon(1e-14));
            CHECK(d.values[layout.column(0, s, 1, j)] ==
                  doctest::Approx(std::sin(theta * 0.7)).epsilon(1e-14));
        }
    }
}

TEST_CASE("graph_descriptor separates a triangle from a path") {
    const Graph tri =
        from_edge_list(std::vector<WeightedEdge>{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
    const Graph path = from_edge_list(std::vector<WeightedEdge>{{0, 1, 1.0}, {1, 2, 1.0}});
    const EvaluationGrid grid = make_grid(1, 8, 2, 0.0, 5.0, 5);

    FeatureSet tri_fs{{log_degree_feature(tri)}, {"degree"}};
    FeatureSet path_fs{{log_degree_feature(path)}, {"degree"}};
    const PooledDescriptor a = graph_descriptor(tri, tri_fs, grid, PoolMode::Mean);
    const PooledDescriptor b = graph_descriptor(path, path_fs, grid, PoolMode::Mean);
    CHECK(a.values == graph_descriptor(tri, tri_fs, grid, PoolMode::Mean).values);

    double max_gap = 0.0;
    for (std::size_t c = 0; c < a.values.size(); ++c) {
        max_gap = std::max(max_gap, std::abs(a.values[c] - b.values[c]));
    }
    CHECK(max_gap > 1e-6);
}

TEST_CASE("pooled descriptors are isomorphism invariant") {
    std::mt19937_64 gen(61);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 4 + rng::uniform_index(gen, 61);
        const Graph g = testutil::random_graph(gen, n, 2 * n, trial % 2 == 1);
        const std::vector<std::size_t> perm = testutil::random_permutation(gen, n);
        const Graph h = permute(g, perm);

        FeatureSet gf{{log_degree_feature(g), clustering_coefficient_feature(g)}, {"deg", "cc"}};
        FeatureSet hf{{log_degree_feature(h), clustering_coefficient_feature(h)}, {"deg", "cc"}};
        const EvaluationGrid grid = make_grid(2, 4, 2, 0.0, 5.0, 400 + trial);

        for (PoolMode mode : {PoolMode::Mean, PoolMode::Max, PoolMode::Min}) {
            const PooledDescriptor a = graph_descriptor(g, gf, grid, mode);
            const PooledDescriptor b = graph_descriptor(h, hf, grid, mode);
            for (std::size_t c = 0; c < a.values.size(); ++c) {
                REQUIRE(std::abs(a.values[c] - b.values[c]) <= 1e-12);
            }
        }
    }
}

TEST_CASE("pool is row-order invariant") {
    std::mt19937_64 gen(71);
    const Graph g = testutil::random_graph(gen, 32, 70, true);
    FeatureSet fs{{log_degree_feature(g)}, {"degree"}};
    const EmbeddingMatrix z = feather_embed(normalize(g), fs, make_grid(1, 6, 2, 0.0, 5.0, 1));

    // Reverse the rows by hand.
    EmbeddingMatrix rev = z;
    for (std::size_t u = 0; u < z.num_nodes(); ++u) {
        auto src = z.row(z.num_nodes() - 1 - u);
        std::copy(src.begin(), src.end(), rev.row(u).begin());
    }

    CHECK(pool(rev, PoolMode::Max).values == pool(z, PoolMode::Max).values);
    CHECK(pool(rev, PoolMode::Min).values == pool(z, PoolMode::Min).values);
    const PooledDescriptor a = pool(z, PoolMode::Mean);
    const PooledDescriptor b = pool(rev, PoolMode::Mean);
    for (std::size_t c = 0; c < a.values.size(); ++c) {
        CHECK(std::abs(a.values[c] - b.values[c]) <= 1e-12);
    }
}
