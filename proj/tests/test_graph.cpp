#include "feather/graph.hpp"

#include "feather/errors.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace feather;

namespace {

std::vector<double> row_of(const RowStochasticMatrix& m, std::size_t u) {
    std::vector<double> dense(m.num_nodes(), 0.0);
    auto cols = m.neighbors(u);
    auto vals = m.row_values(u);
    for (std::size_t e = 0; e < cols.size(); ++e) dense[cols[e]] = vals[e];
    return dense;
}

}  // namespace

TEST_CASE("from_edge_list builds a canonical symmetric graph") {
    const Graph g = from_edge_list(std::vector<WeightedEdge>{{0, 1, 1.0}}, 2);
    CHECK(g.num_nodes() == 2);
    CHECK(g.num_entries() == 2);
    CHECK(g.neighbors(0)[0] == 1);
    CHECK(g.neighbors(1)[0] == 0);
    CHECK(g.row_weights(0)[0] == 1.0);
    CHECK(g.row_weights(1)[0] == 1.0);
}

TEST_CASE("symmetric restatements collapse to one edge") {
    const Graph once = from_edge_list(std::vector<WeightedEdge>{{0, 1, 1.0}});
    const Graph both = from_edge_list(std::vector<WeightedEdge>{{0, 1, 1.0}, {1, 0, 1.0}});
    CHECK(once == both);
}

TEST_CASE("directed duplicates sum their weights") {
    const Graph g = from_edge_list(std::vector<WeightedEdge>{{0, 1, 1.0}, {0, 1, 2.5}});
    CHECK(g.row_weights(0)[0] == doctest::Approx(3.5));
    CHECK(g.row_weights(1)[0] == doctest::Approx(3.5));
}

TEST_CASE("degree sums match hand computation") {
    const Graph g = from_edge_list(std::vector<WeightedEdge>{{0, 1, 2.0}, {1, 2, 0.5}}, 4);
    const std::vector<double> degrees = g.weighted_degrees();
    CHECK(degrees == std::vector<double>{2.0, 2.5, 0.5, 0.0});
}

TEST_CASE("ingestion validation") {
    CHECK_THROWS_AS(from_edge_list(std::vector<WeightedEdge>{{0, 1, -1.0}}), InvalidWeight);
    CHECK_THROWS_AS(from_edge_list(std::vector<WeightedEdge>{{0, 5, 1.0}}, 3), IndexOutOfRange);
    CHECK_THROWS_AS(
        from_edge_list(std::vector<WeightedEdge>{{0, 1, 1.0}, {1, 0, 2.0}}, std::nullopt, true),
        InvalidWeight);
    // Non-strict ingestion keeps the larger direction.
    const Graph g = from_edge_list(std::vector<WeightedEdge>{{0, 1, 1.0}, {1, 0, 2.0}});
    CHECK(g.row_weights(0)[0] == 2.0);
}

TEST_CASE("edge list export round-trips") {
    std::mt19937_64 gen(7);
    const Graph g = testutil::random_graph(gen, 23, 40, true);
    const Graph again = from_edge_list(to_edge_list(g), g.num_nodes());
    CHECK(g == again);
}

TEST_CASE("normalize: single neighbors, triangles, isolated nodes") {
    const Graph path = from_edge_list(std::vector<WeightedEdge>{{0, 1, 1.0}});
    const RowStochasticMatrix mpath = normalize(path);
    CHECK(row_of(mpath, 0) == std::vector<double>{0.0, 1.0});
    CHECK(row_of(mpath, 1) == std::vector<double>{1.0, 0.0});

    const Graph triangle =
        from_edge_list(std::vector<WeightedEdge>{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
    const RowStochasticMatrix mtri = normalize(triangle);
    for (std::size_t u = 0; u < 3; ++u) {
        for (double v : mtri.row_values(u)) CHECK(v == 0.5);
    }

    const Graph lonely = from_edge_list(std::vector<WeightedEdge>{{0, 1, 1.0}}, 4);
    const RowStochasticMatrix mlone = normalize(lonely);
    CHECK(mlone.neighbors(3).size() == 1);
    CHECK(mlone.neighbors(3)[0] == 3);
    CHECK(mlone.row_values(3)[0] == 1.0);
}

TEST_CASE("normalize: rows sum to 1 for random weighted graphs") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + rng::uniform_index(gen, 60);
        const Graph g = testutil::random_graph(gen, n, 2 * n, true);
        const RowStochasticMatrix m = normalize(g);
        for (std::size_t u = 0; u < n; ++u) {
            double sum = 0.0;
            for (double v : m.row_values(u)) {
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
                sum += v;
            }
            CHECK(std::abs(sum - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("normalize commutes with permutation entrywise") {
    std::mt19937_64 gen(13);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 3 + rng::uniform_index(gen, 40);
        const Graph g = testutil::random_graph(gen, n, n, true);
        const std::vector<std::size_t> perm = testutil::random_permutation(gen, n);
        const RowStochasticMatrix direct = normalize(permute(g, perm));
        const RowStochasticMatrix original = normalize(g);
        for (std::size_t u = 0; u < n; ++u) {
            const std::vector<double> got = row_of(direct, perm[u]);
            const std::vector<double> want = row_of(original, u);
            for (std::size_t w = 0; w < n; ++w) {
                CHECK(std::abs(got[perm[w]] - want[w]) <= 1e-15);
            }
        }
    }
}

TEST_CASE("log degree feature") {
    const Graph g =
        from_edge_list(std::vector<WeightedEdge>{{0, 1, 1.0}, {1, 2, 1.5}}, 4);
    const std::vector<double> f = log_degree_feature(g);
    CHECK(f[3] == 0.0);
    CHECK(f[0] == doctest::Approx(0.6931).epsilon(1e-3));
    CHECK(f[1] == doctest::Approx(1.2528).epsilon(1e-3));     // weighted degree 2.5
    CHECK(f[1] == doctest::Approx(std::log(3.5)).epsilon(1e-14));
}

TEST_CASE("clustering coefficient: triangle, path, near-clique") {
    const Graph triangle =
        from_edge_list(std::vector<WeightedEdge>{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
    for (double v : clustering_coefficient_feature(triangle)) CHECK(v == 1.0);

    const Graph path = from_edge_list(std::vector<WeightedEdge>{{0, 1, 1.0}, {1, 2, 1.0}});
    CHECK(clustering_coefficient_feature(path)[1] == 0.0);

    // 4-clique minus the (0, 1) edge.
    const Graph near_clique = from_edge_list(std::vector<WeightedEdge>{
        {0, 2, 1.0}, {0, 3, 1.0}, {1, 2, 1.0}, {1, 3, 1.0}, {2, 3, 1.0}});
    const std::vector<double> cc = clustering_coefficient_feature(near_clique);
    CHECK(cc[0] == 1.0);  // incident to the missing edge
    CHECK(cc[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("clustering coefficient stays in [0, 1] and ignores self-loops") {
    std::mt19937_64 gen(17);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 3 + rng::uniform_index(gen, 40);
        Graph g = testutil::random_graph(gen, n, 3 * n, false);
        for (double v : clustering_coefficient_feature(g)) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }
    const Graph loopy =
        from_edge_list(std::vector<WeightedEdge>{{0, 0, 5.0}, {0, 1, 1.0}, {1, 2, 1.0}});
    CHECK(clustering_coefficient_feature(loopy)[0] == 0.0);
}

TEST_CASE("erdos_renyi: size, determinism, density guard") {
    const Graph g = erdos_renyi(1 << 8, 4, 99);
    CHECK(g.num_nodes() == 1 << 8);
    CHECK(g.num_edges() == (1 << 8) * 4);

    const Graph h = erdos_renyi(1 << 8, 4, 99);
    CHECK(g == h);
    const Graph other = erdos_renyi(1 << 8, 4, 100);
    CHECK(g != other);

    CHECK_THROWS_AS(erdos_renyi(4, 3, 1), TooDense);  // 12 > 6 possible pairs
    CHECK_THROWS_AS(erdos_renyi(1, 1, 1), InvalidDomain);
}

TEST_CASE("erdos_renyi dense regime still yields exact edge counts") {
    const Graph g = erdos_renyi(32, 12, 5);  // 384 of 496 possible pairs
    CHECK(g.num_edges() == 384);
    CHECK(g == erdos_renyi(32, 12, 5));
}

TEST_CASE("permute: identity, reversal, inverse round-trip") {
    const Graph path =
        from_edge_list(std::vector<WeightedEdge>{{0, 1, 1.0}, {1, 2, 1.0}});

    const std::vector<std::size_t> identity{0, 1, 2};
    CHECK(permute(path, identity) == path);

    const std::vector<std::size_t> reversal{2, 1, 0};
    CHECK(permute(path, reversal) == path);  // symmetric path maps onto itself

    std::mt19937_64 gen(23);
    const Graph g = testutil::random_graph(gen, 31, 50, true);
    const std::vector<std::size_t> perm = testutil::random_permutation(gen, 31);
    std::vector<std::size_t> inverse(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inverse[perm[i]] = i;
    CHECK(permute(permute(g, perm), inverse) == g);

    CHECK_THROWS_AS(permute(path, std::vector<std::size_t>{0, 0, 1}), InvalidPermutation);
    CHECK_THROWS_AS(permute(path, std::vector<std::size_t>{0, 1}), InvalidPermutation);
}
