#include "feather/io.hpp"

#include "feather/errors.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <fstream>
#include <random>

using namespace feather;

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("edge list parsing: comments, weights, errors with line numbers") {
    testutil::TempDir dir("edges");
    write_text(dir.file("g.txt"),
               "# a comment\n"
               "0 1\n"
               "1 2 0.5\n"
               "\n"
               "2 3 2.25\n");
    const Graph g = io::read_graph(dir.file("g.txt"));
    CHECK(g.num_nodes() == 4);
    CHECK(g.num_edges() == 3);
    CHECK(g.row_weights(1)[1] == 0.5);

    write_text(dir.file("bad.txt"), "0 1\n0 x\n");
    try {
        io::read_edge_list(dir.file("bad.txt"));
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find(":2:") != std::string::npos);
    }

    write_text(dir.file("neg.txt"), "0 -1\n");
    CHECK_THROWS_AS(io::read_edge_list(dir.file("neg.txt")), ParseError);
    write_text(dir.file("empty.txt"), "# nothing\n");
    CHECK_THROWS_AS(io::read_graph(dir.file("empty.txt")), EmptyInput);
}

TEST_CASE("edge list writer round-trips through the reader") {
    std::mt19937_64 gen(19);
    const Graph g = testutil::random_graph(gen, 25, 50, true);
    testutil::TempDir dir("roundtrip");
    io::write_edge_list(g, dir.file("g.txt"));
    CHECK(io::read_graph(dir.file("g.txt")) == g);
}

TEST_CASE("feature CSV: any row order, full coverage required") {
    testutil::TempDir dir("features");
    write_text(dir.file("f.csv"),
               "node,age,score\n"
               "2,30,0.5\n"
               "0,10,-1\n"
               "1,20,2.5e-1\n");
    const FeatureSet fs = io::read_feature_csv(dir.file("f.csv"), 3);
    CHECK(fs.names == std::vector<std::string>{"age", "score"});
    CHECK(fs.features[0] == std::vector<double>{10.0, 20.0, 30.0});
    CHECK(fs.features[1][1] == 0.25);

    write_text(dir.file("missing.csv"), "node,a\n0,1\n");
    CHECK_THROWS_AS(io::read_feature_csv(dir.file("missing.csv"), 2), ParseError);
    write_text(dir.file("dup.csv"), "node,a\n0,1\n0,2\n");
    CHECK_THROWS_AS(io::read_feature_csv(dir.file("dup.csv"), 2), ParseError);

    std::mt19937_64 gen(23);
    FeatureSet out{{testutil::random_feature(gen, 9, -2.0, 2.0),
                    testutil::random_feature(gen, 9, 0.0, 1.0)},
                   {"x", "y"}};
    io::write_feature_csv(out, dir.file("round.csv"));
    const FeatureSet in = io::read_feature_csv(dir.file("round.csv"), 9);
    CHECK(in.features == out.features);
    CHECK(in.names == out.names);
}

TEST_CASE("label CSV supports partial labeling") {
    testutil::TempDir dir("labels");
    write_text(dir.file("l.csv"), "node,class\n0,1\n3,0\n");
    const LabelData labels = io::read_label_csv(dir.file("l.csv"), 5);
    CHECK(labels.num_classes() == 2);
    CHECK(labels.train_mask == std::vector<std::size_t>{0, 3});
    CHECK(labels.y(0, 1) == 1.0);
    CHECK(labels.y(1, 0) == 0.0);

    write_text(dir.file("badhdr.csv"), "id,class\n0,1\n");
    CHECK_THROWS_AS(io::read_label_csv(dir.file("badhdr.csv"), 5), ParseError);
}

TEST_CASE("embedding CSV carries the layout in its header") {
    std::mt19937_64 gen(29);
    const Graph g = testutil::random_graph(gen, 6, 8, false);
    FeatureSet fs{{log_degree_feature(g)}, {"degree"}};
    const EmbeddingMatrix z = feather_embed(normalize(g), fs, make_grid(1, 2, 2, 0.0, 5.0, 1));

    testutil::TempDir dir("emb");
    io::write_embedding_csv(z, fs.names, dir.file("z.csv"));
    const std::string text = read_text(dir.file("z.csv"));
    CHECK(text.find("node,degree_s1_re_0,degree_s1_re_1,degree_s1_im_0,degree_s1_im_1,"
                    "degree_s2_re_0") == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 7);  // header + 6 nodes
}

TEST_CASE("embedding binary payload matches the matrix") {
    std::mt19937_64 gen(37);
    const Graph g = testutil::random_graph(gen, 5, 6, true);
    FeatureSet fs{{log_degree_feature(g)}, {"degree"}};
    const EmbeddingMatrix z = feather_embed(normalize(g), fs, make_grid(1, 3, 1, 0.0, 5.0, 2));

    testutil::TempDir dir("bin");
    io::write_embedding_binary(z, fs.names, dir.file("z.bin"), dir.file("z.json"));

    std::ifstream in(dir.file("z.bin"), std::ios::binary);
    std::vector<double> payload(z.values().size());
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(payload.size() * sizeof(double)));
    CHECK(in.good());
    CHECK(payload == z.values());

    const std::string sidecar = read_text(dir.file("z.json"));
    CHECK(sidecar.find("\"num_nodes\": 5") != std::string::npos);
    CHECK(sidecar.find("degree_s1_im_2") != std::string::npos);
}

TEST_CASE("checkpoints round-trip exactly for both model kinds") {
    std::mt19937_64 gen(43);
    testutil::TempDir dir("ckpt");

    const Graph g = testutil::random_graph(gen, 12, 20, false);
    FeatureSet fs{{log_degree_feature(g)}, {"degree"}};
    std::vector<int> ids(12);
    for (std::size_t u = 0; u < 12; ++u) ids[u] = u % 2;
    const LabelData labels = LabelData::from_class_ids(ids);

    TrainConfig cfg;
    cfg.epochs = 5;
    cfg.d = 3;
    cfg.r = 2;
    cfg.seed = 11;
    for (ModelKind kind : {ModelKind::Softmax, ModelKind::Neural}) {
        const TrainResult result = train(g, fs, labels, kind, cfg);
        io::save_checkpoint(result.params, dir.file("m.ckpt"));
        const ModelParams loaded = io::load_checkpoint(dir.file("m.ckpt"));
        CHECK(loaded.kind == result.params.kind);
        CHECK(loaded.theta.points == result.params.theta.points);
        CHECK(loaded.beta == result.params.beta);
        CHECK(loaded.beta0 == result.params.beta0);
        CHECK(loaded.beta1 == result.params.beta1);
        CHECK(loaded.hidden == result.params.hidden);
    }

    write_text(dir.file("junk.ckpt"), "not a checkpoint");
    CHECK_THROWS_AS(io::load_checkpoint(dir.file("junk.ckpt")), IncompatibleCheckpoint);
}

TEST_CASE("loss log and prediction files") {
    testutil::TempDir dir("outs");
    io::write_loss_log(std::vector<double>{2.0, 1.5, 1.25}, dir.file("loss.csv"));
    CHECK(read_text(dir.file("loss.csv")) == "epoch,loss\n1,2\n2,1.5\n3,1.25\n");

    Prediction pred;
    pred.probs = Matrix(2, 2);
    pred.probs(0, 0) = 0.75;
    pred.probs(0, 1) = 0.25;
    pred.probs(1, 0) = 0.5;
    pred.probs(1, 1) = 0.5;
    pred.labels = {0, 0};
    io::write_prediction_csv(pred, dir.file("pred.csv"));
    CHECK(read_text(dir.file("pred.csv")) ==
          "node,p0,p1,label\n0,0.75,0.25,0\n1,0.5,0.5,0\n");
}
