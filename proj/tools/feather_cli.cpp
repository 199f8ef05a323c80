// Command-line front door: embed, pool, train, predict, bench.
//
// Flags override values from --config <json>; the resolved settings are
// written to <out>.manifest.json so a run can be reproduced exactly.

#include "feather/charfunc.hpp"
#include "feather/errors.hpp"
#include "feather/graph.hpp"
#include "feather/io.hpp"
#include "feather/log.hpp"
#include "feather/models.hpp"
#include "feather/parallel.hpp"
#include "feather/pooling.hpp"
#include "feather/rng.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using nlohmann::json;

namespace feather::cli {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("bad JSON in " + path + ": " + e.what());
    }
}

/// Applies config-file values to options the user did not pass as flags and
/// rejects keys that bind to nothing.
class ConfigBinder {
public:
    ConfigBinder(CLI::App* cmd, json config) : cmd_(cmd), config_(std::move(config)) {}

    template <typename T>
    void bind(const std::string& key, T& target) {
        known_.push_back(key);
        if (!config_.contains(key)) return;
        if (cmd_->count("--" + key) > 0) return;  // flags win
        try {
            target = config_.at(key).get<T>();
        } catch (const json::exception&) {
            throw ConfigError("config key '" + key + "' has the wrong type");
        }
    }

    void finish() const {
        for (const auto& item : config_.items()) {
            if (std::find(known_.begin(), known_.end(), item.key()) == known_.end()) {
                throw ConfigError("unknown config key '" + item.key() + "'");
            }
        }
    }

private:
    CLI::App* cmd_;
    json config_;
    std::vector<std::string> known_;
};

void write_manifest(const std::string& out_path, const std::string& command, const json& settings) {
    if (out_path.empty()) return;
    json manifest;
    manifest["command"] = command;
    manifest["settings"] = settings;
    std::ofstream out(out_path + ".manifest.json");
    out << manifest.dump(2) << "\n";
}

struct FeatureChoice {
    std::string file;                  // feature CSV, or
    std::vector<std::string> builtin;  // names among log-degree, clustering
};

FeatureSet resolve_features(const Graph& g, const FeatureChoice& choice) {
    if (!choice.file.empty() && !choice.builtin.empty()) {
        throw ConfigError("pass either --features or --feature, not both");
    }
    if (!choice.file.empty()) return io::read_feature_csv(choice.file, g.num_nodes());
    if (choice.builtin.empty()) {
        throw ConfigError("no features given; use --features FILE or --feature NAME");
    }
    FeatureSet fs;
    for (const std::string& name : choice.builtin) {
        if (name == "log-degree") {
            fs.features.push_back(log_degree_feature(g));
            fs.names.push_back("log_degree");
        } else if (name == "clustering") {
            fs.features.push_back(clustering_coefficient_feature(g));
            fs.names.push_back("clustering");
        } else {
            throw ConfigError("unknown builtin feature '" + name +
                              "', expected log-degree or clustering");
        }
    }
    return fs;
}

EvaluationGrid resolve_grid(std::size_t k, std::size_t d, std::size_t r, double lo, double hi,
                            std::uint64_t seed, const double* theta_const) {
    if (theta_const != nullptr) return constant_grid(k, d, r, *theta_const);
    return make_grid(k, d, r, lo, hi, seed);
}

// ---------------------------------------------------------------------------
// embed
// ---------------------------------------------------------------------------

struct EmbedArgs {
    std::string graph, out, config;
    FeatureChoice features;
    std::size_t d = 16, r = 2;
    double theta_lo = 0.0, theta_hi = 5.0;
    double theta_const = 0.0;
    bool has_theta_const = false;
    bool binary = false;
    bool fresh_power = false;
    std::uint64_t seed = 42;
    int threads = 0;
};

int run_embed(CLI::App* cmd, EmbedArgs& args) {
    ConfigBinder binder(cmd, load_config(args.config));
    binder.bind("graph", args.graph);
    binder.bind("features", args.features.file);
    binder.bind("feature", args.features.builtin);
    binder.bind("out", args.out);
    binder.bind("d", args.d);
    binder.bind("r", args.r);
    binder.bind("theta-lo", args.theta_lo);
    binder.bind("theta-hi", args.theta_hi);
    binder.bind("seed", args.seed);
    binder.bind("threads", args.threads);
    binder.bind("binary", args.binary);
    binder.bind("fresh-power", args.fresh_power);
    binder.finish();
    if (args.graph.empty()) throw ConfigError("embed needs --graph");
    if (args.out.empty()) throw ConfigError("embed needs --out");

    const Graph g = io::read_graph(args.graph);
    const FeatureSet fs = resolve_features(g, args.features);
    const RowStochasticMatrix ahat = normalize(g);
    const double* theta_const = args.has_theta_const ? &args.theta_const : nullptr;
    const EvaluationGrid grid =
        resolve_grid(fs.count(), args.d, args.r, args.theta_lo, args.theta_hi, args.seed,
                     theta_const);

    const auto start = std::chrono::steady_clock::now();
    EmbeddingMatrix z;
    if (args.fresh_power) {
        // Per-scale grids drawn from consecutive seeds.
        std::vector<EvaluationGrid> per_scale;
        for (std::size_t s = 0; s < args.r; ++s) {
            per_scale.push_back(resolve_grid(fs.count(), args.d, args.r, args.theta_lo,
                                             args.theta_hi, args.seed + s, theta_const));
        }
        z = feather_embed_fresh(ahat, fs, per_scale, args.threads);
    } else {
        z = feather_embed(ahat, fs, grid, args.threads);
    }
    const double elapsed = seconds_since(start);

    if (args.binary) {
        io::write_embedding_binary(z, fs.names, args.out, args.out + ".json");
    } else {
        io::write_embedding_csv(z, fs.names, args.out);
    }

    json settings{{"graph", args.graph},
                  {"features", args.features.file},
                  {"feature", args.features.builtin},
                  {"out", args.out},
                  {"d", args.d},
                  {"r", args.r},
                  {"theta-lo", args.theta_lo},
                  {"theta-hi", args.theta_hi},
                  {"seed", args.seed},
                  {"threads", args.threads},
                  {"binary", args.binary},
                  {"fresh-power", args.fresh_power}};
    if (args.has_theta_const) settings["theta-const"] = args.theta_const;
    write_manifest(args.out, "embed", settings);

    std::printf("embedding %zu x %zu written to %s (%.3f s)\n", z.num_nodes(), z.width(),
                args.out.c_str(), elapsed);
    return 0;
}

// ---------------------------------------------------------------------------
// pool
// ---------------------------------------------------------------------------

struct PoolArgs {
    std::string manifest, graph_dir, out, config;
    FeatureChoice features;
    std::string mode = "mean";
    std::size_t d = 16, r = 2;
    double theta_lo = 0.0, theta_hi = 5.0;
    std::uint64_t seed = 42;
    int threads = 0;
};

std::vector<std::string> collect_graph_paths(const PoolArgs& args) {
    std::vector<std::string> paths;
    if (!args.manifest.empty()) {
        std::ifstream in(args.manifest);
        if (!in) throw ParseError("cannot open manifest " + args.manifest);
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            paths.push_back(line);
        }
    } else if (!args.graph_dir.empty()) {
        for (const auto& entry : std::filesystem::directory_iterator(args.graph_dir)) {
            if (entry.is_regular_file()) paths.push_back(entry.path().string());
        }
        std::sort(paths.begin(), paths.end());
    } else {
        throw ConfigError("pool needs --graphs MANIFEST or --graph-dir DIR");
    }
    if (paths.empty()) throw EmptyInput("no graphs to pool");
    return paths;
}

int run_pool(CLI::App* cmd, PoolArgs& args) {
    ConfigBinder binder(cmd, load_config(args.config));
    binder.bind("graphs", args.manifest);
    binder.bind("graph-dir", args.graph_dir);
    binder.bind("feature", args.features.builtin);
    binder.bind("out", args.out);
    binder.bind("pool", args.mode);
    binder.bind("d", args.d);
    binder.bind("r", args.r);
    binder.bind("theta-lo", args.theta_lo);
    binder.bind("theta-hi", args.theta_hi);
    binder.bind("seed", args.seed);
    binder.bind("threads", args.threads);
    binder.finish();
    if (args.out.empty()) throw ConfigError("pool needs --out");
    if (args.features.builtin.empty()) {
        throw ConfigError("pool needs --feature log-degree|clustering (repeatable)");
    }

    const PoolMode mode = parse_pool_mode(args.mode);
    const std::vector<std::string> paths = collect_graph_paths(args);
    const std::size_t k = args.features.builtin.size();
    const EvaluationGrid grid =
        make_grid(k, args.d, args.r, args.theta_lo, args.theta_hi, args.seed);

    std::vector<std::string> ids;
    std::vector<PooledDescriptor> rows;
    std::vector<std::string> labels;
    bool any_failed = false;
    for (const std::string& path : paths) {
        try {
            const Graph g = io::read_graph(path);
            const FeatureSet fs = resolve_features(g, args.features);
            rows.push_back(graph_descriptor(g, fs, grid, mode, args.threads));
            ids.push_back(path);
            if (labels.empty()) {
                labels = EmbeddingMatrix(g.num_nodes(), k, args.d, args.r).column_labels(fs.names);
            }
        } catch (const Error& e) {
            any_failed = true;
            log::error("pool: skipping " + path + ": " + e.what());
        }
    }
    if (rows.empty()) throw EmptyInput("every graph failed to pool");
    io::write_descriptor_csv(ids, rows, labels, args.out);

    write_manifest(args.out, "pool",
                   json{{"graphs", args.manifest},
                        {"graph-dir", args.graph_dir},
                        {"feature", args.features.builtin},
                        {"out", args.out},
                        {"pool", args.mode},
                        {"d", args.d},
                        {"r", args.r},
                        {"theta-lo", args.theta_lo},
                        {"theta-hi", args.theta_hi},
                        {"seed", args.seed},
                        {"threads", args.threads}});
    std::printf("pooled %zu of %zu graphs into %s\n", rows.size(), paths.size(), args.out.c_str());
    return any_failed ? 2 : 0;
}

// ---------------------------------------------------------------------------
// train / predict
// ---------------------------------------------------------------------------

struct TrainArgs {
    std::string graph, labels, out, loss_log, config;
    FeatureChoice features;
    std::string model = "softmax";
    std::size_t classes = 0;
    TrainConfig train;
    std::uint64_t seed = 42;
};

int run_train(CLI::App* cmd, TrainArgs& args) {
    ConfigBinder binder(cmd, load_config(args.config));
    binder.bind("graph", args.graph);
    binder.bind("features", args.features.file);
    binder.bind("feature", args.features.builtin);
    binder.bind("labels", args.labels);
    binder.bind("out", args.out);
    binder.bind("loss-log", args.loss_log);
    binder.bind("model", args.model);
    binder.bind("classes", args.classes);
    binder.bind("lr", args.train.learning_rate);
    binder.bind("epochs", args.train.epochs);
    binder.bind("hidden", args.train.hidden);
    binder.bind("init-scale", args.train.init_scale);
    binder.bind("d", args.train.d);
    binder.bind("r", args.train.r);
    binder.bind("theta-lo", args.train.theta_lo);
    binder.bind("theta-hi", args.train.theta_hi);
    binder.bind("seed", args.seed);
    binder.finish();
    if (args.graph.empty()) throw ConfigError("train needs --graph");
    if (args.labels.empty()) throw ConfigError("train needs --labels");
    if (args.out.empty()) throw ConfigError("train needs --out");
    args.train.seed = args.seed;

    const Graph g = io::read_graph(args.graph);
    const FeatureSet fs = resolve_features(g, args.features);
    const LabelData labels = io::read_label_csv(args.labels, g.num_nodes(), args.classes);

    const TrainResult result = train(g, fs, labels, parse_model_kind(args.model), args.train);
    io::save_checkpoint(result.params, args.out);
    const std::string loss_path = args.loss_log.empty() ? args.out + ".loss.csv" : args.loss_log;
    io::write_loss_log(result.epoch_loss, loss_path);

    write_manifest(args.out, "train",
                   json{{"graph", args.graph},
                        {"features", args.features.file},
                        {"feature", args.features.builtin},
                        {"labels", args.labels},
                        {"out", args.out},
                        {"loss-log", loss_path},
                        {"model", args.model},
                        {"classes", args.classes},
                        {"lr", args.train.learning_rate},
                        {"epochs", args.train.epochs},
                        {"hidden", args.train.hidden},
                        {"init-scale", args.train.init_scale},
                        {"d", args.train.d},
                        {"r", args.train.r},
                        {"theta-lo", args.train.theta_lo},
                        {"theta-hi", args.train.theta_hi},
                        {"seed", args.seed}});
    std::printf("trained %s model for %zu epochs, loss %.6f -> %.6f, checkpoint %s\n",
                args.model.c_str(), args.train.epochs, result.epoch_loss.front(),
                result.epoch_loss.back(), args.out.c_str());
    return 0;
}

struct PredictArgs {
    std::string checkpoint, graph, out, config;
    FeatureChoice features;
    int threads = 0;
};

int run_predict(CLI::App* cmd, PredictArgs& args) {
    ConfigBinder binder(cmd, load_config(args.config));
    binder.bind("checkpoint", args.checkpoint);
    binder.bind("graph", args.graph);
    binder.bind("features", args.features.file);
    binder.bind("feature", args.features.builtin);
    binder.bind("out", args.out);
    binder.bind("threads", args.threads);
    binder.finish();
    if (args.checkpoint.empty()) throw ConfigError("predict needs --checkpoint");
    if (args.graph.empty()) throw ConfigError("predict needs --graph");
    if (args.out.empty()) throw ConfigError("predict needs --out");

    const ModelParams params = io::load_checkpoint(args.checkpoint);
    const Graph g = io::read_graph(args.graph);
    const FeatureSet fs = resolve_features(g, args.features);
    if (fs.count() != params.feature_count()) {
        throw IncompatibleCheckpoint(
            "checkpoint expects " + std::to_string(params.feature_count()) +
            " features, input has " + std::to_string(fs.count()));
    }

    const Prediction pred = predict(params, g, fs, args.threads);
    io::write_prediction_csv(pred, args.out);

    write_manifest(args.out, "predict",
                   json{{"checkpoint", args.checkpoint},
                        {"graph", args.graph},
                        {"features", args.features.file},
                        {"feature", args.features.builtin},
                        {"out", args.out},
                        {"threads", args.threads}});
    std::printf("predicted %zu nodes across %zu classes into %s\n", pred.probs.rows(),
                pred.probs.cols(), args.out.c_str());
    return 0;
}

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchArgs {
    std::string knob = "nodes";
    std::vector<std::size_t> levels;
    std::size_t reps = 10;
    std::string out, config;
    std::size_t base_nodes = 1 << 12;
    std::size_t base_epn = 1 << 4;
    std::size_t base_k = 1;
    std::size_t base_d = 16;
    std::size_t base_r = 2;
    std::uint64_t seed = 42;
    int threads = 1;
};

double time_embed(const RowStochasticMatrix& ahat, const FeatureSet& fs,
                  const EvaluationGrid& grid, int threads) {
    const auto start = std::chrono::steady_clock::now();
    const EmbeddingMatrix z = feather_embed(ahat, fs, grid, threads);
    const double elapsed = seconds_since(start);
    if (z.values().empty()) throw ShapeMismatch("bench produced an empty embedding");
    return elapsed;
}

int run_bench(CLI::App* cmd, BenchArgs& args) {
    ConfigBinder binder(cmd, load_config(args.config));
    binder.bind("knob", args.knob);
    binder.bind("levels", args.levels);
    binder.bind("reps", args.reps);
    binder.bind("out", args.out);
    binder.bind("base-nodes", args.base_nodes);
    binder.bind("base-epn", args.base_epn);
    binder.bind("base-k", args.base_k);
    binder.bind("base-d", args.base_d);
    binder.bind("base-r", args.base_r);
    binder.bind("seed", args.seed);
    binder.bind("threads", args.threads);
    binder.finish();
    if (args.out.empty()) throw ConfigError("bench needs --out");
    if (args.levels.empty()) throw ConfigError("bench needs --levels");
    if (args.reps < 1) throw ConfigError("bench needs --reps >= 1");

    const bool valid = args.knob == "nodes" || args.knob == "edges" || args.knob == "features" ||
                       args.knob == "points" || args.knob == "scale";
    if (!valid) {
        throw ConfigError("unknown knob '" + args.knob +
                          "', expected nodes|edges|features|points|scale");
    }

    std::ofstream out(args.out);
    if (!out) throw ParseError("cannot write " + args.out);
    out << "knob,level,repetition,seconds\n";

    for (std::size_t level : args.levels) {
        std::size_t nodes = args.base_nodes, epn = args.base_epn;
        std::size_t k = args.base_k, d = args.base_d, r = args.base_r;
        if (args.knob == "nodes") nodes = level;
        if (args.knob == "edges") epn = level;
        if (args.knob == "features") k = level;
        if (args.knob == "points") d = level;
        if (args.knob == "scale") r = level;

        // Graph and feature construction stay outside the timed region.
        const Graph g = erdos_renyi(nodes, epn, args.seed);
        const RowStochasticMatrix ahat = normalize(g);
        FeatureSet fs;
        fs.features.push_back(log_degree_feature(g));
        fs.names.push_back("log_degree");
        std::mt19937_64 gen(args.seed + 1);
        for (std::size_t i = 1; i < k; ++i) {
            std::vector<double> x(nodes);
            for (double& v : x) v = rng::uniform(gen, 0.0, 5.0);
            fs.features.push_back(std::move(x));
            fs.names.push_back("synth" + std::to_string(i));
        }
        const EvaluationGrid grid = make_grid(k, d, r, 0.0, 5.0, args.seed);

        time_embed(ahat, fs, grid, args.threads);  // warm-up
        std::vector<double> times;
        for (std::size_t rep = 0; rep < args.reps; ++rep) {
            const double t = time_embed(ahat, fs, grid, args.threads);
            times.push_back(t);
            out << args.knob << "," << level << "," << rep << "," << io::format_double(t) << "\n";
        }
        std::sort(times.begin(), times.end());
        std::printf("bench %s=%zu: median %.6f s over %zu reps\n", args.knob.c_str(), level,
                    times[times.size() / 2], args.reps);
    }

    write_manifest(args.out, "bench",
                   json{{"knob", args.knob},
                        {"levels", args.levels},
                        {"reps", args.reps},
                        {"out", args.out},
                        {"base-nodes", args.base_nodes},
                        {"base-epn", args.base_epn},
                        {"base-k", args.base_k},
                        {"base-d", args.base_d},
                        {"base-r", args.base_r},
                        {"seed", args.seed},
                        {"threads", args.threads}});
    return 0;
}

}  // namespace

int main_impl(int argc, char** argv) {
    CLI::App app{"r-scale random-walk characteristic function embeddings"};
    app.require_subcommand(1);

    EmbedArgs embed_args;
    CLI::App* embed = app.add_subcommand("embed", "Compute the node embedding of one graph");
    embed->add_option("--graph", embed_args.graph, "edge-list file");
    embed->add_option("--features", embed_args.features.file, "feature CSV");
    embed->add_option("--feature", embed_args.features.builtin,
                      "builtin feature: log-degree or clustering (repeatable)");
    embed->add_option("--out", embed_args.out, "output file");
    embed->add_option("--config", embed_args.config, "JSON config file");
    embed->add_option("--d", embed_args.d, "evaluation points per feature");
    embed->add_option("--r", embed_args.r, "maximum walk scale");
    embed->add_option("--theta-lo", embed_args.theta_lo, "grid domain lower bound");
    embed->add_option("--theta-hi", embed_args.theta_hi, "grid domain upper bound");
    embed->add_option("--theta-const", embed_args.theta_const, "constant evaluation point");
    embed->add_option("--seed", embed_args.seed, "RNG seed");
    embed->add_option("--threads", embed_args.threads, "worker cap, 0 = all cores");
    embed->add_flag("--binary", embed_args.binary, "raw float64 output with JSON sidecar");
    embed->add_flag("--fresh-power", embed_args.fresh_power,
                    "recompute each scale from scratch with its own grid");

    PoolArgs pool_args;
    CLI::App* pool = app.add_subcommand("pool", "Pool descriptors for a batch of graphs");
    pool->add_option("--graphs", pool_args.manifest, "text file listing edge-list paths");
    pool->add_option("--graph-dir", pool_args.graph_dir, "directory of edge-list files");
    pool->add_option("--feature", pool_args.features.builtin,
                     "builtin feature: log-degree or clustering (repeatable)");
    pool->add_option("--out", pool_args.out, "output CSV");
    pool->add_option("--config", pool_args.config, "JSON config file");
    pool->add_option("--pool", pool_args.mode, "mean, max, or min");
    pool->add_option("--d", pool_args.d, "evaluation points per feature");
    pool->add_option("--r", pool_args.r, "maximum walk scale");
    pool->add_option("--theta-lo", pool_args.theta_lo, "grid domain lower bound");
    pool->add_option("--theta-hi", pool_args.theta_hi, "grid domain upper bound");
    pool->add_option("--seed", pool_args.seed, "RNG seed");
    pool->add_option("--threads", pool_args.threads, "worker cap, 0 = all cores");

    TrainArgs train_args;
    CLI::App* train = app.add_subcommand("train", "Train a classifier on labeled nodes");
    train->add_option("--graph", train_args.graph, "edge-list file");
    train->add_option("--features", train_args.features.file, "feature CSV");
    train->add_option("--feature", train_args.features.builtin,
                      "builtin feature: log-degree or clustering (repeatable)");
    train->add_option("--labels", train_args.labels, "label CSV (node,class)");
    train->add_option("--out", train_args.out, "checkpoint file");
    train->add_option("--loss-log", train_args.loss_log, "per-epoch loss CSV");
    train->add_option("--config", train_args.config, "JSON config file");
    train->add_option("--model", train_args.model, "softmax or neural");
    train->add_option("--classes", train_args.classes, "class count, 0 = infer");
    train->add_option("--lr", train_args.train.learning_rate, "Adam learning rate");
    train->add_option("--epochs", train_args.train.epochs, "training epochs");
    train->add_option("--hidden", train_args.train.hidden, "hidden width (neural)");
    train->add_option("--init-scale", train_args.train.init_scale, "weight init multiplier");
    train->add_option("--d", train_args.train.d, "evaluation points per feature");
    train->add_option("--r", train_args.train.r, "maximum walk scale");
    train->add_option("--theta-lo", train_args.train.theta_lo, "theta init lower bound");
    train->add_option("--theta-hi", train_args.train.theta_hi, "theta init upper bound");
    train->add_option("--seed", train_args.seed, "RNG seed");

    PredictArgs predict_args;
    CLI::App* predict = app.add_subcommand("predict", "Apply a checkpoint to a graph");
    predict->add_option("--checkpoint", predict_args.checkpoint, "checkpoint file");
    predict->add_option("--graph", predict_args.graph, "edge-list file");
    predict->add_option("--features", predict_args.features.file, "feature CSV");
    predict->add_option("--feature", predict_args.features.builtin,
                        "builtin feature: log-degree or clustering (repeatable)");
    predict->add_option("--out", predict_args.out, "prediction CSV");
    predict->add_option("--config", predict_args.config, "JSON config file");
    predict->add_option("--threads", predict_args.threads, "worker cap, 0 = all cores");

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "Time the embedding kernel over a sweep");
    bench->add_option("--knob", bench_args.knob, "nodes|edges|features|points|scale");
    bench->add_option("--levels", bench_args.levels, "sweep levels")->delimiter(',');
    bench->add_option("--reps", bench_args.reps, "repetitions per level");
    bench->add_option("--out", bench_args.out, "timing CSV");
    bench->add_option("--config", bench_args.config, "JSON config file");
    bench->add_option("--base-nodes", bench_args.base_nodes, "base graph node count");
    bench->add_option("--base-epn", bench_args.base_epn, "base edges per node");
    bench->add_option("--base-k", bench_args.base_k, "base feature count");
    bench->add_option("--base-d", bench_args.base_d, "base evaluation point count");
    bench->add_option("--base-r", bench_args.base_r, "base scale");
    bench->add_option("--seed", bench_args.seed, "RNG seed");
    bench->add_option("--threads", bench_args.threads, "worker cap for the timed kernel");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        embed_args.has_theta_const = embed->count("--theta-const") > 0;
        if (embed->parsed()) return run_embed(embed, embed_args);
        if (pool->parsed()) return run_pool(pool, pool_args);
        if (train->parsed()) return run_train(train, train_args);
        if (predict->parsed()) return run_predict(predict, predict_args);
        if (bench->parsed()) return run_bench(bench, bench_args);
    } catch (const Error& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return static_cast<int>(e.category());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 3;
    }
    return 1;
}

}  // namespace feather::cli

int main(int argc, char** argv) { return feather::cli::main_impl(argc, argv); }
