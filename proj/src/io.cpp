#include "feather/io.hpp"

#include "feather/errors.hpp"

#include <json.hpp>

#include <bit>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

static_assert(std::endian::native == std::endian::little,
              "file formats assume a little-endian host");

namespace feather::io {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::filesystem::path& path, std::size_t line,
                             const std::string& message) {
    throw ParseError(path.string() + ":" + std::to_string(line) + ": " + message);
}

std::ifstream open_input(const std::filesystem::path& path, bool binary = false) {
    std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
    if (!in) throw ParseError("cannot open " + path.string());
    return in;
}

std::ofstream open_output(const std::filesystem::path& path, bool binary = false) {
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw ParseError("cannot write " + path.string());
    return out;
}

bool parse_index(const std::string& token, std::size_t& out) {
    if (token.empty() || token[0] == '-') return false;
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(token.c_str(), &end, 10);
    if (errno != 0 || end != token.c_str() + token.size()) return false;
    out = static_cast<std::size_t>(v);
    return true;
}

bool parse_real(const std::string& token, double& out) {
    if (token.empty()) return false;
    errno = 0;
    char* end = nullptr;
    out = std::strtod(token.c_str(), &end);
    return errno == 0 && end == token.c_str() + token.size();
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

void write_doubles(std::ofstream& out, std::span<const double> values) {
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(double)));
}

void read_doubles(std::ifstream& in, std::span<double> values, const std::filesystem::path& path) {
    in.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
    if (!in) throw ParseError("truncated tensor payload in " + path.string());
}

constexpr char kCheckpointMagic[8] = {'F', 'T', 'H', 'R', 'C', 'K', 'P', '1'};

json checkpoint_header(const ModelParams& params) {
    json header;
    header["format"] = "feather-checkpoint";
    header["version"] = 1;
    header["kind"] = model_kind_name(params.kind);
    header["k"] = params.feature_count();
    header["d"] = params.point_count();
    header["r"] = params.scale_count();
    header["classes"] = params.num_classes();
    header["hidden"] = params.hidden;
    header["layout"] = "feature,scale,re-im,point";
    return header;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<WeightedEdge> read_edge_list(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    std::vector<WeightedEdge> edges;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        std::istringstream ss(line);
        std::string tok_u, tok_w, tok_weight, extra;
        if (!(ss >> tok_u)) continue;  // blank line
        if (tok_u[0] == '#') continue;
        if (!(ss >> tok_w)) parse_fail(path, lineno, "expected `u w [weight]`");
        WeightedEdge e;
        if (!parse_index(tok_u, e.source)) parse_fail(path, lineno, "bad node index '" + tok_u + "'");
        if (!parse_index(tok_w, e.target)) parse_fail(path, lineno, "bad node index '" + tok_w + "'");
        if (ss >> tok_weight) {
            if (!parse_real(tok_weight, e.weight)) {
                parse_fail(path, lineno, "bad weight '" + tok_weight + "'");
            }
        }
        if (ss >> extra) parse_fail(path, lineno, "unexpected trailing token '" + extra + "'");
        edges.push_back(e);
    }
    return edges;
}

Graph read_graph(const std::filesystem::path& path, std::optional<std::size_t> num_nodes,
                 bool strict) {
    const std::vector<WeightedEdge> edges = read_edge_list(path);
    if (edges.empty() && !num_nodes) throw EmptyInput("no edges in " + path.string());
    return from_edge_list(edges, num_nodes, strict);
}

void write_edge_list(const Graph& g, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    out << "# nodes " << g.num_nodes() << "\n";
    for (const WeightedEdge& e : to_edge_list(g)) {
        out << e.source << " " << e.target << " " << format_double(e.weight) << "\n";
    }
}

FeatureSet read_feature_csv(const std::filesystem::path& path, std::size_t num_nodes) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty feature file " + path.string());
    const std::vector<std::string> header = split_csv(strip_cr(line));
    if (header.size() < 2 || header[0] != "node") {
        parse_fail(path, 1, "expected header `node,f1,...,fk`");
    }
    const std::size_t k = header.size() - 1;

    FeatureSet fs;
    fs.names.assign(header.begin() + 1, header.end());
    fs.features.assign(k, std::vector<double>(num_nodes, 0.0));
    std::vector<bool> seen(num_nodes, false);

    std::size_t lineno = 1;
    std::size_t covered = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv(line);
        if (fields.size() != k + 1) {
            parse_fail(path, lineno, "expected " + std::to_string(k + 1) + " fields, got " +
                                         std::to_string(fields.size()));
        }
        std::size_t node = 0;
        if (!parse_index(fields[0], node)) parse_fail(path, lineno, "bad node id '" + fields[0] + "'");
        if (node >= num_nodes) {
            parse_fail(path, lineno, "node " + std::to_string(node) + " outside graph of " +
                                         std::to_string(num_nodes) + " nodes");
        }
        if (seen[node]) parse_fail(path, lineno, "node " + std::to_string(node) + " listed twice");
        seen[node] = true;
        ++covered;
        for (std::size_t i = 0; i < k; ++i) {
            double v = 0.0;
            if (!parse_real(fields[i + 1], v)) {
                parse_fail(path, lineno, "bad value '" + fields[i + 1] + "'");
            }
            fs.features[i][node] = v;
        }
    }
    if (covered != num_nodes) {
        throw ParseError(path.string() + ": features cover " + std::to_string(covered) + " of " +
                         std::to_string(num_nodes) + " nodes");
    }
    fs.validate(num_nodes);
    return fs;
}

void write_feature_csv(const FeatureSet& features, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    out << "node";
    for (const std::string& name : features.names) out << "," << name;
    out << "\n";
    const std::size_t n = features.features.empty() ? 0 : features.features.front().size();
    for (std::size_t u = 0; u < n; ++u) {
        out << u;
        for (const auto& column : features.features) out << "," << format_double(column[u]);
        out << "\n";
    }
}

LabelData read_label_csv(const std::filesystem::path& path, std::size_t num_nodes,
                         std::size_t num_classes) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty label file " + path.string());
    const std::vector<std::string> header = split_csv(strip_cr(line));
    if (header.size() != 2 || header[0] != "node" || header[1] != "class") {
        parse_fail(path, 1, "expected header `node,class`");
    }

    std::vector<int> ids(num_nodes, -1);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        line = strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_csv(line);
        if (fields.size() != 2) parse_fail(path, lineno, "expected `node,class`");
        std::size_t node = 0, cls = 0;
        if (!parse_index(fields[0], node)) parse_fail(path, lineno, "bad node id '" + fields[0] + "'");
        if (!parse_index(fields[1], cls)) parse_fail(path, lineno, "bad class '" + fields[1] + "'");
        if (node >= num_nodes) {
            parse_fail(path, lineno, "node " + std::to_string(node) + " outside graph of " +
                                         std::to_string(num_nodes) + " nodes");
        }
        ids[node] = static_cast<int>(cls);
    }
    return LabelData::from_class_ids(ids, num_classes);
}

void write_label_csv(std::span<const int> class_ids, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    out << "node,class\n";
    for (std::size_t u = 0; u < class_ids.size(); ++u) {
        if (class_ids[u] >= 0) out << u << "," << class_ids[u] << "\n";
    }
}

void write_embedding_csv(const EmbeddingMatrix& z, std::span<const std::string> feature_names,
                         const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    out << "node";
    for (const std::string& label : z.column_labels(feature_names)) out << "," << label;
    out << "\n";
    for (std::size_t u = 0; u < z.num_nodes(); ++u) {
        out << u;
        for (double v : z.row(u)) out << "," << format_double(v);
        out << "\n";
    }
}

void write_embedding_binary(const EmbeddingMatrix& z, std::span<const std::string> feature_names,
                            const std::filesystem::path& bin_path,
                            const std::filesystem::path& sidecar_path) {
    {
        std::ofstream out = open_output(bin_path, true);
        write_doubles(out, z.values());
    }
    json sidecar;
    sidecar["format"] = "feather-embedding";
    sidecar["version"] = 1;
    sidecar["dtype"] = "float64-le";
    sidecar["order"] = "row-major";
    sidecar["num_nodes"] = z.num_nodes();
    sidecar["k"] = z.feature_count();
    sidecar["d"] = z.point_count();
    sidecar["r"] = z.scale_count();
    sidecar["columns"] = z.column_labels(feature_names);
    std::ofstream out = open_output(sidecar_path);
    out << sidecar.dump(2) << "\n";
}

void write_descriptor_csv(std::span<const std::string> graph_ids,
                          std::span<const PooledDescriptor> descriptors,
                          std::span<const std::string> column_labels,
                          const std::filesystem::path& path) {
    if (graph_ids.size() != descriptors.size()) {
        throw ShapeMismatch("descriptor batch: ids and rows differ in count");
    }
    std::ofstream out = open_output(path);
    out << "graph";
    for (const std::string& label : column_labels) out << "," << label;
    out << "\n";
    for (std::size_t i = 0; i < descriptors.size(); ++i) {
        out << graph_ids[i];
        for (double v : descriptors[i].values) out << "," << format_double(v);
        out << "\n";
    }
}

void save_checkpoint(const ModelParams& params, const std::filesystem::path& path) {
    const std::string header = checkpoint_header(params).dump();
    std::ofstream out = open_output(path, true);
    out.write(kCheckpointMagic, sizeof(kCheckpointMagic));
    const std::uint64_t header_len = header.size();
    out.write(reinterpret_cast<const char*>(&header_len), sizeof(header_len));
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    for (const auto& points : params.theta.points) write_doubles(out, points);
    if (params.kind == ModelKind::Softmax) {
        write_doubles(out, params.beta.values());
    } else {
        write_doubles(out, params.beta0.values());
        write_doubles(out, params.beta1.values());
    }
}

ModelParams load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in = open_input(path, true);
    char magic[sizeof(kCheckpointMagic)];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kCheckpointMagic, sizeof(magic)) != 0) {
        throw IncompatibleCheckpoint(path.string() + " is not a feather checkpoint");
    }
    std::uint64_t header_len = 0;
    in.read(reinterpret_cast<char*>(&header_len), sizeof(header_len));
    if (!in || header_len == 0 || header_len > (1u << 20)) {
        throw IncompatibleCheckpoint("corrupt checkpoint header in " + path.string());
    }
    std::string header_text(header_len, '\0');
    in.read(header_text.data(), static_cast<std::streamsize>(header_len));
    if (!in) throw IncompatibleCheckpoint("truncated checkpoint header in " + path.string());

    json header;
    try {
        header = json::parse(header_text);
    } catch (const json::exception& e) {
        throw IncompatibleCheckpoint("bad checkpoint header: " + std::string(e.what()));
    }
    if (header.value("format", "") != "feather-checkpoint" || header.value("version", 0) != 1) {
        throw IncompatibleCheckpoint("unsupported checkpoint format in " + path.string());
    }

    ModelParams params;
    params.kind = parse_model_kind(header.at("kind").get<std::string>());
    const auto k = header.at("k").get<std::size_t>();
    const auto d = header.at("d").get<std::size_t>();
    const auto r = header.at("r").get<std::size_t>();
    const auto classes = header.at("classes").get<std::size_t>();
    params.hidden = header.at("hidden").get<std::size_t>();
    params.theta.d = d;
    params.theta.r = r;
    params.theta.points.assign(k, std::vector<double>(d, 0.0));
    for (auto& points : params.theta.points) read_doubles(in, points, path);

    const std::size_t width = 2 * k * d * r;
    if (params.kind == ModelKind::Softmax) {
        params.beta = Matrix(width, classes);
        read_doubles(in, params.beta.values(), path);
    } else {
        params.beta0 = Matrix(width, params.hidden);
        params.beta1 = Matrix(params.hidden, classes);
        read_doubles(in, params.beta0.values(), path);
        read_doubles(in, params.beta1.values(), path);
    }
    params.theta.validate();
    return params;
}

void write_loss_log(std::span<const double> losses, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    out << "epoch,loss\n";
    for (std::size_t i = 0; i < losses.size(); ++i) {
        out << (i + 1) << "," << format_double(losses[i]) << "\n";
    }
}

void write_prediction_csv(const Prediction& prediction, const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    out << "node";
    for (std::size_t c = 0; c < prediction.probs.cols(); ++c) out << ",p" << c;
    out << ",label\n";
    for (std::size_t u = 0; u < prediction.probs.rows(); ++u) {
        out << u;
        for (double v : prediction.probs.row(u)) out << "," << format_double(v);
        out << "," << prediction.labels[u] << "\n";
    }
}

}  // namespace feather::io
