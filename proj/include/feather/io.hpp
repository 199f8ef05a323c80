#pragma once

#include "feather/charfunc.hpp"
#include "feather/graph.hpp"
#include "feather/models.hpp"
#include "feather/pooling.hpp"

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace feather::io {

/// Doubles are written with 17 significant digits so that every value
/// round-trips exactly and reruns are byte-identical.
std::string format_double(double v);

/// Edge-list text: one `u w [weight]` statement per line, `#` comments,
/// 0-based indices. Parse failures carry file and line number.
std::vector<WeightedEdge> read_edge_list(const std::filesystem::path& path);
Graph read_graph(const std::filesystem::path& path,
                 std::optional<std::size_t> num_nodes = std::nullopt, bool strict = false);
void write_edge_list(const Graph& g, const std::filesystem::path& path);

/// Feature CSV with header `node,f1,...,fk`; rows in any order, each node
/// exactly once.
FeatureSet read_feature_csv(const std::filesystem::path& path, std::size_t num_nodes);
void write_feature_csv(const FeatureSet& features, const std::filesystem::path& path);

/// Label CSV with header `node,class`, classes 0..C-1. Nodes absent from the
/// file are unlabeled and excluded from the training mask.
LabelData read_label_csv(const std::filesystem::path& path, std::size_t num_nodes,
                         std::size_t num_classes = 0);
void write_label_csv(std::span<const int> class_ids, const std::filesystem::path& path);

void write_embedding_csv(const EmbeddingMatrix& z, std::span<const std::string> feature_names,
                         const std::filesystem::path& path);
/// Raw little-endian float64 row-major payload plus a JSON sidecar with the
/// shape and column layout.
void write_embedding_binary(const EmbeddingMatrix& z, std::span<const std::string> feature_names,
                            const std::filesystem::path& bin_path,
                            const std::filesystem::path& sidecar_path);

/// Batch descriptor CSV keyed by graph id, header `graph,<columns>`.
void write_descriptor_csv(std::span<const std::string> graph_ids,
                          std::span<const PooledDescriptor> descriptors,
                          std::span<const std::string> column_labels,
                          const std::filesystem::path& path);

/// Model checkpoint: 8-byte magic, little-endian u64 header length, JSON
/// header, then each tensor as row-major little-endian float64 (theta, then
/// beta or beta0/beta1).
void save_checkpoint(const ModelParams& params, const std::filesystem::path& path);
ModelParams load_checkpoint(const std::filesystem::path& path);

void write_loss_log(std::span<const double> losses, const std::filesystem::path& path);
void write_prediction_csv(const Prediction& prediction, const std::filesystem::path& path);

}  // namespace feather::io
