#pragma once

#include "feather/charfunc.hpp"
#include "feather/graph.hpp"
#include "feather/matrix.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace feather {

/// One-hot node labels with the training mask U.
struct LabelData {
    Matrix y;                             // num_nodes x num_classes
    std::vector<std::size_t> train_mask;  // sorted node ids with labels used in the loss

    std::size_t num_classes() const noexcept { return y.cols(); }

    /// class_ids[u] in [0, C); -1 marks an unlabeled node excluded from the
    /// mask. C is inferred as max id + 1 unless given.
    static LabelData from_class_ids(std::span<const int> class_ids, std::size_t num_classes = 0);
};

enum class ModelKind { Softmax, Neural };

ModelKind parse_model_kind(const std::string& name);
std::string model_kind_name(ModelKind kind);

/// Trainable state of a characteristic-function classifier. The evaluation
/// points theta are trained jointly with the classification weights.
struct ModelParams {
    ModelKind kind = ModelKind::Softmax;
    EvaluationGrid theta;
    Matrix beta;          // softmax: (2*k*d*r) x C
    Matrix beta0, beta1;  // neural: (2*k*d*r) x h and h x C
    std::size_t hidden = 0;

    std::size_t feature_count() const noexcept { return theta.feature_count(); }
    std::size_t point_count() const noexcept { return theta.d; }
    std::size_t scale_count() const noexcept { return theta.r; }
    std::size_t embedding_width() const noexcept {
        return 2 * theta.feature_count() * theta.d * theta.r;
    }
    std::size_t num_classes() const noexcept {
        return kind == ModelKind::Softmax ? beta.cols() : beta1.cols();
    }
    /// Trainable scalar count, evaluation points included.
    std::size_t trainable_count() const noexcept;
};

struct TrainConfig {
    double learning_rate = 0.001;
    std::size_t epochs = 50;
    std::size_t hidden = 32;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    std::uint64_t seed = 0;
    double init_scale = 1.0;  // multiplier on the Glorot bound
    std::size_t d = 16;
    std::size_t r = 2;
    double theta_lo = 0.0;
    double theta_hi = 5.0;
};

/// Row-wise softmax of z * beta, computed with per-row max subtraction.
Matrix forward_softmax(const Matrix& z, const Matrix& beta);
Matrix forward_softmax(const EmbeddingMatrix& z, const Matrix& beta);

/// Row-wise softmax of relu(z * beta0) * beta1.
Matrix forward_neural(const Matrix& z, const Matrix& beta0, const Matrix& beta1);
Matrix forward_neural(const EmbeddingMatrix& z, const Matrix& beta0, const Matrix& beta1);

/// Cross-entropy over the training mask, with predictions clipped at 1e-15
/// before the log.
double log_loss(const Matrix& yhat, const LabelData& labels);

struct Gradients {
    Matrix beta;
    Matrix beta0, beta1;
    std::vector<std::vector<double>> theta;  // k x d
    double loss = 0.0;
};

/// Loss and exact gradients for every trainable tensor. The evaluation-point
/// gradient differentiates the cos/sin images of x ⊗ Θ and pushes the
/// classifier adjoint back through the transition-matrix chain, which does
/// not depend on Θ itself.
Gradients backward(const RowStochasticMatrix& ahat, const FeatureSet& features,
                   const LabelData& labels, const ModelParams& params);
Gradients backward(const Graph& g, const FeatureSet& features, const LabelData& labels,
                   const ModelParams& params);

/// Forward-pass loss only.
double training_loss(const RowStochasticMatrix& ahat, const FeatureSet& features,
                     const LabelData& labels, const ModelParams& params);

/// Central differences (f(p+h) - f(p-h)) / 2h per coordinate.
std::vector<double> finite_difference_grad(const std::function<double(std::span<const double>)>& f,
                                           std::span<const double> params, double h);

struct TrainResult {
    ModelParams params;
    std::vector<double> epoch_loss;  // loss at the start of each epoch
};

/// Full-batch Adam over beta tensors and theta. Theta starts uniform in
/// [theta_lo, theta_hi), weight matrices uniform in Glorot bounds scaled by
/// init_scale; both streams come from config.seed, so training is
/// bit-reproducible.
TrainResult train(const Graph& g, const FeatureSet& features, const LabelData& labels,
                  ModelKind kind, const TrainConfig& config);

struct Prediction {
    Matrix probs;
    std::vector<std::size_t> labels;  // argmax, ties broken toward the lowest class
};

/// Forward pass on any graph sharing the feature schema; only k, d, r must
/// match the checkpoint, not the node count.
Prediction predict(const ModelParams& params, const Graph& g, const FeatureSet& features,
                   int threads = 1);

/// Plain softmax regression on a fixed design matrix (no evaluation-point
/// training); the descriptor-classification path. Returns beta.
Matrix fit_softmax(const Matrix& x, const LabelData& labels, const TrainConfig& config);

}  // namespace feather
