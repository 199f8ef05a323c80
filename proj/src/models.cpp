#include "feather/models.hpp"

#include "feather/errors.hpp"
#include "feather/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>
#include <string>

namespace feather {

namespace {

constexpr double kProbFloor = 1e-15;

Matrix embedding_as_matrix(const EmbeddingMatrix& z) {
    Matrix m(z.num_nodes(), z.width());
    std::copy(z.values().begin(), z.values().end(), m.data());
    return m;
}

void softmax_rows(Matrix& logits) {
    for (std::size_t i = 0; i < logits.rows(); ++i) {
        auto row = logits.row(i);
        double hi = row[0];
        for (double v : row) hi = std::max(hi, v);
        double sum = 0.0;
        for (double& v : row) {
            v = std::exp(v - hi);
            sum += v;
        }
        for (double& v : row) v /= sum;
    }
}

void check_forward_shapes(std::size_t z_cols, std::size_t weight_rows, const char* where) {
    if (z_cols != weight_rows) {
        throw ShapeMismatch(std::string(where) + ": embedding width " + std::to_string(z_cols) +
                            " does not match weight rows " + std::to_string(weight_rows));
    }
}

/// out = transpose(ahat) * in for row-major n x d blocks, fixed scatter order.
void propagate_transpose(const RowStochasticMatrix& ahat, const double* in, double* out,
                         std::size_t d) {
    const std::size_t n = ahat.num_nodes();
    std::memset(out, 0, n * d * sizeof(double));
    auto offsets = ahat.row_offsets();
    auto cols = ahat.col_indices();
    auto vals = ahat.values();
    for (std::size_t u = 0; u < n; ++u) {
        const double* src = in + u * d;
        for (std::size_t e = offsets[u]; e < offsets[u + 1]; ++e) {
            double* dst = out + cols[e] * d;
            const double a = vals[e];
            for (std::size_t j = 0; j < d; ++j) dst[j] += a * src[j];
        }
    }
}

Matrix forward_logits(const Matrix& z, const ModelParams& params, Matrix* hidden_out = nullptr,
                      Matrix* pre_out = nullptr) {
    if (params.kind == ModelKind::Softmax) {
        check_forward_shapes(z.cols(), params.beta.rows(), "forward_softmax");
        return multiply(z, params.beta);
    }
    check_forward_shapes(z.cols(), params.beta0.rows(), "forward_neural");
    Matrix pre = multiply(z, params.beta0);
    Matrix hidden = pre;
    for (double& v : hidden.values()) v = v > 0.0 ? v : 0.0;
    Matrix logits = multiply(hidden, params.beta1);
    if (hidden_out) *hidden_out = std::move(hidden);
    if (pre_out) *pre_out = std::move(pre);
    return logits;
}

struct AdamState {
    std::vector<double> m, v;
    explicit AdamState(std::size_t n) : m(n, 0.0), v(n, 0.0) {}
};

void adam_step(std::span<double> param, std::span<const double> grad, AdamState& state,
               const TrainConfig& cfg, std::size_t t) {
    const double b1 = cfg.adam_beta1, b2 = cfg.adam_beta2;
    const double mcorr = 1.0 - std::pow(b1, static_cast<double>(t));
    const double vcorr = 1.0 - std::pow(b2, static_cast<double>(t));
    for (std::size_t i = 0; i < param.size(); ++i) {
        state.m[i] = b1 * state.m[i] + (1.0 - b1) * grad[i];
        state.v[i] = b2 * state.v[i] + (1.0 - b2) * grad[i] * grad[i];
        const double mhat = state.m[i] / mcorr;
        const double vhat = state.v[i] / vcorr;
        param[i] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + cfg.adam_eps);
    }
}

Matrix glorot_matrix(std::mt19937_64& gen, std::size_t rows, std::size_t cols, double scale) {
    const double bound =
        scale * std::sqrt(6.0 / (static_cast<double>(rows) + static_cast<double>(cols)));
    Matrix m(rows, cols);
    for (double& v : m.values()) v = rng::uniform(gen, -bound, bound);
    return m;
}

/// Classifier adjoint (yhat - y) on masked rows, zero elsewhere.
Matrix loss_adjoint(const Matrix& yhat, const LabelData& labels) {
    Matrix g(yhat.rows(), yhat.cols());
    for (std::size_t u : labels.train_mask) {
        for (std::size_t c = 0; c < yhat.cols(); ++c) g(u, c) = yhat(u, c) - labels.y(u, c);
    }
    return g;
}

void check_label_shapes(std::size_t num_nodes, const LabelData& labels) {
    if (labels.y.rows() != num_nodes) {
        throw ShapeMismatch("label matrix has " + std::to_string(labels.y.rows()) +
                            " rows, graph has " + std::to_string(num_nodes) + " nodes");
    }
    for (std::size_t u : labels.train_mask) {
        if (u >= num_nodes) throw IndexOutOfRange("train mask references node " + std::to_string(u));
    }
}

}  // namespace

LabelData LabelData::from_class_ids(std::span<const int> class_ids, std::size_t num_classes) {
    std::size_t c = num_classes;
    if (c == 0) {
        int hi = -1;
        for (int id : class_ids) hi = std::max(hi, id);
        if (hi < 0) throw EmptyTrainSet("no labeled nodes");
        c = static_cast<std::size_t>(hi) + 1;
    }
    LabelData out;
    out.y = Matrix(class_ids.size(), c);
    for (std::size_t u = 0; u < class_ids.size(); ++u) {
        const int id = class_ids[u];
        if (id < 0) continue;
        if (static_cast<std::size_t>(id) >= c) {
            throw IndexOutOfRange("class id " + std::to_string(id) + " outside " +
                                  std::to_string(c) + " classes");
        }
        out.y(u, static_cast<std::size_t>(id)) = 1.0;
        out.train_mask.push_back(u);
    }
    return out;
}

ModelKind parse_model_kind(const std::string& name) {
    if (name == "softmax" || name == "linear") return ModelKind::Softmax;
    if (name == "neural") return ModelKind::Neural;
    throw ConfigError("unknown model kind '" + name + "', expected softmax or neural");
}

std::string model_kind_name(ModelKind kind) {
    return kind == ModelKind::Softmax ? "softmax" : "neural";
}

std::size_t ModelParams::trainable_count() const noexcept {
    const std::size_t theta_count = theta.feature_count() * theta.d;
    if (kind == ModelKind::Softmax) return beta.size() + theta_count;
    return beta0.size() + beta1.size() + theta_count;
}

Matrix forward_softmax(const Matrix& z, const Matrix& beta) {
    check_forward_shapes(z.cols(), beta.rows(), "forward_softmax");
    Matrix logits = multiply(z, beta);
    softmax_rows(logits);
    return logits;
}

Matrix forward_softmax(const EmbeddingMatrix& z, const Matrix& beta) {
    return forward_softmax(embedding_as_matrix(z), beta);
}

Matrix forward_neural(const Matrix& z, const Matrix& beta0, const Matrix& beta1) {
    check_forward_shapes(z.cols(), beta0.rows(), "forward_neural");
    check_forward_shapes(beta0.cols(), beta1.rows(), "forward_neural");
    Matrix pre = multiply(z, beta0);
    for (double& v : pre.values()) v = v > 0.0 ? v : 0.0;
    Matrix logits = multiply(pre, beta1);
    softmax_rows(logits);
    return logits;
}

Matrix forward_neural(const EmbeddingMatrix& z, const Matrix& beta0, const Matrix& beta1) {
    return forward_neural(embedding_as_matrix(z), beta0, beta1);
}

double log_loss(const Matrix& yhat, const LabelData& labels) {
    if (labels.train_mask.empty()) throw EmptyTrainSet("training mask is empty");
    if (yhat.rows() != labels.y.rows() || yhat.cols() != labels.y.cols()) {
        throw ShapeMismatch("prediction matrix does not match label matrix");
    }
    double loss = 0.0;
    for (std::size_t u : labels.train_mask) {
        for (std::size_t c = 0; c < yhat.cols(); ++c) {
            if (labels.y(u, c) != 0.0) {
                loss -= labels.y(u, c) * std::log(std::max(yhat(u, c), kProbFloor));
            }
        }
    }
    return loss;
}

Gradients backward(const RowStochasticMatrix& ahat, const FeatureSet& features,
                   const LabelData& labels, const ModelParams& params) {
    check_label_shapes(ahat.num_nodes(), labels);
    const EmbeddingMatrix embedding = feather_embed(ahat, features, params.theta);
    const Matrix z = embedding_as_matrix(embedding);

    Matrix hidden, pre;
    Matrix yhat = forward_logits(z, params, &hidden, &pre);
    softmax_rows(yhat);

    Gradients out;
    out.loss = log_loss(yhat, labels);

    const Matrix adjoint = loss_adjoint(yhat, labels);
    Matrix z_adjoint;
    if (params.kind == ModelKind::Softmax) {
        out.beta = multiply_at(z, adjoint);
        z_adjoint = multiply_bt(adjoint, params.beta);
    } else {
        out.beta1 = multiply_at(hidden, adjoint);
        Matrix pre_adjoint = multiply_bt(adjoint, params.beta1);
        for (std::size_t i = 0; i < pre_adjoint.size(); ++i) {
            if (pre.values()[i] <= 0.0) pre_adjoint.values()[i] = 0.0;
        }
        out.beta0 = multiply_at(z, pre_adjoint);
        z_adjoint = multiply_bt(pre_adjoint, params.beta0);
    }

    // Evaluation-point gradient. For feature i the embedding blocks are
    // A^s cos(x θ) and A^s sin(x θ); the adjoint of the pre-propagation wave
    // matrices is sum_s (A^T)^s applied to the per-scale embedding adjoints,
    // accumulated from the deepest scale inward.
    const std::size_t n = ahat.num_nodes();
    const std::size_t k = params.theta.feature_count();
    const std::size_t d = params.theta.d;
    const std::size_t r = params.theta.r;
    out.theta.assign(k, std::vector<double>(d, 0.0));

    std::vector<double> acc_re(n * d), acc_im(n * d), scratch(n * d);
    for (std::size_t i = 0; i < k; ++i) {
        std::fill(acc_re.begin(), acc_re.end(), 0.0);
        std::fill(acc_im.begin(), acc_im.end(), 0.0);
        for (std::size_t s = r; s >= 1; --s) {
            const std::size_t re0 = embedding.column(i, s, 0, 0);
            const std::size_t im0 = embedding.column(i, s, 1, 0);
            for (std::size_t u = 0; u < n; ++u) {
                const double* zrow = z_adjoint.data() + u * z_adjoint.cols();
                for (std::size_t j = 0; j < d; ++j) {
                    acc_re[u * d + j] += zrow[re0 + j];
                    acc_im[u * d + j] += zrow[im0 + j];
                }
            }
            propagate_transpose(ahat, acc_re.data(), scratch.data(), d);
            acc_re.swap(scratch);
            propagate_transpose(ahat, acc_im.data(), scratch.data(), d);
            acc_im.swap(scratch);
        }
        const std::vector<double>& x = features.features[i];
        const std::vector<double>& theta = params.theta.points[i];
        for (std::size_t u = 0; u < n; ++u) {
            const double xu = x[u];
            if (xu == 0.0) continue;
            for (std::size_t j = 0; j < d; ++j) {
                const double arg = theta[j] * xu;
                out.theta[i][j] += xu * (-std::sin(arg) * acc_re[u * d + j] +
                                         std::cos(arg) * acc_im[u * d + j]);
            }
        }
    }
    return out;
}

Gradients backward(const Graph& g, const FeatureSet& features, const LabelData& labels,
                   const ModelParams& params) {
    return backward(normalize(g), features, labels, params);
}

double training_loss(const RowStochasticMatrix& ahat, const FeatureSet& features,
                     const LabelData& labels, const ModelParams& params) {
    check_label_shapes(ahat.num_nodes(), labels);
    const EmbeddingMatrix embedding = feather_embed(ahat, features, params.theta);
    const Matrix z = embedding_as_matrix(embedding);
    Matrix yhat = forward_logits(z, params);
    softmax_rows(yhat);
    return log_loss(yhat, labels);
}

std::vector<double> finite_difference_grad(const std::function<double(std::span<const double>)>& f,
                                           std::span<const double> params, double h) {
    if (!(h > 0.0)) throw InvalidDomain("finite differences need h > 0");
    std::vector<double> point(params.begin(), params.end());
    std::vector<double> grad(params.size());
    for (std::size_t i = 0; i < point.size(); ++i) {
        const double saved = point[i];
        point[i] = saved + h;
        const double up = f(point);
        point[i] = saved - h;
        const double down = f(point);
        point[i] = saved;
        grad[i] = (up - down) / (2.0 * h);
    }
    return grad;
}

TrainResult train(const Graph& g, const FeatureSet& features, const LabelData& labels,
                  ModelKind kind, const TrainConfig& config) {
    if (labels.train_mask.empty()) throw EmptyTrainSet("training mask is empty");
    if (config.epochs < 1) throw ConfigError("epochs must be at least 1");
    if (!(config.learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
    features.validate(g.num_nodes());
    check_label_shapes(g.num_nodes(), labels);

    const RowStochasticMatrix ahat = normalize(g);
    const std::size_t k = features.count();
    const std::size_t width = 2 * k * config.d * config.r;
    const std::size_t classes = labels.num_classes();

    // One seeded stream: theta first (feature-major), then each weight
    // matrix row-major.
    std::mt19937_64 gen(config.seed);
    ModelParams params;
    params.kind = kind;
    params.theta.d = config.d;
    params.theta.r = config.r;
    params.theta.points.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        params.theta.points[i].resize(config.d);
        for (std::size_t j = 0; j < config.d; ++j) {
            params.theta.points[i][j] = rng::uniform(gen, config.theta_lo, config.theta_hi);
        }
    }
    if (kind == ModelKind::Softmax) {
        params.beta = glorot_matrix(gen, width, classes, config.init_scale);
    } else {
        params.hidden = config.hidden;
        params.beta0 = glorot_matrix(gen, width, config.hidden, config.init_scale);
        params.beta1 = glorot_matrix(gen, config.hidden, classes, config.init_scale);
    }

    AdamState beta_state(params.beta.size());
    AdamState beta0_state(params.beta0.size());
    AdamState beta1_state(params.beta1.size());
    AdamState theta_state(k * config.d);
    std::vector<double> theta_flat(k * config.d), theta_grad(k * config.d);

    TrainResult result;
    result.epoch_loss.reserve(config.epochs);
    for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
        Gradients grads = backward(ahat, features, labels, params);
        if (!std::isfinite(grads.loss)) {
            throw DivergenceDetected("non-finite loss at epoch " + std::to_string(epoch));
        }
        result.epoch_loss.push_back(grads.loss);

        if (kind == ModelKind::Softmax) {
            adam_step(params.beta.values(), grads.beta.values(), beta_state, config, epoch);
        } else {
            adam_step(params.beta0.values(), grads.beta0.values(), beta0_state, config, epoch);
            adam_step(params.beta1.values(), grads.beta1.values(), beta1_state, config, epoch);
        }
        for (std::size_t i = 0; i < k; ++i) {
            std::copy(params.theta.points[i].begin(), params.theta.points[i].end(),
                      theta_flat.begin() + i * config.d);
            std::copy(grads.theta[i].begin(), grads.theta[i].end(),
                      theta_grad.begin() + i * config.d);
        }
        adam_step(theta_flat, theta_grad, theta_state, config, epoch);
        for (std::size_t i = 0; i < k; ++i) {
            std::copy(theta_flat.begin() + i * config.d, theta_flat.begin() + (i + 1) * config.d,
                      params.theta.points[i].begin());
        }

        const auto finite = [](std::span<const double> vs) {
            for (double v : vs) {
                if (!std::isfinite(v)) return false;
            }
            return true;
        };
        if (!finite(theta_flat) || !finite(params.beta.values()) ||
            !finite(params.beta0.values()) || !finite(params.beta1.values())) {
            throw DivergenceDetected("non-finite parameters after epoch " + std::to_string(epoch));
        }
    }

    result.params = std::move(params);
    return result;
}

Prediction predict(const ModelParams& params, const Graph& g, const FeatureSet& features,
                   int threads) {
    if (features.count() != params.feature_count()) {
        throw FeatureCountMismatch("model expects " + std::to_string(params.feature_count()) +
                                   " features, got " + std::to_string(features.count()));
    }
    features.validate(g.num_nodes());
    const EmbeddingMatrix z = feather_embed(normalize(g), features, params.theta, threads);

    Prediction out;
    if (params.kind == ModelKind::Softmax) {
        out.probs = forward_softmax(z, params.beta);
    } else {
        out.probs = forward_neural(z, params.beta0, params.beta1);
    }
    out.labels.resize(out.probs.rows());
    for (std::size_t u = 0; u < out.probs.rows(); ++u) {
        auto row = out.probs.row(u);
        std::size_t best = 0;
        for (std::size_t c = 1; c < row.size(); ++c) {
            if (row[c] > row[best]) best = c;
        }
        out.labels[u] = best;
    }
    return out;
}

Matrix fit_softmax(const Matrix& x, const LabelData& labels, const TrainConfig& config) {
    if (labels.train_mask.empty()) throw EmptyTrainSet("training mask is empty");
    check_label_shapes(x.rows(), labels);

    std::mt19937_64 gen(config.seed);
    Matrix beta = glorot_matrix(gen, x.cols(), labels.num_classes(), config.init_scale);
    AdamState state(beta.size());
    for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
        Matrix yhat = forward_softmax(x, beta);
        const double loss = log_loss(yhat, labels);
        if (!std::isfinite(loss)) {
            throw DivergenceDetected("non-finite loss at epoch " + std::to_string(epoch));
        }
        const Matrix adjoint = loss_adjoint(yhat, labels);
        const Matrix grad = multiply_at(x, adjoint);
        adam_step(beta.values(), grad.values(), state, config, epoch);
    }
    return beta;
}

}  // namespace feather
