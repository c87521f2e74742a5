#include "gbd/ml.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gbd/rng.hpp"

namespace gbd {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

std::vector<std::array<double, kNumFeatures>> standardized_matrix(
    const CutDataset& dataset, const TrainedModel& model) {
  std::vector<std::array<double, kNumFeatures>> rows;
  rows.reserve(dataset.records.size());
  for (const CutRecord& r : dataset.records)
    rows.push_back(model.standardize(r.features));
  return rows;
}

// z-score statistics over the training records. The optimality indicator
// (feature 0) is left raw; a zero-variance feature degenerates to centering.
void fit_standardization(const CutDataset& dataset, TrainedModel* model) {
  model->feature_mean.assign(kNumFeatures, 0.0);
  model->feature_std.assign(kNumFeatures, 1.0);
  const std::size_t n = dataset.records.size();
  if (n == 0) return;
  for (int f = 1; f < kNumFeatures; ++f) {
    double mean = 0.0;
    for (const CutRecord& r : dataset.records) mean += r.features.as_array()[f];
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (const CutRecord& r : dataset.records) {
      const double d = r.features.as_array()[f] - mean;
      var += d * d;
    }
    var /= static_cast<double>(n);
    model->feature_mean[f] = mean;
    model->feature_std[f] = var > 0.0 ? std::sqrt(var) : 1.0;
  }
}

TrainedModel train_logistic(const CutDataset& dataset,
                            const ClassifierOptions& options) {
  TrainedModel model;
  model.kind = ModelKind::LogisticRegression;
  fit_standardization(dataset, &model);
  const auto rows = standardized_matrix(dataset, model);
  const std::size_t n = rows.size();

  model.weights.assign(kNumFeatures, 0.0);
  model.bias = 0.0;
  double weight_total = 0.0;
  std::vector<double> sample_weight(n);
  for (std::size_t i = 0; i < n; ++i) {
    sample_weight[i] = dataset.records[i].label > 0.5
                           ? options.class_weight_useful
                           : options.class_weight_useless;
    weight_total += sample_weight[i];
  }

  model.converged = false;
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    std::array<double, kNumFeatures> grad{};
    double grad_bias = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double z = model.bias;
      for (int f = 0; f < kNumFeatures; ++f) z += model.weights[f] * rows[i][f];
      const double err =
          sample_weight[i] * (sigmoid(z) - dataset.records[i].label);
      for (int f = 0; f < kNumFeatures; ++f) grad[f] += err * rows[i][f];
      grad_bias += err;
    }
    double norm = std::fabs(grad_bias);
    for (int f = 0; f < kNumFeatures; ++f) {
      grad[f] /= weight_total;
      norm = std::max(norm, std::fabs(grad[f]));
    }
    grad_bias /= weight_total;
    if (norm < options.gradient_tolerance) {
      model.converged = true;
      break;
    }
    for (int f = 0; f < kNumFeatures; ++f)
      model.weights[f] -= options.learning_rate * grad[f];
    model.bias -= options.learning_rate * grad_bias;
  }
  return model;
}

TrainedModel train_svm(const CutDataset& dataset,
                       const ClassifierOptions& options) {
  TrainedModel model;
  model.kind = ModelKind::LinearSVM;
  fit_standardization(dataset, &model);
  const auto rows = standardized_matrix(dataset, model);
  const std::size_t n = rows.size();

  model.weights.assign(kNumFeatures, 0.0);
  model.bias = 0.0;
  double weight_total = 0.0;
  std::vector<double> sample_weight(n);
  std::vector<double> target(n);
  for (std::size_t i = 0; i < n; ++i) {
    target[i] = dataset.records[i].label > 0.5 ? 1.0 : -1.0;
    sample_weight[i] = dataset.records[i].label > 0.5
                           ? options.class_weight_useful
                           : options.class_weight_useless;
    weight_total += sample_weight[i];
  }

  // Full-batch subgradient descent on the weighted hinge loss with L2
  // regularization; deterministic, no sampling.
  model.converged = true;
  for (int epoch = 0; epoch < options.epochs; ++epoch) {
    const double lr = options.learning_rate / (1.0 + 0.01 * epoch);
    std::array<double, kNumFeatures> grad{};
    double grad_bias = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double z = model.bias;
      for (int f = 0; f < kNumFeatures; ++f) z += model.weights[f] * rows[i][f];
      if (target[i] * z < 1.0) {
        const double g = -sample_weight[i] * target[i];
        for (int f = 0; f < kNumFeatures; ++f) grad[f] += g * rows[i][f];
        grad_bias += g;
      }
    }
    for (int f = 0; f < kNumFeatures; ++f) {
      model.weights[f] -=
          lr * (grad[f] / weight_total +
                options.svm_regularization * model.weights[f]);
    }
    model.bias -= lr * grad_bias / weight_total;
  }
  return model;
}

struct TreeBuilder {
  const std::vector<std::array<double, kNumFeatures>>& rows;
  const std::vector<double>& labels;
  int min_leaf;
  Rng rng;
  Tree tree;

  int build(std::vector<int>& idx, int begin, int end) {
    const int node_id = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();

    const int count = end - begin;
    double mean = 0.0;
    for (int i = begin; i < end; ++i) mean += labels[idx[i]];
    mean /= count;
    double sse = 0.0;
    for (int i = begin; i < end; ++i) {
      const double d = labels[idx[i]] - mean;
      sse += d * d;
    }
    if (count <= min_leaf || sse <= 1e-12) {
      tree.nodes[node_id].value = mean;
      return node_id;
    }

    // Extremely randomized split: one uniform threshold per feature inside
    // the node's range, keep the best variance reduction.
    int best_feature = -1;
    double best_threshold = 0.0;
    double best_score = kInf;
    for (int f = 0; f < kNumFeatures; ++f) {
      double lo = kInf, hi = -kInf;
      for (int i = begin; i < end; ++i) {
        lo = std::min(lo, rows[idx[i]][f]);
        hi = std::max(hi, rows[idx[i]][f]);
      }
      if (!(hi > lo)) continue;
      const double thr = rng.uniform(lo, hi);
      double nl = 0, nr = 0, sl = 0, sr = 0;
      for (int i = begin; i < end; ++i) {
        if (rows[idx[i]][f] <= thr) {
          ++nl;
          sl += labels[idx[i]];
        } else {
          ++nr;
          sr += labels[idx[i]];
        }
      }
      if (nl == 0 || nr == 0) continue;
      double score = 0.0;
      const double ml = sl / nl, mr = sr / nr;
      for (int i = begin; i < end; ++i) {
        const double d = rows[idx[i]][f] <= thr ? labels[idx[i]] - ml
                                                : labels[idx[i]] - mr;
        score += d * d;
      }
      if (score < best_score) {
        best_score = score;
        best_feature = f;
        best_threshold = thr;
      }
    }
    if (best_feature < 0) {
      tree.nodes[node_id].value = mean;
      return node_id;
    }

    const auto mid_it = std::partition(
        idx.begin() + begin, idx.begin() + end, [&](int i) {
          return rows[i][best_feature] <= best_threshold;
        });
    const int mid = static_cast<int>(mid_it - idx.begin());
    tree.nodes[node_id].feature = best_feature;
    tree.nodes[node_id].threshold = best_threshold;
    tree.nodes[node_id].left = build(idx, begin, mid);
    tree.nodes[node_id].right = build(idx, mid, end);
    return node_id;
  }
};

double tree_predict(const Tree& tree, const std::array<double, kNumFeatures>& x) {
  int node = 0;
  while (tree.nodes[node].feature >= 0) {
    node = x[tree.nodes[node].feature] <= tree.nodes[node].threshold
               ? tree.nodes[node].left
               : tree.nodes[node].right;
  }
  return tree.nodes[node].value;
}

TrainedModel train_extra_trees(const CutDataset& dataset,
                               const RegressorOptions& options) {
  TrainedModel model;
  model.kind = ModelKind::ExtraTrees;
  model.training_seed = options.seed;
  fit_standardization(dataset, &model);
  const auto rows = standardized_matrix(dataset, model);
  std::vector<double> labels;
  labels.reserve(dataset.records.size());
  for (const CutRecord& r : dataset.records) labels.push_back(r.label);

  model.trees.reserve(options.n_trees);
  for (int t = 0; t < options.n_trees; ++t) {
    TreeBuilder builder{rows, labels, options.min_leaf,
                        Rng(mix_seed(options.seed, 0x7472 + t)), {}};
    std::vector<int> idx(rows.size());
    std::iota(idx.begin(), idx.end(), 0);
    builder.build(idx, 0, static_cast<int>(idx.size()));
    model.trees.push_back(std::move(builder.tree));
  }
  return model;
}

TrainedModel train_linear_regression(const CutDataset& dataset) {
  TrainedModel model;
  model.kind = ModelKind::LinearRegression;
  fit_standardization(dataset, &model);
  const auto rows = standardized_matrix(dataset, model);
  const int dim = kNumFeatures + 1;

  // Normal equations with a tiny ridge for rank safety; solved by Gaussian
  // elimination with partial pivoting.
  std::vector<std::vector<double>> a(dim, std::vector<double>(dim, 0.0));
  std::vector<double> b(dim, 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::array<double, 6> xi;
    for (int f = 0; f < kNumFeatures; ++f) xi[f] = rows[i][f];
    xi[kNumFeatures] = 1.0;
    for (int p = 0; p < dim; ++p) {
      b[p] += xi[p] * dataset.records[i].label;
      for (int q = 0; q < dim; ++q) a[p][q] += xi[p] * xi[q];
    }
  }
  for (int p = 0; p < dim; ++p) a[p][p] += 1e-9;
  for (int col = 0; col < dim; ++col) {
    int pivot = col;
    for (int r = col + 1; r < dim; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int r = 0; r < dim; ++r) {
      if (r == col || a[r][col] == 0.0) continue;
      const double factor = a[r][col] / a[col][col];
      for (int q = col; q < dim; ++q) a[r][q] -= factor * a[col][q];
      b[r] -= factor * b[col];
    }
  }
  model.weights.assign(kNumFeatures, 0.0);
  for (int f = 0; f < kNumFeatures; ++f) model.weights[f] = b[f] / a[f][f];
  model.bias = b[kNumFeatures] / a[kNumFeatures][kNumFeatures];
  return model;
}

}  // namespace

std::array<double, kNumFeatures> TrainedModel::standardize(
    const FeatureVector& f) const {
  const auto raw = f.as_array();
  std::array<double, kNumFeatures> out{};
  for (int i = 0; i < kNumFeatures; ++i) {
    const double mean = i < static_cast<int>(feature_mean.size()) ? feature_mean[i] : 0.0;
    const double std = i < static_cast<int>(feature_std.size()) ? feature_std[i] : 1.0;
    out[i] = (raw[i] - mean) / std;
  }
  return out;
}

double TrainedModel::raw_score(const FeatureVector& f) const {
  const auto x = standardize(f);
  switch (kind) {
    case ModelKind::LogisticRegression: {
      double z = bias;
      for (int i = 0; i < kNumFeatures; ++i) z += weights[i] * x[i];
      return sigmoid(z);
    }
    case ModelKind::LinearSVM: {
      double z = bias;
      for (int i = 0; i < kNumFeatures; ++i) z += weights[i] * x[i];
      return z;
    }
    default:
      return predict_value(f);
  }
}

bool TrainedModel::classify_useful(const FeatureVector& f) const {
  if (kind == ModelKind::LogisticRegression)
    return raw_score(f) >= decision_threshold;
  if (kind == ModelKind::LinearSVM) return raw_score(f) >= 0.0;
  throw ModelMismatchError("classify_useful called on a regressor");
}

double TrainedModel::predict_value(const FeatureVector& f) const {
  const auto x = standardize(f);
  if (kind == ModelKind::ExtraTrees) {
    double sum = 0.0;
    for (const Tree& t : trees) sum += tree_predict(t, x);
    return sum / static_cast<double>(trees.size());
  }
  if (kind == ModelKind::LinearRegression) {
    double z = bias;
    for (int i = 0; i < kNumFeatures; ++i) z += weights[i] * x[i];
    return z;
  }
  throw ModelMismatchError("predict_value called on a classifier");
}

Usefulness predict_useful(const TrainedModel& model, const FeatureVector& f,
                          double prev_prediction_in_iteration) {
  if (f.schema_version != model.schema_version) {
    throw ModelMismatchError("feature schema version mismatch");
  }
  if (model.is_classifier()) {
    return model.classify_useful(f) ? Usefulness::Useful : Usefulness::Useless;
  }
  const int s = static_cast<int>(f.order);
  if (s <= 1 || prev_prediction_in_iteration < 0.0) return Usefulness::Useful;
  const double cr = std::clamp(model.predict_value(f), 0.0, 1.0);
  const bool both_one = std::fabs(cr - 1.0) <= 1e-9 &&
                        std::fabs(prev_prediction_in_iteration - 1.0) <= 1e-9;
  return both_one ? Usefulness::Useless : Usefulness::Useful;
}

CutDataset undersample(const CutDataset& dataset, double ratio,
                       std::uint64_t seed) {
  std::vector<std::size_t> positive, negative;
  for (std::size_t i = 0; i < dataset.records.size(); ++i) {
    (dataset.records[i].label > 0.5 ? positive : negative).push_back(i);
  }
  if (positive.empty() || negative.empty()) {
    throw SingleClassError("undersampling needs both classes present");
  }
  const bool positive_is_minority = positive.size() <= negative.size();
  auto& minority = positive_is_minority ? positive : negative;
  auto& majority = positive_is_minority ? negative : positive;

  const std::size_t want = std::min(
      majority.size(),
      static_cast<std::size_t>(ratio * static_cast<double>(minority.size())));
  Rng rng(mix_seed(seed, 0x756e64));
  // Partial Fisher-Yates: first `want` entries form the uniform subset.
  for (std::size_t i = 0; i < want; ++i) {
    const std::size_t j = i + rng.next_below(majority.size() - i);
    std::swap(majority[i], majority[j]);
  }
  majority.resize(want);

  std::vector<std::size_t> keep = minority;
  keep.insert(keep.end(), majority.begin(), majority.end());
  std::sort(keep.begin(), keep.end());

  CutDataset out;
  out.kind = dataset.kind;
  out.schema_version = dataset.schema_version;
  out.records.reserve(keep.size());
  for (std::size_t i : keep) out.records.push_back(dataset.records[i]);
  return out;
}

TrainedModel train_classifier(const CutDataset& dataset, ModelKind kind,
                              const ClassifierOptions& options) {
  if (dataset.records.empty()) throw Error("empty training dataset");
  switch (kind) {
    case ModelKind::LogisticRegression:
      return train_logistic(dataset, options);
    case ModelKind::LinearSVM:
      return train_svm(dataset, options);
    default:
      throw ModelMismatchError("train_classifier requires a classifier kind");
  }
}

TrainedModel train_regressor(const CutDataset& dataset, ModelKind kind,
                             const RegressorOptions& options) {
  if (dataset.records.empty()) throw Error("empty training dataset");
  TrainedModel model;
  switch (kind) {
    case ModelKind::ExtraTrees:
      model = train_extra_trees(dataset, options);
      break;
    case ModelKind::LinearRegression:
      model = train_linear_regression(dataset);
      break;
    default:
      throw ModelMismatchError("train_regressor requires a regressor kind");
  }
  double lo = kInf, hi = -kInf;
  for (const CutRecord& r : dataset.records) {
    lo = std::min(lo, r.label);
    hi = std::max(hi, r.label);
  }
  model.perfect_fit = !(hi > lo);
  return model;
}

double roc_auc(const std::vector<double>& scores,
               const std::vector<int>& labels) {
  const std::size_t n = scores.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Mann-Whitney statistic with average ranks on ties.
  std::vector<double> rank(n, 0.0);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && scores[idx[j + 1]] == scores[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) rank[idx[k]] = avg;
    i = j + 1;
  }
  double rank_sum = 0.0;
  std::size_t n_pos = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (labels[k] == 1) {
      rank_sum += rank[k];
      ++n_pos;
    }
  }
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) return 0.5;
  return (rank_sum - 0.5 * static_cast<double>(n_pos) *
                         static_cast<double>(n_pos + 1)) /
         (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

std::vector<std::pair<double, double>> roc_curve(
    const std::vector<double>& scores, const std::vector<int>& labels) {
  std::vector<std::size_t> idx(scores.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });
  double n_pos = 0, n_neg = 0;
  for (int l : labels) (l == 1 ? n_pos : n_neg) += 1.0;
  std::vector<std::pair<double, double>> curve;
  curve.emplace_back(0.0, 0.0);
  double tp = 0, fp = 0;
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j + 1 < idx.size() && scores[idx[j + 1]] == scores[idx[i]]) ++j;
    for (std::size_t k = i; k <= j; ++k) (labels[idx[k]] == 1 ? tp : fp) += 1.0;
    curve.emplace_back(n_neg > 0 ? fp / n_neg : 0.0,
                       n_pos > 0 ? tp / n_pos : 0.0);
    i = j + 1;
  }
  return curve;
}

R2Result r_squared(const std::vector<double>& predicted,
                   const std::vector<double>& actual) {
  R2Result out;
  const std::size_t n = actual.size();
  if (n == 0) return out;
  double mean = 0.0;
  for (double v : actual) mean += v;
  mean /= static_cast<double>(n);
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ss_res += (predicted[i] - actual[i]) * (predicted[i] - actual[i]);
    ss_tot += (actual[i] - mean) * (actual[i] - mean);
  }
  if (ss_tot == 0.0) {
    out.perfect_fit = true;
    out.r2 = 1.0;
    return out;
  }
  out.r2 = 1.0 - ss_res / ss_tot;
  return out;
}

}  // namespace gbd
