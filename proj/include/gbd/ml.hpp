#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gbd/types.hpp"

namespace gbd {

inline constexpr int kFeatureSchemaVersion = 1;
inline constexpr int kNumFeatures = 5;

// The five problem-independent cut features. Only the structure of the
// decomposition enters: cut kind, how far the cut reaches past the current
// master solution, regeneration count, iteration depth and pool order.
struct FeatureVector {
  double optimality_indicator = 1.0;  // 1 optimality, 0 feasibility
  double violation = 0.0;
  double repeat = 0.0;
  double depth = 1.0;
  double order = 1.0;
  int schema_version = kFeatureSchemaVersion;

  std::array<double, kNumFeatures> as_array() const {
    return {optimality_indicator, violation, repeat, depth, order};
  }

  static FeatureVector from_cut(const Cut& c) {
    FeatureVector f;
    f.optimality_indicator = c.kind == CutKind::Optimality ? 1.0 : 0.0;
    f.violation = c.violation;
    f.repeat = static_cast<double>(c.repeat_count);
    f.depth = static_cast<double>(c.gen_iteration);
    f.order = static_cast<double>(c.gen_order);
    return f;
  }
};

struct CutRecord {
  FeatureVector features;
  double label = 0.0;  // BL in {0,1} or CR in [0,1]
  std::string run_id;
  int iteration = 1;
  int order = 1;
};

enum class DatasetKind { Classifier, Regressor };

struct CutDataset {
  DatasetKind kind = DatasetKind::Classifier;
  std::vector<CutRecord> records;
  int schema_version = kFeatureSchemaVersion;
};

enum class ModelKind { LogisticRegression, LinearSVM, ExtraTrees, LinearRegression };

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;
};

struct Tree {
  std::vector<TreeNode> nodes;
};

struct TrainedModel {
  ModelKind kind = ModelKind::LogisticRegression;
  int schema_version = kFeatureSchemaVersion;
  std::uint64_t training_seed = 0;
  bool converged = true;     // false when gradient descent hit the epoch cap
  bool perfect_fit = false;  // degenerate zero-variance regression target
  // z-score statistics from the training set; the indicator is left raw
  // (mean 0, std 1).
  std::vector<double> feature_mean;
  std::vector<double> feature_std;
  std::vector<double> weights;  // linear kinds
  double bias = 0.0;
  std::vector<Tree> trees;  // extra trees
  double decision_threshold = 0.5;

  std::array<double, kNumFeatures> standardize(const FeatureVector& f) const;

  // Classifier score: probability for logistic regression, margin mapped
  // through the same API for the SVM. Regressors return the raw prediction.
  double raw_score(const FeatureVector& f) const;
  bool classify_useful(const FeatureVector& f) const;
  double predict_value(const FeatureVector& f) const;

  bool is_classifier() const {
    return kind == ModelKind::LogisticRegression || kind == ModelKind::LinearSVM;
  }
};

enum class Usefulness { Useful, Useless };

// Filter verdict for one cut. `prev_prediction_in_iteration` is the clamped
// predicted CR of the cut with order s-1 in the same iteration; pass a
// negative value when there is none (s = 1). The first cut of a pool is
// always useful; a regressor marks a cut useless only when its own and its
// predecessor's clamped predictions both equal 1 within 1e-9.
Usefulness predict_useful(const TrainedModel& model, const FeatureVector& f,
                          double prev_prediction_in_iteration);

// Retains the minority class and a seeded uniform subset of the majority
// class at majority:minority = ratio. Throws SingleClassError when the
// dataset does not contain both classes.
CutDataset undersample(const CutDataset& dataset, double ratio,
                       std::uint64_t seed);

struct ClassifierOptions {
  double class_weight_useful = 2.0;
  double class_weight_useless = 1.0;
  int epochs = 4000;
  double learning_rate = 0.5;
  double svm_regularization = 1e-4;
  double gradient_tolerance = 1e-7;
};

TrainedModel train_classifier(const CutDataset& dataset, ModelKind kind,
                              const ClassifierOptions& options = {});

struct RegressorOptions {
  int n_trees = 100;
  int min_leaf = 2;
  std::uint64_t seed = 0;
};

TrainedModel train_regressor(const CutDataset& dataset, ModelKind kind,
                             const RegressorOptions& options = {});

// Area under the ROC curve with tie-corrected ranks; labels are 0/1.
double roc_auc(const std::vector<double>& scores, const std::vector<int>& labels);

// (false positive rate, true positive rate) points, threshold descending.
std::vector<std::pair<double, double>> roc_curve(
    const std::vector<double>& scores, const std::vector<int>& labels);

struct R2Result {
  double r2 = 0.0;
  bool perfect_fit = false;  // zero target variance; r2 reported as 1
};

R2Result r_squared(const std::vector<double>& predicted,
                   const std::vector<double>& actual);

}  // namespace gbd
