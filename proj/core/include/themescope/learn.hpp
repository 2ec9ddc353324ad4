#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace themescope {

/// Feature rows with binary labels (1 = positive/target class).
struct LabeledDataset {
    std::vector<std::vector<double>> features;
    std::vector<int> labels;
    std::vector<std::string> feature_names;

    std::size_t size() const { return features.size(); }
};

enum class Algorithm { knn, lda, random_forest, adaboost, gradient_boost };
enum class ClassWeighting { uniform, balanced };

std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view s);
std::string_view to_string(ClassWeighting weighting);
ClassWeighting parse_class_weighting(std::string_view s);

struct TrainConfig {
    Algorithm algorithm = Algorithm::random_forest;
    ClassWeighting class_weighting = ClassWeighting::uniform;
    int knn_k = 5;
    int trees = 100;       // forest size; boosting rounds
    int max_depth = -1;    // -1 = algorithm default (rf 16, gbt 3; adaboost is stumps)
    double learning_rate = 0.1;
    std::uint64_t seed = 0;

    /// Throws InputError when a hyperparameter is out of its documented range.
    void validate() const;
};

/// Per-sample training weights: all 1 for uniform; total / (2 * count_c) for
/// balanced, which reduces to uniform exactly when classes are balanced.
std::vector<double> sample_weights(std::span<const int> labels, ClassWeighting weighting);

namespace detail {
struct ModelAccess;
}

/// A trained classifier. predict_scores is deterministic and thread-safe.
class ClassifierModel {
public:
    virtual ~ClassifierModel() = default;

    Algorithm algorithm() const { return algorithm_; }
    std::size_t feature_count() const { return feature_count_; }
    const std::vector<std::string>& feature_names() const { return feature_names_; }

    /// Scores in [0, 1]. Throws FeatureCountMismatch.
    std::vector<double> predict_scores(const std::vector<std::vector<double>>& features) const;

    void save(std::ostream& out) const;

protected:
    virtual double score_row(std::span<const double> row) const = 0;
    virtual void save_body(std::ostream& out) const = 0;

private:
    Algorithm algorithm_ = Algorithm::knn;
    ClassWeighting weighting_ = ClassWeighting::uniform;
    std::uint64_t seed_ = 0;
    std::size_t feature_count_ = 0;
    std::vector<std::string> feature_names_;
    std::string params_line_;

    friend struct detail::ModelAccess;
};

/// Throws LengthMismatch (rows vs labels) or SingleClass (one-class input).
std::unique_ptr<ClassifierModel> train_classifier(const LabeledDataset& train, const TrainConfig& config);

std::unique_ptr<ClassifierModel> load_model(std::istream& in);
std::unique_ptr<ClassifierModel> load_model(const std::filesystem::path& path);
void save_model(const std::filesystem::path& path, const ClassifierModel& model);

/// score >= threshold -> 1.
std::vector<int> classify(std::span<const double> scores, double threshold = 0.5);

// evaluation -----------------------------------------------------------------

struct EvalReport {
    std::int64_t tp = 0, fn = 0, fp = 0, tn = 0;
    double precision = 0.0;
    double recall = 0.0;
    double f1_macro = 0.0;
    double auc = 0.0;
    double base_rate = 0.0;
    bool precision_defined = false; // tp + fp > 0
    bool recall_defined = false;    // tp + fn > 0
};

/// Confusion counts and derived metrics; auc is left NaN. Throws LengthMismatch.
EvalReport compute_metrics(std::span<const int> predictions, std::span<const int> labels);

/// Mann-Whitney pair statistic: P(score_pos > score_neg), ties 0.5.
/// Throws SingleClass.
double roc_auc(std::span<const double> scores, std::span<const int> labels);

struct RocPoint {
    double threshold = 0.0;
    double tpr = 0.0;
    double fpr = 0.0;
};

/// One point per distinct score, thresholds descending, prediction = score >= t.
std::vector<RocPoint> roc_curve(std::span<const double> scores, std::span<const int> labels);

// partitioning ---------------------------------------------------------------

struct PartitionScheme {
    enum class Kind { kfold, split };
    Kind kind = Kind::kfold;
    int k = 10;
    double train_fraction = 0.6, validation_fraction = 0.2, test_fraction = 0.2;

    static PartitionScheme kfold(int k);
    static PartitionScheme split(double train, double validation, double test);
};

enum class SplitRole { train = 0, validation = 1, test = 2 };

/// For kfold: fold id per sample. For split: SplitRole cast to int per sample.
struct PartitionAssignment {
    PartitionScheme scheme;
    std::vector<int> assignment;
};

/// Seeded, deterministic, stratified. Fold sizes differ by at most one and
/// per-fold class counts stay within +/-1 of exact proportionality. Throws
/// TooFewSamples when a class has fewer members than k (or is absent).
PartitionAssignment stratified_partition(const LabeledDataset& dataset,
                                         const PartitionScheme& scheme, std::uint64_t seed);

/// k-fold cross-validation with pooled confusion counts and pooled
/// out-of-fold AUC. Every fold trains with config.seed on exactly the
/// fold-complement rows, so retraining a fold reproduces its predictions.
EvalReport cross_validate(const LabeledDataset& dataset, const TrainConfig& config, int k,
                          std::uint64_t seed, double threshold = 0.5);

/// Out-of-fold scores in dataset order plus the fold assignment, for callers
/// that need more than the pooled report (ROC export, leakage checks).
struct CrossValidationScores {
    std::vector<int> fold;
    std::vector<double> scores;
};
CrossValidationScores cross_validate_scores(const LabeledDataset& dataset, const TrainConfig& config,
                                            int k, std::uint64_t seed);

} // namespace themescope
