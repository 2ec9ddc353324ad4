#include "themescope/learn.hpp"

#include "learn_detail.hpp"
#include "themescope/errors.hpp"
#include "themescope/util.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

namespace themescope {

std::string_view to_string(Algorithm algorithm) {
    switch (algorithm) {
        case Algorithm::knn: return "knn";
        case Algorithm::lda: return "lda";
        case Algorithm::random_forest: return "rf";
        case Algorithm::adaboost: return "adaboost";
        case Algorithm::gradient_boost: return "gbt";
    }
    return "knn";
}

Algorithm parse_algorithm(std::string_view s) {
    const std::string lower = util::to_lower(s);
    if (lower == "knn") return Algorithm::knn;
    if (lower == "lda") return Algorithm::lda;
    if (lower == "rf" || lower == "random_forest") return Algorithm::random_forest;
    if (lower == "adaboost") return Algorithm::adaboost;
    if (lower == "gbt" || lower == "gradient_boost") return Algorithm::gradient_boost;
    throw InputError("unknown algorithm: \"" + std::string(s) + "\" (expected knn|lda|rf|adaboost|gbt)");
}

std::string_view to_string(ClassWeighting weighting) {
    return weighting == ClassWeighting::uniform ? "uniform" : "balanced";
}

ClassWeighting parse_class_weighting(std::string_view s) {
    const std::string lower = util::to_lower(s);
    if (lower == "uniform") return ClassWeighting::uniform;
    if (lower == "balanced") return ClassWeighting::balanced;
    throw InputError("unknown weighting: \"" + std::string(s) + "\" (expected uniform|balanced)");
}

void TrainConfig::validate() const {
    if (knn_k < 1) throw InputError("knn k must be >= 1");
    if (trees < 1) throw InputError("tree/round count must be >= 1");
    if (max_depth != -1 && max_depth < 1) throw InputError("depth must be >= 1 (or -1 for default)");
    if (!(learning_rate > 0.0) || learning_rate > 10.0) {
        throw InputError("learning rate must be in (0, 10]");
    }
}

std::vector<double> sample_weights(std::span<const int> labels, ClassWeighting weighting) {
    std::vector<double> weights(labels.size(), 1.0);
    if (weighting == ClassWeighting::uniform) return weights;
    std::size_t pos = 0;
    for (int y : labels) pos += y == 1;
    const std::size_t neg = labels.size() - pos;
    if (pos == 0 || neg == 0) throw SingleClass("balanced weighting needs both classes");
    const double wp = static_cast<double>(labels.size()) / (2.0 * static_cast<double>(pos));
    const double wn = static_cast<double>(labels.size()) / (2.0 * static_cast<double>(neg));
    for (std::size_t i = 0; i < labels.size(); ++i) weights[i] = labels[i] == 1 ? wp : wn;
    return weights;
}

std::vector<double> ClassifierModel::predict_scores(const std::vector<std::vector<double>>& features) const {
    std::vector<double> scores;
    scores.reserve(features.size());
    for (const auto& row : features) {
        if (row.size() != feature_count_) {
            throw FeatureCountMismatch("model expects " + std::to_string(feature_count_) +
                                       " features, row has " + std::to_string(row.size()));
        }
        scores.push_back(score_row(row));
    }
    return scores;
}

void ClassifierModel::save(std::ostream& out) const {
    out << "themescope-model v1\n";
    out << "algorithm " << to_string(algorithm_) << '\n';
    out << "weighting " << to_string(weighting_) << '\n';
    out << "seed " << seed_ << '\n';
    out << "features " << feature_count_ << '\n';
    out << "feature_names";
    for (const auto& name : feature_names_) out << ' ' << name;
    out << '\n';
    out << "params " << params_line_ << '\n';
    save_body(out);
    out << "end\n";
}

namespace {

std::string expect_line(std::istream& in, std::string_view key) {
    std::string line;
    if (!std::getline(in, line)) throw InputError("model file: truncated before `" + std::string(key) + "`");
    if (line.rfind(key, 0) != 0 || (line.size() > key.size() && line[key.size()] != ' ')) {
        throw InputError("model file: expected `" + std::string(key) + " ...`, got \"" + line + "\"");
    }
    return line.size() > key.size() ? line.substr(key.size() + 1) : std::string();
}

} // namespace

std::unique_ptr<ClassifierModel> train_classifier(const LabeledDataset& train, const TrainConfig& config) {
    config.validate();
    if (train.features.size() != train.labels.size()) {
        throw LengthMismatch("train_classifier: " + std::to_string(train.features.size()) +
                             " rows vs " + std::to_string(train.labels.size()) + " labels");
    }
    if (train.size() == 0) throw InputError("train_classifier: empty dataset");
    if (train.features[0].empty()) throw InputError("train_classifier: rows have no features");
    std::size_t pos = 0;
    for (int y : train.labels) pos += y == 1;
    if (pos == 0 || pos == train.size()) {
        throw SingleClass("train_classifier: training data holds a single class");
    }
    const auto weights = sample_weights(train.labels, config.class_weighting);
    return detail::train_body(train, config, weights);
}

std::unique_ptr<ClassifierModel> load_model(std::istream& in) {
    std::string magic;
    if (!std::getline(in, magic) || magic != "themescope-model v1") {
        throw InputError("not a themescope model file (bad magic line)");
    }
    detail::ModelHeader header;
    header.algorithm = parse_algorithm(expect_line(in, "algorithm"));
    header.weighting = parse_class_weighting(expect_line(in, "weighting"));
    header.seed = std::stoull(expect_line(in, "seed"));
    header.feature_count = std::stoull(expect_line(in, "features"));
    {
        std::istringstream names(expect_line(in, "feature_names"));
        std::string name;
        while (names >> name) header.feature_names.push_back(name);
    }
    {
        std::istringstream params(expect_line(in, "params"));
        std::string token;
        header.knn_k = 5;
        header.trees = 100;
        header.max_depth = -1;
        header.learning_rate = 0.1;
        while (params >> token) {
            const auto eq = token.find('=');
            if (eq == std::string::npos) throw InputError("model file: bad params token \"" + token + "\"");
            const std::string key = token.substr(0, eq);
            const std::string value = token.substr(eq + 1);
            if (key == "k") header.knn_k = std::stoi(value);
            else if (key == "trees") header.trees = std::stoi(value);
            else if (key == "depth") header.max_depth = std::stoi(value);
            else if (key == "lr") header.learning_rate = std::stod(value);
            else throw InputError("model file: unknown params key \"" + key + "\"");
        }
    }
    auto model = detail::load_body(header, in);
    const std::string tail = expect_line(in, "end");
    if (!tail.empty()) throw InputError("model file: trailing data after body");
    return model;
}

std::unique_ptr<ClassifierModel> load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open model file: " + path.string());
    return load_model(in);
}

void save_model(const std::filesystem::path& path, const ClassifierModel& model) {
    std::ostringstream out;
    model.save(out);
    util::write_file_atomic(path, out.str());
}

std::vector<int> classify(std::span<const double> scores, double threshold) {
    std::vector<int> predictions(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) predictions[i] = scores[i] >= threshold ? 1 : 0;
    return predictions;
}

// evaluation -----------------------------------------------------------------

EvalReport compute_metrics(std::span<const int> predictions, std::span<const int> labels) {
    if (predictions.size() != labels.size()) {
        throw LengthMismatch("compute_metrics: " + std::to_string(predictions.size()) +
                             " predictions vs " + std::to_string(labels.size()) + " labels");
    }
    EvalReport r;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const bool pos = labels[i] == 1;
        const bool hit = predictions[i] == 1;
        if (pos && hit) ++r.tp;
        else if (pos && !hit) ++r.fn;
        else if (!pos && hit) ++r.fp;
        else ++r.tn;
    }
    r.precision_defined = r.tp + r.fp > 0;
    r.recall_defined = r.tp + r.fn > 0;
    r.precision = r.precision_defined ? static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fp) : 0.0;
    r.recall = r.recall_defined ? static_cast<double>(r.tp) / static_cast<double>(r.tp + r.fn) : 0.0;

    // macro F1: unweighted mean of the per-class F1 scores
    const auto f1 = [](double num_tp, double num_fp, double num_fn) {
        const double denom = 2.0 * num_tp + num_fp + num_fn;
        return denom > 0.0 ? 2.0 * num_tp / denom : 0.0;
    };
    const double f1_pos = f1(static_cast<double>(r.tp), static_cast<double>(r.fp), static_cast<double>(r.fn));
    const double f1_neg = f1(static_cast<double>(r.tn), static_cast<double>(r.fn), static_cast<double>(r.fp));
    r.f1_macro = 0.5 * (f1_pos + f1_neg);

    const auto total = r.tp + r.fn + r.fp + r.tn;
    r.base_rate = total > 0 ? static_cast<double>(r.tp + r.fn) / static_cast<double>(total) : 0.0;
    r.auc = std::numeric_limits<double>::quiet_NaN();
    return r;
}

double roc_auc(std::span<const double> scores, std::span<const int> labels) {
    if (scores.size() != labels.size()) {
        throw LengthMismatch("roc_auc: scores and labels differ in length");
    }
    std::size_t n_pos = 0;
    for (int y : labels) n_pos += y == 1;
    const std::size_t n_neg = labels.size() - n_pos;
    if (n_pos == 0 || n_neg == 0) throw SingleClass("roc_auc needs both classes");

    // Mann-Whitney via average ranks; ties within a group share rank mass
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (scores[a] != scores[b]) return scores[a] < scores[b];
        return a < b;
    });
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
        const double avg_rank = 0.5 * static_cast<double>(i + 1 + j); // ranks are 1-based
        for (std::size_t k = i; k < j; ++k) {
            if (labels[order[k]] == 1) rank_sum_pos += avg_rank;
        }
        i = j;
    }
    const double u = rank_sum_pos - static_cast<double>(n_pos) * (static_cast<double>(n_pos) + 1.0) / 2.0;
    return u / (static_cast<double>(n_pos) * static_cast<double>(n_neg));
}

std::vector<RocPoint> roc_curve(std::span<const double> scores, std::span<const int> labels) {
    std::size_t n_pos = 0;
    for (int y : labels) n_pos += y == 1;
    const std::size_t n_neg = labels.size() - n_pos;
    if (n_pos == 0 || n_neg == 0) throw SingleClass("roc_curve needs both classes");

    std::vector<double> thresholds(scores.begin(), scores.end());
    std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    std::vector<RocPoint> points;
    points.reserve(thresholds.size());
    for (double t : thresholds) {
        std::size_t tp = 0, fp = 0;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            if (scores[i] >= t) {
                if (labels[i] == 1) ++tp;
                else ++fp;
            }
        }
        points.push_back({t, static_cast<double>(tp) / static_cast<double>(n_pos),
                          static_cast<double>(fp) / static_cast<double>(n_neg)});
    }
    return points;
}

// partitioning ---------------------------------------------------------------

PartitionScheme PartitionScheme::kfold(int k) {
    PartitionScheme s;
    s.kind = Kind::kfold;
    s.k = k;
    return s;
}

PartitionScheme PartitionScheme::split(double train, double validation, double test) {
    PartitionScheme s;
    s.kind = Kind::split;
    s.train_fraction = train;
    s.validation_fraction = validation;
    s.test_fraction = test;
    return s;
}

namespace {

// Shuffled per-class index lists, in fixed class order (positives first).
std::vector<std::vector<std::size_t>> class_indices(std::span<const int> labels, util::Rng& rng) {
    std::vector<std::vector<std::size_t>> classes(2);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        classes[labels[i] == 1 ? 0 : 1].push_back(i);
    }
    for (auto& idx : classes) rng.shuffle(idx);
    return classes;
}

std::vector<int> stratified_kfold(std::span<const int> labels, int k, std::uint64_t seed) {
    if (k < 2) throw InputError("k-fold needs k >= 2");
    util::Rng rng(seed);
    const auto classes = class_indices(labels, rng);
    for (const auto& idx : classes) {
        if (idx.size() < static_cast<std::size_t>(k)) {
            throw TooFewSamples("stratified k-fold: a class has " + std::to_string(idx.size()) +
                                " members, fewer than k=" + std::to_string(k));
        }
    }
    std::vector<int> fold(labels.size(), -1);
    std::vector<std::size_t> load(static_cast<std::size_t>(k), 0);
    for (const auto& idx : classes) {
        const std::size_t q = idx.size() / static_cast<std::size_t>(k);
        const std::size_t r = idx.size() % static_cast<std::size_t>(k);
        std::vector<std::size_t> target(static_cast<std::size_t>(k), q);
        // the r spare samples go to the currently lightest folds, which keeps
        // total fold sizes within one of each other across classes
        std::vector<std::size_t> by_load(static_cast<std::size_t>(k));
        std::iota(by_load.begin(), by_load.end(), 0);
        std::stable_sort(by_load.begin(), by_load.end(),
                         [&](std::size_t a, std::size_t b) { return load[a] < load[b]; });
        for (std::size_t j = 0; j < r; ++j) ++target[by_load[j]];

        std::size_t next = 0;
        for (int f = 0; f < k; ++f) {
            for (std::size_t j = 0; j < target[static_cast<std::size_t>(f)]; ++j) {
                fold[idx[next++]] = f;
            }
            load[static_cast<std::size_t>(f)] += target[static_cast<std::size_t>(f)];
        }
    }
    return fold;
}

std::vector<int> stratified_split(std::span<const int> labels, const PartitionScheme& scheme,
                                  std::uint64_t seed) {
    const double fractions[3] = {scheme.train_fraction, scheme.validation_fraction,
                                 scheme.test_fraction};
    double sum = 0.0;
    for (double f : fractions) {
        if (f < 0.0) throw InputError("split fractions must be non-negative");
        sum += f;
    }
    if (std::fabs(sum - 1.0) > 1e-9) throw InputError("split fractions must sum to 1");

    util::Rng rng(seed);
    const auto classes = class_indices(labels, rng);
    for (const auto& idx : classes) {
        if (idx.empty()) throw TooFewSamples("stratified split: a class is absent");
    }
    std::vector<int> role(labels.size(), -1);
    for (const auto& idx : classes) {
        // largest-remainder allocation of this class across the three roles
        const double n = static_cast<double>(idx.size());
        std::size_t count[3];
        double remainder[3];
        std::size_t assigned = 0;
        for (int r = 0; r < 3; ++r) {
            const double exact = fractions[r] * n;
            count[r] = static_cast<std::size_t>(exact);
            remainder[r] = exact - static_cast<double>(count[r]);
            assigned += count[r];
        }
        std::size_t leftover = idx.size() - assigned;
        std::vector<int> by_remainder = {0, 1, 2};
        std::stable_sort(by_remainder.begin(), by_remainder.end(),
                         [&](int a, int b) { return remainder[a] > remainder[b]; });
        for (std::size_t j = 0; j < leftover; ++j) ++count[by_remainder[j % 3]];

        std::size_t next = 0;
        for (int r = 0; r < 3; ++r) {
            for (std::size_t j = 0; j < count[r]; ++j) role[idx[next++]] = r;
        }
    }
    return role;
}

} // namespace

PartitionAssignment stratified_partition(const LabeledDataset& dataset,
                                         const PartitionScheme& scheme, std::uint64_t seed) {
    if (dataset.features.size() != dataset.labels.size()) {
        throw LengthMismatch("stratified_partition: rows vs labels");
    }
    PartitionAssignment out;
    out.scheme = scheme;
    out.assignment = scheme.kind == PartitionScheme::Kind::kfold
                         ? stratified_kfold(dataset.labels, scheme.k, seed)
                         : stratified_split(dataset.labels, scheme, seed);
    return out;
}

CrossValidationScores cross_validate_scores(const LabeledDataset& dataset, const TrainConfig& config,
                                            int k, std::uint64_t seed) {
    const auto partition = stratified_partition(dataset, PartitionScheme::kfold(k), seed);
    CrossValidationScores out;
    out.fold = partition.assignment;
    out.scores.assign(dataset.size(), 0.0);

    for (int f = 0; f < k; ++f) {
        LabeledDataset train;
        train.feature_names = dataset.feature_names;
        std::vector<std::size_t> test_rows;
        for (std::size_t i = 0; i < dataset.size(); ++i) {
            if (out.fold[i] == f) {
                test_rows.push_back(i);
            } else {
                train.features.push_back(dataset.features[i]);
                train.labels.push_back(dataset.labels[i]);
            }
        }
        const auto model = train_classifier(train, config);
        std::vector<std::vector<double>> test_features;
        test_features.reserve(test_rows.size());
        for (std::size_t i : test_rows) test_features.push_back(dataset.features[i]);
        const auto scores = model->predict_scores(test_features);
        for (std::size_t j = 0; j < test_rows.size(); ++j) out.scores[test_rows[j]] = scores[j];
    }
    return out;
}

EvalReport cross_validate(const LabeledDataset& dataset, const TrainConfig& config, int k,
                          std::uint64_t seed, double threshold) {
    const auto cv = cross_validate_scores(dataset, config, k, seed);
    EvalReport report = compute_metrics(classify(cv.scores, threshold), dataset.labels);
    report.auc = roc_auc(cv.scores, dataset.labels);
    return report;
}

} // namespace themescope
