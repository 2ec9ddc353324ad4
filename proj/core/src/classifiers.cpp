#include "learn_detail.hpp"
#include "themescope/errors.hpp"
#include "themescope/util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace themescope::detail {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

std::string format_params(int knn_k, int trees, int max_depth, double learning_rate) {
    std::string out;
    out += "k=" + std::to_string(knn_k);
    out += " trees=" + std::to_string(trees);
    out += " depth=" + std::to_string(max_depth);
    out += " lr=" + util::format_roundtrip(learning_rate);
    return out;
}

void apply_header(ClassifierModel& model, const ModelHeader& header) {
    ModelAccess::fill(model, header,
                      format_params(header.knn_k, header.trees, header.max_depth,
                                    header.learning_rate));
}

// KNN -------------------------------------------------------------------

class KnnModel final : public ClassifierModel {
public:
    int k = 5;
    std::vector<std::vector<double>> points;
    std::vector<int> labels;
    std::vector<double> weights;

    double score_row(std::span<const double> row) const override {
        std::vector<std::size_t> order(points.size());
        std::iota(order.begin(), order.end(), 0);
        std::vector<double> dist(points.size(), 0.0);
        for (std::size_t i = 0; i < points.size(); ++i) {
            double d = 0.0;
            for (std::size_t f = 0; f < row.size(); ++f) {
                const double diff = row[f] - points[i][f];
                d += diff * diff;
            }
            dist[i] = d;
        }
        const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), points.size());
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                          [&](std::size_t a, std::size_t b) {
                              if (dist[a] != dist[b]) return dist[a] < dist[b];
                              return a < b;
                          });
        double vote = 0.0, total = 0.0;
        for (std::size_t j = 0; j < take; ++j) {
            const std::size_t i = order[j];
            total += weights[i];
            if (labels[i] == 1) vote += weights[i];
        }
        return total > 0.0 ? vote / total : 0.5;
    }

    void save_body(std::ostream& out) const override {
        out << "samples " << points.size() << '\n';
        for (std::size_t i = 0; i < points.size(); ++i) {
            out << labels[i] << ' ' << util::format_roundtrip(weights[i]);
            for (double x : points[i]) out << ' ' << util::format_roundtrip(x);
            out << '\n';
        }
    }
};

// LDA -------------------------------------------------------------------

class LdaModel final : public ClassifierModel {
public:
    std::vector<double> coef;
    double intercept = 0.0;

    double score_row(std::span<const double> row) const override {
        double z = intercept;
        for (std::size_t f = 0; f < row.size(); ++f) z += coef[f] * row[f];
        return sigmoid(z);
    }

    void save_body(std::ostream& out) const override {
        out << "coef";
        for (double c : coef) out << ' ' << util::format_roundtrip(c);
        out << '\n';
        out << "intercept " << util::format_roundtrip(intercept) << '\n';
    }
};

// Cholesky solve of (symmetric positive definite) A x = b, in place.
std::vector<double> spd_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t j = 0; j < n; ++j) {
        double diag = a[j][j];
        for (std::size_t k = 0; k < j; ++k) diag -= a[j][k] * a[j][k];
        if (diag <= 0.0) throw Error("LDA scatter matrix not positive definite");
        a[j][j] = std::sqrt(diag);
        for (std::size_t i = j + 1; i < n; ++i) {
            double v = a[i][j];
            for (std::size_t k = 0; k < j; ++k) v -= a[i][k] * a[j][k];
            a[i][j] = v / a[j][j];
        }
    }
    for (std::size_t i = 0; i < n; ++i) { // L y = b
        for (std::size_t k = 0; k < i; ++k) b[i] -= a[i][k] * b[k];
        b[i] /= a[i][i];
    }
    for (std::size_t i = n; i-- > 0;) { // L^T x = y
        for (std::size_t k = i + 1; k < n; ++k) b[i] -= a[k][i] * b[k];
        b[i] /= a[i][i];
    }
    return b;
}

std::unique_ptr<LdaModel> train_lda(const LabeledDataset& train, std::span<const double> weights) {
    const std::size_t n = train.size();
    const std::size_t d = train.features[0].size();
    double w_pos = 0.0, w_neg = 0.0;
    std::vector<double> mu_pos(d, 0.0), mu_neg(d, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        auto& mu = train.labels[i] == 1 ? mu_pos : mu_neg;
        (train.labels[i] == 1 ? w_pos : w_neg) += weights[i];
        for (std::size_t f = 0; f < d; ++f) mu[f] += weights[i] * train.features[i][f];
    }
    for (std::size_t f = 0; f < d; ++f) {
        mu_pos[f] /= w_pos;
        mu_neg[f] /= w_neg;
    }

    // pooled within-class scatter with a small ridge, then the usual
    // two-class discriminant in linear form
    std::vector<std::vector<double>> scatter(d, std::vector<double>(d, 0.0));
    std::vector<double> centered(d);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& mu = train.labels[i] == 1 ? mu_pos : mu_neg;
        for (std::size_t f = 0; f < d; ++f) centered[f] = train.features[i][f] - mu[f];
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = r; c < d; ++c) {
                scatter[r][c] += weights[i] * centered[r] * centered[c];
            }
        }
    }
    constexpr double kRidge = 1e-6;
    const double denom = std::max(w_pos + w_neg - 2.0, 1e-12);
    for (std::size_t r = 0; r < d; ++r) {
        scatter[r][r] += kRidge;
        for (std::size_t c = r; c < d; ++c) {
            scatter[r][c] /= denom;
            scatter[c][r] = scatter[r][c];
        }
    }

    std::vector<double> diff(d);
    for (std::size_t f = 0; f < d; ++f) diff[f] = mu_pos[f] - mu_neg[f];
    auto model = std::make_unique<LdaModel>();
    model->coef = spd_solve(scatter, diff);
    double mid = 0.0;
    for (std::size_t f = 0; f < d; ++f) mid += 0.5 * (mu_pos[f] + mu_neg[f]) * model->coef[f];
    model->intercept = -mid + std::log(w_pos / w_neg);
    return model;
}

// decision trees ----------------------------------------------------------

struct SplitScan {
    // indices sorted per feature once; reused by every node of a tree
    std::vector<std::vector<std::size_t>> sorted_by_feature;

    static SplitScan presort(const std::vector<std::vector<double>>& x, std::size_t d) {
        SplitScan scan;
        scan.sorted_by_feature.resize(d);
        for (std::size_t f = 0; f < d; ++f) {
            auto& order = scan.sorted_by_feature[f];
            order.resize(x.size());
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                if (x[a][f] != x[b][f]) return x[a][f] < x[b][f];
                return a < b;
            });
        }
        return scan;
    }
};

struct BestSplit {
    int feature = -1;
    double threshold = 0.0;
    double cost = std::numeric_limits<double>::infinity();
};

// Classification tree on weighted Gini impurity. `in_node` marks membership
// of the current node; rows can repeat via `multiplicity` (bootstrap).
class GiniTreeBuilder {
public:
    GiniTreeBuilder(const std::vector<std::vector<double>>& x, std::span<const int> y,
                    std::span<const double> w, std::span<const std::size_t> multiplicity,
                    int max_depth, std::size_t mtry, util::Rng* rng, const SplitScan& scan)
        : x_(x), y_(y), w_(w), multiplicity_(multiplicity), max_depth_(max_depth), mtry_(mtry),
          rng_(rng), scan_(scan) {}

    Tree build() {
        Tree tree;
        std::vector<std::size_t> member(x_.size());
        for (std::size_t i = 0; i < x_.size(); ++i) member[i] = multiplicity_[i];
        grow(tree, member, 0);
        return tree;
    }

private:
    const std::vector<std::vector<double>>& x_;
    std::span<const int> y_;
    std::span<const double> w_;
    std::span<const std::size_t> multiplicity_;
    int max_depth_;
    std::size_t mtry_;
    util::Rng* rng_;
    const SplitScan& scan_;

    int grow(Tree& tree, const std::vector<std::size_t>& member, int depth) {
        double total_w = 0.0, pos_w = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < member.size(); ++i) {
            if (!member[i]) continue;
            const double w = w_[i] * static_cast<double>(member[i]);
            total_w += w;
            count += member[i];
            if (y_[i] == 1) pos_w += w;
        }
        const double frac = total_w > 0.0 ? pos_w / total_w : 0.0;
        const int node = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back({-1, 0.0, frac, -1, -1});
        if (depth >= max_depth_ || count < 2 || pos_w == 0.0 || pos_w == total_w) return node;

        const BestSplit best = find_split(member, total_w, pos_w);
        if (best.feature < 0) return node;

        std::vector<std::size_t> left(member.size(), 0), right(member.size(), 0);
        for (std::size_t i = 0; i < member.size(); ++i) {
            if (!member[i]) continue;
            (x_[i][static_cast<std::size_t>(best.feature)] < best.threshold ? left : right)[i] =
                member[i];
        }
        tree.nodes[static_cast<std::size_t>(node)].feature = best.feature;
        tree.nodes[static_cast<std::size_t>(node)].threshold = best.threshold;
        const int l = grow(tree, left, depth + 1);
        tree.nodes[static_cast<std::size_t>(node)].left = l;
        const int r = grow(tree, right, depth + 1);
        tree.nodes[static_cast<std::size_t>(node)].right = r;
        return node;
    }

    BestSplit find_split(const std::vector<std::size_t>& member, double total_w, double pos_w) {
        const std::size_t d = x_[0].size();
        std::vector<std::size_t> features(d);
        std::iota(features.begin(), features.end(), 0);
        if (mtry_ < d && rng_) {
            for (std::size_t j = 0; j < mtry_; ++j) {
                std::swap(features[j], features[j + rng_->index(d - j)]);
            }
            features.resize(mtry_);
        }

        BestSplit best;
        for (const std::size_t f : features) {
            const auto& order = scan_.sorted_by_feature[f];
            double wl = 0.0, pl = 0.0;
            double prev_value = 0.0;
            bool have_prev = false;
            for (const std::size_t i : order) {
                if (!member[i]) continue;
                const double value = x_[i][f];
                if (have_prev && value != prev_value && wl > 0.0 && wl < total_w) {
                    const double wr = total_w - wl;
                    const double pr = pos_w - pl;
                    const double gini_l = 2.0 * (pl / wl) * (1.0 - pl / wl);
                    const double gini_r = 2.0 * (pr / wr) * (1.0 - pr / wr);
                    const double cost = wl * gini_l + wr * gini_r;
                    if (cost < best.cost) {
                        best = {static_cast<int>(f), value, cost};
                    }
                }
                const double w = w_[i] * static_cast<double>(member[i]);
                wl += w;
                if (y_[i] == 1) pl += w;
                prev_value = value;
                have_prev = true;
            }
        }
        return best;
    }
};

// Regression tree on weighted squared error, for boosted residual fits.
// Leaf values are a Newton step: sum(w*r) / sum(w*p*(1-p)).
class ResidualTreeBuilder {
public:
    ResidualTreeBuilder(const std::vector<std::vector<double>>& x, std::span<const double> residual,
                        std::span<const double> w, std::span<const double> hessian, int max_depth,
                        const SplitScan& scan)
        : x_(x), residual_(residual), w_(w), hessian_(hessian), max_depth_(max_depth), scan_(scan) {}

    Tree build() {
        Tree tree;
        std::vector<char> member(x_.size(), 1);
        grow(tree, member, 0);
        return tree;
    }

private:
    const std::vector<std::vector<double>>& x_;
    std::span<const double> residual_;
    std::span<const double> w_;
    std::span<const double> hessian_;
    int max_depth_;
    const SplitScan& scan_;

    int grow(Tree& tree, const std::vector<char>& member, int depth) {
        double grad = 0.0, hess = 0.0, total_w = 0.0, sum_wr = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < member.size(); ++i) {
            if (!member[i]) continue;
            grad += w_[i] * residual_[i];
            hess += w_[i] * hessian_[i];
            total_w += w_[i];
            sum_wr += w_[i] * residual_[i];
            ++count;
        }
        const double leaf = grad / std::max(hess, 1e-12);
        const int node = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back({-1, 0.0, leaf, -1, -1});
        if (depth >= max_depth_ || count < 2) return node;

        // minimize weighted SSE of the residuals = maximize sum of
        // (sum w r)^2 / (sum w) over the two sides
        BestSplit best;
        best.cost = -std::numeric_limits<double>::infinity();
        const double parent_gain = total_w > 0.0 ? sum_wr * sum_wr / total_w : 0.0;
        const std::size_t d = x_[0].size();
        for (std::size_t f = 0; f < d; ++f) {
            const auto& order = scan_.sorted_by_feature[f];
            double wl = 0.0, sl = 0.0;
            double prev_value = 0.0;
            bool have_prev = false;
            for (const std::size_t i : order) {
                if (!member[i]) continue;
                const double value = x_[i][f];
                if (have_prev && value != prev_value && wl > 0.0 && wl < total_w) {
                    const double wr = total_w - wl;
                    const double sr = sum_wr - sl;
                    const double gain = sl * sl / wl + sr * sr / wr;
                    if (gain > best.cost) {
                        best = {static_cast<int>(f), value, gain};
                    }
                }
                wl += w_[i];
                sl += w_[i] * residual_[i];
                prev_value = value;
                have_prev = true;
            }
        }
        if (best.feature < 0 || best.cost <= parent_gain + 1e-12) return node;

        std::vector<char> left(member.size(), 0), right(member.size(), 0);
        for (std::size_t i = 0; i < member.size(); ++i) {
            if (!member[i]) continue;
            (x_[i][static_cast<std::size_t>(best.feature)] < best.threshold ? left : right)[i] = 1;
        }
        tree.nodes[static_cast<std::size_t>(node)].feature = best.feature;
        tree.nodes[static_cast<std::size_t>(node)].threshold = best.threshold;
        const int l = grow(tree, left, depth + 1);
        tree.nodes[static_cast<std::size_t>(node)].left = l;
        const int r = grow(tree, right, depth + 1);
        tree.nodes[static_cast<std::size_t>(node)].right = r;
        return node;
    }
};

// random forest -----------------------------------------------------------

class ForestModel final : public ClassifierModel {
public:
    std::vector<Tree> trees;

    double score_row(std::span<const double> row) const override {
        std::size_t votes = 0;
        for (const auto& tree : trees) votes += tree.predict(row) >= 0.5;
        return static_cast<double>(votes) / static_cast<double>(trees.size());
    }

    void save_body(std::ostream& out) const override {
        out << "trees " << trees.size() << '\n';
        for (const auto& tree : trees) save_tree(out, tree);
    }
};

std::unique_ptr<ForestModel> train_forest(const LabeledDataset& train,
                                          std::span<const double> weights, const TrainConfig& config) {
    const std::size_t n = train.size();
    const std::size_t d = train.features[0].size();
    const int depth = config.max_depth > 0 ? config.max_depth : 16;
    const std::size_t mtry = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(d)))));
    const auto scan = SplitScan::presort(train.features, d);

    auto model = std::make_unique<ForestModel>();
    model->trees.reserve(static_cast<std::size_t>(config.trees));
    std::vector<std::size_t> multiplicity(n);
    for (int t = 0; t < config.trees; ++t) {
        util::Rng rng(mix_seed(config.seed, static_cast<std::uint64_t>(t)));
        std::fill(multiplicity.begin(), multiplicity.end(), 0);
        for (std::size_t i = 0; i < n; ++i) ++multiplicity[rng.index(n)];
        GiniTreeBuilder builder(train.features, train.labels, weights, multiplicity, depth, mtry,
                                &rng, scan);
        model->trees.push_back(builder.build());
    }
    return model;
}

// AdaBoost ------------------------------------------------------------------

struct Stump {
    int feature = 0;
    double threshold = 0.0;
    int polarity = 1; // +1: predict positive when x < threshold

    int predict(std::span<const double> row) const {
        const int below = row[static_cast<std::size_t>(feature)] < threshold ? 1 : -1;
        return polarity * below;
    }
};

class AdaBoostModel final : public ClassifierModel {
public:
    std::vector<Stump> stumps;
    std::vector<double> alphas;

    double score_row(std::span<const double> row) const override {
        double margin = 0.0, norm = 0.0;
        for (std::size_t t = 0; t < stumps.size(); ++t) {
            margin += alphas[t] * stumps[t].predict(row);
            norm += alphas[t];
        }
        if (norm <= 0.0) return 0.5;
        return 0.5 * (margin / norm + 1.0);
    }

    void save_body(std::ostream& out) const override {
        out << "stumps " << stumps.size() << '\n';
        for (std::size_t t = 0; t < stumps.size(); ++t) {
            out << stumps[t].feature << ' ' << util::format_roundtrip(stumps[t].threshold) << ' '
                << stumps[t].polarity << ' ' << util::format_roundtrip(alphas[t]) << '\n';
        }
    }
};

std::unique_ptr<AdaBoostModel> train_adaboost(const LabeledDataset& train,
                                              std::span<const double> weights,
                                              const TrainConfig& config) {
    const std::size_t n = train.size();
    const std::size_t d = train.features[0].size();
    const auto scan = SplitScan::presort(train.features, d);

    std::vector<double> w(weights.begin(), weights.end());
    double sum_w = std::accumulate(w.begin(), w.end(), 0.0);
    for (double& wi : w) wi /= sum_w;

    auto model = std::make_unique<AdaBoostModel>();
    for (int round = 0; round < config.trees; ++round) {
        // best stump by weighted error; err(polarity=-1) = 1 - err(polarity=+1)
        Stump best;
        double best_err = std::numeric_limits<double>::infinity();
        double pos_total = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (train.labels[i] == 1) pos_total += w[i];
        }
        for (std::size_t f = 0; f < d; ++f) {
            const auto& order = scan.sorted_by_feature[f];
            double wl = 0.0, pl = 0.0;
            double prev_value = 0.0;
            bool have_prev = false;
            for (const std::size_t i : order) {
                const double value = train.features[i][f];
                if (!have_prev || value != prev_value) {
                    // threshold candidate: x < value goes left
                    const double err_plus = (wl - pl) + (pos_total - pl);
                    for (int polarity : {1, -1}) {
                        const double err = polarity == 1 ? err_plus : 1.0 - err_plus;
                        if (err < best_err - 1e-15) {
                            best_err = err;
                            best = {static_cast<int>(f), value, polarity};
                        }
                    }
                }
                wl += w[i];
                if (train.labels[i] == 1) pl += w[i];
                prev_value = value;
                have_prev = true;
            }
        }
        if (best_err >= 0.5 - 1e-12) break; // no stump beats chance on these weights

        const double eps = std::clamp(best_err, 1e-12, 1.0 - 1e-12);
        const double alpha = 0.5 * std::log((1.0 - eps) / eps);
        model->stumps.push_back(best);
        model->alphas.push_back(alpha);

        double new_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const int y = train.labels[i] == 1 ? 1 : -1;
            w[i] *= std::exp(-alpha * y * best.predict(train.features[i]));
            new_sum += w[i];
        }
        for (double& wi : w) wi /= new_sum;

        if (best_err <= 1e-12) break; // perfect stump, nothing left to reweight
    }
    if (model->stumps.empty()) {
        // degenerate data: fall back to a constant-majority stump so the
        // model still scores
        double pos_w = 0.0, sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sum += w[i];
            if (train.labels[i] == 1) pos_w += w[i];
        }
        model->stumps.push_back(
            {0, -std::numeric_limits<double>::infinity(), pos_w >= 0.5 * sum ? -1 : 1});
        model->alphas.push_back(1e-3);
    }
    return model;
}

// gradient boosting ----------------------------------------------------------

class GradientBoostModel final : public ClassifierModel {
public:
    double f0 = 0.0;
    double learning_rate = 0.1;
    std::vector<Tree> trees;

    double score_row(std::span<const double> row) const override {
        double f = f0;
        for (const auto& tree : trees) f += learning_rate * tree.predict(row);
        return sigmoid(f);
    }

    void save_body(std::ostream& out) const override {
        out << "f0 " << util::format_roundtrip(f0) << '\n';
        out << "lr " << util::format_roundtrip(learning_rate) << '\n';
        out << "trees " << trees.size() << '\n';
        for (const auto& tree : trees) save_tree(out, tree);
    }
};

std::unique_ptr<GradientBoostModel> train_gradient_boost(const LabeledDataset& train,
                                                         std::span<const double> weights,
                                                         const TrainConfig& config) {
    const std::size_t n = train.size();
    const std::size_t d = train.features[0].size();
    const int depth = config.max_depth > 0 ? config.max_depth : 3;
    const auto scan = SplitScan::presort(train.features, d);

    double w_pos = 0.0, w_neg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        (train.labels[i] == 1 ? w_pos : w_neg) += weights[i];
    }
    auto model = std::make_unique<GradientBoostModel>();
    model->f0 = std::log(w_pos / w_neg);
    model->learning_rate = config.learning_rate;

    std::vector<double> f(n, model->f0);
    std::vector<double> residual(n), hessian(n);
    for (int round = 0; round < config.trees; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            const double p = sigmoid(f[i]);
            residual[i] = (train.labels[i] == 1 ? 1.0 : 0.0) - p;
            hessian[i] = p * (1.0 - p);
        }
        ResidualTreeBuilder builder(train.features, residual, weights, hessian, depth, scan);
        Tree tree = builder.build();
        for (std::size_t i = 0; i < n; ++i) {
            f[i] += config.learning_rate * tree.predict(train.features[i]);
        }
        model->trees.push_back(std::move(tree));
    }
    return model;
}

} // namespace

void ModelAccess::fill(ClassifierModel& model, const ModelHeader& header, std::string params_line) {
    model.algorithm_ = header.algorithm;
    model.weighting_ = header.weighting;
    model.seed_ = header.seed;
    model.feature_count_ = header.feature_count;
    model.feature_names_ = header.feature_names;
    model.params_line_ = std::move(params_line);
}

void save_tree(std::ostream& out, const Tree& tree) {
    out << "tree " << tree.nodes.size() << '\n';
    for (const auto& node : tree.nodes) {
        out << node.feature << ' ' << util::format_roundtrip(node.threshold) << ' '
            << util::format_roundtrip(node.value) << ' ' << node.left << ' ' << node.right << '\n';
    }
}

Tree load_tree(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("tree ", 0) != 0) {
        throw InputError("model file: expected `tree <n>`");
    }
    const std::size_t count = std::stoull(line.substr(5));
    Tree tree;
    tree.nodes.resize(count);
    for (auto& node : tree.nodes) {
        if (!std::getline(in, line)) throw InputError("model file: truncated tree");
        std::istringstream iss(line);
        if (!(iss >> node.feature >> node.threshold >> node.value >> node.left >> node.right)) {
            throw InputError("model file: bad tree node \"" + line + "\"");
        }
    }
    return tree;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::unique_ptr<ClassifierModel> train_body(const LabeledDataset& train, const TrainConfig& config,
                                            std::span<const double> weights) {
    std::unique_ptr<ClassifierModel> model;
    switch (config.algorithm) {
        case Algorithm::knn: {
            auto knn = std::make_unique<KnnModel>();
            knn->k = config.knn_k;
            knn->points = train.features;
            knn->labels = train.labels;
            knn->weights.assign(weights.begin(), weights.end());
            model = std::move(knn);
            break;
        }
        case Algorithm::lda:
            model = train_lda(train, weights);
            break;
        case Algorithm::random_forest:
            model = train_forest(train, weights, config);
            break;
        case Algorithm::adaboost:
            model = train_adaboost(train, weights, config);
            break;
        case Algorithm::gradient_boost:
            model = train_gradient_boost(train, weights, config);
            break;
    }
    ModelHeader header{config.algorithm, config.class_weighting, config.seed,
                       train.features[0].size(), train.feature_names,
                       config.knn_k, config.trees, config.max_depth, config.learning_rate};
    apply_header(*model, header);
    return model;
}

std::unique_ptr<ClassifierModel> load_body(const ModelHeader& header, std::istream& in) {
    std::string line;
    auto expect = [&](std::string_view key) {
        if (!std::getline(in, line) || line.rfind(key, 0) != 0) {
            throw InputError("model file: expected `" + std::string(key) + " ...`");
        }
        return line.substr(key.size() + 1);
    };

    std::unique_ptr<ClassifierModel> model;
    switch (header.algorithm) {
        case Algorithm::knn: {
            auto knn = std::make_unique<KnnModel>();
            knn->k = header.knn_k;
            const std::size_t n = std::stoull(expect("samples"));
            knn->points.resize(n, std::vector<double>(header.feature_count));
            knn->labels.resize(n);
            knn->weights.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                if (!std::getline(in, line)) throw InputError("model file: truncated knn samples");
                std::istringstream iss(line);
                iss >> knn->labels[i] >> knn->weights[i];
                for (auto& x : knn->points[i]) iss >> x;
                if (!iss) throw InputError("model file: bad knn sample row");
            }
            model = std::move(knn);
            break;
        }
        case Algorithm::lda: {
            auto lda = std::make_unique<LdaModel>();
            {
                std::istringstream iss(expect("coef"));
                double c;
                while (iss >> c) lda->coef.push_back(c);
            }
            lda->intercept = std::stod(expect("intercept"));
            if (lda->coef.size() != header.feature_count) {
                throw InputError("model file: LDA coefficient count mismatch");
            }
            model = std::move(lda);
            break;
        }
        case Algorithm::random_forest: {
            auto forest = std::make_unique<ForestModel>();
            const std::size_t count = std::stoull(expect("trees"));
            forest->trees.reserve(count);
            for (std::size_t t = 0; t < count; ++t) forest->trees.push_back(load_tree(in));
            model = std::move(forest);
            break;
        }
        case Algorithm::adaboost: {
            auto ada = std::make_unique<AdaBoostModel>();
            const std::size_t count = std::stoull(expect("stumps"));
            ada->stumps.resize(count);
            ada->alphas.resize(count);
            for (std::size_t t = 0; t < count; ++t) {
                if (!std::getline(in, line)) throw InputError("model file: truncated stumps");
                std::istringstream iss(line);
                if (!(iss >> ada->stumps[t].feature >> ada->stumps[t].threshold >>
                      ada->stumps[t].polarity >> ada->alphas[t])) {
                    throw InputError("model file: bad stump row \"" + line + "\"");
                }
            }
            model = std::move(ada);
            break;
        }
        case Algorithm::gradient_boost: {
            auto gbt = std::make_unique<GradientBoostModel>();
            gbt->f0 = std::stod(expect("f0"));
            gbt->learning_rate = std::stod(expect("lr"));
            const std::size_t count = std::stoull(expect("trees"));
            gbt->trees.reserve(count);
            for (std::size_t t = 0; t < count; ++t) gbt->trees.push_back(load_tree(in));
            model = std::move(gbt);
            break;
        }
    }
    apply_header(*model, header);
    return model;
}

} // namespace themescope::detail
