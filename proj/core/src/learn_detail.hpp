#pragma once

#include "themescope/learn.hpp"

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

namespace themescope::detail {

/// Binary decision tree over feature rows. Internal nodes route on
/// row[feature] < threshold; leaves carry `value`.
struct TreeNode {
    int feature = -1; // -1 = leaf
    double threshold = 0.0;
    double value = 0.0;
    int left = -1;
    int right = -1;
};

struct Tree {
    std::vector<TreeNode> nodes;

    double predict(std::span<const double> row) const {
        int i = 0;
        while (nodes[i].feature >= 0) {
            i = row[nodes[i].feature] < nodes[i].threshold ? nodes[i].left : nodes[i].right;
        }
        return nodes[i].value;
    }
};

void save_tree(std::ostream& out, const Tree& tree);
Tree load_tree(std::istream& in);

/// Stable per-tree seed derivation (splitmix64 finalizer over seed, index).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

struct ModelHeader {
    Algorithm algorithm;
    ClassWeighting weighting;
    std::uint64_t seed;
    std::size_t feature_count;
    std::vector<std::string> feature_names;
    int knn_k;
    int trees;
    int max_depth;
    double learning_rate;
};

/// Sets the base-class metadata the save header is built from.
struct ModelAccess {
    static void fill(ClassifierModel& model, const ModelHeader& header, std::string params_line);
};

std::unique_ptr<ClassifierModel> train_body(const LabeledDataset& train, const TrainConfig& config,
                                            std::span<const double> weights);
std::unique_ptr<ClassifierModel> load_body(const ModelHeader& header, std::istream& in);

} // namespace themescope::detail
