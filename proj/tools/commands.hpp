#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace themescope::cli {

struct BuildThemeOptions {
    std::string corpus;
    std::vector<std::string> seed_words; // empty -> the eight defaults
    int window = 4;
    double mi_min = 3.0;
    int freq_min = 10;
    std::string out_dir;
    std::vector<std::string> argv;
};
int cmd_build_theme(const BuildThemeOptions& options);

struct FingerprintOptions {
    std::string corpus;
    int top_k = 100;
    int min_tokens = 100;
    std::string exclude_file;    // optional
    std::string embeddings;      // optional vocabulary source
    std::string embeddings_format = "auto";
    std::string out_dir;
    std::vector<std::string> argv;
};
int cmd_fingerprint(const FingerprintOptions& options);

struct ScoreOptionsCli {
    std::string fingerprints_dir;
    std::string themes_dir;
    std::string embeddings;
    std::string embeddings_format = "auto";
    std::string mode = "both"; // mean|max|both
    bool raw = false;
    std::string similarity_form = "cosine"; // cosine|one-minus-cosine
    std::string scales_file;                // optional frozen scales
    std::vector<std::string> compare;       // two raw text files -> comparison table
    std::string out_csv;
    std::vector<std::string> argv;
};
int cmd_score(const ScoreOptionsCli& options);

struct RankFeaturesOptions {
    std::string scores_csv;
    std::string labels_csv;
    std::string positive_label = "1";
    std::string out_csv;
    std::vector<std::string> argv;
};
int cmd_rank_features(const RankFeaturesOptions& options);

struct TrainOptions {
    std::string scores_csv;
    std::string labels_csv;
    std::string algorithm;
    std::string weighting = "uniform";
    std::string positive_label = "1";
    int k = 0;                 // >0 -> k-fold CV report
    std::string split;         // "0.6,0.2,0.2" -> split report
    std::uint64_t seed = 0;
    double threshold = 0.5;
    int knn_k = 5;
    int trees = 100;
    int depth = -1;
    double learning_rate = 0.1;
    std::string out_model;
    std::vector<std::string> argv;
};
int cmd_train(const TrainOptions& options);

struct EvaluateOptions {
    std::string model;
    std::string scores_csv;
    std::string labels_csv;
    std::string positive_label = "1";
    double threshold = 0.5;
    std::string out_csv;
    std::vector<std::string> argv;
};
int cmd_evaluate(const EvaluateOptions& options);

struct ScreenOptions {
    std::string model;
    std::string scores_csv;
    double threshold = 0.5;
    std::string out_csv;
    std::vector<std::string> argv;
};
int cmd_screen(const ScreenOptions& options);

} // namespace themescope::cli
