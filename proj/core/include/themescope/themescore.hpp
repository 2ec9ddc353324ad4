#pragma once

#include "themescope/colloc.hpp"
#include "themescope/embedding.hpp"
#include "themescope/fingerprint.hpp"

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace themescope {

enum class AggregationMode { mean, max };

std::string_view to_string(AggregationMode mode);
AggregationMode parse_aggregation_mode(std::string_view s);

/// One score-matrix column: a theme under one aggregation mode.
struct FeatureKey {
    std::string theme_name;
    PosGroup pos_group = PosGroup::Adj;
    AggregationMode mode = AggregationMode::mean;

    /// "Revenge_Adj_mean"
    std::string label() const;
};

struct RawScore {
    double score = 0.0;
    std::size_t coverage = 0; // fingerprint terms with at least one resolvable pair
};

/// Similarity between a fingerprint and a theme over all (term, theme word)
/// pairs present in the table: the mean over pairs, or the maximum pair.
/// Terms/words missing from the table are skipped, not zero-filled. Throws
/// NoResolvablePairs when no pair resolves.
RawScore raw_theme_score(const DocumentFingerprint& fingerprint, const ThemeVector& theme,
                         const EmbeddingTable& table, AggregationMode mode,
                         SimilarityForm form = SimilarityForm::cosine);

/// (x - min) / (max - min); a constant column maps to all zeros.
std::vector<double> minmax_normalize(const std::vector<double>& column);

struct ThemeScoreMatrix {
    std::vector<std::string> doc_ids;
    std::vector<FeatureKey> features;
    // row-major [doc][feature]
    std::vector<std::vector<double>> raw;
    std::vector<std::vector<double>> normalized;
    std::vector<std::vector<std::size_t>> coverage;
    // per-feature batch extrema, the frozen scale for later scoring
    std::vector<double> column_min;
    std::vector<double> column_max;
};

struct ScoreOptions {
    SimilarityForm form = SimilarityForm::cosine;
    int threads = 1;
};

/// Scores every fingerprint against every (theme, mode) column and MinMax-
/// normalizes per column. Feature order is theme-major over the declared
/// mode order. Cell values equal raw_theme_score exactly; per-theme pair
/// similarities are cached internally so large batches stay cheap.
ThemeScoreMatrix build_score_matrix(std::span<const DocumentFingerprint> fingerprints,
                                    std::span<const ThemeVector> themes,
                                    const EmbeddingTable& table,
                                    std::span<const AggregationMode> modes,
                                    const ScoreOptions& options = {});

/// Frozen per-column scales for scoring new documents against an existing
/// batch: normalized = clamp((raw - min) / (max - min), 0, 1).
struct ColumnScales {
    std::vector<FeatureKey> features;
    std::vector<double> min;
    std::vector<double> max;
};

ColumnScales scales_of(const ThemeScoreMatrix& matrix);
std::vector<double> apply_scales(std::span<const double> raw_row, const ColumnScales& scales);

// file formats ---------------------------------------------------------------

/// CSV `doc_id,<theme>_<pos>_<mode>,...`; normalized at 4 decimals, raw at 6.
std::string score_matrix_to_csv(const ThemeScoreMatrix& matrix, bool raw);
void write_scores_csv(const std::filesystem::path& path, const ThemeScoreMatrix& matrix, bool raw);

struct ScoresFile {
    std::vector<std::string> doc_ids;
    std::vector<std::string> feature_names;
    std::vector<std::vector<double>> values;
};
ScoresFile read_scores_csv(const std::filesystem::path& path);

/// Sidecar CSV `feature,min,max` at full precision.
void write_scales_csv(const std::filesystem::path& path, const ColumnScales& scales);
ColumnScales read_scales_csv(const std::filesystem::path& path);

} // namespace themescope
