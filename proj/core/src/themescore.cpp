#include "themescope/themescore.hpp"

#include "themescope/errors.hpp"
#include "themescope/util.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

namespace themescope {

std::string_view to_string(AggregationMode mode) {
    return mode == AggregationMode::mean ? "mean" : "max";
}

AggregationMode parse_aggregation_mode(std::string_view s) {
    const std::string lower = util::to_lower(s);
    if (lower == "mean") return AggregationMode::mean;
    if (lower == "max") return AggregationMode::max;
    throw InputError("unknown aggregation mode: \"" + std::string(s) + "\" (expected mean|max)");
}

std::string FeatureKey::label() const {
    return theme_name + "_" + std::string(to_string(pos_group)) + "_" + std::string(to_string(mode));
}

namespace {

FeatureKey parse_feature_label(const std::string& label) {
    FeatureKey key;
    const auto take_suffix = [&](std::string& rest, std::string_view suffix) {
        if (rest.size() > suffix.size() + 1 &&
            rest.compare(rest.size() - suffix.size(), suffix.size(), suffix) == 0 &&
            rest[rest.size() - suffix.size() - 1] == '_') {
            rest.resize(rest.size() - suffix.size() - 1);
            return true;
        }
        return false;
    };
    std::string rest = label;
    if (take_suffix(rest, "mean")) key.mode = AggregationMode::mean;
    else if (take_suffix(rest, "max")) key.mode = AggregationMode::max;
    else throw InputError("feature label \"" + label + "\" lacks a _mean/_max suffix");
    bool matched = false;
    for (PosGroup g : {PosGroup::Adj, PosGroup::Verb, PosGroup::Noun, PosGroup::Adv}) {
        if (take_suffix(rest, to_string(g))) {
            key.pos_group = g;
            matched = true;
            break;
        }
    }
    if (!matched) throw InputError("feature label \"" + label + "\" lacks a POS group suffix");
    key.theme_name = rest;
    return key;
}

// Per-term association with a whole theme: the sum and the max of the pair
// similarities over the theme's resolvable words. Values are summed in
// sorted order, so permuting theme words cannot change the result even at
// the last bit; raw_theme_score and the batch builder share this.
struct TermAssociation {
    double sum = 0.0;
    double max = -std::numeric_limits<double>::infinity();
};

double sorted_sum(std::vector<double>& values) {
    std::sort(values.begin(), values.end());
    double total = 0.0;
    for (double v : values) total += v;
    return total;
}

TermAssociation associate(std::span<const float> term_vec,
                          const std::vector<std::span<const float>>& theme_vecs,
                          SimilarityForm form) {
    TermAssociation assoc;
    std::vector<double> sims;
    sims.reserve(theme_vecs.size());
    for (const auto& theme_vec : theme_vecs) {
        const double s = pair_similarity(term_vec, theme_vec, form);
        sims.push_back(s);
        if (s > assoc.max) assoc.max = s;
    }
    assoc.sum = sorted_sum(sims);
    return assoc;
}

std::vector<std::span<const float>> resolve_theme(const ThemeVector& theme,
                                                  const EmbeddingTable& table) {
    std::vector<std::span<const float>> vecs;
    for (const auto& word : theme.words) {
        if (const float* v = table.resolve(word)) vecs.emplace_back(v, table.dimension());
    }
    return vecs;
}

} // namespace

RawScore raw_theme_score(const DocumentFingerprint& fingerprint, const ThemeVector& theme,
                         const EmbeddingTable& table, AggregationMode mode, SimilarityForm form) {
    if (theme.words.empty()) throw EmptySelection("theme vector \"" + theme.name + "\" has no words");
    const auto theme_vecs = resolve_theme(theme, table);

    RawScore result;
    std::vector<double> partials; // per-term sums, summed in sorted order
    double total_max = -std::numeric_limits<double>::infinity();
    if (!theme_vecs.empty()) {
        for (const auto& [term, weight] : fingerprint.terms) {
            const float* v = table.resolve(term);
            if (!v) continue;
            const TermAssociation assoc = associate({v, table.dimension()}, theme_vecs, form);
            partials.push_back(assoc.sum);
            if (assoc.max > total_max) total_max = assoc.max;
            ++result.coverage;
        }
    }
    if (result.coverage == 0) {
        throw NoResolvablePairs("no resolvable (term, theme word) pairs for doc \"" +
                                fingerprint.doc_id + "\" against theme " + theme.label());
    }
    result.score = mode == AggregationMode::mean
                       ? sorted_sum(partials) / (static_cast<double>(result.coverage) *
                                                 static_cast<double>(theme_vecs.size()))
                       : total_max;
    return result;
}

std::vector<double> minmax_normalize(const std::vector<double>& column) {
    if (column.empty()) return {};
    const auto [lo_it, hi_it] = std::minmax_element(column.begin(), column.end());
    const double lo = *lo_it, hi = *hi_it;
    std::vector<double> out(column.size(), 0.0);
    if (hi == lo) return out;
    for (std::size_t i = 0; i < column.size(); ++i) {
        out[i] = (column[i] - lo) / (hi - lo);
    }
    return out;
}

ThemeScoreMatrix build_score_matrix(std::span<const DocumentFingerprint> fingerprints,
                                    std::span<const ThemeVector> themes,
                                    const EmbeddingTable& table,
                                    std::span<const AggregationMode> modes,
                                    const ScoreOptions& options) {
    if (fingerprints.empty()) throw InputError("build_score_matrix: no fingerprints");
    if (themes.empty()) throw InputError("build_score_matrix: no theme vectors");
    if (modes.empty()) throw InputError("build_score_matrix: no aggregation modes");

    ThemeScoreMatrix matrix;
    for (const auto& fp : fingerprints) matrix.doc_ids.push_back(fp.doc_id);
    for (const auto& theme : themes) {
        for (const auto mode : modes) {
            matrix.features.push_back({theme.name, theme.pos_group, mode});
        }
    }

    // unique fingerprint terms, resolved once
    std::map<std::string, std::size_t> term_ids;
    for (const auto& fp : fingerprints) {
        for (const auto& [term, weight] : fp.terms) term_ids.try_emplace(term, 0);
    }
    std::size_t next_id = 0;
    std::vector<const float*> term_vecs(term_ids.size());
    std::vector<const std::string*> term_names(term_ids.size());
    for (auto& [term, id] : term_ids) {
        id = next_id++;
        term_vecs[id] = table.resolve(term);
        term_names[id] = &term;
    }

    // theme-major association cache: cache[t][term_id]
    std::vector<std::vector<std::span<const float>>> theme_vecs(themes.size());
    for (std::size_t t = 0; t < themes.size(); ++t) theme_vecs[t] = resolve_theme(themes[t], table);

    std::vector<std::vector<TermAssociation>> cache(themes.size());
    for (std::size_t t = 0; t < themes.size(); ++t) {
        cache[t].resize(term_ids.size());
        if (theme_vecs[t].empty()) continue;
        util::parallel_for(term_ids.size(), options.threads, [&, t](std::size_t id) {
            if (term_vecs[id]) {
                cache[t][id] = associate({term_vecs[id], table.dimension()}, theme_vecs[t],
                                         options.form);
            }
        });
    }

    const std::size_t n_docs = fingerprints.size();
    const std::size_t n_features = matrix.features.size();
    matrix.raw.assign(n_docs, std::vector<double>(n_features, 0.0));
    matrix.coverage.assign(n_docs, std::vector<std::size_t>(n_features, 0));

    util::parallel_for(n_docs, options.threads, [&](std::size_t d) {
        const auto& fp = fingerprints[d];
        std::vector<double> partials;
        for (std::size_t t = 0; t < themes.size(); ++t) {
            partials.clear();
            double total_max = -std::numeric_limits<double>::infinity();
            std::size_t coverage = 0;
            if (!theme_vecs[t].empty()) {
                for (const auto& [term, weight] : fp.terms) {
                    const std::size_t id = term_ids.find(term)->second;
                    if (!term_vecs[id]) continue;
                    const TermAssociation& assoc = cache[t][id];
                    partials.push_back(assoc.sum);
                    if (assoc.max > total_max) total_max = assoc.max;
                    ++coverage;
                }
            }
            const double mean_score =
                coverage == 0 ? 0.0
                              : sorted_sum(partials) / (static_cast<double>(coverage) *
                                                        static_cast<double>(theme_vecs[t].size()));
            for (std::size_t m = 0; m < modes.size(); ++m) {
                const std::size_t f = t * modes.size() + m;
                matrix.coverage[d][f] = coverage;
                if (coverage == 0) continue;
                matrix.raw[d][f] = modes[m] == AggregationMode::mean ? mean_score : total_max;
            }
        }
    });

    for (std::size_t d = 0; d < n_docs; ++d) {
        for (std::size_t f = 0; f < n_features; ++f) {
            if (matrix.coverage[d][f] == 0) {
                throw NoResolvablePairs("no resolvable (term, theme word) pairs for doc \"" +
                                        matrix.doc_ids[d] + "\" against feature " +
                                        matrix.features[f].label());
            }
        }
    }

    matrix.normalized.assign(n_docs, std::vector<double>(n_features, 0.0));
    matrix.column_min.resize(n_features);
    matrix.column_max.resize(n_features);
    std::vector<double> column(n_docs);
    for (std::size_t f = 0; f < n_features; ++f) {
        for (std::size_t d = 0; d < n_docs; ++d) column[d] = matrix.raw[d][f];
        matrix.column_min[f] = *std::min_element(column.begin(), column.end());
        matrix.column_max[f] = *std::max_element(column.begin(), column.end());
        const auto normalized = minmax_normalize(column);
        for (std::size_t d = 0; d < n_docs; ++d) matrix.normalized[d][f] = normalized[d];
    }
    return matrix;
}

ColumnScales scales_of(const ThemeScoreMatrix& matrix) {
    return {matrix.features, matrix.column_min, matrix.column_max};
}

std::vector<double> apply_scales(std::span<const double> raw_row, const ColumnScales& scales) {
    if (raw_row.size() != scales.min.size()) {
        throw FeatureCountMismatch("apply_scales: row has " + std::to_string(raw_row.size()) +
                                   " features, scales have " + std::to_string(scales.min.size()));
    }
    std::vector<double> out(raw_row.size(), 0.0);
    for (std::size_t f = 0; f < raw_row.size(); ++f) {
        const double range = scales.max[f] - scales.min[f];
        if (range == 0.0) continue;
        out[f] = std::clamp((raw_row[f] - scales.min[f]) / range, 0.0, 1.0);
    }
    return out;
}

std::string score_matrix_to_csv(const ThemeScoreMatrix& matrix, bool raw) {
    std::string out = "doc_id";
    for (const auto& feature : matrix.features) {
        out += ',';
        out += feature.label();
    }
    out += '\n';
    const auto& values = raw ? matrix.raw : matrix.normalized;
    for (std::size_t d = 0; d < matrix.doc_ids.size(); ++d) {
        out += matrix.doc_ids[d];
        for (std::size_t f = 0; f < matrix.features.size(); ++f) {
            out += ',';
            out += util::format_fixed(values[d][f], raw ? 6 : 4);
        }
        out += '\n';
    }
    return out;
}

void write_scores_csv(const std::filesystem::path& path, const ThemeScoreMatrix& matrix, bool raw) {
    util::write_file_atomic(path, score_matrix_to_csv(matrix, raw));
}

ScoresFile read_scores_csv(const std::filesystem::path& path) {
    const auto lines = util::split_lines(util::read_file(path));
    if (lines.empty()) throw InputError(path.string() + ": empty scores file");
    auto header = util::split_csv(lines[0]);
    if (header.size() < 2 || header[0] != "doc_id") {
        throw InputError(path.string() + ": expected header `doc_id,<feature>,...`");
    }
    ScoresFile file;
    file.feature_names.assign(header.begin() + 1, header.end());
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = util::split_csv(lines[i]);
        if (fields.size() != header.size()) {
            throw InputError(path.string() + ":" + std::to_string(i + 1) + ": expected " +
                             std::to_string(header.size()) + " fields");
        }
        file.doc_ids.push_back(fields[0]);
        std::vector<double> row(fields.size() - 1);
        for (std::size_t f = 1; f < fields.size(); ++f) row[f - 1] = std::stod(fields[f]);
        file.values.push_back(std::move(row));
    }
    return file;
}

void write_scales_csv(const std::filesystem::path& path, const ColumnScales& scales) {
    std::string out = "feature,min,max\n";
    for (std::size_t f = 0; f < scales.features.size(); ++f) {
        out += scales.features[f].label();
        out += ',';
        out += util::format_roundtrip(scales.min[f]);
        out += ',';
        out += util::format_roundtrip(scales.max[f]);
        out += '\n';
    }
    util::write_file_atomic(path, out);
}

ColumnScales read_scales_csv(const std::filesystem::path& path) {
    const auto lines = util::split_lines(util::read_file(path));
    if (lines.empty() || lines[0] != "feature,min,max") {
        throw InputError(path.string() + ": expected scales header `feature,min,max`");
    }
    ColumnScales scales;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = util::split_csv(lines[i]);
        if (fields.size() != 3) {
            throw InputError(path.string() + ":" + std::to_string(i + 1) + ": expected 3 fields");
        }
        scales.features.push_back(parse_feature_label(fields[0]));
        scales.min.push_back(std::stod(fields[1]));
        scales.max.push_back(std::stod(fields[2]));
    }
    return scales;
}

} // namespace themescope
