#include "themescope/themescore.hpp"

#include "themescope/errors.hpp"
#include "themescope/util.hpp"
#include "support/synthetic.hpp"
#include "support/tmpdir.hpp"

#include <doctest.h>

#include <algorithm>

using namespace themescope;

namespace {

DocumentFingerprint fp_of(std::string id, std::vector<std::string> terms) {
    DocumentFingerprint fp;
    fp.doc_id = std::move(id);
    double weight = static_cast<double>(terms.size());
    for (auto& term : terms) fp.terms.push_back({std::move(term), weight--});
    return fp;
}

EmbeddingTable grid_table() {
    return EmbeddingTable::from_rows(2, {
        {"ax", {1.0f, 0.0f}},
        {"ay", {0.0f, 1.0f}},
        {"bx", {1.0f, 0.0f}},
        {"by", {0.0f, 1.0f}},
        {"shared", {3.0f, 4.0f}},
    });
}

// random fingerprints/themes over a synthetic world
struct Batch {
    synthetic::World world;
    std::vector<DocumentFingerprint> fps;
    std::vector<AggregationMode> modes{AggregationMode::mean, AggregationMode::max};
};

Batch random_batch(std::uint64_t seed, std::size_t n_docs) {
    Batch batch;
    batch.world = synthetic::make_world(seed, 8, 3, 10, 60);
    util::Rng rng(seed * 31 + 7);
    for (std::size_t d = 0; d < n_docs; ++d) {
        std::vector<std::string> terms;
        const std::size_t len = 3 + rng.index(20);
        for (std::size_t i = 0; i < len; ++i) {
            if (rng.real() < 0.3) {
                const auto& tw = batch.world.theme_words[rng.index(batch.world.theme_words.size())];
                terms.push_back(tw[rng.index(tw.size())]);
            } else {
                terms.push_back(batch.world.distractors[rng.index(batch.world.distractors.size())]);
            }
        }
        std::sort(terms.begin(), terms.end());
        terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
        batch.fps.push_back(fp_of("doc" + std::to_string(d), terms));
    }
    return batch;
}

} // namespace

TEST_CASE("raw_theme_score fixtures: 2x2 pair grid") {
    const auto table = grid_table();
    const auto theme = build_theme_vector("T", PosGroup::Adj, {"bx", "by"});
    const auto fp = fp_of("d", {"ax", "ay"});
    // pairwise sims: (ax,bx)=1 (ax,by)=0 (ay,bx)=0 (ay,by)=1
    const auto mean = raw_theme_score(fp, theme, table, AggregationMode::mean);
    const auto max = raw_theme_score(fp, theme, table, AggregationMode::max);
    CHECK(mean.score == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(max.score == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mean.coverage == 2);
    CHECK(max.coverage == 2);
}

TEST_CASE("a shared word forces max mode to 1.0") {
    const auto table = grid_table();
    const auto theme = build_theme_vector("T", PosGroup::Adj, {"shared", "bx"});
    const auto fp = fp_of("d", {"shared", "ay"});
    CHECK(raw_theme_score(fp, theme, table, AggregationMode::max).score ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("missing words are skipped; none resolvable raises") {
    const auto table = grid_table();
    const auto theme = build_theme_vector("T", PosGroup::Adj, {"bx"});
    CHECK_THROWS_AS(raw_theme_score(fp_of("d", {"nope", "nada"}), theme, table,
                                    AggregationMode::mean),
                    NoResolvablePairs);
    const auto theme_missing = build_theme_vector("T", PosGroup::Adj, {"ghost"});
    CHECK_THROWS_AS(raw_theme_score(fp_of("d", {"ax"}), theme_missing, table,
                                    AggregationMode::mean),
                    NoResolvablePairs);
    // partial coverage counts only resolvable fingerprint terms
    const auto partial = raw_theme_score(fp_of("d", {"ax", "nope"}), theme, table,
                                         AggregationMode::mean);
    CHECK(partial.coverage == 1);
}

TEST_CASE("raw_theme_score is invariant under term and word permutations") {
    const auto batch = random_batch(3, 6);
    const auto& theme = batch.world.themes[0];
    for (const auto& fp : batch.fps) {
        const auto base_mean = raw_theme_score(fp, theme, batch.world.table, AggregationMode::mean);
        const auto base_max = raw_theme_score(fp, theme, batch.world.table, AggregationMode::max);

        DocumentFingerprint shuffled_fp = fp;
        std::reverse(shuffled_fp.terms.begin(), shuffled_fp.terms.end());
        ThemeVector shuffled_theme = theme;
        std::reverse(shuffled_theme.words.begin(), shuffled_theme.words.end());

        const auto mean2 =
            raw_theme_score(shuffled_fp, shuffled_theme, batch.world.table, AggregationMode::mean);
        const auto max2 =
            raw_theme_score(shuffled_fp, shuffled_theme, batch.world.table, AggregationMode::max);
        CHECK(mean2.score == base_mean.score); // exact: sums run in canonical order
        CHECK(max2.score == base_max.score);
    }
}

TEST_CASE("max mode dominates mean mode") {
    const auto batch = random_batch(11, 10);
    for (const auto& fp : batch.fps) {
        for (const auto& theme : batch.world.themes) {
            const auto mean =
                raw_theme_score(fp, theme, batch.world.table, AggregationMode::mean);
            const auto max = raw_theme_score(fp, theme, batch.world.table, AggregationMode::max);
            CHECK(max.score >= mean.score);
        }
    }
}

TEST_CASE("minmax_normalize fixtures") {
    CHECK(minmax_normalize({2, 4, 6}) == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(minmax_normalize({5, 5, 5}) == std::vector<double>{0.0, 0.0, 0.0});
    CHECK(minmax_normalize({3}) == std::vector<double>{0.0});
}

TEST_CASE("build_score_matrix shape and normalization bounds") {
    const auto batch = random_batch(17, 9);
    const auto matrix = build_score_matrix(batch.fps, batch.world.themes, batch.world.table,
                                           batch.modes);
    CHECK(matrix.doc_ids.size() == 9);
    CHECK(matrix.features.size() == batch.world.themes.size() * 2);

    for (std::size_t f = 0; f < matrix.features.size(); ++f) {
        double lo = 1e300, hi = -1e300;
        for (std::size_t d = 0; d < matrix.doc_ids.size(); ++d) {
            const double v = matrix.normalized[d][f];
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const bool constant = matrix.column_min[f] == matrix.column_max[f];
        if (!constant) {
            CHECK(lo == 0.0);
            CHECK(hi == 1.0);
        }
    }
}

TEST_CASE("matrix cells equal raw_theme_score exactly") {
    const auto batch = random_batch(23, 7);
    const auto matrix = build_score_matrix(batch.fps, batch.world.themes, batch.world.table,
                                           batch.modes);
    for (std::size_t d = 0; d < batch.fps.size(); ++d) {
        for (std::size_t t = 0; t < batch.world.themes.size(); ++t) {
            for (std::size_t m = 0; m < batch.modes.size(); ++m) {
                const auto cell = raw_theme_score(batch.fps[d], batch.world.themes[t],
                                                  batch.world.table, batch.modes[m]);
                const std::size_t f = t * batch.modes.size() + m;
                CHECK(matrix.raw[d][f] == cell.score); // bitwise
                CHECK(matrix.coverage[d][f] == cell.coverage);
            }
        }
    }
}

TEST_CASE("multithreaded scoring equals serial scoring bitwise") {
    const auto batch = random_batch(29, 16);
    ScoreOptions serial;
    ScoreOptions threaded;
    threaded.threads = 4;
    const auto a = build_score_matrix(batch.fps, batch.world.themes, batch.world.table,
                                      batch.modes, serial);
    const auto b = build_score_matrix(batch.fps, batch.world.themes, batch.world.table,
                                      batch.modes, threaded);
    CHECK(score_matrix_to_csv(a, true) == score_matrix_to_csv(b, true));
}

TEST_CASE("permuting documents permutes rows, values unchanged") {
    auto batch = random_batch(31, 8);
    const auto matrix = build_score_matrix(batch.fps, batch.world.themes, batch.world.table,
                                           batch.modes);
    std::reverse(batch.fps.begin(), batch.fps.end());
    const auto reversed = build_score_matrix(batch.fps, batch.world.themes, batch.world.table,
                                             batch.modes);
    const std::size_t n = matrix.doc_ids.size();
    for (std::size_t d = 0; d < n; ++d) {
        CHECK(reversed.doc_ids[d] == matrix.doc_ids[n - 1 - d]);
        CHECK(reversed.raw[d] == matrix.raw[n - 1 - d]);
        CHECK(reversed.normalized[d] == matrix.normalized[n - 1 - d]);
    }
}

TEST_CASE("normalization preserves within-column ranking") {
    const auto batch = random_batch(37, 12);
    const auto matrix = build_score_matrix(batch.fps, batch.world.themes, batch.world.table,
                                           batch.modes);
    for (std::size_t f = 0; f < matrix.features.size(); ++f) {
        for (std::size_t a = 0; a < matrix.doc_ids.size(); ++a) {
            for (std::size_t b = 0; b < matrix.doc_ids.size(); ++b) {
                if (matrix.raw[a][f] < matrix.raw[b][f]) {
                    CHECK(matrix.normalized[a][f] <= matrix.normalized[b][f]);
                }
            }
        }
    }
}

TEST_CASE("frozen scales clamp new documents into [0,1]") {
    const auto batch = random_batch(41, 10);
    const auto matrix = build_score_matrix(batch.fps, batch.world.themes, batch.world.table,
                                           batch.modes);
    const auto scales = scales_of(matrix);

    // rows re-normalized through the scales reproduce the batch normalization
    for (std::size_t d = 0; d < batch.fps.size(); ++d) {
        const auto row = apply_scales(matrix.raw[d], scales);
        for (std::size_t f = 0; f < row.size(); ++f) {
            CHECK(row[f] == doctest::Approx(matrix.normalized[d][f]).epsilon(1e-12));
        }
    }
    // out-of-range raw values clamp
    std::vector<double> extreme(scales.min.size());
    for (std::size_t f = 0; f < extreme.size(); ++f) extreme[f] = scales.max[f] + 10.0;
    const auto clamped = apply_scales(extreme, scales);
    for (double v : clamped) CHECK(v == 1.0);
}

TEST_CASE("scores CSV and scales sidecar round-trip") {
    testsupport::TmpDir dir("scores");
    const auto batch = random_batch(43, 5);
    const auto matrix = build_score_matrix(batch.fps, batch.world.themes, batch.world.table,
                                           batch.modes);

    write_scores_csv(dir.file("scores.csv"), matrix, false);
    const auto scores = read_scores_csv(dir.file("scores.csv"));
    CHECK(scores.doc_ids == matrix.doc_ids);
    REQUIRE(scores.feature_names.size() == matrix.features.size());
    for (std::size_t f = 0; f < matrix.features.size(); ++f) {
        CHECK(scores.feature_names[f] == matrix.features[f].label());
    }
    for (std::size_t d = 0; d < matrix.doc_ids.size(); ++d) {
        for (std::size_t f = 0; f < matrix.features.size(); ++f) {
            CHECK(scores.values[d][f] == doctest::Approx(matrix.normalized[d][f]).epsilon(1e-4));
        }
    }

    const auto scales = scales_of(matrix);
    write_scales_csv(dir.file("scales.csv"), scales);
    const auto loaded = read_scales_csv(dir.file("scales.csv"));
    REQUIRE(loaded.features.size() == scales.features.size());
    for (std::size_t f = 0; f < scales.features.size(); ++f) {
        CHECK(loaded.features[f].label() == scales.features[f].label());
        CHECK(loaded.min[f] == scales.min[f]); // full-precision round-trip
        CHECK(loaded.max[f] == scales.max[f]);
    }
}

TEST_CASE("feature labels carry theme, POS group and mode") {
    FeatureKey key{"Revenge", PosGroup::Adj, AggregationMode::mean};
    CHECK(key.label() == "Revenge_Adj_mean");
    FeatureKey other{"Humiliated", PosGroup::Verb, AggregationMode::max};
    CHECK(other.label() == "Humiliated_Verb_max");
}
