// build-theme and fingerprint: the corpus-facing subcommands.

#include "cli_support.hpp"
#include "commands.hpp"

#include "themescope/colloc.hpp"
#include "themescope/errors.hpp"
#include "themescope/fingerprint.hpp"
#include "themescope/util.hpp"

#include <iostream>

namespace themescope::cli {

namespace fs = std::filesystem;

int cmd_build_theme(const BuildThemeOptions& options) {
    const auto entries = load_corpus_manifest(options.corpus);
    const auto corpus = load_and_tag(entries);

    // one flat tagged stream: collocation windows only care about sentences
    std::vector<Sentence> sentences;
    for (const auto& per_author : corpus.sentences) {
        sentences.insert(sentences.end(), per_author.begin(), per_author.end());
    }

    CollocationConfig config;
    config.window = options.window;
    config.mi_min = options.mi_min;
    config.freq_min = options.freq_min;

    const std::vector<std::string>& seeds =
        options.seed_words.empty() ? default_seed_words() : options.seed_words;

    RunManifest manifest("build-theme", options.argv);
    for (const auto& entry : entries) manifest.add_input(entry.path);

    fs::create_directories(options.out_dir);
    std::size_t themes_written = 0;
    for (const auto& seed : seeds) {
        std::vector<CollocationCandidate> candidates;
        try {
            candidates = extract_collocates(sentences, seed, config);
        } catch (const SeedNotInCorpus&) {
            std::cerr << "warning: seed \"" << seed << "\" never occurs in the corpus\n";
            continue;
        }

        std::string csv = "word,pos_group,cooccurrences,frequency,mi\n";
        for (const auto& c : candidates) {
            csv += c.word;
            csv += ',';
            csv += to_string(c.pos_group);
            csv += ',';
            csv += std::to_string(c.cooccurrence_count);
            csv += ',';
            csv += std::to_string(c.corpus_frequency);
            csv += ',';
            csv += util::format_fixed(c.mi, 4);
            csv += '\n';
        }
        const fs::path csv_path = fs::path(options.out_dir) / (seed + "_candidates.csv");
        util::write_file_atomic(csv_path, csv);
        manifest.add_output(csv_path);

        for (const PosGroup group :
             {PosGroup::Adj, PosGroup::Verb, PosGroup::Noun, PosGroup::Adv}) {
            std::vector<std::string> words;
            for (const auto& c : candidates) {
                if (c.pos_group == group) words.push_back(c.word);
            }
            if (words.empty()) continue;
            const auto theme = build_theme_vector(seed, group, words);
            const fs::path path = fs::path(options.out_dir) / (theme.label() + ".theme");
            write_theme_file(path, theme);
            manifest.add_output(path);
            ++themes_written;
        }
    }
    if (themes_written == 0) {
        throw InputError("no theme vectors produced: no seed word passed the filters");
    }
    manifest.write(options.out_dir);
    std::cout << "build-theme: wrote " << themes_written << " theme files to " << options.out_dir
              << "\n";
    return 0;
}

int cmd_fingerprint(const FingerprintOptions& options) {
    const auto entries = load_corpus_manifest(options.corpus);
    const auto corpus = load_and_tag(entries);

    PreprocessConfig config;
    config.min_tokens = static_cast<std::size_t>(options.min_tokens);
    if (!options.exclude_file.empty()) {
        for (const auto& line : util::split_lines(util::read_file(options.exclude_file))) {
            if (!line.empty()) config.exclusion_terms.insert(util::to_lower(line));
        }
    }

    RunManifest manifest("fingerprint", options.argv);
    for (const auto& entry : entries) manifest.add_input(entry.path);
    if (!options.exclude_file.empty()) manifest.add_input(options.exclude_file);

    VocabTest vocab = accept_all_vocab();
    EmbeddingTable table;
    if (!options.embeddings.empty()) {
        table = load_embeddings_flag(options.embeddings, options.embeddings_format);
        manifest.add_input(options.embeddings);
        vocab = [&table](const std::string& word) { return table.contains(word); };
    }

    const auto prepared = prepare_documents(corpus, vocab, config);
    if (prepared.dropped_short > 0) {
        std::cerr << "note: dropped " << prepared.dropped_short << " document(s) under "
                  << options.min_tokens << " tokens\n";
    }
    if (prepared.documents.empty()) {
        throw InputError("no documents survive the minimum-length filter");
    }

    const auto index = build_index(prepared.documents);
    FingerprintConfig fp_config;
    fp_config.top_k = static_cast<std::size_t>(options.top_k);

    std::vector<DocumentFingerprint> fingerprints(prepared.documents.size());
    util::parallel_for(prepared.documents.size(), resolve_threads(), [&](std::size_t i) {
        fingerprints[i] = fingerprint_document(prepared.documents[i], index, fp_config);
    });

    fs::create_directories(options.out_dir);
    const fs::path fp_path = fs::path(options.out_dir) / "fingerprints.csv";
    const fs::path index_path = fs::path(options.out_dir) / "index.csv";
    const fs::path labels_path = fs::path(options.out_dir) / "labels.csv";
    write_fingerprints_csv(fp_path, fingerprints);
    write_index_csv(index_path, index);
    std::vector<std::pair<std::string, std::string>> labels;
    for (std::size_t i = 0; i < prepared.documents.size(); ++i) {
        labels.emplace_back(prepared.documents[i].doc_id, prepared.labels[i]);
    }
    write_labels_csv(labels_path, labels);

    manifest.add_output(fp_path);
    manifest.add_output(index_path);
    manifest.add_output(labels_path);
    manifest.write(options.out_dir);
    std::cout << "fingerprint: " << fingerprints.size() << " documents -> " << options.out_dir
              << "\n";
    return 0;
}

} // namespace themescope::cli
