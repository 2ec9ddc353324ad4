#include "cli_support.hpp"

#include "themescope/errors.hpp"
#include "themescope/util.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <thread>

namespace themescope::cli {

namespace fs = std::filesystem;

std::vector<CorpusEntry> load_corpus_manifest(const fs::path& manifest) {
    std::vector<CorpusEntry> entries;
    if (fs::is_directory(manifest)) {
        std::vector<fs::path> labels;
        for (const auto& entry : fs::directory_iterator(manifest)) {
            if (entry.is_directory()) labels.push_back(entry.path());
        }
        std::sort(labels.begin(), labels.end());
        for (const auto& label_dir : labels) {
            std::vector<fs::path> authors;
            for (const auto& entry : fs::directory_iterator(label_dir)) {
                if (entry.is_directory()) authors.push_back(entry.path());
            }
            std::sort(authors.begin(), authors.end());
            for (const auto& author_dir : authors) {
                std::vector<fs::path> files;
                for (const auto& entry : fs::directory_iterator(author_dir)) {
                    if (entry.is_regular_file()) files.push_back(entry.path());
                }
                std::sort(files.begin(), files.end());
                for (const auto& file : files) {
                    entries.push_back({file, author_dir.filename().string(),
                                       label_dir.filename().string()});
                }
            }
        }
        if (entries.empty()) {
            throw InputError("corpus directory holds no <label>/<author>/<file> entries: " +
                             manifest.string());
        }
        return entries;
    }

    const auto lines = util::split_lines(util::read_file(manifest));
    if (lines.empty() || lines[0] != "path,author_id,label") {
        throw InputError(manifest.string() + ": expected manifest header `path,author_id,label`");
    }
    const fs::path base = manifest.has_parent_path() ? manifest.parent_path() : fs::path(".");
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = util::split_csv(lines[i]);
        if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
            throw InputError(manifest.string() + ":" + std::to_string(i + 1) +
                             ": expected `path,author_id,label`");
        }
        fs::path file = fields[0];
        if (file.is_relative()) file = base / file;
        entries.push_back({file, fields[1], fields[2]});
    }
    if (entries.empty()) throw InputError(manifest.string() + ": manifest lists no files");
    return entries;
}

LoadedCorpus load_and_tag(const std::vector<CorpusEntry>& entries) {
    LoadedCorpus corpus;
    std::map<std::string, std::size_t> slot;
    for (const auto& entry : entries) {
        auto [it, inserted] = slot.try_emplace(entry.author_id, corpus.author_ids.size());
        if (inserted) {
            corpus.author_ids.push_back(entry.author_id);
            corpus.sentences.emplace_back();
            corpus.labels[entry.author_id] = entry.label;
        } else if (corpus.labels[entry.author_id] != entry.label) {
            throw InputError("author \"" + entry.author_id + "\" appears with labels \"" +
                             corpus.labels[entry.author_id] + "\" and \"" + entry.label + "\"");
        }
        const std::string contents = util::read_file(entry.path);
        auto tagged = entry.path.extension() == ".tag" ? parse_pretagged(contents)
                                                       : tag_text(contents);
        auto& bucket = corpus.sentences[it->second];
        bucket.insert(bucket.end(), std::make_move_iterator(tagged.begin()),
                      std::make_move_iterator(tagged.end()));
    }
    return corpus;
}

PreparedCorpus prepare_documents(const LoadedCorpus& corpus, const VocabTest& vocab,
                                 const PreprocessConfig& config) {
    const auto lemma = builtin_lemmatizer();
    std::vector<Document> docs(corpus.author_ids.size());
    util::parallel_for(corpus.author_ids.size(), resolve_threads(), [&](std::size_t i) {
        docs[i] = preprocess_tagged(corpus.author_ids[i], corpus.sentences[i], vocab, lemma, config);
    });

    PreparedCorpus prepared;
    for (auto& doc : docs) {
        if (doc.token_count() >= config.min_tokens) {
            prepared.labels.push_back(corpus.labels.at(doc.doc_id));
            prepared.documents.push_back(std::move(doc));
        } else {
            ++prepared.dropped_short;
        }
    }
    return prepared;
}

void write_labels_csv(const fs::path& path,
                      const std::vector<std::pair<std::string, std::string>>& labels) {
    std::string out = "doc_id,label\n";
    for (const auto& [doc_id, label] : labels) {
        out += doc_id;
        out += ',';
        out += label;
        out += '\n';
    }
    util::write_file_atomic(path, out);
}

std::map<std::string, std::string> read_labels_csv(const fs::path& path) {
    const auto lines = util::split_lines(util::read_file(path));
    if (lines.empty() || lines[0] != "doc_id,label") {
        throw InputError(path.string() + ": expected labels header `doc_id,label`");
    }
    std::map<std::string, std::string> labels;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = util::split_csv(lines[i]);
        if (fields.size() != 2) {
            throw InputError(path.string() + ":" + std::to_string(i + 1) + ": expected 2 fields");
        }
        labels[fields[0]] = fields[1];
    }
    return labels;
}

std::vector<int> binary_labels(const std::vector<std::string>& doc_ids,
                               const std::map<std::string, std::string>& labels,
                               const std::string& positive_label) {
    std::vector<int> out;
    out.reserve(doc_ids.size());
    for (const auto& doc_id : doc_ids) {
        auto it = labels.find(doc_id);
        if (it == labels.end()) {
            throw InputError("no label for document \"" + doc_id + "\"");
        }
        out.push_back(it->second == positive_label ? 1 : 0);
    }
    return out;
}

int resolve_threads() {
    if (const char* env = std::getenv("THEMESCOPE_THREADS")) {
        try {
            const int value = std::stoi(env);
            if (value >= 1) return value;
        } catch (...) {
        }
        throw InputError("THEMESCOPE_THREADS must be a positive integer, got \"" +
                         std::string(env) + "\"");
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

RunManifest::RunManifest(std::string subcommand, std::vector<std::string> argv)
    : subcommand_(std::move(subcommand)), argv_(std::move(argv)) {}

void RunManifest::add_input(const fs::path& path) {
    char hex[32];
    std::snprintf(hex, sizeof(hex), "fnv1a:%016llx",
                  static_cast<unsigned long long>(util::fnv1a_file(path)));
    inputs_[path.string()] = hex;
}

void RunManifest::add_output(const fs::path& path) { outputs_.push_back(path.string()); }

void RunManifest::set_seed(std::uint64_t seed) { seed_ = seed; }

void RunManifest::write(const fs::path& dir) const {
    nlohmann::json doc;
    doc["tool"] = "themescope";
    doc["version"] = "0.1.0";
    doc["subcommand"] = subcommand_;
    doc["argv"] = argv_;
    doc["inputs"] = inputs_;
    doc["outputs"] = outputs_;
    if (seed_) doc["seed"] = *seed_;
    const auto now = std::chrono::system_clock::now();
    doc["timestamp_unix_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count();
    util::write_file_atomic(dir / "run-manifest.json", doc.dump(2) + "\n");
}

std::vector<std::string> RunManifest::argv_of(const fs::path& manifest_path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(util::read_file(manifest_path));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(manifest_path.string() + ": not a run manifest (" + e.what() + ")");
    }
    if (!doc.contains("argv") || !doc["argv"].is_array()) {
        throw InputError(manifest_path.string() + ": run manifest lacks an argv array");
    }
    return doc["argv"].get<std::vector<std::string>>();
}

EmbeddingTable load_embeddings_flag(const std::string& path, const std::string& format) {
    EmbeddingTable::Format fmt;
    if (format == "text") fmt = EmbeddingTable::Format::text;
    else if (format == "binary") fmt = EmbeddingTable::Format::binary;
    else if (format == "auto") fmt = EmbeddingTable::infer_format(path);
    else throw InputError("unknown embeddings format \"" + format + "\" (expected text|binary)");
    return EmbeddingTable::load(path, fmt);
}

} // namespace themescope::cli
