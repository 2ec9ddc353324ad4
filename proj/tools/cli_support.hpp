#pragma once

// Shared plumbing for the CLI subcommands: corpus loading, label files,
// run manifests and thread-count resolution.

#include "themescope/embedding.hpp"
#include "themescope/textprep.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace themescope::cli {

struct CorpusEntry {
    std::filesystem::path path;
    std::string author_id;
    std::string label;
};

/// Reads a corpus manifest: either a CSV file `path,author_id,label`
/// (paths relative to the manifest) or a directory laid out as
/// `<label>/<author_id>/<n>.txt`. Files ending in `.tag` are parsed as
/// pre-tagged input; everything else is raw text.
std::vector<CorpusEntry> load_corpus_manifest(const std::filesystem::path& manifest);

struct LoadedCorpus {
    std::vector<std::string> author_ids;          // first-appearance order
    std::vector<std::vector<Sentence>> sentences; // tagged, per author
    std::map<std::string, std::string> labels;    // author -> label
};

/// Merges per-author texts and tags them (built-in tagger for raw files).
LoadedCorpus load_and_tag(const std::vector<CorpusEntry>& entries);

/// Documents after preprocessing and the min-length filter, with labels
/// aligned to the retained documents.
struct PreparedCorpus {
    std::vector<Document> documents;
    std::vector<std::string> labels;
    std::size_t dropped_short = 0;
};

PreparedCorpus prepare_documents(const LoadedCorpus& corpus, const VocabTest& vocab,
                                 const PreprocessConfig& config);

/// labels.csv: header `doc_id,label`.
void write_labels_csv(const std::filesystem::path& path,
                      const std::vector<std::pair<std::string, std::string>>& labels);
std::map<std::string, std::string> read_labels_csv(const std::filesystem::path& path);

/// Binary labels for the docs in `doc_ids`, in order. Throws InputError when
/// a doc has no label row.
std::vector<int> binary_labels(const std::vector<std::string>& doc_ids,
                               const std::map<std::string, std::string>& labels,
                               const std::string& positive_label);

/// THEMESCOPE_THREADS, defaulting to the machine's parallelism.
int resolve_threads();

/// Records what a run consumed and produced. Timestamps exist only here, so
/// the data outputs stay byte-identical across reruns.
class RunManifest {
public:
    RunManifest(std::string subcommand, std::vector<std::string> argv);

    void add_input(const std::filesystem::path& path);
    void add_output(const std::filesystem::path& path);
    void set_seed(std::uint64_t seed);

    /// Writes `run-manifest.json` under `dir`.
    void write(const std::filesystem::path& dir) const;

    /// Re-runnable argv recorded in a manifest file.
    static std::vector<std::string> argv_of(const std::filesystem::path& manifest_path);

private:
    std::string subcommand_;
    std::vector<std::string> argv_;
    std::map<std::string, std::string> inputs_;
    std::vector<std::string> outputs_;
    std::optional<std::uint64_t> seed_;
};

EmbeddingTable load_embeddings_flag(const std::string& path, const std::string& format);

} // namespace themescope::cli
