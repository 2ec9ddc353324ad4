#pragma once

#include "themescope/textprep.hpp"

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace themescope {

/// Corpus-level document frequencies. idf uses the natural log; rankings are
/// base-invariant so exported weights simply follow this base.
struct IdfIndex {
    std::size_t document_count = 0;
    std::map<std::string, std::size_t> doc_frequency;

    /// ln(N / df). Terms absent from the index score 0 (uninformative);
    /// callers scoring new documents can count those via fingerprint stats.
    double idf(const std::string& term) const;
};

/// Throws EmptyCorpus.
IdfIndex build_index(const std::vector<Document>& corpus);

struct FingerprintConfig {
    std::size_t top_k = 100;
};

struct WeightedTerm {
    std::string term;
    double weight = 0.0;
};

/// The top-k tf-idf terms of one document, weight descending, ties broken
/// alphabetically.
struct DocumentFingerprint {
    std::string doc_id;
    std::vector<WeightedTerm> terms;
};

/// weight(t) = count(t in doc) * idf(t). When `unknown_terms` is given it is
/// incremented once per distinct term missing from the index.
DocumentFingerprint fingerprint_document(const Document& doc, const IdfIndex& index,
                                         const FingerprintConfig& config,
                                         std::size_t* unknown_terms = nullptr);

// file formats ---------------------------------------------------------------

/// CSV `doc_id,rank,term,weight`, weight at 6 decimals, rank starting at 1.
std::string fingerprints_to_csv(std::span<const DocumentFingerprint> fingerprints);
void write_fingerprints_csv(const std::filesystem::path& path,
                            std::span<const DocumentFingerprint> fingerprints);
std::vector<DocumentFingerprint> read_fingerprints_csv(const std::filesystem::path& path);

/// Header line `N=<count>`, then CSV `term,doc_frequency`.
void write_index_csv(const std::filesystem::path& path, const IdfIndex& index);
IdfIndex read_index_csv(const std::filesystem::path& path);

} // namespace themescope
