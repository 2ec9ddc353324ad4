#include "themescope/fingerprint.hpp"

#include "themescope/errors.hpp"
#include "themescope/util.hpp"

#include <algorithm>
#include <cmath>

namespace themescope {

double IdfIndex::idf(const std::string& term) const {
    auto it = doc_frequency.find(term);
    if (it == doc_frequency.end()) return 0.0;
    return std::log(static_cast<double>(document_count) / static_cast<double>(it->second));
}

IdfIndex build_index(const std::vector<Document>& corpus) {
    if (corpus.empty()) throw EmptyCorpus("build_index: corpus is empty");
    IdfIndex index;
    index.document_count = corpus.size();
    std::map<std::string, int> seen_in; // term -> last doc index counted
    std::size_t doc_no = 0;
    for (const auto& doc : corpus) {
        for (const auto& token : doc.tokens) {
            auto [it, inserted] = seen_in.try_emplace(token, -1);
            if (it->second != static_cast<int>(doc_no)) {
                it->second = static_cast<int>(doc_no);
                ++index.doc_frequency[token];
            }
        }
        ++doc_no;
    }
    return index;
}

DocumentFingerprint fingerprint_document(const Document& doc, const IdfIndex& index,
                                         const FingerprintConfig& config,
                                         std::size_t* unknown_terms) {
    std::map<std::string, std::size_t> counts;
    for (const auto& token : doc.tokens) ++counts[token];

    DocumentFingerprint fp;
    fp.doc_id = doc.doc_id;
    fp.terms.reserve(counts.size());
    for (const auto& [term, count] : counts) {
        if (unknown_terms && !index.doc_frequency.count(term)) ++*unknown_terms;
        fp.terms.push_back({term, static_cast<double>(count) * index.idf(term)});
    }
    std::stable_sort(fp.terms.begin(), fp.terms.end(), [](const WeightedTerm& a, const WeightedTerm& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return a.term < b.term;
    });
    if (fp.terms.size() > config.top_k) fp.terms.resize(config.top_k);
    return fp;
}

std::string fingerprints_to_csv(std::span<const DocumentFingerprint> fingerprints) {
    std::string out = "doc_id,rank,term,weight\n";
    for (const auto& fp : fingerprints) {
        std::size_t rank = 1;
        for (const auto& [term, weight] : fp.terms) {
            out += fp.doc_id;
            out += ',';
            out += std::to_string(rank++);
            out += ',';
            out += term;
            out += ',';
            out += util::format_fixed(weight, 6);
            out += '\n';
        }
    }
    return out;
}

void write_fingerprints_csv(const std::filesystem::path& path,
                            std::span<const DocumentFingerprint> fingerprints) {
    util::write_file_atomic(path, fingerprints_to_csv(fingerprints));
}

std::vector<DocumentFingerprint> read_fingerprints_csv(const std::filesystem::path& path) {
    const auto lines = util::split_lines(util::read_file(path));
    if (lines.empty() || lines[0] != "doc_id,rank,term,weight") {
        throw InputError(path.string() + ": expected fingerprint CSV header `doc_id,rank,term,weight`");
    }
    std::vector<DocumentFingerprint> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = util::split_csv(lines[i]);
        if (fields.size() != 4) {
            throw InputError(path.string() + ":" + std::to_string(i + 1) + ": expected 4 fields");
        }
        if (out.empty() || out.back().doc_id != fields[0]) {
            out.push_back({fields[0], {}});
        }
        out.back().terms.push_back({fields[2], std::stod(fields[3])});
    }
    return out;
}

void write_index_csv(const std::filesystem::path& path, const IdfIndex& index) {
    std::string out = "N=" + std::to_string(index.document_count) + "\n";
    out += "term,doc_frequency\n";
    for (const auto& [term, df] : index.doc_frequency) {
        out += term;
        out += ',';
        out += std::to_string(df);
        out += '\n';
    }
    util::write_file_atomic(path, out);
}

IdfIndex read_index_csv(const std::filesystem::path& path) {
    const auto lines = util::split_lines(util::read_file(path));
    if (lines.size() < 2 || lines[0].rfind("N=", 0) != 0 || lines[1] != "term,doc_frequency") {
        throw InputError(path.string() + ": expected index header `N=<count>` then `term,doc_frequency`");
    }
    IdfIndex index;
    index.document_count = static_cast<std::size_t>(std::stoull(lines[0].substr(2)));
    for (std::size_t i = 2; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        const auto fields = util::split_csv(lines[i]);
        if (fields.size() != 2) {
            throw InputError(path.string() + ":" + std::to_string(i + 1) + ": expected 2 fields");
        }
        index.doc_frequency[fields[0]] = static_cast<std::size_t>(std::stoull(fields[1]));
    }
    return index;
}

} // namespace themescope
