#include "themescope/embedding.hpp"

#include "themescope/errors.hpp"
#include "themescope/util.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

namespace themescope {

namespace {

bool all_zero(const std::vector<float>& v) {
    return std::all_of(v.begin(), v.end(), [](float x) { return x == 0.0f; });
}

void parse_header(const std::string& line, std::size_t& vocab, std::size_t& dim,
                  const std::filesystem::path& path) {
    std::istringstream iss(line);
    long long v = -1, d = -1;
    if (!(iss >> v >> d) || v < 0 || d <= 0) {
        throw MalformedHeader(path.string() + ": expected header `vocab_size dimension`, got \"" +
                              line + "\"");
    }
    std::string extra;
    if (iss >> extra) {
        throw MalformedHeader(path.string() + ": trailing tokens in header \"" + line + "\"");
    }
    vocab = static_cast<std::size_t>(v);
    dim = static_cast<std::size_t>(d);
}

} // namespace

EmbeddingTable::Format EmbeddingTable::infer_format(const std::filesystem::path& path) {
    return path.extension() == ".bin" ? Format::binary : Format::text;
}

void EmbeddingTable::insert_row(std::string word, std::vector<float> vec, std::size_t lineno) {
    if (vec.size() != dimension_) {
        throw DimensionMismatch("row " + std::to_string(lineno) + " (\"" + word + "\"): got " +
                                std::to_string(vec.size()) + " components, header declares " +
                                std::to_string(dimension_));
    }
    if (all_zero(vec)) {
        throw ZeroVector("row " + std::to_string(lineno) + " (\"" + word + "\"): all-zero vector");
    }
    auto [it, inserted] = index_.try_emplace(word, words_.size());
    if (!inserted) {
        throw DuplicateWord("row " + std::to_string(lineno) + ": duplicate word \"" + word + "\"");
    }
    words_.push_back(std::move(word));
    vectors_.insert(vectors_.end(), vec.begin(), vec.end());
}

EmbeddingTable EmbeddingTable::from_rows(
    std::size_t dimension, const std::vector<std::pair<std::string, std::vector<float>>>& rows) {
    if (dimension == 0) throw MalformedHeader("embedding dimension must be positive");
    EmbeddingTable table;
    table.dimension_ = dimension;
    std::size_t lineno = 1;
    for (const auto& [word, vec] : rows) table.insert_row(word, vec, ++lineno);
    return table;
}

EmbeddingTable EmbeddingTable::load(const std::filesystem::path& path, Format format) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open embeddings file: " + path.string());

    EmbeddingTable table;
    std::string header;
    if (!std::getline(in, header)) throw MalformedHeader(path.string() + ": empty file");
    if (!header.empty() && header.back() == '\r') header.pop_back();

    std::size_t vocab = 0;
    parse_header(header, vocab, table.dimension_, path);
    table.words_.reserve(vocab);
    table.vectors_.reserve(vocab * table.dimension_);

    if (format == Format::text) {
        std::string line;
        std::size_t lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            std::istringstream iss(line);
            std::string word;
            iss >> word;
            std::vector<float> vec;
            float x;
            while (iss >> x) vec.push_back(x);
            if (!iss.eof()) {
                throw DimensionMismatch(path.string() + ":" + std::to_string(lineno) +
                                        ": unparseable vector component");
            }
            table.insert_row(std::move(word), std::move(vec), lineno);
        }
    } else {
        for (std::size_t row = 0; row < vocab; ++row) {
            std::string word;
            char c;
            while (in.get(c) && c != ' ') {
                if (c == '\n') break;
                word.push_back(c);
            }
            if (!in) {
                throw DimensionMismatch(path.string() + ": truncated at row " + std::to_string(row + 2));
            }
            std::vector<float> vec(table.dimension_);
            in.read(reinterpret_cast<char*>(vec.data()),
                    static_cast<std::streamsize>(table.dimension_ * sizeof(float)));
            if (static_cast<std::size_t>(in.gcount()) != table.dimension_ * sizeof(float)) {
                throw DimensionMismatch(path.string() + ": truncated vector at row " +
                                        std::to_string(row + 2));
            }
            if (in.peek() == '\n') in.get();
            table.insert_row(std::move(word), std::move(vec), row + 2);
        }
    }

    if (vocab != 0 && table.size() != vocab) {
        throw MalformedHeader(path.string() + ": header declares " + std::to_string(vocab) +
                              " words, file holds " + std::to_string(table.size()));
    }
    return table;
}

const float* EmbeddingTable::find(const std::string& word) const {
    auto it = index_.find(word);
    return it == index_.end() ? nullptr : vectors_.data() + it->second * dimension_;
}

const float* EmbeddingTable::resolve(const std::string& word) const {
    const std::string lower = util::to_lower(word);
    if (const float* v = find(lower)) return v;
    if (lower != word) {
        if (const float* v = find(word)) return v;
    }
    return nullptr;
}

void EmbeddingTable::save_text(const std::filesystem::path& path) const {
    std::string out;
    out += std::to_string(size());
    out += ' ';
    out += std::to_string(dimension_);
    out += '\n';
    for (std::size_t i = 0; i < size(); ++i) {
        out += words_[i];
        for (float x : vector_at(i)) {
            out += ' ';
            out += util::format_roundtrip(x);
        }
        out += '\n';
    }
    util::write_file_atomic(path, out);
}

void EmbeddingTable::save_binary(const std::filesystem::path& path) const {
    std::string out;
    out += std::to_string(size());
    out += ' ';
    out += std::to_string(dimension_);
    out += '\n';
    for (std::size_t i = 0; i < size(); ++i) {
        out += words_[i];
        out += ' ';
        const auto vec = vector_at(i);
        const char* bytes = reinterpret_cast<const char*>(vec.data());
        out.append(bytes, vec.size() * sizeof(float));
        out += '\n';
    }
    util::write_file_atomic(path, out);
}

double cosine_similarity(std::span<const float> a, std::span<const float> b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        dot += static_cast<double>(a[i]) * b[i];
        na += static_cast<double>(a[i]) * a[i];
        nb += static_cast<double>(b[i]) * b[i];
    }
    if (na == 0.0 || nb == 0.0) throw ZeroNorm("cosine similarity of a zero vector");
    double sim = dot / (std::sqrt(na) * std::sqrt(nb));
    // clamp pure floating noise, never real out-of-range values
    if (sim > 1.0 && sim < 1.0 + 1e-12) sim = 1.0;
    if (sim < -1.0 && sim > -1.0 - 1e-12) sim = -1.0;
    return sim;
}

double cosine_similarity(const std::string& w1, const std::string& w2, const EmbeddingTable& table) {
    const float* a = table.resolve(w1);
    if (!a) throw WordNotFound(w1);
    const float* b = table.resolve(w2);
    if (!b) throw WordNotFound(w2);
    return cosine_similarity(std::span(a, table.dimension()), std::span(b, table.dimension()));
}

double pair_similarity(std::span<const float> a, std::span<const float> b, SimilarityForm form) {
    const double cos = cosine_similarity(a, b);
    return form == SimilarityForm::cosine ? cos : 1.0 - cos;
}

} // namespace themescope
