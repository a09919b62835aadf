#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace semdex::corpus {

/// One speech as found on disk: "<ISO3>_<session>_<year>.txt".
struct RawDocument {
    std::string country_code; // ISO-3166 alpha-3
    int session = 0;
    int year = 0;
    std::string text; // UTF-8, invalid bytes replaced with U+FFFD
};

/// A stemmed, digit-stripped, lower-cased token sequence labeled
/// "<country_code>_<year>".
struct ProcessedDocument {
    std::string label;
    std::vector<std::string> tokens;
};

struct VocabEntry {
    std::string word;
    std::uint64_t count = 0;
};

/// Word table (count >= min_count, indices 0..V-1 assigned by descending
/// count then ascending word) plus the full document label list, which is
/// never frequency-filtered.
class Vocabulary {
public:
    Vocabulary() = default;
    Vocabulary(std::vector<VocabEntry> words, std::vector<std::string> doc_labels,
               std::uint32_t min_count);

    std::size_t size() const { return words_.size(); }
    const std::vector<VocabEntry>& words() const { return words_; }
    const VocabEntry& entry(std::size_t i) const { return words_[i]; }
    std::optional<std::size_t> index_of(std::string_view word) const;
    bool contains(std::string_view word) const { return index_of(word).has_value(); }

    const std::vector<std::string>& doc_labels() const { return doc_labels_; }
    std::optional<std::size_t> label_index(std::string_view label) const;

    std::uint32_t min_count() const { return min_count_; }

    bool operator==(const Vocabulary& other) const {
        return min_count_ == other.min_count_ && doc_labels_ == other.doc_labels_ &&
               words_.size() == other.words_.size() &&
               [&] {
                   for (std::size_t i = 0; i < words_.size(); ++i)
                       if (words_[i].word != other.words_[i].word ||
                           words_[i].count != other.words_[i].count)
                           return false;
                   return true;
               }();
    }

private:
    std::vector<VocabEntry> words_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::string> doc_labels_;
    std::unordered_map<std::string, std::size_t> label_index_;
    std::uint32_t min_count_ = 5;
};

/// Scans a directory of "<ISO3>_<session>_<year>.txt" files. Non-matching
/// names are skipped with a warning; duplicate (country, year) pairs and
/// unreadable directories are fatal. Result is ordered by (year, country).
std::vector<RawDocument> ingest_corpus(const std::filesystem::path& directory);

/// Fixed pipeline: strip ASCII digits, ASCII-lowercase, tokenize on
/// Unicode whitespace with leading/trailing ASCII punctuation peeled into
/// standalone tokens, then Snowball-stem purely alphabetic tokens.
std::vector<std::string> preprocess(std::string_view text);

ProcessedDocument process_document(const RawDocument& raw);

Vocabulary build_vocabulary(const std::vector<ProcessedDocument>& docs,
                            std::uint32_t min_count);

/// Canonical processed-corpus file: one document per line,
/// label TAB space-joined tokens.
void write_processed(const std::filesystem::path& path,
                     const std::vector<ProcessedDocument>& docs);
std::vector<ProcessedDocument> read_processed(const std::filesystem::path& path);

/// Replaces ill-formed UTF-8 sequences with U+FFFD.
std::string sanitize_utf8(std::string_view bytes);

} // namespace semdex::corpus
