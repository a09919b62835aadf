#include "semdex/corpus.hpp"

#include "semdex/errors.hpp"
#include "semdex/log.hpp"
#include "semdex/stemmer.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace semdex::corpus {

namespace fs = std::filesystem;

namespace {

bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ascii_upper(char c) { return c >= 'A' && c <= 'Z'; }

bool is_ascii_punct(unsigned char c) {
    return (c >= 33 && c <= 47) || (c >= 58 && c <= 64) || (c >= 91 && c <= 96) ||
           (c >= 123 && c <= 126);
}

bool is_space_codepoint(char32_t cp) {
    switch (cp) {
    case U' ': case U'\t': case U'\n': case U'\r': case U'\v': case U'\f':
    case 0x0085: case 0x00A0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
        return true;
    default:
        return cp >= 0x2000 && cp <= 0x200A;
    }
}

// Decodes the codepoint starting at i in valid UTF-8 and advances i past
// it. Input is sanitized beforehand, so sequences are well-formed.
char32_t next_codepoint(std::string_view s, std::size_t& i) {
    unsigned char b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        i += 1;
        return b0;
    }
    if ((b0 >> 5) == 0x6) {
        char32_t cp = (b0 & 0x1F) << 6 | (s[i + 1] & 0x3F);
        i += 2;
        return cp;
    }
    if ((b0 >> 4) == 0xE) {
        char32_t cp = (b0 & 0x0F) << 12 | (s[i + 1] & 0x3F) << 6 | (s[i + 2] & 0x3F);
        i += 3;
        return cp;
    }
    char32_t cp = (b0 & 0x07) << 18 | (s[i + 1] & 0x3F) << 12 |
                  (s[i + 2] & 0x3F) << 6 | (s[i + 3] & 0x3F);
    i += 4;
    return cp;
}

void append_codepoint_utf8(std::string& out, std::string_view s, std::size_t from,
                           std::size_t to) {
    out.append(s.substr(from, to - from));
}

bool is_alphabetic(std::string_view token) {
    if (token.empty()) return false;
    for (char c : token)
        if (c < 'a' || c > 'z') return false;
    return true;
}

// Splits "CCC_session_year.txt" into its parts; nullopt if malformed.
struct ParsedName {
    std::string country;
    int session;
    int year;
};

std::optional<ParsedName> parse_filename(const std::string& name) {
    if (name.size() < 4 || name.substr(name.size() - 4) != ".txt") return std::nullopt;
    std::string stem = name.substr(0, name.size() - 4);
    auto p1 = stem.find('_');
    if (p1 == std::string::npos) return std::nullopt;
    auto p2 = stem.find('_', p1 + 1);
    if (p2 == std::string::npos || stem.find('_', p2 + 1) != std::string::npos)
        return std::nullopt;
    std::string country = stem.substr(0, p1);
    std::string session = stem.substr(p1 + 1, p2 - p1 - 1);
    std::string year = stem.substr(p2 + 1);
    if (country.size() != 3 || !std::all_of(country.begin(), country.end(), is_ascii_upper))
        return std::nullopt;
    if (session.empty() || !std::all_of(session.begin(), session.end(), is_ascii_digit))
        return std::nullopt;
    if (year.size() != 4 || !std::all_of(year.begin(), year.end(), is_ascii_digit))
        return std::nullopt;
    return ParsedName{country, std::stoi(session), std::stoi(year)};
}

} // namespace

std::string sanitize_utf8(std::string_view bytes) {
    static constexpr std::string_view kReplacement = "\xEF\xBF\xBD"; // U+FFFD
    std::string out;
    out.reserve(bytes.size());
    std::size_t i = 0;
    const std::size_t n = bytes.size();
    auto cont = [&](std::size_t k) {
        return i + k < n && (static_cast<unsigned char>(bytes[i + k]) & 0xC0) == 0x80;
    };
    while (i < n) {
        unsigned char b = static_cast<unsigned char>(bytes[i]);
        if (b < 0x80) {
            out.push_back(bytes[i]);
            i += 1;
        } else if (b >= 0xC2 && b <= 0xDF && cont(1)) {
            out.append(bytes.substr(i, 2));
            i += 2;
        } else if (b >= 0xE0 && b <= 0xEF && cont(1) && cont(2)) {
            unsigned char b1 = static_cast<unsigned char>(bytes[i + 1]);
            bool ok = !(b == 0xE0 && b1 < 0xA0) && !(b == 0xED && b1 > 0x9F);
            if (ok) {
                out.append(bytes.substr(i, 3));
                i += 3;
            } else {
                out.append(kReplacement);
                i += 1;
            }
        } else if (b >= 0xF0 && b <= 0xF4 && cont(1) && cont(2) && cont(3)) {
            unsigned char b1 = static_cast<unsigned char>(bytes[i + 1]);
            bool ok = !(b == 0xF0 && b1 < 0x90) && !(b == 0xF4 && b1 > 0x8F);
            if (ok) {
                out.append(bytes.substr(i, 4));
                i += 4;
            } else {
                out.append(kReplacement);
                i += 1;
            }
        } else {
            out.append(kReplacement);
            i += 1;
        }
    }
    return out;
}

std::vector<std::string> preprocess(std::string_view text) {
    // (1) strip digits, (2) lowercase
    std::string cleaned;
    cleaned.reserve(text.size());
    for (char c : text) {
        if (is_ascii_digit(c)) continue;
        cleaned.push_back(is_ascii_upper(c) ? static_cast<char>(c - 'A' + 'a') : c);
    }

    // (3) split on whitespace
    std::vector<std::string> tokens;
    std::string current;
    std::size_t i = 0;
    auto flush = [&](std::string&& word) {
        if (word.empty()) return;
        // peel leading/trailing ASCII punctuation into standalone tokens
        std::size_t lo = 0, hi = word.size();
        while (lo < hi && is_ascii_punct(static_cast<unsigned char>(word[lo]))) ++lo;
        while (hi > lo && is_ascii_punct(static_cast<unsigned char>(word[hi - 1]))) --hi;
        for (std::size_t k = 0; k < lo; ++k) tokens.emplace_back(1, word[k]);
        if (lo < hi) tokens.push_back(word.substr(lo, hi - lo));
        for (std::size_t k = hi; k < word.size(); ++k) tokens.emplace_back(1, word[k]);
        word.clear();
    };
    while (i < cleaned.size()) {
        std::size_t start = i;
        char32_t cp = next_codepoint(cleaned, i);
        if (is_space_codepoint(cp)) {
            flush(std::move(current));
        } else {
            append_codepoint_utf8(current, cleaned, start, i);
        }
    }
    flush(std::move(current));

    // (4) stem purely alphabetic tokens
    for (std::string& tok : tokens)
        if (is_alphabetic(tok)) tok = stem_english(tok);
    return tokens;
}

ProcessedDocument process_document(const RawDocument& raw) {
    ProcessedDocument doc;
    doc.label = raw.country_code + "_" + std::to_string(raw.year);
    doc.tokens = preprocess(raw.text);
    return doc;
}

std::vector<RawDocument> ingest_corpus(const fs::path& directory) {
    std::error_code ec;
    if (!fs::is_directory(directory, ec))
        throw InputError("corpus directory not readable: " + directory.string());

    std::vector<RawDocument> docs;
    std::map<std::pair<int, std::string>, std::string> seen; // (year, country) -> filename
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(directory)) {
        if (!entry.is_regular_file()) continue;
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());

    for (const fs::path& path : files) {
        auto parsed = parse_filename(path.filename().string());
        if (!parsed) {
            log::warn("skipping file with unrecognized name: " + path.filename().string());
            continue;
        }
        auto key = std::make_pair(parsed->year, parsed->country);
        if (auto it = seen.find(key); it != seen.end())
            throw InputError("duplicate document for " + parsed->country + " " +
                             std::to_string(parsed->year) + ": " + it->second + " and " +
                             path.filename().string());
        seen[key] = path.filename().string();

        std::ifstream in(path, std::ios::binary);
        if (!in) throw InputError("cannot open " + path.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        std::string text = sanitize_utf8(buf.str());
        if (text.empty()) {
            log::warn("skipping empty file: " + path.filename().string());
            continue;
        }
        docs.push_back(RawDocument{parsed->country, parsed->session, parsed->year,
                                   std::move(text)});
    }
    std::sort(docs.begin(), docs.end(), [](const RawDocument& a, const RawDocument& b) {
        return std::tie(a.year, a.country_code) < std::tie(b.year, b.country_code);
    });
    return docs;
}

Vocabulary::Vocabulary(std::vector<VocabEntry> words, std::vector<std::string> doc_labels,
                       std::uint32_t min_count)
    : words_(std::move(words)), doc_labels_(std::move(doc_labels)), min_count_(min_count) {
    index_.reserve(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) index_[words_[i].word] = i;
    label_index_.reserve(doc_labels_.size());
    for (std::size_t i = 0; i < doc_labels_.size(); ++i) label_index_[doc_labels_[i]] = i;
}

std::optional<std::size_t> Vocabulary::index_of(std::string_view word) const {
    auto it = index_.find(std::string(word));
    return it == index_.end() ? std::nullopt : std::optional<std::size_t>(it->second);
}

std::optional<std::size_t> Vocabulary::label_index(std::string_view label) const {
    auto it = label_index_.find(std::string(label));
    return it == label_index_.end() ? std::nullopt : std::optional<std::size_t>(it->second);
}

Vocabulary build_vocabulary(const std::vector<ProcessedDocument>& docs,
                            std::uint32_t min_count) {
    std::unordered_map<std::string, std::uint64_t> counts;
    std::vector<std::string> labels;
    labels.reserve(docs.size());
    for (const ProcessedDocument& doc : docs) {
        labels.push_back(doc.label);
        for (const std::string& tok : doc.tokens) ++counts[tok];
    }
    std::vector<VocabEntry> words;
    words.reserve(counts.size());
    for (auto& [word, count] : counts)
        if (count >= min_count) words.push_back(VocabEntry{word, count});
    std::sort(words.begin(), words.end(), [](const VocabEntry& a, const VocabEntry& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.word < b.word;
    });
    return Vocabulary(std::move(words), std::move(labels), min_count);
}

void write_processed(const fs::path& path, const std::vector<ProcessedDocument>& docs) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    for (const ProcessedDocument& doc : docs) {
        out << doc.label << '\t';
        for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
            if (i) out << ' ';
            out << doc.tokens[i];
        }
        out << '\n';
    }
    if (!out) throw InputError("write failed: " + path.string());
}

std::vector<ProcessedDocument> read_processed(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open processed corpus: " + path.string());
    std::vector<ProcessedDocument> docs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw InputError(path.string() + ":" + std::to_string(lineno) +
                             ": missing label separator");
        ProcessedDocument doc;
        doc.label = line.substr(0, tab);
        std::size_t pos = tab + 1;
        while (pos < line.size()) {
            auto sp = line.find(' ', pos);
            if (sp == std::string::npos) sp = line.size();
            if (sp > pos) doc.tokens.push_back(line.substr(pos, sp - pos));
            pos = sp + 1;
        }
        docs.push_back(std::move(doc));
    }
    return docs;
}

} // namespace semdex::corpus
