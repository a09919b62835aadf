// Snowball English (Porter2) stemmer, ported from the published algorithm.
// Region marks (R1/R2) are absolute positions; every edit below touches only
// the word tail, so the marks stay valid throughout.

#include "semdex/stemmer.hpp"

#include <array>
#include <string>
#include <unordered_map>

namespace semdex::corpus {

namespace {

// 'y' counts as a vowel; the consonant-y marker 'Y' does not.
bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

bool ends_with(const std::string& w, std::string_view suf) {
    return w.size() >= suf.size() &&
           w.compare(w.size() - suf.size(), suf.size(), suf) == 0;
}

bool starts_with(const std::string& w, std::string_view pre) {
    return w.size() >= pre.size() && w.compare(0, pre.size(), pre) == 0;
}

bool contains_vowel(const std::string& w, std::size_t from, std::size_t to) {
    for (std::size_t i = from; i < to && i < w.size(); ++i)
        if (is_vowel(w[i])) return true;
    return false;
}

// bb dd ff gg mm nn pp rr tt
bool ends_double(const std::string& w) {
    if (w.size() < 2) return false;
    char a = w[w.size() - 2], b = w[w.size() - 1];
    if (a != b) return false;
    switch (a) {
    case 'b': case 'd': case 'f': case 'g': case 'm':
    case 'n': case 'p': case 'r': case 't':
        return true;
    default:
        return false;
    }
}

bool valid_li_ending(char c) {
    switch (c) {
    case 'c': case 'd': case 'e': case 'g': case 'h':
    case 'k': case 'm': case 'n': case 'r': case 't':
        return true;
    default:
        return false;
    }
}

// Short syllable: vowel + non-vowel other than w/x/Y preceded by a
// non-vowel, or a word-initial vowel followed by a non-vowel.
bool ends_short_syllable(const std::string& w) {
    std::size_t n = w.size();
    if (n == 2)
        return is_vowel(w[0]) && !is_vowel(w[1]);
    if (n >= 3) {
        char c = w[n - 1];
        return !is_vowel(w[n - 3]) && is_vowel(w[n - 2]) && !is_vowel(c) &&
               c != 'w' && c != 'x' && c != 'Y';
    }
    return false;
}

// Position after the first non-vowel following a vowel, starting the scan
// at `from`; w.size() if there is none.
std::size_t region_after_vc(const std::string& w, std::size_t from) {
    for (std::size_t i = (from == 0 ? 1 : from + 1); i < w.size(); ++i)
        if (!is_vowel(w[i]) && is_vowel(w[i - 1])) return i + 1;
    return w.size();
}

std::size_t mark_r1(const std::string& w) {
    if (starts_with(w, "commun")) return 6;
    if (starts_with(w, "gener") || starts_with(w, "arsen")) return 5;
    return region_after_vc(w, 0);
}

const std::unordered_map<std::string, std::string>& exception1() {
    static const std::unordered_map<std::string, std::string> map = {
        {"skis", "ski"},     {"skies", "sky"},   {"dying", "die"},
        {"lying", "lie"},    {"tying", "tie"},   {"idly", "idl"},
        {"gently", "gentl"}, {"ugly", "ugli"},   {"early", "earli"},
        {"only", "onli"},    {"singly", "singl"},
        // invariant forms
        {"sky", "sky"},      {"news", "news"},   {"howe", "howe"},
        {"atlas", "atlas"},  {"cosmos", "cosmos"},
        {"bias", "bias"},    {"andes", "andes"},
    };
    return map;
}

bool exception2(const std::string& w) {
    return w == "inning" || w == "outing" || w == "canning" ||
           w == "herring" || w == "earring" || w == "proceed" ||
           w == "exceed" || w == "succeed";
}

struct Rule {
    std::string_view suffix;
    std::string_view replacement;
};

// Longest matching suffix wins; if its condition fails no shorter suffix
// is tried. Tables are ordered by decreasing suffix length.
constexpr std::array<Rule, 24> kStep2 = {{
    {"ization", "ize"}, {"ational", "ate"}, {"fulness", "ful"},
    {"ousness", "ous"}, {"iveness", "ive"}, {"tional", "tion"},
    {"biliti", "ble"},  {"lessli", "less"}, {"entli", "ent"},
    {"ation", "ate"},   {"alism", "al"},    {"aliti", "al"},
    {"ousli", "ous"},   {"iviti", "ive"},   {"fulli", "ful"},
    {"enci", "ence"},   {"anci", "ance"},   {"abli", "able"},
    {"izer", "ize"},    {"ator", "ate"},    {"alli", "al"},
    {"bli", "ble"},     {"ogi", "og"},      {"li", ""},
}};

constexpr std::array<Rule, 9> kStep3 = {{
    {"ational", "ate"}, {"tional", "tion"}, {"alize", "al"},
    {"icate", "ic"},    {"iciti", "ic"},    {"ative", ""},
    {"ical", "ic"},     {"ness", ""},       {"ful", ""},
}};

constexpr std::array<std::string_view, 18> kStep4 = {{
    "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ism",
    "ate", "iti", "ous", "ive", "ize", "ion", "al", "er", "ic",
}};

void replace_suffix(std::string& w, std::size_t suf_len, std::string_view repl) {
    w.resize(w.size() - suf_len);
    w.append(repl);
}

} // namespace

std::string stem_english(std::string_view word) {
    std::string w(word);
    for (char& c : w)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');

    if (auto it = exception1().find(w); it != exception1().end())
        return it->second;
    if (w.size() <= 2) return w;

    if (w.front() == '\'') w.erase(0, 1);

    // Mark consonant-y: word-initial y and y following a vowel.
    if (!w.empty() && w[0] == 'y') w[0] = 'Y';
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] == 'y' && is_vowel(w[i - 1])) w[i] = 'Y';

    const std::size_t r1 = mark_r1(w);
    const std::size_t r2 = region_after_vc(w, r1);
    auto in_r1 = [&](std::size_t suf_len) { return w.size() >= suf_len && w.size() - suf_len >= r1; };
    auto in_r2 = [&](std::size_t suf_len) { return w.size() >= suf_len && w.size() - suf_len >= r2; };

    // Step 0: longest of 's', 's, '
    if (ends_with(w, "'s'"))
        w.resize(w.size() - 3);
    else if (ends_with(w, "'s"))
        w.resize(w.size() - 2);
    else if (ends_with(w, "'"))
        w.resize(w.size() - 1);

    // Step 1a
    if (ends_with(w, "sses")) {
        w.resize(w.size() - 2);
    } else if (ends_with(w, "ied") || ends_with(w, "ies")) {
        w.resize(w.size() - (w.size() > 4 ? 2 : 1));
    } else if (ends_with(w, "us") || ends_with(w, "ss")) {
        // keep
    } else if (ends_with(w, "s")) {
        if (w.size() >= 2 && contains_vowel(w, 0, w.size() - 2))
            w.resize(w.size() - 1);
    }

    if (exception2(w)) {
        for (char& c : w)
            if (c == 'Y') c = 'y';
        return w;
    }

    // Step 1b
    {
        std::string_view matched;
        for (std::string_view suf : {"eedly", "ingly", "edly", "eed", "ing", "ed"})
            if (ends_with(w, suf)) {
                matched = suf;
                break;
            }
        if (matched == "eed" || matched == "eedly") {
            if (in_r1(matched.size())) replace_suffix(w, matched.size(), "ee");
        } else if (!matched.empty()) {
            if (contains_vowel(w, 0, w.size() - matched.size())) {
                w.resize(w.size() - matched.size());
                if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz"))
                    w.push_back('e');
                else if (ends_double(w))
                    w.pop_back();
                else if (r1 >= w.size() && ends_short_syllable(w))
                    w.push_back('e');
            }
        }
    }

    // Step 1c: y -> i after a non-vowel that is not the first letter
    if (w.size() >= 3 && (w.back() == 'y' || w.back() == 'Y') &&
        !is_vowel(w[w.size() - 2]))
        w.back() = 'i';

    // Step 2
    for (const Rule& rule : kStep2) {
        if (!ends_with(w, rule.suffix)) continue;
        if (in_r1(rule.suffix.size())) {
            if (rule.suffix == "ogi") {
                if (w.size() >= 4 && w[w.size() - 4] == 'l')
                    replace_suffix(w, 3, rule.replacement);
            } else if (rule.suffix == "li") {
                if (w.size() >= 3 && valid_li_ending(w[w.size() - 3]))
                    w.resize(w.size() - 2);
            } else {
                replace_suffix(w, rule.suffix.size(), rule.replacement);
            }
        }
        break;
    }

    // Step 3
    for (const Rule& rule : kStep3) {
        if (!ends_with(w, rule.suffix)) continue;
        if (in_r1(rule.suffix.size())) {
            if (rule.suffix == "ative") {
                if (in_r2(5)) w.resize(w.size() - 5);
            } else {
                replace_suffix(w, rule.suffix.size(), rule.replacement);
            }
        }
        break;
    }

    // Step 4
    for (std::string_view suf : kStep4) {
        if (!ends_with(w, suf)) continue;
        if (in_r2(suf.size())) {
            if (suf == "ion") {
                char prev = w.size() >= 4 ? w[w.size() - 4] : '\0';
                if (prev == 's' || prev == 't') w.resize(w.size() - 3);
            } else {
                w.resize(w.size() - suf.size());
            }
        }
        break;
    }

    // Step 5
    if (!w.empty() && w.back() == 'e') {
        if (in_r2(1)) {
            w.pop_back();
        } else if (in_r1(1)) {
            std::string head = w.substr(0, w.size() - 1);
            if (!ends_short_syllable(head)) w.pop_back();
        }
    } else if (!w.empty() && w.back() == 'l') {
        if (in_r2(1) && w.size() >= 2 && w[w.size() - 2] == 'l') w.pop_back();
    }

    for (char& c : w)
        if (c == 'Y') c = 'y';
    return w;
}

} // namespace semdex::corpus
