#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace lexicluster {

using DocId = std::uint32_t;
using WordId = std::uint32_t;

struct RawDocument {
    DocId doc_id = 0;
    std::optional<std::string> label;
    std::string text;
};

/// Dense 1-indexed bijection between terms and word ids.
class Vocabulary {
public:
    Vocabulary() = default;

    /// Returns the id of `term`, assigning the next id if it is new.
    WordId add(std::string_view term);
    std::optional<WordId> find(std::string_view term) const;
    /// Throws Errc::unknown_word_id when id is outside 1..size().
    const std::string& term(WordId id) const;
    std::uint32_t size() const { return static_cast<std::uint32_t>(terms_.size()); }
    const std::vector<std::string>& terms() const { return terms_; }

    friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.terms_ == b.terms_; }

private:
    std::vector<std::string> terms_;
    std::unordered_map<std::string, WordId> ids_;
};

struct Triple {
    DocId doc = 0;
    WordId word = 0;
    std::uint64_t count = 0;

    friend bool operator==(const Triple&, const Triple&) = default;
};

/// Document x term counts in UCI triple form. Also used for bags of
/// lexical categories, where `W` is the category feature count.
struct SparseBag {
    std::uint32_t D = 0;
    std::uint32_t W = 0;
    std::vector<Triple> triples;

    std::size_t nnz() const { return triples.size(); }
    std::uint64_t total_count() const;

    friend bool operator==(const SparseBag&, const SparseBag&) = default;
};

using CategoryBag = SparseBag;

/// Checks ids in range, strict (doc, word) ordering and positive counts.
void validate(const SparseBag& bag);

using Stoplist = std::unordered_set<std::string>;

std::vector<std::string> tokenize(std::string_view text);
std::vector<std::string> filter_stopwords(std::vector<std::string> tokens, const Stoplist& stoplist);

/// Tokenize, drop stopwords, optionally stem, and count. Word ids follow
/// first occurrence over documents in doc_id order.
struct Extracted {
    Vocabulary vocab;
    SparseBag bag;
};
Extracted extract_words(const std::vector<RawDocument>& corpus, const Stoplist& stoplist, bool use_stemming);

// Bag-of-words file: "D\nW\nNNZ\n" then "doc word count\n" per triple.
std::string write_uci(const SparseBag& bag);
SparseBag parse_uci(std::string_view text);

// One line per non-empty document: "doc id:count id:count ...".
std::string to_optimized(const SparseBag& bag);
SparseBag parse_optimized(std::string_view text, std::uint32_t D, std::uint32_t W);

std::string write_vocabulary(const Vocabulary& vocab);
Vocabulary parse_vocabulary(std::string_view text);

/// Whitespace-separated words, one or more per line; '#' starts a comment line.
Stoplist parse_stoplist(std::string_view text);

/// Reads every regular file under `root` (sorted by relative path) as one
/// document. A file nested in a subdirectory takes that directory's name as
/// its label. Doc ids are assigned 1..n in that order.
std::vector<RawDocument> read_corpus_directory(const std::filesystem::path& root);
/// JSON lines with fields "id", optional "label", and "text".
std::vector<RawDocument> parse_corpus_jsonl(std::string_view text);
/// Directory or .jsonl file, chosen by what `path` is.
std::vector<RawDocument> read_corpus(const std::filesystem::path& path);

// "doc label" per labeled document.
std::string write_labels(const std::vector<RawDocument>& corpus);
std::unordered_map<DocId, std::string> parse_labels(std::string_view text);

std::string read_file(const std::filesystem::path& path);
/// Writes via a temporary sibling and rename.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace lexicluster
