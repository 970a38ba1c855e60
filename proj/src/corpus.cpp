#include "lexicluster/corpus.hpp"

#include "lexicluster/error.hpp"
#include "lexicluster/porter.hpp"
#include "lexicluster/text_io.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace lexicluster {

namespace fs = std::filesystem;

WordId Vocabulary::add(std::string_view term) {
    if (term.empty()) throw Error(Errc::invalid_argument, "vocabulary terms must be nonempty");
    if (auto it = ids_.find(std::string(term)); it != ids_.end()) return it->second;
    terms_.emplace_back(term);
    auto id = static_cast<WordId>(terms_.size());
    ids_.emplace(terms_.back(), id);
    return id;
}

std::optional<WordId> Vocabulary::find(std::string_view term) const {
    if (auto it = ids_.find(std::string(term)); it != ids_.end()) return it->second;
    return std::nullopt;
}

const std::string& Vocabulary::term(WordId id) const {
    if (id == 0 || id > terms_.size()) {
        throw Error(Errc::unknown_word_id, "word id " + std::to_string(id) + " not in vocabulary");
    }
    return terms_[id - 1];
}

std::uint64_t SparseBag::total_count() const {
    std::uint64_t sum = 0;
    for (const auto& t : triples) sum += t.count;
    return sum;
}

void validate(const SparseBag& bag) {
    for (std::size_t i = 0; i < bag.triples.size(); ++i) {
        const auto& t = bag.triples[i];
        if (t.doc == 0 || t.word == 0 || t.count == 0) {
            throw Error(Errc::non_positive_integer, "triple " + std::to_string(i + 1) + " has a zero field");
        }
        if (t.doc > bag.D || t.word > bag.W) {
            throw Error(Errc::feature_out_of_range, "triple " + std::to_string(i + 1) + " outside D x W");
        }
        if (i > 0) {
            const auto& p = bag.triples[i - 1];
            if (p.doc == t.doc && p.word == t.word) {
                throw Error(Errc::duplicate_feature, "duplicate (doc, word) at triple " + std::to_string(i + 1));
            }
            if (std::pair(p.doc, p.word) > std::pair(t.doc, t.word)) {
                throw Error(Errc::malformed_line, "triples not sorted at triple " + std::to_string(i + 1));
            }
        }
    }
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (current.size() >= 2) tokens.push_back(current);
        current.clear();
    };
    for (char c : text) {
        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) {
            current.push_back(static_cast<char>(c | 0x20));
        } else {
            flush();
        }
    }
    flush();
    return tokens;
}

std::vector<std::string> filter_stopwords(std::vector<std::string> tokens, const Stoplist& stoplist) {
    std::erase_if(tokens, [&](const std::string& t) { return stoplist.contains(t); });
    return tokens;
}

Extracted extract_words(const std::vector<RawDocument>& corpus, const Stoplist& stoplist, bool use_stemming) {
    std::vector<const RawDocument*> ordered;
    ordered.reserve(corpus.size());
    for (const auto& doc : corpus) ordered.push_back(&doc);
    std::sort(ordered.begin(), ordered.end(),
              [](const RawDocument* a, const RawDocument* b) { return a->doc_id < b->doc_id; });
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        if (i > 0 && ordered[i]->doc_id == ordered[i - 1]->doc_id) {
            throw Error(Errc::duplicate_doc_id, "duplicate doc id " + std::to_string(ordered[i]->doc_id));
        }
        if (ordered[i]->doc_id != i + 1) {
            throw Error(Errc::invalid_argument, "doc ids must be dense 1..n; found " +
                                                    std::to_string(ordered[i]->doc_id) + " at position " +
                                                    std::to_string(i + 1));
        }
    }

    Extracted out;
    out.bag.D = static_cast<std::uint32_t>(ordered.size());
    for (const RawDocument* doc : ordered) {
        std::map<WordId, std::uint64_t> counts;
        for (auto& token : filter_stopwords(tokenize(doc->text), stoplist)) {
            WordId id = out.vocab.add(use_stemming ? porter_stem(token) : token);
            ++counts[id];
        }
        for (auto [word, count] : counts) out.bag.triples.push_back({doc->doc_id, word, count});
    }
    out.bag.W = out.vocab.size();
    return out;
}

std::string write_uci(const SparseBag& bag) {
    std::string out;
    out.reserve(16 + bag.triples.size() * 12);
    out += std::to_string(bag.D) + '\n';
    out += std::to_string(bag.W) + '\n';
    out += std::to_string(bag.nnz()) + '\n';
    for (const auto& t : bag.triples) {
        out += std::to_string(t.doc);
        out += ' ';
        out += std::to_string(t.word);
        out += ' ';
        out += std::to_string(t.count);
        out += '\n';
    }
    return out;
}

SparseBag parse_uci(std::string_view text) {
    LineReader lines(text);
    auto header = [&](const char* name) -> std::uint64_t {
        auto line = lines.next();
        if (!line) throw Error(Errc::malformed_line, std::string("missing header line: ") + name);
        auto fields = split_fields(*line);
        if (fields.size() != 1) {
            throw Error(Errc::malformed_line, "line " + std::to_string(lines.line_number()) + ": expected " + name);
        }
        return parse_count(fields[0], lines.line_number(), /*allow_zero=*/true);
    };
    SparseBag bag;
    bag.D = static_cast<std::uint32_t>(header("D"));
    bag.W = static_cast<std::uint32_t>(header("W"));
    auto nnz = header("NNZ");
    while (auto line = lines.next()) {
        if (line->empty()) continue;
        auto fields = split_fields(*line);
        if (fields.size() != 3) {
            throw Error(Errc::malformed_line,
                        "line " + std::to_string(lines.line_number()) + ": expected 'docID wordID count'");
        }
        Triple t;
        t.doc = static_cast<DocId>(parse_count(fields[0], lines.line_number(), false));
        t.word = static_cast<WordId>(parse_count(fields[1], lines.line_number(), false));
        t.count = parse_count(fields[2], lines.line_number(), false);
        bag.triples.push_back(t);
    }
    if (bag.triples.size() != nnz) {
        throw Error(Errc::header_count_mismatch, "header declares " + std::to_string(nnz) + " triples, found " +
                                                     std::to_string(bag.triples.size()));
    }
    validate(bag);
    return bag;
}

std::string to_optimized(const SparseBag& bag) {
    std::string out;
    std::size_t i = 0;
    while (i < bag.triples.size()) {
        DocId doc = bag.triples[i].doc;
        out += std::to_string(doc);
        for (; i < bag.triples.size() && bag.triples[i].doc == doc; ++i) {
            out += ' ';
            out += std::to_string(bag.triples[i].word);
            out += ':';
            out += std::to_string(bag.triples[i].count);
        }
        out += '\n';
    }
    return out;
}

SparseBag parse_optimized(std::string_view text, std::uint32_t D, std::uint32_t W) {
    SparseBag bag{D, W, {}};
    LineReader lines(text);
    std::vector<bool> seen_doc(static_cast<std::size_t>(D) + 1, false);
    std::vector<std::vector<Triple>> rows(static_cast<std::size_t>(D) + 1);
    while (auto line = lines.next()) {
        if (line->empty()) continue;
        auto n = lines.line_number();
        auto fields = split_fields(*line);
        auto doc = static_cast<DocId>(parse_count(fields[0], n, false));
        if (doc > D) throw Error(Errc::feature_out_of_range, "line " + std::to_string(n) + ": doc id exceeds D");
        if (seen_doc[doc]) throw Error(Errc::duplicate_doc_id, "line " + std::to_string(n) + ": repeated doc id");
        seen_doc[doc] = true;
        auto& row = rows[doc];
        for (std::size_t f = 1; f < fields.size(); ++f) {
            auto [id_text, count_text] = split_pair(fields[f], ':', n);
            auto id = static_cast<WordId>(parse_count(id_text, n, false));
            auto count = parse_count(count_text, n, false);
            if (id > W) throw Error(Errc::feature_out_of_range, "line " + std::to_string(n) + ": id exceeds W");
            row.push_back({doc, id, count});
        }
        std::sort(row.begin(), row.end(), [](const Triple& a, const Triple& b) { return a.word < b.word; });
        for (std::size_t k = 1; k < row.size(); ++k) {
            if (row[k].word == row[k - 1].word) {
                throw Error(Errc::duplicate_feature,
                            "line " + std::to_string(n) + ": id " + std::to_string(row[k].word) + " repeated");
            }
        }
    }
    for (auto& row : rows) bag.triples.insert(bag.triples.end(), row.begin(), row.end());
    return bag;
}

std::string write_vocabulary(const Vocabulary& vocab) {
    std::string out;
    for (const auto& t : vocab.terms()) {
        out += t;
        out += '\n';
    }
    return out;
}

Vocabulary parse_vocabulary(std::string_view text) {
    Vocabulary vocab;
    LineReader lines(text);
    while (auto line = lines.next()) {
        auto n = lines.line_number();
        auto term = trim(*line);
        if (term.empty()) throw Error(Errc::malformed_line, "vocabulary line " + std::to_string(n) + " is empty");
        if (vocab.find(term)) {
            throw Error(Errc::duplicate_feature, "vocabulary line " + std::to_string(n) + ": repeated term");
        }
        vocab.add(term);
    }
    return vocab;
}

Stoplist parse_stoplist(std::string_view text) {
    Stoplist out;
    LineReader lines(text);
    while (auto line = lines.next()) {
        auto body = trim(*line);
        if (body.empty() || body.front() == '#') continue;
        for (auto word : split_fields(body)) {
            std::string w(word);
            std::transform(w.begin(), w.end(), w.begin(), [](unsigned char c) { return std::tolower(c); });
            out.insert(std::move(w));
        }
    }
    return out;
}

std::vector<RawDocument> read_corpus_directory(const fs::path& root) {
    if (!fs::is_directory(root)) throw Error(Errc::io_failure, "not a directory: " + root.string());
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (entry.is_regular_file()) files.push_back(fs::relative(entry.path(), root));
    }
    std::sort(files.begin(), files.end());
    std::vector<RawDocument> docs;
    docs.reserve(files.size());
    for (const auto& rel : files) {
        RawDocument doc;
        doc.doc_id = static_cast<DocId>(docs.size() + 1);
        if (rel.has_parent_path() && !rel.parent_path().empty()) doc.label = rel.parent_path().filename().string();
        doc.text = read_file(root / rel);
        docs.push_back(std::move(doc));
    }
    return docs;
}

std::vector<RawDocument> parse_corpus_jsonl(std::string_view text) {
    std::vector<RawDocument> docs;
    LineReader lines(text);
    while (auto line = lines.next()) {
        if (trim(*line).empty()) continue;
        auto n = lines.line_number();
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(*line);
        } catch (const nlohmann::json::parse_error& e) {
            throw Error(Errc::malformed_line, "jsonl line " + std::to_string(n) + ": " + e.what());
        }
        if (!j.is_object() || !j.contains("id") || !j["id"].is_number_integer() || !j.contains("text") ||
            !j["text"].is_string()) {
            throw Error(Errc::malformed_line, "jsonl line " + std::to_string(n) + ": needs integer id and string text");
        }
        auto id = j["id"].get<std::int64_t>();
        if (id <= 0) throw Error(Errc::non_positive_integer, "jsonl line " + std::to_string(n) + ": id must be positive");
        RawDocument doc;
        doc.doc_id = static_cast<DocId>(id);
        doc.text = j["text"].get<std::string>();
        if (j.contains("label") && !j["label"].is_null()) {
            if (!j["label"].is_string()) {
                throw Error(Errc::malformed_line, "jsonl line " + std::to_string(n) + ": label must be a string");
            }
            doc.label = j["label"].get<std::string>();
        }
        docs.push_back(std::move(doc));
    }
    return docs;
}

std::vector<RawDocument> read_corpus(const fs::path& path) {
    if (fs::is_directory(path)) return read_corpus_directory(path);
    return parse_corpus_jsonl(read_file(path));
}

std::string write_labels(const std::vector<RawDocument>& corpus) {
    std::vector<const RawDocument*> ordered;
    for (const auto& d : corpus) {
        if (d.label) ordered.push_back(&d);
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const RawDocument* a, const RawDocument* b) { return a->doc_id < b->doc_id; });
    std::string out;
    for (const auto* d : ordered) out += std::to_string(d->doc_id) + ' ' + *d->label + '\n';
    return out;
}

std::unordered_map<DocId, std::string> parse_labels(std::string_view text) {
    std::unordered_map<DocId, std::string> labels;
    LineReader lines(text);
    while (auto line = lines.next()) {
        if (trim(*line).empty()) continue;
        auto n = lines.line_number();
        auto fields = split_fields(*line);
        if (fields.size() != 2) throw Error(Errc::malformed_line, "labels line " + std::to_string(n));
        auto doc = static_cast<DocId>(parse_count(fields[0], n, false));
        if (!labels.emplace(doc, std::string(fields[1])).second) {
            throw Error(Errc::duplicate_doc_id, "labels line " + std::to_string(n) + ": repeated doc id");
        }
    }
    return labels;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io_failure, "cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

void write_file(const fs::path& path, std::string_view contents) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(Errc::io_failure, "cannot write " + tmp.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw Error(Errc::io_failure, "short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw Error(Errc::io_failure, "cannot rename onto " + path.string() + ": " + ec.message());
}

}  // namespace lexicluster
