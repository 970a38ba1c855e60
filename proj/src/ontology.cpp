#include "lexicluster/ontology.hpp"

#include "lexicluster/error.hpp"
#include "lexicluster/text_io.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace lexicluster {
namespace {

using P = PartOfSpeech;

constexpr std::array<LexicalCategory, kCategoryCount> kCategories{{
    {0, "adj.all", P::adjective},
    {1, "adj.pert", P::adjective},
    {2, "adv.all", P::adverb},
    {3, "noun.Tops", P::noun},
    {4, "noun.act", P::noun},
    {5, "noun.animal", P::noun},
    {6, "noun.artifact", P::noun},
    {7, "noun.attribute", P::noun},
    {8, "noun.body", P::noun},
    {9, "noun.cognition", P::noun},
    {10, "noun.communication", P::noun},
    {11, "noun.event", P::noun},
    {12, "noun.feeling", P::noun},
    {13, "noun.food", P::noun},
    {14, "noun.group", P::noun},
    {15, "noun.location", P::noun},
    {16, "noun.motive", P::noun},
    {17, "noun.object", P::noun},
    {18, "noun.person", P::noun},
    {19, "noun.phenomenon", P::noun},
    {20, "noun.plant", P::noun},
    {21, "noun.possession", P::noun},
    {22, "noun.process", P::noun},
    {23, "noun.quantity", P::noun},
    {24, "noun.relation", P::noun},
    {25, "noun.shape", P::noun},
    {26, "noun.state", P::noun},
    {27, "noun.substance", P::noun},
    {28, "noun.time", P::noun},
    {29, "verb.body", P::verb},
    {30, "verb.change", P::verb},
    {31, "verb.cognition", P::verb},
    {32, "verb.communication", P::verb},
    {33, "verb.competition", P::verb},
    {34, "verb.consumption", P::verb},
    {35, "verb.contact", P::verb},
    {36, "verb.creation", P::verb},
    {37, "verb.emotion", P::verb},
    {38, "verb.motion", P::verb},
    {39, "verb.perception", P::verb},
    {40, "verb.possession", P::verb},
    {41, "verb.social", P::verb},
    {42, "verb.stative", P::verb},
    {43, "verb.weather", P::verb},
    {44, "adj.ppl", P::adjective},
    {45, "Uncategorized", P::none},
}};

// noun.Tops .. noun.time occupy a contiguous id range.
constexpr CategoryId kFirstNoun = 3;
constexpr CategoryId kLastNoun = 28;
static_assert(kLastNoun - kFirstNoun + 1 == kNounCategoryCount);

bool is_noun(CategoryId c) { return c >= kFirstNoun && c <= kLastNoun; }

}  // namespace

std::span<const LexicalCategory> lexical_categories() { return kCategories; }

std::optional<CategoryId> find_category(std::string_view name) {
    for (const auto& c : kCategories) {
        if (c.name == name) return c.id;
    }
    return std::nullopt;
}

const std::vector<Sense>* Lexicon::senses(std::string_view term) const {
    auto it = entries_.find(std::string(term));
    return it == entries_.end() ? nullptr : &it->second;
}

void Lexicon::add(std::string term, Sense sense) {
    auto& list = entries_[std::move(term)];
    auto pos = std::lower_bound(list.begin(), list.end(), sense.rank,
                                [](const Sense& s, std::uint32_t rank) { return s.rank < rank; });
    if (pos != list.end() && pos->rank == sense.rank) {
        throw Error(Errc::duplicate_sense_rank, "sense rank " + std::to_string(sense.rank) + " repeated");
    }
    list.insert(pos, std::move(sense));
}

Lexicon load_lexicon(std::string_view text) {
    Lexicon lexicon;
    LineReader lines(text);
    while (auto line = lines.next()) {
        auto n = lines.line_number();
        if (trim(*line).empty() || line->front() == '#') continue;
        auto fields = split_on(*line, '\t');
        if (fields.size() == 3) fields.emplace_back();
        if (fields.size() != 4 || trim(fields[0]).empty()) {
            throw Error(Errc::malformed_line,
                        "lexicon line " + std::to_string(n) + ": expected term, rank, category, hypernyms");
        }
        Sense sense;
        sense.rank = static_cast<std::uint32_t>(parse_count(trim(fields[1]), n, false));
        auto category = find_category(trim(fields[2]));
        if (!category || *category == kUncategorized) {
            throw Error(Errc::unknown_category,
                        "lexicon line " + std::to_string(n) + ": unknown category '" + std::string(fields[2]) + "'");
        }
        sense.category = *category;
        auto chain = trim(fields[3]);
        if (!chain.empty()) {
            for (auto concept_id : split_on(chain, '>')) {
                if (concept_id.empty()) {
                    throw Error(Errc::malformed_line, "lexicon line " + std::to_string(n) + ": empty hypernym");
                }
                sense.hypernyms.emplace_back(concept_id);
            }
        }
        try {
            lexicon.add(std::string(trim(fields[0])), std::move(sense));
        } catch (const Error& e) {
            throw Error(e.code(), "lexicon line " + std::to_string(n) + ": " + e.what());
        }
    }
    return lexicon;
}

std::optional<CategoryId> category_of(const Lexicon& lexicon, std::string_view term, CategoryMode mode) {
    const auto* senses = lexicon.senses(term);
    if (senses == nullptr || senses->empty()) return kUncategorized;
    if (mode == CategoryMode::all_categories) return senses->front().category;
    for (const auto& s : *senses) {
        if (is_noun(s.category)) return s.category;
    }
    return std::nullopt;
}

std::uint32_t category_feature_count(CategoryMode mode) {
    return mode == CategoryMode::all_categories ? static_cast<std::uint32_t>(kCategoryCount)
                                                : static_cast<std::uint32_t>(kNounCategoryCount + 1);
}

FeatureId category_feature(CategoryId category, CategoryMode mode) {
    if (mode == CategoryMode::all_categories) {
        if (category >= kCategoryCount) throw Error(Errc::invalid_argument, "category id out of range");
        return static_cast<FeatureId>(category) + 1;
    }
    if (category == kUncategorized) return static_cast<FeatureId>(kNounCategoryCount) + 1;
    if (!is_noun(category)) throw Error(Errc::invalid_argument, "non-noun category in nouns_only space");
    return static_cast<FeatureId>(category - kFirstNoun) + 1;
}

std::string_view category_feature_name(FeatureId feature, CategoryMode mode) {
    if (feature == 0 || feature > category_feature_count(mode)) {
        throw Error(Errc::feature_out_of_range, "category feature " + std::to_string(feature) + " out of range");
    }
    if (mode == CategoryMode::all_categories) return kCategories[feature - 1].name;
    if (feature == kNounCategoryCount + 1) return kCategories[kUncategorized].name;
    return kCategories[kFirstNoun + feature - 1].name;
}

CategoryBag bag_to_categories(const SparseBag& bag, const Vocabulary& vocab, const Lexicon& lexicon,
                              CategoryMode mode) {
    // Resolve each word id once.
    std::vector<std::optional<FeatureId>> feature_of(static_cast<std::size_t>(vocab.size()) + 1);
    for (WordId w = 1; w <= vocab.size(); ++w) {
        if (auto c = category_of(lexicon, vocab.term(w), mode)) feature_of[w] = category_feature(*c, mode);
    }

    CategoryBag out;
    out.D = bag.D;
    out.W = category_feature_count(mode);
    std::size_t i = 0;
    while (i < bag.triples.size()) {
        DocId doc = bag.triples[i].doc;
        std::map<FeatureId, std::uint64_t> counts;
        for (; i < bag.triples.size() && bag.triples[i].doc == doc; ++i) {
            const auto& t = bag.triples[i];
            if (t.word == 0 || t.word > vocab.size()) {
                throw Error(Errc::unknown_word_id, "word id " + std::to_string(t.word) + " not in vocabulary");
            }
            if (auto f = feature_of[t.word]) counts[*f] += t.count;
        }
        for (auto [f, c] : counts) out.triples.push_back({doc, f, c});
    }
    return out;
}

Extracted hotho_expand(const SparseBag& bag, const Vocabulary& vocab, const Lexicon& lexicon, int levels) {
    if (levels < 0) throw Error(Errc::invalid_argument, "hypernym levels must be >= 0");
    Extracted out{vocab, {}};
    out.bag.D = bag.D;

    std::size_t i = 0;
    while (i < bag.triples.size()) {
        DocId doc = bag.triples[i].doc;
        std::map<WordId, std::uint64_t> counts;
        for (; i < bag.triples.size() && bag.triples[i].doc == doc; ++i) {
            const auto& t = bag.triples[i];
            counts[t.word] += t.count;
            const auto* senses = lexicon.senses(vocab.term(t.word));
            if (senses == nullptr || senses->empty()) continue;
            const auto& chain = senses->front().hypernyms;
            auto depth = std::min<std::size_t>(static_cast<std::size_t>(levels), chain.size());
            for (std::size_t k = 0; k < depth; ++k) {
                WordId concept_word = out.vocab.add(std::string(kConceptPrefix) + chain[k]);
                counts[concept_word] += t.count;
            }
        }
        for (auto [w, c] : counts) out.bag.triples.push_back({doc, w, c});
    }
    out.bag.W = out.vocab.size();
    return out;
}

}  // namespace lexicluster
