#pragma once

#include "lexicluster/corpus.hpp"
#include "lexicluster/feature_matrix.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lexicluster {

enum class PartOfSpeech { noun, verb, adjective, adverb, none };

using CategoryId = std::uint8_t;

struct LexicalCategory {
    CategoryId id;
    std::string_view name;
    PartOfSpeech pos;
};

/// The 45 WordNet lexicographer files (ids 0..44, lexnames order) followed
/// by the Uncategorized slot (id 45).
inline constexpr CategoryId kUncategorized = 45;
inline constexpr std::size_t kCategoryCount = 46;
inline constexpr std::size_t kNounCategoryCount = 26;

std::span<const LexicalCategory> lexical_categories();
std::optional<CategoryId> find_category(std::string_view name);

struct Sense {
    std::uint32_t rank = 0;
    CategoryId category = kUncategorized;
    /// Hypernym concept ids, nearest parent first.
    std::vector<std::string> hypernyms;
};

class Lexicon {
public:
    /// Senses ordered by rank, or nullptr if the term is unknown.
    const std::vector<Sense>* senses(std::string_view term) const;
    void add(std::string term, Sense sense);
    std::size_t term_count() const { return entries_.size(); }

private:
    std::unordered_map<std::string, std::vector<Sense>> entries_;
};

/// Lexicon TSV: term<TAB>rank<TAB>category<TAB>a>b>c, '#' comments.
Lexicon load_lexicon(std::string_view text);

enum class CategoryMode { all_categories, nouns_only };

/// First-sense category. Unknown terms map to Uncategorized; in nouns_only
/// mode a known term without any noun sense is dropped (nullopt).
std::optional<CategoryId> category_of(const Lexicon& lexicon, std::string_view term, CategoryMode mode);

/// Size of the category feature space: 46 or 27, independent of data.
std::uint32_t category_feature_count(CategoryMode mode);
/// 1-based feature id of a category; the category must belong to the mode.
FeatureId category_feature(CategoryId category, CategoryMode mode);
std::string_view category_feature_name(FeatureId feature, CategoryMode mode);

CategoryBag bag_to_categories(const SparseBag& bag, const Vocabulary& vocab, const Lexicon& lexicon,
                              CategoryMode mode);

inline constexpr std::string_view kConceptPrefix = "concept:";

/// Adds hypernym concepts of each known term's first sense, up to `levels`
/// parents, as extra features carrying the term's count. Concepts become
/// vocabulary entries named kConceptPrefix + concept id.
Extracted hotho_expand(const SparseBag& bag, const Vocabulary& vocab, const Lexicon& lexicon, int levels = 5);

}  // namespace lexicluster
