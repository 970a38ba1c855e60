#include "lexicluster/porter.hpp"

#include <array>
#include <span>

namespace lexicluster {
namespace {

bool is_vowel_letter(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

// y is a consonant at the start of a word or after a vowel.
bool is_consonant(std::string_view w, std::size_t i) {
    if (is_vowel_letter(w[i])) return false;
    if (w[i] == 'y') return i == 0 || !is_consonant(w, i - 1);
    return true;
}

// m in [C](VC){m}[V]
int measure(std::string_view stem) {
    int m = 0;
    bool prev_vowel = false;
    for (std::size_t i = 0; i < stem.size(); ++i) {
        bool cons = is_consonant(stem, i);
        if (cons && prev_vowel) ++m;
        prev_vowel = !cons;
    }
    return m;
}

bool contains_vowel(std::string_view stem) {
    for (std::size_t i = 0; i < stem.size(); ++i) {
        if (!is_consonant(stem, i)) return true;
    }
    return false;
}

bool ends_double_consonant(std::string_view w) {
    auto n = w.size();
    return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

// *o: stem ends consonant-vowel-consonant, last consonant not w, x or y.
bool ends_cvc(std::string_view w) {
    auto n = w.size();
    if (n < 3) return false;
    char last = w[n - 1];
    return is_consonant(w, n - 3) && !is_consonant(w, n - 2) &&
           is_consonant(w, n - 1) && last != 'w' && last != 'x' && last != 'y';
}

using Condition = bool (*)(std::string_view);

struct Rule {
    std::string_view suffix;
    std::string_view replacement;
    Condition condition;
};

bool positive_measure(std::string_view s) { return measure(s) > 0; }
bool measure_above_one(std::string_view s) { return measure(s) > 1; }
bool ion_condition(std::string_view s) {
    return measure(s) > 1 && !s.empty() && (s.back() == 's' || s.back() == 't');
}

// Only the first rule whose suffix matches is considered; when its
// condition fails the word is left alone.
void apply_first(std::string& w, std::span<const Rule> rules) {
    for (const auto& r : rules) {
        if (!w.ends_with(r.suffix)) continue;
        std::string_view stem(w.data(), w.size() - r.suffix.size());
        if (r.condition == nullptr || r.condition(stem)) {
            w.resize(stem.size());
            w.append(r.replacement);
        }
        return;
    }
}

void step1a(std::string& w) {
    static constexpr std::array<Rule, 4> rules{{
        {"sses", "ss", nullptr},
        {"ies", "i", nullptr},
        {"ss", "ss", nullptr},
        {"s", "", nullptr},
    }};
    apply_first(w, rules);
}

void step1b(std::string& w) {
    if (w.ends_with("eed")) {
        if (measure(std::string_view(w).substr(0, w.size() - 3)) > 0) w.pop_back();
        return;
    }
    bool stripped = false;
    for (std::string_view suffix : {std::string_view("ed"), std::string_view("ing")}) {
        if (!w.ends_with(suffix)) continue;
        std::string_view stem(w.data(), w.size() - suffix.size());
        if (contains_vowel(stem)) {
            w.resize(stem.size());
            stripped = true;
            break;
        }
    }
    if (!stripped) return;

    if (w.ends_with("at") || w.ends_with("bl") || w.ends_with("iz")) {
        w.push_back('e');
    } else if (ends_double_consonant(w)) {
        char last = w.back();
        if (last != 'l' && last != 's' && last != 'z') w.pop_back();
    } else if (measure(w) == 1 && ends_cvc(w)) {
        w.push_back('e');
    }
}

void step1c(std::string& w) {
    if (w.ends_with('y') && contains_vowel(std::string_view(w).substr(0, w.size() - 1))) {
        w.back() = 'i';
    }
}

void step2(std::string& w) {
    static constexpr std::array<Rule, 20> rules{{
        {"ational", "ate", positive_measure},
        {"tional", "tion", positive_measure},
        {"enci", "ence", positive_measure},
        {"anci", "ance", positive_measure},
        {"izer", "ize", positive_measure},
        {"abli", "able", positive_measure},
        {"alli", "al", positive_measure},
        {"entli", "ent", positive_measure},
        {"eli", "e", positive_measure},
        {"ousli", "ous", positive_measure},
        {"ization", "ize", positive_measure},
        {"ation", "ate", positive_measure},
        {"ator", "ate", positive_measure},
        {"alism", "al", positive_measure},
        {"iveness", "ive", positive_measure},
        {"fulness", "ful", positive_measure},
        {"ousness", "ous", positive_measure},
        {"aliti", "al", positive_measure},
        {"iviti", "ive", positive_measure},
        {"biliti", "ble", positive_measure},
    }};
    apply_first(w, rules);
}

void step3(std::string& w) {
    static constexpr std::array<Rule, 7> rules{{
        {"icate", "ic", positive_measure},
        {"ative", "", positive_measure},
        {"alize", "al", positive_measure},
        {"iciti", "ic", positive_measure},
        {"ical", "ic", positive_measure},
        {"ful", "", positive_measure},
        {"ness", "", positive_measure},
    }};
    apply_first(w, rules);
}

void step4(std::string& w) {
    static constexpr std::array<Rule, 19> rules{{
        {"al", "", measure_above_one},
        {"ance", "", measure_above_one},
        {"ence", "", measure_above_one},
        {"er", "", measure_above_one},
        {"ic", "", measure_above_one},
        {"able", "", measure_above_one},
        {"ible", "", measure_above_one},
        {"ant", "", measure_above_one},
        {"ement", "", measure_above_one},
        {"ment", "", measure_above_one},
        {"ent", "", measure_above_one},
        {"ion", "", ion_condition},
        {"ou", "", measure_above_one},
        {"ism", "", measure_above_one},
        {"ate", "", measure_above_one},
        {"iti", "", measure_above_one},
        {"ous", "", measure_above_one},
        {"ive", "", measure_above_one},
        {"ize", "", measure_above_one},
    }};
    apply_first(w, rules);
}

void step5a(std::string& w) {
    if (!w.ends_with('e')) return;
    std::string_view stem(w.data(), w.size() - 1);
    int m = measure(stem);
    if (m > 1 || (m == 1 && !ends_cvc(stem))) w.pop_back();
}

void step5b(std::string& w) {
    if (w.ends_with("ll") && measure(w) > 1) w.pop_back();
}

}  // namespace

std::string porter_stem(std::string_view word) {
    std::string w(word);
    if (w.size() <= 2) return w;
    step1a(w);
    step1b(w);
    step1c(w);
    step2(w);
    step3(w);
    step4(w);
    step5a(w);
    step5b(w);
    return w;
}

}  // namespace lexicluster
