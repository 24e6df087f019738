#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "qamar/lexicon.hpp"
#include "qamar/morpho.hpp"
#include "qamar/text.hpp"

namespace qamar {

enum class Category { Noun, ProperNoun, Adjective, Verb, Particle, Number, Punct, Unknown };

inline constexpr Category all_categories[] = {Category::Noun,     Category::ProperNoun, Category::Adjective,
                                              Category::Verb,     Category::Particle,   Category::Number,
                                              Category::Punct,    Category::Unknown};

inline std::string_view to_string(Category c) {
    switch (c) {
    case Category::Noun: return "noun";
    case Category::ProperNoun: return "proper_noun";
    case Category::Adjective: return "adjective";
    case Category::Verb: return "verb";
    case Category::Particle: return "particle";
    case Category::Number: return "number";
    case Category::Punct: return "punct";
    case Category::Unknown: return "unknown";
    }
    return "unknown";
}

inline std::optional<Category> parse_category(std::string_view s) {
    for (auto c : all_categories)
        if (to_string(c) == s)
            return c;
    return std::nullopt;
}

inline bool is_nominal(Category c) {
    return c == Category::Noun || c == Category::Adjective || c == Category::ProperNoun;
}

enum class Count { NA, Singular, Dual, Plural };
enum class Gender { NA, Masculine, Feminine };
enum class Tense { NA, Past, Present, Imperative };
enum class Voice { NA, Active, Passive };

struct Features {
    bool definite = false;
    Count count = Count::NA;
    Gender gender = Gender::NA;
    Tense tense = Tense::NA;
    Voice voice = Voice::NA;

    bool operator==(const Features&) const = default;
};

enum class LemmaMethod {
    RootIdentity,
    PatternMap,
    SuffixStrip,
    FeminineDict,
    TaaSubstitution,
    BrokenPluralDict,
    Passthrough,
};

inline std::string_view to_string(LemmaMethod m) {
    switch (m) {
    case LemmaMethod::RootIdentity: return "root-identity";
    case LemmaMethod::PatternMap: return "pattern-map";
    case LemmaMethod::SuffixStrip: return "suffix-strip";
    case LemmaMethod::FeminineDict: return "feminine-dict";
    case LemmaMethod::TaaSubstitution: return "taa-substitution";
    case LemmaMethod::BrokenPluralDict: return "broken-plural-dict";
    case LemmaMethod::Passthrough: return "passthrough";
    }
    return "passthrough";
}

struct Analysis {
    Token token;
    Category category = Category::Unknown;
    std::size_t group = 0; // closed-word group, Particle only
    Hint hint = Hint::None;
    Features features;
    std::optional<Segmentation> segmentation;
    std::optional<PatternMatch> match;
    std::optional<std::u32string> root;
    std::u32string lemma;
    LemmaMethod method = LemmaMethod::Passthrough;
    bool broken_plural = false;
    std::u32string dictionary_form; // stored lexicon form of a proper noun or particle

    bool is_word() const { return token.kind == TokenKind::Word; }
    bool has_article() const { return segmentation && segmentation->prefix && segmentation->prefix->has(Definite); }
    bool has_proclitic() const {
        return segmentation && (!segmentation->proclitics.empty() ||
                                (segmentation->prefix && segmentation->prefix->has(Preposition)));
    }
};

} // namespace qamar
