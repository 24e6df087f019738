#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qamar/analysis.hpp"
#include "qamar/error.hpp"
#include "qamar/lexicon.hpp"
#include "qamar/morpho.hpp"

namespace qamar {

struct TagContext {
    const Analysis* previous = nullptr; // last word token
    Hint pending_hint = Hint::None;
};

struct TagOptions {
    bool morphology = true;   // patterns, roots and verb dictionary
    bool proper_nouns = true;
    bool context_rules = true;
};

inline Category classify_by_pattern(const PatternMatch& m, const LexiconBundle& b) {
    switch (m.pattern.cls) {
    case PatternClass::Verb: return Category::Verb;
    case PatternClass::Noun: return Category::Noun;
    case PatternClass::General: return is_third_class_verb(b, m.stem) ? Category::Verb : Category::Noun;
    }
    return Category::Noun;
}

inline Category apply_context_rules(const TagContext& ctx, std::optional<Category> candidate) {
    // nullopt is an ambiguous candidate
    Category c = candidate ? *candidate : ctx.pending_hint == Hint::Verb ? Category::Verb : Category::Noun;
    if (c == Category::Verb && ctx.previous && ctx.previous->category == Category::Verb)
        c = Category::Noun;
    return c;
}

inline bool is_definite(const Analysis& a) {
    if (!is_nominal(a.category))
        throw ContractViolation("definiteness is defined for nominals only");
    if (a.category == Category::ProperNoun)
        return true;
    return a.segmentation && (a.has_article() || (a.segmentation->suffix && a.segmentation->suffix->has(Pronoun)));
}

namespace detail {

inline bool all_arabic(std::u32string_view w) {
    for (char32_t c : w)
        if (!is_arabic_letter(c))
            return false;
    return !w.empty();
}

inline const AffixEntry* find_prefix(const LexiconBundle& b, std::u32string_view s) {
    for (const auto& p : b.prefixes)
        if (p.surface == s)
            return &p;
    return nullptr;
}

// clitic peelings of a word: conjunction first, then an optional preposition
inline std::vector<Segmentation> clitic_variants(std::u32string_view w, const LexiconBundle& b) {
    std::vector<Segmentation> out;
    auto add = [&](std::vector<const AffixEntry*> cl, std::size_t used) {
        Segmentation s;
        s.proclitics = std::move(cl);
        s.stem = std::u32string(w.substr(used));
        out.push_back(std::move(s));
    };
    add({}, 0);
    std::vector<const AffixEntry*> conj, prep;
    for (const auto& p : b.prefixes) {
        if (!p.has(Proclitic))
            continue;
        (p.has(Conjunction) ? conj : prep).push_back(&p);
    }
    auto preps = [&](std::vector<const AffixEntry*> base, std::size_t used) {
        for (const auto* p : prep)
            if (starts_with(w.substr(used), p->surface) && w.size() >= used + p->surface.size() + min_stem) {
                auto cl = base;
                cl.push_back(p);
                add(cl, used + p->surface.size());
            }
    };
    for (const auto* c : conj)
        if (starts_with(w, c->surface) && w.size() >= c->surface.size() + min_stem) {
            add({c}, c->surface.size());
            preps({c}, c->surface.size());
        }
    preps({}, 0);
    return out;
}

inline void nominal_features(Analysis& a, const LexiconBundle& b) {
    const auto& s = *a.segmentation;
    Features f;
    f.definite = is_definite(a);
    f.count = Count::Singular;
    f.gender = Gender::Masculine;
    if (s.suffix) {
        if (s.suffix->has(Plural))
            f.count = Count::Plural;
        else if (s.suffix->has(Dual))
            f.count = Count::Dual;
        if (s.suffix->has(Feminine) || s.suffix->has(Taa))
            f.gender = Gender::Feminine;
    }
    auto nb = nominal_base(s, b);
    if (!s.suffix || !s.suffix->has(Feminine)) {
        if (!nb.base.empty() && nb.base.back() == U'ة')
            f.gender = Gender::Feminine;
    }
    if (find_broken_plural(b, nb.base)) {
        f.count = Count::Plural;
        a.broken_plural = true;
    }
    a.features = f;
}

} // namespace detail

inline Analysis tag_token(const Token& token, const TagContext& ctx, const LexiconBundle& b, const TagOptions& opt = {}) {
    Analysis a;
    a.token = token;
    if (token.kind == TokenKind::Number) {
        a.category = Category::Number;
        return a;
    }
    if (token.kind == TokenKind::Punct) {
        a.category = Category::Punct;
        return a;
    }
    const std::u32string& w = token.surface;

    // level 1: closed words, also behind و/ف and a preposition, and with an
    // attached pronoun for groups that take one
    auto particle = [&](const ClosedWordEntry& e, Segmentation v, Hint hint) {
        a.category = Category::Particle;
        a.group = e.group;
        a.hint = hint;
        a.dictionary_form = e.surface;
        a.segmentation = std::move(v);
        return a;
    };
    // behind a preposition only groups that allow it, spelled exactly
    auto closed = [&](const Segmentation& v, std::u32string_view stem) -> const ClosedWordEntry* {
        if (!v.has(Preposition))
            return find_closed_folded(b, stem);
        auto* e = find_closed(b, stem);
        return e && b.groups[e->group].after_preposition ? e : nullptr;
    };
    auto variants = detail::clitic_variants(w, b);
    for (auto& v : variants)
        if (auto* e = closed(v, v.stem))
            return particle(*e, std::move(v), e->hint);
    for (auto& v : variants) {
        for (const auto& suf : b.suffixes) {
            if (suf.features != Pronoun || !ends_with(v.stem, suf.surface) || v.stem.size() < suf.surface.size() + min_stem)
                continue;
            auto* e = closed(v, std::u32string_view(v.stem).substr(0, v.stem.size() - suf.surface.size()));
            if (!e || !b.groups[e->group].takes_pronoun)
                continue;
            v.stem.resize(v.stem.size() - suf.surface.size());
            v.suffix = &suf;
            return particle(*e, std::move(v), Hint::None);
        }
    }

    // level 2: proper nouns, with or without the article
    if (opt.proper_nouns) {
        for (auto& v : variants) {
            const std::u32string* form = find_form(b.proper_nouns, b.proper_folded, v.stem);
            if (!form && starts_with(v.stem, U"ال"))
                form = find_form(b.proper_nouns, b.proper_folded, std::u32string_view(v.stem).substr(2));
            if (!form)
                continue;
            if (starts_with(v.stem, U"ال") && v.stem.size() > 2 + min_stem) {
                v.prefix = detail::find_prefix(b, U"ال");
                if (v.prefix)
                    v.stem.erase(0, 2);
            }
            a.category = Category::ProperNoun;
            a.dictionary_form = *form;
            a.segmentation = std::move(v);
            a.features.definite = true;
            a.features.count = Count::Singular;
            return a;
        }
    }

    if (!detail::all_arabic(w)) {
        a.category = Category::Unknown;
        return a;
    }

    // levels 3-5: affixes, context, patterns
    auto cands = strip_affixes(w, b);
    auto choice = choose_segmentation(cands, b, opt.morphology);
    a.segmentation = cands[choice.index];
    const auto& seg = *a.segmentation;
    if (!choice.matches.empty()) {
        a.match = choice.matches.front();
        a.root = a.match->root;
    }

    std::optional<Category> cat;
    if (!opt.morphology) {
        cat = Category::Noun;
    } else {
        Evidence ev = classify_by_affix(seg);
        if (ev == Evidence::Noun)
            cat = Category::Noun;
        else if (ev == Evidence::Verb)
            cat = Category::Verb;
        else if (opt.context_rules && ctx.pending_hint != Hint::None)
            cat = ctx.pending_hint == Hint::Verb ? Category::Verb : Category::Noun;
        else if (is_third_class_verb(b, seg.stem))
            cat = Category::Verb;
        else if (auto nb = nominal_base(seg, b); find_broken_plural(b, nb.base) || b.broken_singulars.count(nb.base))
            cat = Category::Noun;
        else if (a.match)
            cat = classify_by_pattern(*a.match, b);
        else
            cat = Category::Noun;
    }
    a.category = opt.context_rules ? apply_context_rules(ctx, cat) : *cat;

    if (a.category == Category::Verb) {
        a.features.voice = Voice::Active;
        if (seg.suffix && seg.suffix->has(Past))
            a.features.tense = Tense::Past;
        else if ((seg.prefix && seg.prefix->has(Future)) || (a.match && a.match->pattern.lemma))
            a.features.tense = Tense::Present;
        else if (!a.match && !seg.stem.empty() && seg.stem[0] == U'ي')
            a.features.tense = Tense::Present;
        else
            a.features.tense = Tense::Past;
    } else {
        detail::nominal_features(a, b);
    }
    return a;
}

namespace detail {

inline bool agrees(const Analysis& prev, const Analysis& cur) {
    const auto& p = prev.features;
    const auto& c = cur.features;
    if (p.definite != c.definite)
        return false;
    if (p.count == c.count && p.gender == c.gender)
        return true;
    // non-human plurals take feminine singular modifiers
    bool nonhuman = prev.broken_plural || (p.count == Count::Plural && p.gender == Gender::Feminine);
    return nonhuman && c.count == Count::Singular && c.gender == Gender::Feminine;
}

inline bool adjective_candidate(const Analysis& cur) {
    if (cur.category != Category::Noun || !cur.segmentation)
        return false;
    const auto& s = *cur.segmentation;
    if (s.suffix && s.suffix->has(Pronoun))
        return false;
    return s.proclitics.empty() && (!s.prefix || (s.prefix->has(Definite) && !s.prefix->has(Preposition)));
}

} // namespace detail

inline void retag_adjectives_in_place(std::vector<Analysis>& as) {
    const Analysis* prev = nullptr;
    for (auto& a : as) {
        if (!a.is_word())
            continue;
        if (prev && detail::adjective_candidate(a) &&
            (prev->category == Category::Noun || prev->category == Category::Adjective) && detail::agrees(*prev, a))
            a.category = Category::Adjective;
        prev = &a;
    }
}

inline std::vector<Analysis> retag_adjectives(std::vector<Analysis> as) {
    retag_adjectives_in_place(as);
    return as;
}

inline std::vector<Analysis> tag_sequence(const std::vector<Token>& tokens, const LexiconBundle& b,
                                          const TagOptions& opt = {}) {
    std::vector<Analysis> out;
    out.reserve(tokens.size());
    TagContext ctx;
    for (const auto& t : tokens) {
        out.push_back(tag_token(t, ctx, b, opt));
        const Analysis& a = out.back();
        if (a.is_word()) {
            ctx.previous = &a;
            ctx.pending_hint = a.category == Category::Particle ? a.hint : Hint::None;
        }
    }
    retag_adjectives_in_place(out);
    return out;
}

} // namespace qamar
