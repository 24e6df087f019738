#pragma once

#include <string>
#include <string_view>

#include "qamar/analysis.hpp"
#include "qamar/error.hpp"
#include "qamar/lexicon.hpp"
#include "qamar/morpho.hpp"

namespace qamar {

struct LemmaResult {
    std::u32string lemma;
    LemmaMethod method = LemmaMethod::Passthrough;

    bool operator==(const LemmaResult&) const = default;
};

inline LemmaResult verb_lemma(std::u32string_view stem, const PatternMatch* match, const LexiconBundle& b) {
    if (is_third_class_verb(b, stem) || !match)
        return {std::u32string(stem), LemmaMethod::Passthrough};
    const auto& p = match->pattern;
    if (p.lemma) {
        const auto& target = b.patterns.at(*p.lemma);
        if (target.arity != static_cast<int>(match->root.size()))
            throw ConsistencyError("lemma template " + utf8::encode(target.text) + " does not fit root " +
                                   utf8::encode(match->root));
        return {instantiate(target, match->root), LemmaMethod::PatternMap};
    }
    if (p.cls != PatternClass::Noun)
        return {std::u32string(stem), LemmaMethod::Passthrough};
    return {match->root, LemmaMethod::RootIdentity};
}

inline LemmaResult noun_lemma(const Segmentation& seg, const LexiconBundle& b) {
    auto nb = nominal_base(seg, b);
    if (auto* s = find_broken_plural(b, nb.base))
        return {*s, LemmaMethod::BrokenPluralDict};
    const std::u32string& in = nb.inflection;
    if (in == U"ون" || in == U"ين")
        return {seg.stem, LemmaMethod::SuffixStrip};
    if (in == U"يون" || in == U"يين")
        return {seg.stem + U"ي", LemmaMethod::SuffixStrip};
    if (in == U"ات" || in == U"يات") {
        std::u32string rest = in == U"يات" ? seg.stem + U"ي" : seg.stem;
        std::u32string fem = rest + U"ة";
        if (auto* f = find_form(b.feminine_singulars, b.feminine_folded, fem))
            return {*f, LemmaMethod::FeminineDict};
        return {rest, LemmaMethod::SuffixStrip};
    }
    if (in == U"تان" || in == U"تين")
        return {seg.stem + U"ة", LemmaMethod::SuffixStrip};
    if (in == U"ت")
        return {nb.base, LemmaMethod::TaaSubstitution};
    return {nb.base, LemmaMethod::Passthrough};
}

inline Analysis lemmatize(Analysis a, const LexiconBundle& b) {
    LemmaResult r{a.token.surface, LemmaMethod::Passthrough};
    switch (a.category) {
    case Category::Verb:
        r = verb_lemma(a.segmentation->stem, a.match ? &*a.match : nullptr, b);
        break;
    case Category::Noun:
    case Category::Adjective:
        r = noun_lemma(*a.segmentation, b);
        break;
    case Category::ProperNoun:
    case Category::Particle:
        if (!a.dictionary_form.empty())
            r.lemma = a.dictionary_form;
        break;
    default:
        break;
    }
    a.lemma = std::move(r.lemma);
    a.method = r.method;
    return a;
}

} // namespace qamar
