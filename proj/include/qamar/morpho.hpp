#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qamar/error.hpp"
#include "qamar/lexicon.hpp"
#include "qamar/text.hpp"

namespace qamar {

enum class Evidence { Noun, Verb, Ambiguous };

struct Segmentation {
    std::vector<const AffixEntry*> proclitics;
    const AffixEntry* prefix = nullptr;
    std::u32string stem;
    const AffixEntry* suffix = nullptr;

    std::u32string reconstruct() const {
        std::u32string out;
        for (const auto* p : proclitics)
            out += p->surface;
        if (prefix)
            out += prefix->surface;
        out += stem;
        if (suffix)
            out += suffix->surface;
        return out;
    }

    bool bare() const { return proclitics.empty() && !prefix && !suffix; }

    bool has(Feature f) const {
        for (const auto* p : proclitics)
            if (p->has(f))
                return true;
        return (prefix && prefix->has(f)) || (suffix && suffix->has(f));
    }

    template <class F> void for_each_affix(F&& f) const {
        for (const auto* p : proclitics)
            f(*p);
        if (prefix)
            f(*prefix);
        if (suffix)
            f(*suffix);
    }

    bool operator==(const Segmentation& o) const {
        auto surf = [](const AffixEntry* a) { return a ? a->surface : std::u32string(); };
        if (proclitics.size() != o.proclitics.size())
            return false;
        for (std::size_t i = 0; i < proclitics.size(); ++i)
            if (proclitics[i]->surface != o.proclitics[i]->surface)
                return false;
        return surf(prefix) == surf(o.prefix) && stem == o.stem && surf(suffix) == surf(o.suffix);
    }
};

struct PatternMatch {
    PatternEntry pattern; // literals carry the stem's own alef spelling
    std::size_t index = 0;
    std::u32string root;
    std::u32string stem;

    bool operator==(const PatternMatch&) const = default;
};

// noun-only + verb-only together yields nullopt
inline std::optional<Evidence> affix_evidence(const Segmentation& s) {
    bool noun = false, verb = false;
    s.for_each_affix([&](const AffixEntry& a) {
        noun |= a.cls == AffixClass::Noun;
        verb |= a.cls == AffixClass::Verb;
    });
    if (noun && verb)
        return std::nullopt;
    return noun ? Evidence::Noun : verb ? Evidence::Verb : Evidence::Ambiguous;
}

inline Evidence classify_by_affix(const Segmentation& s) {
    auto e = affix_evidence(s);
    if (!e)
        throw ContractViolation("segmentation mixes noun-only and verb-only affixes");
    return *e;
}

inline bool starts_with(std::u32string_view s, std::u32string_view p) {
    return s.size() >= p.size() && s.substr(0, p.size()) == p;
}

inline bool ends_with(std::u32string_view s, std::u32string_view p) {
    return s.size() >= p.size() && s.substr(s.size() - p.size()) == p;
}

inline constexpr std::size_t min_stem = 2;

inline std::vector<Segmentation> strip_affixes(std::u32string_view word, const LexiconBundle& b) {
    std::vector<const AffixEntry*> conj, prep, prefixes;
    for (const auto& p : b.prefixes) {
        if (!p.has(Proclitic))
            prefixes.push_back(&p);
        else if (p.has(Conjunction))
            conj.push_back(&p);
        else
            prep.push_back(&p);
    }

    std::vector<Segmentation> out;
    // prefixes longest first, then suffixes longest first; "none" comes last in both
    auto expand = [&](const std::vector<const AffixEntry*>& clitics, std::u32string_view rest) {
        std::vector<const AffixEntry*> pres;
        for (const auto* p : prefixes)
            if (starts_with(rest, p->surface) && rest.size() >= p->surface.size() + min_stem)
                pres.push_back(p);
        pres.push_back(nullptr);
        for (const auto* pre : pres) {
            auto core = rest.substr(pre ? pre->surface.size() : 0);
            std::vector<const AffixEntry*> suffixes;
            for (const auto& s : b.suffixes)
                if (ends_with(core, s.surface) && core.size() >= s.surface.size() + min_stem)
                    suffixes.push_back(&s);
            suffixes.push_back(nullptr);
            for (const auto* suf : suffixes) {
                Segmentation s;
                s.proclitics = clitics;
                s.prefix = pre;
                s.suffix = suf;
                s.stem = std::u32string(core.substr(0, core.size() - (suf ? suf->surface.size() : 0)));
                if (pre && !pre->before.empty() && pre->before.find(s.stem[0]) == std::u32string::npos)
                    continue;
                if (pre && pre->has(Preposition) && s.has(Proclitic))
                    continue;
                if (!affix_evidence(s))
                    continue;
                out.push_back(std::move(s));
            }
        }
    };

    auto with_prep = [&](std::vector<const AffixEntry*> clitics, std::u32string_view rest) {
        expand(clitics, rest);
        for (const auto* p : prep) {
            if (starts_with(rest, p->surface) && rest.size() >= p->surface.size() + min_stem) {
                auto c = clitics;
                c.push_back(p);
                expand(c, rest.substr(p->surface.size()));
            }
        }
    };

    for (const auto* c : conj)
        if (starts_with(word, c->surface) && word.size() >= c->surface.size() + min_stem)
            with_prep({c}, word.substr(c->surface.size()));
    with_prep({}, word);

    if (std::none_of(out.begin(), out.end(), [](const Segmentation& s) { return s.bare(); })) {
        Segmentation s;
        s.stem = std::u32string(word);
        out.push_back(std::move(s));
    }
    return out;
}

inline std::u32string instantiate(const PatternEntry& p, std::u32string_view root) {
    if (static_cast<int>(root.size()) != p.arity)
        throw ContractViolation("root length " + std::to_string(root.size()) + " does not match pattern arity " +
                                std::to_string(p.arity));
    std::u32string out;
    out.reserve(p.slots.size());
    for (const auto& s : p.slots)
        out.push_back(!s.is_root() ? s.literal : s.weak ? s.weak : root[s.position - 1]);
    return out;
}

inline bool can_fill_root(char32_t c) { return is_arabic_letter(c) && c != U'ا' && c != U'ة'; }

namespace detail {

// Appends one match per verified root; a weak slot may yield both a و and a ي root.
inline void match_one(const PatternEntry& p, std::u32string_view stem, const LexiconBundle& b,
                      std::vector<PatternMatch>& out) {
    if (p.slots.size() != stem.size())
        return;
    std::u32string root(static_cast<std::size_t>(p.arity), U'\0');
    int weak_at = -1;
    PatternEntry adjusted;
    bool copied = false;
    for (std::size_t i = 0; i < stem.size(); ++i) {
        const auto& s = p.slots[i];
        char32_t c = stem[i];
        if (!s.is_root()) {
            if (c == s.literal)
                continue;
            if (!(is_alef(c) && is_alef(s.literal)))
                return;
            if (!copied) {
                adjusted = p;
                copied = true;
            }
            adjusted.slots[i].literal = c;
        } else if (s.weak) {
            if (c != s.weak)
                return;
            weak_at = s.position - 1;
        } else {
            if (!can_fill_root(c))
                return;
            root[s.position - 1] = c;
        }
    }
    auto emit = [&] {
        PatternMatch m;
        m.pattern = copied ? adjusted : p;
        m.index = p.order;
        m.root = root;
        m.stem = std::u32string(stem);
        out.push_back(std::move(m));
    };
    if (weak_at < 0) {
        if (verify_root(root, b))
            emit();
        return;
    }
    for (char32_t w : {U'و', U'ي'}) {
        root[weak_at] = w;
        if (verify_root(root, b))
            emit();
    }
}

} // namespace detail

// Ordered by specificity: more literal letters first, then file order.
inline std::vector<PatternMatch> match_pattern(std::u32string_view stem, const LexiconBundle& b) {
    std::vector<PatternMatch> out;
    for (const auto& p : b.patterns)
        detail::match_one(p, stem, b, out);
    std::stable_sort(out.begin(), out.end(), [](const PatternMatch& x, const PatternMatch& y) {
        return x.pattern.literals > y.pattern.literals;
    });
    return out;
}

// Stem plus the inflectional part of the suffix, attached pronoun removed.
// A taa left in front of a pronoun is restored to ة.
struct NominalBase {
    std::u32string base;
    std::u32string inflection;
};

inline NominalBase nominal_base(const Segmentation& s, const LexiconBundle& b) {
    NominalBase nb;
    if (s.suffix) {
        nb.inflection = s.suffix->surface;
        if (s.suffix->has(Pronoun)) {
            std::size_t cut = 0;
            for (const auto& a : b.suffixes)
                if (a.features == Pronoun && a.surface.size() > cut && ends_with(nb.inflection, a.surface))
                    cut = a.surface.size();
            nb.inflection.resize(nb.inflection.size() - cut);
        }
    }
    nb.base = s.stem + (nb.inflection == U"ت" ? std::u32string(U"ة") : nb.inflection);
    return nb;
}

struct Choice {
    std::size_t index = 0;
    std::vector<PatternMatch> matches;
};

inline std::size_t affix_letters(const Segmentation& s) {
    std::size_t n = 0;
    s.for_each_affix([&](const AffixEntry& a) { n += a.surface.size(); });
    return n;
}

inline std::size_t proclitic_letters(const Segmentation& s) {
    std::size_t n = 0;
    for (const auto* p : s.proclitics)
        n += p->surface.size();
    return n;
}

// a listed broken plural takes no masculine sound plural suffix
inline bool plural_of_plural(const Segmentation& s, const LexiconBundle& b) {
    return s.suffix && s.suffix->has(Plural) && s.suffix->has(Masculine) && find_broken_plural(b, s.stem);
}

// A clitic-free candidate with a stem of three or more letters whose base is
// a listed broken plural or singular wins, most affix letters first.
// Otherwise, among candidates whose stem carries a verified pattern, the one
// explaining the most letters by affixes and pattern literals; ties go to
// fewer proclitic letters, then to the earlier candidate. With no match
// anywhere, the first candidate without verb-only affixes, bare last.
inline Choice choose_segmentation(const std::vector<Segmentation>& cands, const LexiconBundle& b,
                                  bool use_patterns = true) {
    if (use_patterns) {
        std::optional<std::size_t> listed;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            if (!cands[i].proclitics.empty() || affix_evidence(cands[i]) == Evidence::Verb)
                continue;
            auto nb = nominal_base(cands[i], b);
            if (cands[i].stem.size() < 3 || (!find_broken_plural(b, nb.base) && !b.broken_singulars.count(nb.base)))
                continue;
            if (!listed || affix_letters(cands[i]) > affix_letters(cands[*listed]))
                listed = i;
        }
        if (listed)
            return {*listed, match_pattern(cands[*listed].stem, b)};
        Choice best;
        std::size_t best_score = 0, best_clitics = 0;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            if (plural_of_plural(cands[i], b))
                continue;
            auto m = match_pattern(cands[i].stem, b);
            if (m.empty())
                continue;
            std::size_t score = affix_letters(cands[i]) + static_cast<std::size_t>(m.front().pattern.literals);
            std::size_t clitics = proclitic_letters(cands[i]);
            if (best.matches.empty() || score > best_score || (score == best_score && clitics < best_clitics)) {
                best = {i, std::move(m)};
                best_score = score;
                best_clitics = clitics;
            }
        }
        if (!best.matches.empty())
            return best;
    }
    // on an unverified stem, proclitics other than a single و need the article behind them
    auto loose_clitics = [](const Segmentation& s) {
        return !s.proclitics.empty() && !s.prefix && !(s.proclitics.size() == 1 && s.proclitics[0]->surface == U"و");
    };
    for (std::size_t i = 0; i < cands.size(); ++i)
        if (!cands[i].bare() && !loose_clitics(cands[i]) && !plural_of_plural(cands[i], b) &&
            affix_evidence(cands[i]) != Evidence::Verb)
            return {i, {}};
    for (std::size_t i = 0; i < cands.size(); ++i)
        if (cands[i].bare())
            return {i, {}};
    return {cands.size() - 1, {}};
}

} // namespace qamar
