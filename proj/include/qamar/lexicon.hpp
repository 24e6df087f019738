#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "qamar/error.hpp"
#include "qamar/text.hpp"
#include "qamar/utf8.hpp"

namespace qamar {

using WordSet = std::unordered_set<std::u32string>;
using WordMap = std::unordered_map<std::u32string, std::u32string>;

enum class Hint { None, Noun, Verb };
enum class PatternClass { Verb, Noun, General };
enum class AffixClass { Noun, Verb, Either };
enum class AffixPosition { Prefix, Suffix };

enum Feature : std::uint32_t {
    Proclitic = 1u << 0,
    Conjunction = 1u << 1,
    Preposition = 1u << 2,
    Definite = 1u << 3,
    Future = 1u << 4,
    Pronoun = 1u << 5,
    Object = 1u << 6,
    Taa = 1u << 7,
    Plural = 1u << 8,
    Dual = 1u << 9,
    Singular = 1u << 10,
    Masculine = 1u << 11,
    Feminine = 1u << 12,
    Nisba = 1u << 13,
    Past = 1u << 14,
};

inline constexpr std::pair<std::string_view, Feature> feature_names[] = {
    {"proclitic", Proclitic}, {"conjunction", Conjunction}, {"preposition", Preposition},
    {"definite", Definite},   {"future", Future},           {"pronoun", Pronoun},
    {"object", Object},       {"taa", Taa},                 {"plural", Plural},
    {"dual", Dual},           {"singular", Singular},       {"masculine", Masculine},
    {"feminine", Feminine},   {"nisba", Nisba},             {"past", Past},
};

struct ClosedGroup {
    std::string name;
    std::string tag;
    bool takes_pronoun = false;      // members accept an attached pronoun suffix
    bool after_preposition = false; // members may follow ب ك ل
    bool operator==(const ClosedGroup&) const = default;
};

struct ClosedWordEntry {
    std::u32string surface;
    std::size_t group = 0;
    Hint hint = Hint::None;
    bool operator==(const ClosedWordEntry&) const = default;
};

struct Slot {
    char32_t literal = 0;  // 0 for a root slot
    int position = 0;      // 1-based root position
    char32_t weak = 0;     // surface letter standing for a weak root consonant

    bool is_root() const { return position != 0; }
    bool operator==(const Slot&) const = default;
};

struct PatternEntry {
    std::u32string text;
    std::vector<Slot> slots;
    PatternClass cls = PatternClass::General;
    int arity = 0;
    int literals = 0;
    std::optional<std::size_t> lemma; // index of the perfective template in the bundle
    std::size_t order = 0;

    // traditional name with ف ع ل standing for root positions
    std::u32string name() const {
        static constexpr char32_t radicals[] = {U'ف', U'ع', U'ل', U'ل'};
        std::u32string out;
        for (const auto& s : slots)
            out.push_back(s.is_root() ? radicals[s.position - 1] : s.literal);
        return out;
    }

    // Latin transliteration, digits for root positions
    std::string form() const {
        std::string out;
        bool first = true;
        for (const auto& s : slots) {
            if (s.is_root()) {
                out.push_back(static_cast<char>('0' + s.position));
            } else {
                switch (s.literal) {
                case U'ا': case U'أ': case U'إ': case U'آ': out.push_back(first ? 'e' : 'a'); break;
                case U'ت': out.push_back('t'); break;
                case U'س': out.push_back('s'); break;
                case U'ي': out.push_back('y'); break;
                case U'ن': out.push_back('n'); break;
                case U'م': out.push_back('m'); break;
                case U'و': out.push_back('o'); break;
                case U'ة': out.push_back('h'); break;
                case U'ء': case U'ئ': case U'ؤ': out.push_back('\''); break;
                default: out += utf8::encode(std::u32string(1, s.literal));
                }
            }
            first = false;
        }
        return out;
    }

    bool operator==(const PatternEntry&) const = default;
};

struct AffixEntry {
    std::u32string surface;
    AffixPosition position = AffixPosition::Prefix;
    AffixClass cls = AffixClass::Either;
    std::uint32_t features = 0;
    std::u32string before; // allowed first letters of what follows a prefix
    std::size_t order = 0;

    bool has(Feature f) const { return (features & f) != 0; }
    bool operator==(const AffixEntry&) const = default;
};

struct LexiconBundle {
    std::vector<ClosedGroup> groups;
    std::unordered_map<std::u32string, ClosedWordEntry> closed_words;
    WordSet proper_nouns;
    WordSet tri_roots;
    WordSet quad_roots;
    std::vector<PatternEntry> patterns;
    std::vector<AffixEntry> prefixes;
    std::vector<AffixEntry> suffixes;
    WordSet third_class_verbs;
    WordSet feminine_singulars;
    WordMap broken_plurals;
    WordMap verb_lemma_map;

    // alef-folded form -> stored form
    WordMap closed_folded;
    WordMap proper_folded;
    WordMap verbs_folded;
    WordMap feminine_folded;
    WordMap broken_folded;
    WordSet broken_singulars;

    bool operator==(const LexiconBundle&) const = default;
};

inline std::u32string fold_root(std::u32string_view root) {
    std::u32string out(root);
    for (auto& c : out)
        c = fold_hamza(c);
    return out;
}

// Parses "ن1ت{2ا}3"-style templates.
inline std::vector<Slot> parse_template(std::u32string_view text) {
    std::vector<Slot> slots;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char32_t c = text[i];
        if (c >= U'1' && c <= U'9') {
            slots.push_back({0, static_cast<int>(c - U'0'), 0});
        } else if (c == U'{') {
            if (i + 3 >= text.size() || text[i + 3] != U'}' || text[i + 1] < U'1' || text[i + 1] > U'9')
                throw std::invalid_argument("malformed weak slot");
            slots.push_back({0, static_cast<int>(text[i + 1] - U'0'), text[i + 2]});
            i += 3;
        } else if (is_arabic_letter(c)) {
            slots.push_back({c, 0, 0});
        } else {
            throw std::invalid_argument("unexpected character in template");
        }
    }
    int expect = 1;
    for (const auto& s : slots) {
        if (!s.is_root())
            continue;
        if (s.position != expect)
            throw std::invalid_argument("root positions must run 1..n in order");
        ++expect;
    }
    if (expect == 1)
        throw std::invalid_argument("template has no root position");
    return slots;
}

inline PatternEntry make_pattern(std::u32string_view text, PatternClass cls = PatternClass::General) {
    PatternEntry p;
    p.text = std::u32string(text);
    p.slots = parse_template(text);
    p.cls = cls;
    for (const auto& s : p.slots) {
        if (s.is_root())
            p.arity = std::max(p.arity, s.position);
        else
            ++p.literals;
    }
    return p;
}

inline const ClosedWordEntry* find_closed(const LexiconBundle& b, std::u32string_view surface) {
    auto it = b.closed_words.find(std::u32string(surface));
    return it == b.closed_words.end() ? nullptr : &it->second;
}

inline std::optional<ClosedWordEntry> lookup_closed(const LexiconBundle& b, std::u32string_view surface) {
    if (auto* e = find_closed(b, surface))
        return *e;
    return std::nullopt;
}

inline bool lookup_proper(const LexiconBundle& b, std::u32string_view surface) {
    return b.proper_nouns.count(std::u32string(surface)) != 0;
}

inline bool verify_root(std::u32string_view root, const LexiconBundle& b) {
    auto key = fold_root(root);
    if (!key.empty() && key.back() == U'ى') {
        key.back() = U'ي';
        if (b.tri_roots.count(key) || b.quad_roots.count(key))
            return true;
        key.back() = U'و';
    }
    if (key.size() == 3)
        return b.tri_roots.count(key) != 0;
    if (key.size() == 4)
        return b.quad_roots.count(key) != 0;
    return false;
}

// True when w is stored with some bare alefs written as hamzated forms:
// اساس fits أساس, but آخر does not fit أخر.
inline bool underspelled(std::u32string_view w, std::u32string_view stored) {
    if (w.size() != stored.size())
        return false;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i] != stored[i] && !(w[i] == U'ا' && is_alef(stored[i])))
            return false;
    return true;
}

inline const std::u32string* find_folded(const WordMap& folded, std::u32string_view w) {
    auto it = folded.find(fold_alef(w));
    return it != folded.end() && underspelled(w, it->second) ? &it->second : nullptr;
}

// Exact match first, then a stored form the word underspells. Returns the stored form.
inline const std::u32string* find_form(const WordSet& exact, const WordMap& folded, std::u32string_view w) {
    if (auto it = exact.find(std::u32string(w)); it != exact.end())
        return &*it;
    return find_folded(folded, w);
}

inline const ClosedWordEntry* find_closed_folded(const LexiconBundle& b, std::u32string_view w) {
    if (auto* e = find_closed(b, w))
        return e;
    if (auto* f = find_folded(b.closed_folded, w))
        return find_closed(b, *f);
    return nullptr;
}

inline const std::u32string* find_broken_plural(const LexiconBundle& b, std::u32string_view plural) {
    std::u32string key(plural);
    if (auto it = b.broken_plurals.find(key); it != b.broken_plurals.end())
        return &it->second;
    if (auto* f = find_folded(b.broken_folded, key))
        return &b.broken_plurals.at(*f);
    return nullptr;
}

inline bool is_third_class_verb(const LexiconBundle& b, std::u32string_view w) {
    return find_form(b.third_class_verbs, b.verbs_folded, w) != nullptr;
}

inline bool is_feminine_singular(const LexiconBundle& b, std::u32string_view w) {
    return find_form(b.feminine_singulars, b.feminine_folded, w) != nullptr;
}

namespace detail {

struct Line {
    std::size_t number;
    std::vector<std::u32string> fields;
};

inline std::vector<std::u32string> split_tabs(std::u32string_view s) {
    std::vector<std::u32string> out;
    std::size_t start = 0;
    for (;;) {
        auto pos = s.find(U'\t', start);
        out.emplace_back(s.substr(start, pos == std::u32string_view::npos ? pos : pos - start));
        if (pos == std::u32string_view::npos)
            break;
        start = pos + 1;
    }
    while (!out.empty() && out.back().empty())
        out.pop_back();
    return out;
}

class TsvFile {
public:
    TsvFile(const std::filesystem::path& dir, const std::string& name) : name_(name) {
        auto path = dir / name;
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw ResourceError("cannot open lexicon file " + path.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        parse(ss.str());
    }

    // in-memory content; name is used in error messages
    static TsvFile from_text(std::string name, std::string_view bytes) {
        TsvFile f;
        f.name_ = std::move(name);
        f.parse(bytes);
        return f;
    }

    const std::vector<Line>& lines() const { return lines_; }
    const std::vector<Line>& directives() const { return directives_; }
    const std::string& name() const { return name_; }

    [[noreturn]] void fail(const Line& l, const std::string& msg) const { throw ParseError(name_, l.number, msg); }

    void require_fields(const Line& l, std::size_t lo, std::size_t hi) const {
        if (l.fields.size() < lo || l.fields.size() > hi)
            fail(l, "expected " + std::to_string(lo) + (lo == hi ? "" : "-" + std::to_string(hi)) +
                        " fields, got " + std::to_string(l.fields.size()));
    }

    void require_word(const Line& l, const std::u32string& w) const {
        if (w.empty())
            fail(l, "empty word");
        for (char32_t c : w)
            if (!is_arabic_letter(c))
                fail(l, "not a normalized Arabic word: " + utf8::encode(w));
    }

private:
    TsvFile() = default;

    void parse(std::string_view bytes) {
        std::size_t lineno = 0;
        std::size_t start = 0;
        while (start <= bytes.size()) {
            auto nl = bytes.find('\n', start);
            std::string_view raw(bytes.data() + start,
                                 (nl == std::string::npos ? bytes.size() : nl) - start);
            ++lineno;
            if (!raw.empty() && raw.back() == '\r')
                raw.remove_suffix(1);
            std::u32string text;
            try {
                text = utf8::decode(raw);
            } catch (const DecodeError& e) {
                throw ParseError(name_, lineno, e.what());
            }
            if (text.rfind(U"#@", 0) == 0)
                directives_.push_back({lineno, split_tabs(std::u32string_view(text).substr(2))});
            else if (!text.empty() && text[0] != U'#')
                lines_.push_back({lineno, split_tabs(text)});
            if (nl == std::string::npos)
                break;
            start = nl + 1;
        }
    }

    std::string name_;
    std::vector<Line> lines_;
    std::vector<Line> directives_;
};

inline std::string narrow(const std::u32string& s) { return utf8::encode(s); }

inline WordSet load_word_list(const TsvFile& f) {
    WordSet out;
    for (const auto& l : f.lines()) {
        f.require_fields(l, 1, 1);
        f.require_word(l, l.fields[0]);
        if (!out.insert(l.fields[0]).second)
            f.fail(l, "duplicate entry " + narrow(l.fields[0]));
    }
    return out;
}

inline WordSet load_roots(const TsvFile& f, std::size_t arity) {
    WordSet out;
    for (const auto& l : f.lines()) {
        f.require_fields(l, 1, 1);
        f.require_word(l, l.fields[0]);
        if (l.fields[0].size() != arity)
            f.fail(l, "root of wrong length: " + narrow(l.fields[0]));
        if (!out.insert(fold_root(l.fields[0])).second)
            f.fail(l, "duplicate root " + narrow(l.fields[0]));
    }
    return out;
}

inline AffixClass parse_class(const TsvFile& f, const Line& l, const std::u32string& s) {
    if (s == U"noun") return AffixClass::Noun;
    if (s == U"verb") return AffixClass::Verb;
    if (s == U"either") return AffixClass::Either;
    f.fail(l, "unknown affix class " + narrow(s));
}

inline std::vector<AffixEntry> load_affixes(const TsvFile& f, AffixPosition pos) {
    std::vector<AffixEntry> out;
    WordSet seen;
    for (const auto& l : f.lines()) {
        f.require_fields(l, 2, 4);
        AffixEntry a;
        a.surface = l.fields[0];
        f.require_word(l, a.surface);
        if (!seen.insert(a.surface).second)
            f.fail(l, "duplicate affix " + narrow(a.surface));
        a.position = pos;
        a.cls = parse_class(f, l, l.fields[1]);
        if (l.fields.size() > 2) {
            std::string feats = narrow(l.fields[2]);
            std::stringstream ss(feats);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (item.empty())
                    continue;
                auto it = std::find_if(std::begin(feature_names), std::end(feature_names),
                                       [&](const auto& p) { return p.first == item; });
                if (it == std::end(feature_names))
                    f.fail(l, "unknown feature " + item);
                a.features |= it->second;
            }
        }
        if (l.fields.size() > 3)
            a.before = l.fields[3];
        if (pos == AffixPosition::Suffix && (a.features & (Proclitic | Definite | Future)))
            f.fail(l, "prefix feature on a suffix");
        if ((a.features & (Definite | Nisba)) && a.cls != AffixClass::Noun)
            f.fail(l, "definite and nisba affixes must be noun-only");
        if ((a.features & (Future | Object | Past)) && a.cls != AffixClass::Verb)
            f.fail(l, "tense and object affixes must be verb-only");
        a.order = out.size();
        out.push_back(std::move(a));
    }
    // longest first, file order among equals
    std::stable_sort(out.begin(), out.end(),
                     [](const AffixEntry& x, const AffixEntry& y) { return x.surface.size() > y.surface.size(); });
    return out;
}

} // namespace detail

inline LexiconBundle load_bundle(const std::filesystem::path& dir) {
    using detail::TsvFile;
    if (!std::filesystem::is_directory(dir))
        throw ResourceError("lexicon directory not found: " + dir.string());

    LexiconBundle b;

    TsvFile closed(dir, "closed_words.tsv");
    for (const auto& d : closed.directives()) {
        if (d.fields.size() < 3 || d.fields.size() > 4 || d.fields[0] != U"group")
            closed.fail(d, "malformed directive");
        ClosedGroup g{detail::narrow(d.fields[1]), detail::narrow(d.fields[2])};
        if (d.fields.size() == 4) {
            std::stringstream opts(detail::narrow(d.fields[3]));
            for (std::string o; std::getline(opts, o, ',');) {
                if (o == "pronoun")
                    g.takes_pronoun = true;
                else if (o == "preposition")
                    g.after_preposition = true;
                else
                    closed.fail(d, "unknown group option " + o);
            }
        }
        for (const auto& other : b.groups)
            if (other.name == g.name)
                closed.fail(d, "duplicate group " + g.name);
        b.groups.push_back(std::move(g));
    }
    for (const auto& l : closed.lines()) {
        closed.require_fields(l, 2, 3);
        ClosedWordEntry e;
        e.surface = l.fields[0];
        closed.require_word(l, e.surface);
        std::string group = detail::narrow(l.fields[1]);
        auto it = std::find_if(b.groups.begin(), b.groups.end(), [&](const ClosedGroup& g) { return g.name == group; });
        if (it == b.groups.end())
            closed.fail(l, "undeclared group " + group);
        e.group = static_cast<std::size_t>(it - b.groups.begin());
        std::u32string hint = l.fields.size() > 2 ? l.fields[2] : U"none";
        if (hint == U"noun")
            e.hint = Hint::Noun;
        else if (hint == U"verb")
            e.hint = Hint::Verb;
        else if (hint != U"none")
            closed.fail(l, "unknown hint " + detail::narrow(hint));
        if (!b.closed_words.emplace(e.surface, e).second)
            closed.fail(l, "duplicate closed word " + detail::narrow(e.surface));
    }

    b.proper_nouns = detail::load_word_list(TsvFile(dir, "proper_nouns.tsv"));
    b.tri_roots = detail::load_roots(TsvFile(dir, "roots_tri.tsv"), 3);
    if (std::filesystem::exists(dir / "roots_quad.tsv"))
        b.quad_roots = detail::load_roots(TsvFile(dir, "roots_quad.tsv"), 4);

    TsvFile pats(dir, "patterns.tsv");
    for (const auto& l : pats.lines()) {
        pats.require_fields(l, 2, 2);
        PatternClass cls;
        if (l.fields[1] == U"verb")
            cls = PatternClass::Verb;
        else if (l.fields[1] == U"noun")
            cls = PatternClass::Noun;
        else if (l.fields[1] == U"general")
            cls = PatternClass::General;
        else
            pats.fail(l, "unknown pattern class " + detail::narrow(l.fields[1]));
        PatternEntry p;
        try {
            p = make_pattern(l.fields[0], cls);
        } catch (const std::invalid_argument& e) {
            pats.fail(l, std::string(e.what()) + ": " + detail::narrow(l.fields[0]));
        }
        for (const auto& q : b.patterns)
            if (q.text == p.text)
                pats.fail(l, "duplicate pattern " + detail::narrow(p.text));
        p.order = b.patterns.size();
        b.patterns.push_back(std::move(p));
    }

    b.prefixes = detail::load_affixes(TsvFile(dir, "prefixes.tsv"), AffixPosition::Prefix);
    b.suffixes = detail::load_affixes(TsvFile(dir, "suffixes.tsv"), AffixPosition::Suffix);
    b.third_class_verbs = detail::load_word_list(TsvFile(dir, "verbs_third_class.tsv"));
    b.feminine_singulars = detail::load_word_list(TsvFile(dir, "feminine_singular.tsv"));

    TsvFile bp(dir, "broken_plurals.tsv");
    for (const auto& l : bp.lines()) {
        bp.require_fields(l, 2, 2);
        bp.require_word(l, l.fields[0]);
        bp.require_word(l, l.fields[1]);
        if (!b.broken_plurals.emplace(l.fields[0], l.fields[1]).second)
            bp.fail(l, "duplicate plural " + detail::narrow(l.fields[0]));
    }

    TsvFile vlm(dir, "verb_lemma_map.tsv");
    for (const auto& l : vlm.lines()) {
        vlm.require_fields(l, 2, 2);
        if (!b.verb_lemma_map.emplace(l.fields[0], l.fields[1]).second)
            vlm.fail(l, "duplicate template " + detail::narrow(l.fields[0]));
    }

    auto pattern_index = [&](const std::u32string& t) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < b.patterns.size(); ++i)
            if (b.patterns[i].text == t)
                return i;
        return std::nullopt;
    };
    for (const auto& [from, to] : b.verb_lemma_map) {
        auto fi = pattern_index(from);
        auto ti = pattern_index(to);
        if (!fi || !ti)
            throw ConsistencyError("verb_lemma_map.tsv: template not in patterns.tsv: " +
                                   detail::narrow(fi ? to : from));
        if (b.patterns[*fi].arity != b.patterns[*ti].arity)
            throw ConsistencyError("verb_lemma_map.tsv: root arity differs for " + detail::narrow(from));
        b.patterns[*fi].lemma = *ti;
    }

    // smallest stored form wins when two entries fold together
    auto index = [](WordMap& folded, const std::u32string& w) {
        auto [it, fresh] = folded.emplace(fold_alef(w), w);
        if (!fresh && w < it->second)
            it->second = w;
    };
    for (const auto& [w, e] : b.closed_words)
        index(b.closed_folded, w);
    for (const auto& w : b.proper_nouns)
        index(b.proper_folded, w);
    for (const auto& w : b.third_class_verbs)
        index(b.verbs_folded, w);
    for (const auto& w : b.feminine_singulars)
        index(b.feminine_folded, w);
    for (const auto& [p, s] : b.broken_plurals) {
        index(b.broken_folded, p);
        b.broken_singulars.insert(s);
    }
    return b;
}

} // namespace qamar
