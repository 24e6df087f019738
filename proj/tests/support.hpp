#pragma once

// Shared fixtures and corpus measurements for the unit tests and the
// acceptance report.

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qamar/qamar.hpp"

#ifndef QAMAR_LEXICON_DIR
#error "QAMAR_LEXICON_DIR must point at the seed lexicon"
#endif
#ifndef QAMAR_DATA_DIR
#error "QAMAR_DATA_DIR must point at the data directory"
#endif
#ifndef QAMAR_GOLDEN_DIR
#error "QAMAR_GOLDEN_DIR must point at tests/golden"
#endif

namespace qt {

using namespace qamar;
namespace fs = std::filesystem;

inline const fs::path lexicon_dir{QAMAR_LEXICON_DIR};
inline const fs::path corpus_dir = fs::path(QAMAR_DATA_DIR) / "corpus";
inline const fs::path golden_dir{QAMAR_GOLDEN_DIR};

inline const Analyzer& analyzer() {
    static const Analyzer a(lexicon_dir);
    return a;
}

inline const LexiconBundle& seed() { return analyzer().bundle(); }

inline std::u32string u(std::string_view s) { return utf8::decode(s); }
inline std::string s8(std::u32string_view s) { return utf8::encode(s); }

inline const std::vector<std::string>& corpus_files() {
    static const std::vector<std::string> files = {"education_passage.txt", "news_sample.txt",
                                                   "systems_passage.txt"};
    return files;
}

inline std::string corpus_text(const std::string& name) { return read_file(corpus_dir / name); }

inline std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' '))
        s.pop_back();
    return s;
}

inline std::string golden(const std::string& name) { return trim(read_file(golden_dir / name)); }

inline detail::TsvFile tsv(const fs::path& p) { return detail::TsvFile::from_text(p.filename().string(), read_file(p)); }

inline Analysis analyze_word(std::string_view w, const Analyzer& an = analyzer()) {
    auto as = an.analyze(w);
    if (as.size() != 1)
        throw std::runtime_error("expected one token for " + std::string(w));
    return as.front();
}

template <class F> double seconds(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline bool has_weak_letter(std::u32string_view root) {
    return std::any_of(root.begin(), root.end(),
                       [](char32_t c) { return c == U'و' || c == U'ي' || c == U'ا' || c == U'ى' || c == U'ء'; });
}

// verb-form golden suite

struct VerbFormRow {
    std::u32string word, stem, root, pattern, form, lemma;
};

inline std::vector<VerbFormRow> verb_form_rows() {
    auto f = tsv(corpus_dir / "verb_forms.tsv");
    std::vector<VerbFormRow> out;
    for (const auto& l : f.lines()) {
        f.require_fields(l, 6, 6);
        out.push_back({l.fields[0], l.fields[1], l.fields[2], l.fields[3], l.fields[4], l.fields[5]});
    }
    return out;
}

struct VerbFormResult {
    std::size_t exact = 0;
    std::size_t rows = 0;
    std::vector<std::string> diffs;
};

// Each word is analyzed on its own: in running text the no-consecutive-verbs
// rule would demote the later verbs.
inline VerbFormResult verb_form_suite() {
    VerbFormResult r;
    for (const auto& row : verb_form_rows()) {
        ++r.rows;
        auto a = analyze_word(s8(row.word));
        std::vector<std::string> bad;
        auto check = [&](const char* what, const std::u32string& want, const std::u32string& got) {
            if (want != got)
                bad.push_back(std::string(what) + " " + s8(got) + " != " + s8(want));
        };
        check("stem", row.stem, a.segmentation ? a.segmentation->stem : U"");
        check("root", row.root, a.root.value_or(U""));
        check("pattern", row.pattern, a.match ? a.match->pattern.name() : U"");
        check("form", row.form, a.match ? u(a.match->pattern.form()) : U"");
        check("lemma", row.lemma, a.lemma);
        if (bad.empty())
            ++r.exact;
        for (const auto& b : bad)
            r.diffs.push_back(s8(row.word) + ": " + b);
    }
    return r;
}

// systems passage

struct ReferenceRow {
    std::u32string surface;
    std::string tag;
    std::optional<std::u32string> lemma;
};

inline std::vector<ReferenceRow> reference_rows(const fs::path& p) {
    auto f = tsv(p);
    std::vector<ReferenceRow> out;
    for (const auto& l : f.lines()) {
        f.require_fields(l, 2, 3);
        ReferenceRow r{l.fields[0], s8(l.fields[1]), std::nullopt};
        if (l.fields.size() == 3 && l.fields[2] != U"-")
            r.lemma = l.fields[2];
        out.push_back(std::move(r));
    }
    return out;
}

struct Deviation {
    std::string surface;
    std::string column; // tag or lemma
    std::string ours;
    std::string reference;

    auto operator<=>(const Deviation&) const = default;
};

struct PassageResult {
    std::size_t tag_matched = 0, tag_scored = 0;
    std::size_t lemma_matched = 0, lemma_scored = 0;
    std::vector<Deviation> deviations;

    double tag_ratio() const { return tag_scored ? double(tag_matched) / double(tag_scored) : 0.0; }
    double lemma_ratio() const { return lemma_scored ? double(lemma_matched) / double(lemma_scored) : 0.0; }
};

// Tags compare without spacing, so "NN+" and "NN +" agree; lemmas compare
// with alef variants folded, as the printed lemma column drops hamza seats.
inline PassageResult systems_passage() {
    const auto& an = analyzer();
    auto as = an.analyze(std::string_view(corpus_text("systems_passage.txt")));
    auto ref = reference_rows(corpus_dir / "systems_passage.reference.tsv");
    if (as.size() != ref.size())
        throw AlignmentError(std::min(as.size(), ref.size()), "systems passage and reference differ in length");
    PassageResult r;
    for (std::size_t i = 0; i < as.size(); ++i) {
        const auto& a = as[i];
        if (a.token.surface != ref[i].surface)
            throw AlignmentError(i, s8(a.token.surface) + " vs " + s8(ref[i].surface));
        if (!a.is_word())
            continue;
        auto tag = render_tag(a, an.bundle());
        ++r.tag_scored;
        if (base_tag(tag, TagMatch::Spacing) == base_tag(ref[i].tag, TagMatch::Spacing))
            ++r.tag_matched;
        else
            r.deviations.push_back({s8(a.token.surface), "tag", tag, ref[i].tag});
        if (ref[i].lemma) {
            ++r.lemma_scored;
            if (fold_alef(a.lemma) == fold_alef(*ref[i].lemma))
                ++r.lemma_matched;
            else
                r.deviations.push_back({s8(a.token.surface), "lemma", s8(a.lemma), s8(*ref[i].lemma)});
        }
    }
    return r;
}

inline std::vector<Deviation> documented_deviations() {
    auto f = tsv(golden_dir / "systems_passage.deviations.tsv");
    std::vector<Deviation> out;
    for (const auto& l : f.lines()) {
        f.require_fields(l, 5, 5);
        out.push_back({s8(l.fields[0]), s8(l.fields[1]), s8(l.fields[2]), s8(l.fields[3])});
    }
    return out;
}

// education passage

inline TagAgreement education_agreement() {
    const auto& an = analyzer();
    auto as = an.analyze(std::string_view(corpus_text("education_passage.txt")));
    auto ref = reference_rows(corpus_dir / "education_passage.reference.tsv");
    if (as.size() != ref.size())
        throw AlignmentError(std::min(as.size(), ref.size()), "education passage and reference differ in length");
    std::vector<std::string> pred, gold;
    for (std::size_t i = 0; i < as.size(); ++i) {
        if (as[i].token.surface != ref[i].surface)
            throw AlignmentError(i, s8(as[i].token.surface) + " vs " + s8(ref[i].surface));
        pred.push_back(render_tag(as[i], an.bundle()));
        gold.push_back(ref[i].tag);
    }
    return tag_agreement(pred, gold, TagMatch::Base);
}

inline std::string fraction(std::size_t a, std::size_t b) { return std::to_string(a) + "/" + std::to_string(b); }

// minimum-resource ablation

inline AnalyzerOptions minimum_resources() {
    AnalyzerOptions o;
    o.tag.morphology = false;
    o.tag.proper_nouns = false;
    return o;
}

enum class Coarse { Particle, Nominal, Other };

inline Coarse coarse(Category c) {
    if (c == Category::Particle)
        return Coarse::Particle;
    if (is_nominal(c))
        return Coarse::Nominal;
    return Coarse::Other;
}

struct Ratio {
    std::size_t hits = 0, total = 0;
    double value() const { return total ? double(hits) / double(total) : 0.0; }
};

// Every gold word token counts; verbs can never be right without morphology.
inline Ratio ablation_coarse() {
    static const Analyzer an(lexicon_dir, minimum_resources());
    auto as = an.analyze(std::string_view(corpus_text("education_passage.txt")));
    auto gold = load_gold(corpus_dir / "education_passage.gold.tsv");
    if (as.size() != gold.size())
        throw AlignmentError(std::min(as.size(), gold.size()), "education passage and gold differ in length");
    Ratio r;
    for (std::size_t i = 0; i < as.size(); ++i) {
        auto g = gold[i].category;
        if (!g || *g == Category::Punct || *g == Category::Number)
            continue;
        ++r.total;
        r.hits += coarse(*g) != Coarse::Other && coarse(*g) == coarse(as[i].category);
    }
    return r;
}

// pattern round trip

inline std::vector<std::u32string> sorted_roots(const WordSet& s) {
    std::vector<std::u32string> v(s.begin(), s.end());
    std::sort(v.begin(), v.end());
    return v;
}

// roots a pattern can carry: a weak slot needs و or ي at its position
inline bool fits(const PatternEntry& p, std::u32string_view root) {
    if (static_cast<int>(root.size()) != p.arity)
        return false;
    for (const auto& s : p.slots)
        if (s.is_root() && s.weak && root[s.position - 1] != U'و' && root[s.position - 1] != U'ي')
            return false;
    return true;
}

struct RoundTripFailure {
    std::u32string pattern, root, stem;
};

struct RoundTripResult {
    std::size_t checked = 0, recovered = 0;
    std::vector<RoundTripFailure> failures;
};

inline RoundTripResult round_trip(std::size_t per_pattern = 100, unsigned seed_value = 20240611) {
    const auto& b = seed();
    auto tri = sorted_roots(b.tri_roots);
    auto quad = sorted_roots(b.quad_roots);
    std::mt19937 rng(seed_value);
    RoundTripResult r;
    for (const auto& p : b.patterns) {
        const auto& pool = p.arity == 3 ? tri : quad;
        std::vector<std::u32string> fit;
        std::copy_if(pool.begin(), pool.end(), std::back_inserter(fit), [&](const auto& x) { return fits(p, x); });
        std::vector<std::u32string> sample;
        std::sample(fit.begin(), fit.end(), std::back_inserter(sample), per_pattern, rng);
        for (const auto& root : sample) {
            ++r.checked;
            auto stem = instantiate(p, root);
            auto ms = match_pattern(stem, b);
            bool ok = std::any_of(ms.begin(), ms.end(), [&](const PatternMatch& m) {
                return m.index == p.order && fold_root(m.root) == root;
            });
            if (ok)
                ++r.recovered;
            else
                r.failures.push_back({p.text, root, stem});
        }
    }
    return r;
}

// brute-force segmentation oracle

// Every way to write w as [conjunction][preposition][prefix] stem [suffix]
// from the affix tables, with a stem of at least two letters.
inline std::vector<Segmentation> enumerate_segmentations(std::u32string_view w, const LexiconBundle& b) {
    std::vector<const AffixEntry*> conj{nullptr}, prep{nullptr}, pre{nullptr}, suf{nullptr};
    for (const auto& p : b.prefixes) {
        if (p.has(Conjunction))
            conj.push_back(&p);
        else if (p.has(Proclitic))
            prep.push_back(&p);
        else
            pre.push_back(&p);
    }
    for (const auto& s : b.suffixes)
        suf.push_back(&s);
    auto surf = [](const AffixEntry* a) { return a ? a->surface : std::u32string(); };
    std::vector<Segmentation> out;
    for (auto* c : conj)
        for (auto* q : prep)
            for (auto* p : pre)
                for (auto* s : suf) {
                    std::u32string head = surf(c) + surf(q) + surf(p), tail = surf(s);
                    if (head.size() + tail.size() + 2 > w.size())
                        continue;
                    if (w.substr(0, head.size()) != head || w.substr(w.size() - tail.size()) != tail)
                        continue;
                    Segmentation seg;
                    if (c)
                        seg.proclitics.push_back(c);
                    if (q)
                        seg.proclitics.push_back(q);
                    seg.prefix = p;
                    seg.suffix = s;
                    seg.stem = std::u32string(w.substr(head.size(), w.size() - head.size() - tail.size()));
                    out.push_back(std::move(seg));
                }
    Segmentation bare;
    bare.stem = std::u32string(w);
    if (std::find(out.begin(), out.end(), bare) == out.end())
        out.push_back(std::move(bare));
    return out;
}

struct OracleResult {
    std::size_t sampled = 0, members = 0;
    std::vector<std::u32string> outside;
};

inline std::vector<Analysis> corpus_analyses() {
    std::vector<Analysis> out;
    for (const auto& f : corpus_files()) {
        auto as = analyzer().analyze(std::string_view(corpus_text(f)));
        out.insert(out.end(), as.begin(), as.end());
    }
    return out;
}

inline OracleResult segmentation_oracle(std::size_t n = 1000, unsigned seed_value = 7) {
    std::vector<Analysis> words;
    for (auto& a : corpus_analyses())
        if (a.is_word() && a.segmentation)
            words.push_back(std::move(a));
    std::mt19937 rng(seed_value);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    OracleResult r;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& a = words[pick(rng)];
        ++r.sampled;
        auto all = enumerate_segmentations(a.token.surface, seed());
        if (std::find(all.begin(), all.end(), *a.segmentation) != all.end())
            ++r.members;
        else
            r.outside.push_back(a.token.surface);
    }
    return r;
}

// lemma idempotence

struct IdempotenceFailure {
    std::u32string surface, lemma, again;
    bool weak_root_verb = false;
};

struct IdempotenceResult {
    Ratio nominals, broken_plurals;
    std::vector<IdempotenceFailure> failures;
};

// The lemma of a nominal is analyzed on its own and kept nominal: when the
// lone lemma tags as something else, its category is set back before
// lemmatizing.
inline IdempotenceResult idempotence() {
    const auto& b = seed();
    IdempotenceResult r;
    for (const auto& a : corpus_analyses()) {
        if (a.category != Category::Noun && a.category != Category::Adjective)
            continue;
        Token t{a.lemma, a.lemma, 0, a.lemma.size(), TokenKind::Word};
        auto fresh = tag_token(t, {}, b);
        auto re = fresh;
        if (re.category != Category::Noun && re.category != Category::Adjective)
            re.category = a.category;
        re = lemmatize(std::move(re), b);
        bool same = re.lemma == a.lemma;
        ++r.nominals.total;
        r.nominals.hits += same;
        if (a.method == LemmaMethod::BrokenPluralDict) {
            ++r.broken_plurals.total;
            r.broken_plurals.hits += same;
        }
        if (!same)
            r.failures.push_back({a.token.surface, a.lemma, re.lemma,
                                  fresh.category == Category::Verb && fresh.root && has_weak_letter(*fresh.root)});
    }
    return r;
}

// no consecutive verbs

inline bool consecutive_verbs(const std::vector<Analysis>& as) {
    const Analysis* prev = nullptr;
    for (const auto& a : as) {
        if (!a.is_word())
            continue;
        if (prev && prev->category == Category::Verb && a.category == Category::Verb)
            return true;
        prev = &a;
    }
    return false;
}

// each corpus line, each whole file, and shuffled word sequences
inline Ratio verb_sequences(std::size_t shuffles = 200, unsigned seed_value = 99) {
    Ratio r;
    std::vector<std::u32string> pool;
    auto check = [&](std::string_view text) {
        auto as = analyzer().analyze(text);
        ++r.total;
        r.hits += !consecutive_verbs(as);
        return as;
    };
    for (const auto& f : corpus_files()) {
        auto text = corpus_text(f);
        for (const auto& a : check(text))
            if (a.is_word())
                pool.push_back(a.token.surface);
        std::size_t start = 0;
        while (start < text.size()) {
            auto nl = text.find('\n', start);
            auto line = std::string_view(text).substr(start, nl == std::string::npos ? std::string::npos : nl - start);
            if (!line.empty())
                check(line);
            if (nl == std::string::npos)
                break;
            start = nl + 1;
        }
    }
    std::mt19937 rng(seed_value);
    for (std::size_t k = 0; k < shuffles; ++k) {
        std::shuffle(pool.begin(), pool.end(), rng);
        std::vector<Token> toks;
        for (std::size_t i = 0; i < 50 && i < pool.size(); ++i)
            toks.push_back({pool[i], pool[i], 0, pool[i].size(), TokenKind::Word});
        ++r.total;
        r.hits += !consecutive_verbs(analyzer().analyze(toks));
    }
    return r;
}

// evaluate() fixtures

inline std::vector<GoldRecord> records(std::initializer_list<std::pair<const char*, Category>> xs) {
    std::vector<GoldRecord> out;
    for (const auto& [w, c] : xs)
        out.push_back({u(w), c, std::nullopt});
    return out;
}

// ten tokens, the eighth mistagged
inline std::pair<std::vector<GoldRecord>, std::vector<GoldRecord>> ten_token_fixture() {
    auto gold = records({{"تعتمد", Category::Verb},
                         {"معظم", Category::Particle},
                         {"بلدان", Category::Noun},
                         {"العالم", Category::Noun},
                         {"على", Category::Particle},
                         {"استخدام", Category::Noun},
                         {"الانظمة", Category::Noun},
                         {"المبنية", Category::Adjective},
                         {"في", Category::Particle},
                         {"بغداد", Category::ProperNoun}});
    auto pred = gold;
    pred[7].category = Category::Noun;
    return {pred, gold};
}

// 1000 synthetic tokens: 500 nouns, 84 verbs, 93 adjectives, 37 proper
// nouns, 259 particles, 27 unknown
inline std::vector<GoldRecord> distribution_fixture() {
    const std::pair<Category, std::size_t> counts[] = {
        {Category::Noun, 500},     {Category::Verb, 84},      {Category::Adjective, 93},
        {Category::ProperNoun, 37}, {Category::Particle, 259}, {Category::Unknown, 27},
    };
    std::vector<GoldRecord> out;
    for (const auto& [c, n] : counts)
        for (std::size_t i = 0; i < n; ++i)
            out.push_back({u("كلمة"), c, std::nullopt});
    std::shuffle(out.begin(), out.end(), std::mt19937(3));
    return out;
}

inline const std::map<Category, double>& distribution_targets() {
    static const std::map<Category, double> t = {
        {Category::Noun, 50.0},      {Category::Verb, 8.4},      {Category::Adjective, 9.3},
        {Category::ProperNoun, 3.7}, {Category::Particle, 25.9}, {Category::Unknown, 2.7},
    };
    return t;
}

// throughput

struct Throughput {
    std::size_t tokens = 0;
    double seconds = 0;
    double per_second() const { return seconds > 0 ? double(tokens) / seconds : 0.0; }
};

inline Throughput throughput(double min_seconds = 0.5) {
    std::vector<std::string> docs;
    for (const auto& f : corpus_files())
        docs.push_back(corpus_text(f));
    Throughput t;
    auto t0 = std::chrono::steady_clock::now();
    do {
        for (const auto& d : docs) {
            auto as = analyzer().analyze(std::string_view(d));
            t.tokens += as.size();
        }
        t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    } while (t.seconds < min_seconds);
    return t;
}

} // namespace qt
