#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qamar/analysis.hpp"
#include "qamar/error.hpp"
#include "qamar/lexicon.hpp"
#include "qamar/text.hpp"

namespace qamar {

// category nullopt marks a record left unscored ("-" in the file)
struct GoldRecord {
    std::u32string surface;
    std::optional<Category> category;
    std::optional<std::u32string> lemma;

    bool operator==(const GoldRecord&) const = default;
};

inline std::vector<GoldRecord> parse_gold(std::string_view text, const std::string& name = "<gold>") {
    auto f = detail::TsvFile::from_text(name, text);
    std::vector<GoldRecord> out;
    for (const auto& l : f.lines()) {
        if (l.fields.size() < 2)
            f.fail(l, "expected surface and category");
        GoldRecord r;
        r.surface = normalize(std::u32string_view(l.fields[0]));
        if (r.surface.empty())
            f.fail(l, "empty surface");
        std::string cat = utf8::encode(l.fields[1]);
        if (cat != "-") {
            r.category = parse_category(cat);
            if (!r.category)
                f.fail(l, "unknown category " + cat);
        }
        if (l.fields.size() > 2 && l.fields[2] != U"-" && !l.fields[2].empty())
            r.lemma = normalize(std::u32string_view(l.fields[2]));
        out.push_back(std::move(r));
    }
    return out;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw ResourceError("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<GoldRecord> load_gold(const std::filesystem::path& p) {
    return parse_gold(read_file(p), p.filename().string());
}

inline GoldRecord to_record(const Analysis& a) {
    GoldRecord r{a.token.surface, a.category, std::nullopt};
    if (!a.lemma.empty())
        r.lemma = a.lemma;
    return r;
}

struct EvalOptions {
    bool include_nonwords = false;  // score punctuation and numbers too
    bool collapse_adjectives = false;
    bool fold_alef_lemmas = false;
};

inline constexpr std::size_t category_count = std::size(all_categories);

struct EvalReport {
    std::size_t token_count = 0; // scored tokens
    double pos_accuracy = 0;
    std::optional<double> lemma_accuracy;
    std::size_t lemma_count = 0;
    std::map<Category, double> per_category; // precision
    std::array<std::array<std::size_t, category_count>, category_count> confusion{}; // [gold][predicted]
    std::map<Category, double> distribution; // gold, percent
};

inline EvalReport evaluate(const std::vector<GoldRecord>& pred, const std::vector<GoldRecord>& gold,
                           const EvalOptions& opt = {}) {
    std::size_t n = std::min(pred.size(), gold.size());
    for (std::size_t i = 0; i < n; ++i)
        if (pred[i].surface != gold[i].surface)
            throw AlignmentError(i, "predicted '" + utf8::encode(pred[i].surface) + "' vs gold '" +
                                        utf8::encode(gold[i].surface) + "'");
    if (pred.size() != gold.size())
        throw AlignmentError(n, "lengths differ: " + std::to_string(pred.size()) + " predicted, " +
                                    std::to_string(gold.size()) + " gold");

    auto coarse = [&](Category c) {
        return opt.collapse_adjectives && c == Category::Adjective ? Category::Noun : c;
    };
    auto nonword = [](std::optional<Category> c) { return c == Category::Punct || c == Category::Number; };

    EvalReport r;
    std::size_t correct = 0, lemma_ok = 0;
    std::array<std::size_t, category_count> predicted{}, hits{}, gold_counts{};
    for (std::size_t i = 0; i < n; ++i) {
        const auto& g = gold[i];
        const auto& p = pred[i];
        if (!g.category || !p.category)
            continue;
        if (!opt.include_nonwords && (nonword(g.category) || nonword(p.category)))
            continue;
        auto gc = coarse(*g.category);
        auto pc = coarse(*p.category);
        ++r.token_count;
        ++r.confusion[static_cast<std::size_t>(gc)][static_cast<std::size_t>(pc)];
        ++gold_counts[static_cast<std::size_t>(gc)];
        ++predicted[static_cast<std::size_t>(pc)];
        if (gc == pc) {
            ++correct;
            ++hits[static_cast<std::size_t>(pc)];
        }
        if (g.lemma) {
            ++r.lemma_count;
            auto want = opt.fold_alef_lemmas ? fold_alef(*g.lemma) : *g.lemma;
            auto got = p.lemma ? (opt.fold_alef_lemmas ? fold_alef(*p.lemma) : *p.lemma) : std::u32string();
            lemma_ok += want == got;
        }
    }
    if (r.token_count)
        r.pos_accuracy = static_cast<double>(correct) / static_cast<double>(r.token_count);
    if (r.lemma_count)
        r.lemma_accuracy = static_cast<double>(lemma_ok) / static_cast<double>(r.lemma_count);
    for (auto c : all_categories) {
        auto k = static_cast<std::size_t>(c);
        if (predicted[k])
            r.per_category[c] = static_cast<double>(hits[k]) / static_cast<double>(predicted[k]);
        if (gold_counts[k])
            r.distribution[c] = 100.0 * static_cast<double>(gold_counts[k]) / static_cast<double>(r.token_count);
    }
    return r;
}

inline EvalReport evaluate(const std::vector<Analysis>& pred, const std::vector<GoldRecord>& gold,
                           const EvalOptions& opt = {}) {
    std::vector<GoldRecord> p;
    p.reserve(pred.size());
    for (const auto& a : pred)
        p.push_back(to_record(a));
    return evaluate(p, gold, opt);
}

inline std::map<Category, double> tag_distribution(const std::vector<Analysis>& as) {
    std::array<std::size_t, category_count> counts{};
    std::size_t total = 0;
    for (const auto& a : as) {
        if (!a.is_word())
            continue;
        ++counts[static_cast<std::size_t>(a.category)];
        ++total;
    }
    std::map<Category, double> out;
    for (auto c : all_categories)
        if (auto k = static_cast<std::size_t>(c); counts[k])
            out[c] = 100.0 * static_cast<double>(counts[k]) / static_cast<double>(total);
    return out;
}

// Rendered-tag comparison. "?" in gold skips the position. Spaces never
// count; Base mode also drops the "+" proclitic mark.
enum class TagMatch { Spacing, Base };

struct TagAgreement {
    std::size_t matched = 0;
    std::size_t scored = 0;
    std::vector<std::size_t> mismatches;

    double ratio() const { return scored ? static_cast<double>(matched) / static_cast<double>(scored) : 0.0; }
};

inline std::string base_tag(std::string_view tag, TagMatch mode = TagMatch::Base) {
    std::string out;
    for (char c : tag)
        if (c != ' ' && !(mode == TagMatch::Base && c == '+'))
            out.push_back(c);
    return out;
}

inline TagAgreement tag_agreement(const std::vector<std::string>& predicted, const std::vector<std::string>& gold,
                                  TagMatch mode = TagMatch::Base) {
    if (predicted.size() != gold.size())
        throw AlignmentError(std::min(predicted.size(), gold.size()), "tag sequences differ in length");
    TagAgreement t;
    for (std::size_t i = 0; i < gold.size(); ++i) {
        if (gold[i] == "?")
            continue;
        ++t.scored;
        if (base_tag(predicted[i], mode) == base_tag(gold[i], mode))
            ++t.matched;
        else
            t.mismatches.push_back(i);
    }
    return t;
}

} // namespace qamar
