// qamar: tag, lemmatize and score Arabic text from the command line.

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qamar/qamar.hpp"

#ifndef QAMAR_DEFAULT_LEXICON_DIR
#define QAMAR_DEFAULT_LEXICON_DIR "data/lexicon"
#endif

namespace {

using namespace qamar;

std::string field(const std::string& s) { return s.empty() ? "-" : s; }
std::string field(const std::u32string& s) { return field(utf8::encode(s)); }

std::string_view name(Count c) {
    switch (c) {
    case Count::Singular: return "singular";
    case Count::Dual: return "dual";
    case Count::Plural: return "plural";
    default: return "";
    }
}

std::string_view name(Gender g) {
    switch (g) {
    case Gender::Masculine: return "masculine";
    case Gender::Feminine: return "feminine";
    default: return "";
    }
}

std::string_view name(Tense t) {
    switch (t) {
    case Tense::Past: return "past";
    case Tense::Present: return "present";
    case Tense::Imperative: return "imperative";
    default: return "";
    }
}

std::string_view name(Voice v) {
    switch (v) {
    case Voice::Active: return "active";
    case Voice::Passive: return "passive";
    default: return "";
    }
}

std::string features(const Analysis& a) {
    std::vector<std::string> kv;
    if (is_nominal(a.category))
        kv.push_back(std::string("definite=") + (a.features.definite ? "yes" : "no"));
    auto add = [&](const char* k, std::string_view v) {
        if (!v.empty())
            kv.push_back(std::string(k) + "=" + std::string(v));
    };
    add("count", name(a.features.count));
    add("gender", name(a.features.gender));
    add("tense", name(a.features.tense));
    add("voice", name(a.features.voice));
    std::string out;
    for (const auto& s : kv)
        out += (out.empty() ? "" : ";") + s;
    return out;
}

std::string flags(const Analysis& a) {
    std::vector<std::string> fs;
    if (a.has_proclitic())
        fs.push_back("proclitic");
    if (a.broken_plural)
        fs.push_back("broken_plural");
    if (a.hint == Hint::Noun)
        fs.push_back("hint=noun");
    else if (a.hint == Hint::Verb)
        fs.push_back("hint=verb");
    if (a.category == Category::Noun || a.category == Category::Adjective || a.category == Category::Verb)
        fs.push_back("lemma=" + std::string(to_string(a.method)));
    std::string out;
    for (const auto& s : fs)
        out += (out.empty() ? "" : ",") + s;
    return out;
}

std::string read_input(const std::string& path) {
    if (path == "-")
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    return read_file(path);
}

struct Options {
    std::string lexicon_dir;
    bool no_morphology = false;
    bool no_proper_nouns = false;
    bool fold_alef = false;
    std::string input;
    std::string pred;
    std::string gold;
    bool json = false;
    bool include_nonwords = false;
    bool collapse_adjectives = false;
};

std::filesystem::path lexicon_dir(const Options& o) {
    if (!o.lexicon_dir.empty())
        return o.lexicon_dir;
    if (const char* env = std::getenv("QAMAR_LEXICON_DIR"); env && *env)
        return env;
    return QAMAR_DEFAULT_LEXICON_DIR;
}

AnalyzerOptions analyzer_options(const Options& o) {
    AnalyzerOptions a;
    a.tokenize.fold_alef = o.fold_alef;
    a.tag.morphology = !o.no_morphology;
    a.tag.proper_nouns = !o.no_proper_nouns;
    return a;
}

std::string run_tag(const Options& o) {
    Analyzer an(lexicon_dir(o), analyzer_options(o));
    auto text = read_input(o.input);
    std::ostringstream out;
    for (const auto& a : an.analyze(std::string_view(text))) {
        out << utf8::encode(a.token.surface) << '\t' << render_tag(a, an.bundle()) << '\t' << to_string(a.category)
            << '\t' << field(a.lemma) << '\t' << field(a.root ? *a.root : std::u32string()) << '\t'
            << field(a.match ? a.match->pattern.name() : std::u32string()) << '\t' << field(features(a)) << '\t'
            << field(flags(a)) << '\n';
    }
    return out.str();
}

std::string run_lemmatize(const Options& o) {
    Analyzer an(lexicon_dir(o), analyzer_options(o));
    auto text = read_input(o.input);
    std::ostringstream out;
    for (const auto& a : an.analyze(std::string_view(text)))
        out << utf8::encode(a.token.surface) << '\t' << field(a.lemma) << '\n';
    return out.str();
}

// `tag` output: surface, tag, category, lemma, ...
std::vector<GoldRecord> load_predictions(const std::string& path) {
    auto f = detail::TsvFile::from_text(std::filesystem::path(path).filename().string(), read_input(path));
    std::vector<GoldRecord> out;
    for (const auto& l : f.lines()) {
        if (l.fields.size() < 3)
            f.fail(l, "expected at least surface, tag and category");
        GoldRecord r;
        r.surface = l.fields[0];
        r.category = parse_category(utf8::encode(l.fields[2]));
        if (!r.category)
            f.fail(l, "unknown category " + utf8::encode(l.fields[2]));
        if (l.fields.size() > 3 && l.fields[3] != U"-")
            r.lemma = l.fields[3];
        out.push_back(std::move(r));
    }
    return out;
}

std::string run_eval(const Options& o) {
    auto pred = load_predictions(o.pred);
    auto gold = load_gold(o.gold);
    EvalOptions eo;
    eo.include_nonwords = o.include_nonwords;
    eo.collapse_adjectives = o.collapse_adjectives;
    eo.fold_alef_lemmas = o.fold_alef;
    auto r = evaluate(pred, gold, eo);

    std::ostringstream out;
    if (o.json) {
        nlohmann::ordered_json j;
        j["token_count"] = r.token_count;
        j["pos_accuracy"] = r.pos_accuracy;
        j["lemma_accuracy"] = r.lemma_accuracy ? nlohmann::ordered_json(*r.lemma_accuracy) : nullptr;
        j["lemma_count"] = r.lemma_count;
        j["per_category"] = nlohmann::ordered_json::object();
        for (const auto& [c, v] : r.per_category)
            j["per_category"][std::string(to_string(c))] = v;
        j["distribution"] = nlohmann::ordered_json::object();
        for (const auto& [c, v] : r.distribution)
            j["distribution"][std::string(to_string(c))] = v;
        j["confusion"] = nlohmann::ordered_json::object();
        for (auto g : all_categories)
            for (auto p : all_categories)
                if (auto n = r.confusion[static_cast<std::size_t>(g)][static_cast<std::size_t>(p)])
                    j["confusion"][std::string(to_string(g))][std::string(to_string(p))] = n;
        out << j.dump(2) << '\n';
        return out.str();
    }
    out << std::fixed << std::setprecision(4);
    out << "tokens\t" << r.token_count << '\n';
    out << "pos_accuracy\t" << r.pos_accuracy << '\n';
    if (r.lemma_accuracy)
        out << "lemma_accuracy\t" << *r.lemma_accuracy << "\t(" << r.lemma_count << " lemmas)\n";
    out << "\ncategory\tgold%\tprecision\n";
    for (auto c : all_categories) {
        auto d = r.distribution.find(c);
        auto p = r.per_category.find(c);
        if (d == r.distribution.end() && p == r.per_category.end())
            continue;
        out << to_string(c) << '\t' << std::setprecision(1) << (d == r.distribution.end() ? 0.0 : d->second) << '\t'
            << std::setprecision(4);
        if (p == r.per_category.end())
            out << "-";
        else
            out << p->second;
        out << '\n';
    }
    out << "\nconfusion (gold -> predicted)\n";
    for (auto g : all_categories)
        for (auto p : all_categories)
            if (auto n = r.confusion[static_cast<std::size_t>(g)][static_cast<std::size_t>(p)]; n && g != p)
                out << to_string(g) << '\t' << to_string(p) << '\t' << n << '\n';
    return out.str();
}

} // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Rule-based Arabic lemmatizer and POS tagger"};
    app.require_subcommand(1);
    app.add_option("--lexicon-dir", o.lexicon_dir, "Lexicon directory (default: $QAMAR_LEXICON_DIR or the bundled seed)");
    app.add_flag("--no-morphology", o.no_morphology, "Closed words, article and adjective rule only");
    app.add_flag("--no-proper-nouns", o.no_proper_nouns, "Skip the proper-noun dictionary");
    app.add_flag("--fold-alef", o.fold_alef, "Fold hamzated alef forms before analysis and scoring");

    auto* tag = app.add_subcommand("tag", "Per-token TSV: surface, tag, category, lemma, root, pattern, features, flags");
    tag->add_option("file", o.input, "UTF-8 text file, - for stdin")->required();
    auto* lem = app.add_subcommand("lemmatize", "Surface and lemma pairs");
    lem->add_option("file", o.input, "UTF-8 text file, - for stdin")->required();
    auto* ev = app.add_subcommand("eval", "Score `tag` output against a gold TSV");
    ev->add_option("pred", o.pred, "Output of `qamar tag`")->required();
    ev->add_option("gold", o.gold, "Gold TSV: surface, category, lemma")->required();
    ev->add_flag("--json", o.json, "JSON report");
    ev->add_flag("--include-nonwords", o.include_nonwords, "Score punctuation and numbers");
    ev->add_flag("--collapse-adjectives", o.collapse_adjectives, "Count adjectives as nouns");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        std::string out;
        if (*tag)
            out = run_tag(o);
        else if (*lem)
            out = run_lemmatize(o);
        else
            out = run_eval(o);
        std::cout << out;
        std::cout.flush();
        return std::cout ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "qamar: " << e.what() << '\n';
        return 1;
    }
}
