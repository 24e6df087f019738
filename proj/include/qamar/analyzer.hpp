#pragma once

#include <filesystem>
#include <string_view>
#include <utility>
#include <vector>

#include "qamar/analysis.hpp"
#include "qamar/lemmagen.hpp"
#include "qamar/lexicon.hpp"
#include "qamar/tagger.hpp"
#include "qamar/text.hpp"

namespace qamar {

struct AnalyzerOptions {
    TokenizeOptions tokenize;
    TagOptions tag;
};

// Tokenize, tag and lemmatize. Holds the bundle; analyses point into it.
class Analyzer {
public:
    explicit Analyzer(LexiconBundle bundle, AnalyzerOptions opt = {}) : bundle_(std::move(bundle)), opt_(opt) {}
    explicit Analyzer(const std::filesystem::path& dir, AnalyzerOptions opt = {}) : Analyzer(load_bundle(dir), opt) {}

    Analyzer(const Analyzer&) = delete;
    Analyzer& operator=(const Analyzer&) = delete;

    std::vector<Analysis> analyze(const std::vector<Token>& tokens) const {
        auto as = tag_sequence(tokens, bundle_, opt_.tag);
        for (auto& a : as)
            a = lemmatize(std::move(a), bundle_);
        return as;
    }

    std::vector<Analysis> analyze(std::u32string_view text) const { return analyze(tokenize(text, opt_.tokenize)); }
    std::vector<Analysis> analyze(std::string_view utf8_text) const {
        return analyze(tokenize(utf8_text, opt_.tokenize));
    }

    const LexiconBundle& bundle() const { return bundle_; }
    const AnalyzerOptions& options() const { return opt_; }

private:
    LexiconBundle bundle_;
    AnalyzerOptions opt_;
};

} // namespace qamar
