#pragma once

#include <string>

#include "qamar/analysis.hpp"
#include "qamar/lexicon.hpp"

namespace qamar {

inline std::string render_tag(const Analysis& a, const LexiconBundle& b) {
    std::string tag;
    bool plural = a.features.count == Count::Plural || a.features.count == Count::Dual;
    switch (a.category) {
    case Category::Noun: tag = std::string(a.has_article() ? "DT" : "") + (plural ? "NNS" : "NN"); break;
    case Category::Adjective: tag = std::string(a.has_article() ? "DT" : "") + "JJ"; break;
    case Category::ProperNoun: tag = std::string(a.has_article() ? "DT" : "") + "NNP"; break;
    case Category::Verb: tag = "VV"; break;
    case Category::Particle: tag = a.group < b.groups.size() ? b.groups[a.group].tag : "particle"; break;
    case Category::Number: tag = "NUM"; break;
    case Category::Punct: tag = "PUNC"; break;
    case Category::Unknown: tag = "unknown"; break;
    }
    if (a.has_proclitic())
        tag += " +";
    return tag;
}

} // namespace qamar
