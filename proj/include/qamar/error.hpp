#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qamar {

struct DecodeError : std::runtime_error {
    std::size_t offset;
    DecodeError(const std::string& what, std::size_t at)
        : std::runtime_error(what + " at byte " + std::to_string(at)), offset(at) {}
};

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    std::string file;
    std::size_t line;
    ParseError(const std::string& f, std::size_t l, const std::string& msg)
        : std::runtime_error(f + ":" + std::to_string(l) + ": " + msg), file(f), line(l) {}
};

struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AlignmentError : std::runtime_error {
    std::size_t position;
    AlignmentError(std::size_t pos, const std::string& msg)
        : std::runtime_error("alignment error at position " + std::to_string(pos) + ": " + msg),
          position(pos) {}
};

struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace qamar
