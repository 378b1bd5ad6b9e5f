#pragma once
#include <stdexcept>
#include <string>

namespace webflat {

// recoverable problem with the input (bad file, bad expression, unsupported request)
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// syntax error with a byte offset into the offending text
struct parse_error : error {
    parse_error(const std::string& msg, size_t off)
        : error(msg + " (offset " + std::to_string(off) + ")"), offset(off) {}
    size_t offset;
};

// a postcondition or internal invariant failed; maps to CLI exit code 3
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace webflat
