#pragma once

#include <stdexcept>
#include <string>

namespace btt {

// Bad user input: dimension mismatches, parse errors, unmet preconditions
// that a caller can trigger with a malformed file or argument.
class input_error : public std::runtime_error {
public:
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Broken internal invariant. Reaching one of these is a bug, not bad input.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

#define BTT_REQUIRE(cond, msg)                                                 \
    do {                                                                       \
        if (!(cond)) throw ::btt::input_error(msg);                           \
    } while (0)

#define BTT_ASSERT(cond, msg)                                                  \
    do {                                                                       \
        if (!(cond)) throw ::btt::internal_error(msg);                        \
    } while (0)

} // namespace btt
