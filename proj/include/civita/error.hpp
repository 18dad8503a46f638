#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace civita {

// Syntax error carrying the byte offset of the offending input.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : std::runtime_error(msg + " (at byte " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

} // namespace civita
