#include "dictlearn/errors.hpp"

namespace dictlearn {

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

}  // namespace dictlearn
