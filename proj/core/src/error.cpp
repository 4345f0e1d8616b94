#include "hybridkit/error.hpp"

namespace hybridkit {

std::string SourcePos::str() const {
  if (!known()) return "<unknown>";
  return std::to_string(line) + ":" + std::to_string(column);
}

namespace {

std::string render(const SourcePos& pos, const std::string& message,
                   const std::vector<std::string>& expected) {
  std::string out = pos.str() + ": " + message;
  if (!expected.empty()) {
    out += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
      out += expected[i];
    }
    out += ")";
  }
  return out;
}

}  // namespace

ParseError::ParseError(SourcePos pos, std::string message, std::vector<std::string> expected)
    : Error(render(pos, message, expected)),
      pos_(pos),
      message_(std::move(message)),
      expected_(std::move(expected)) {}

}  // namespace hybridkit
