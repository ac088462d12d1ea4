#pragma once

// Plaintext files. Text files hold A-Z; digit files hold integers joined by
// one fixed separator. Either may end with a single newline. Parsing records
// the layout so rendering reproduces the input exactly.

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grpkc/encode.hpp"
#include "grpkc/error.hpp"
#include "grpkc/ring.hpp"
#include "grpkc/serialize.hpp"

namespace grpkc {

struct MessageFile {
  std::vector<Coefficient> digits;
  MessageLayout layout;
};

inline std::string render_message(const std::vector<Coefficient>& digits, const MessageLayout& layout) {
  std::string out;
  if (layout.encoding == "text") {
    out = alphabet_decode(digits);
  } else {
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (i != 0) out += layout.separator;
      out += digits[i].get_str();
    }
  }
  if (layout.trailing_newline) out += '\n';
  return out;
}

inline MessageFile parse_message(std::string_view content, bool text) {
  MessageFile mf;
  mf.layout.encoding = text ? "text" : "digits";
  mf.layout.trailing_newline = !content.empty() && content.back() == '\n';
  std::string_view body = content.substr(0, content.size() - (mf.layout.trailing_newline ? 1 : 0));
  if (text) {
    mf.digits = alphabet_encode(body);
    return mf;
  }

  std::vector<std::pair<std::size_t, std::size_t>> tokens;
  for (std::size_t i = 0; i < body.size();) {
    std::size_t start = i;
    if (body[i] == '-' || body[i] == '+') ++i;
    std::size_t digits_begin = i;
    while (i < body.size() && std::isdigit(static_cast<unsigned char>(body[i]))) ++i;
    if (i == digits_begin) {
      if (i == start) {
        ++i;
        continue;
      }
      throw FormatError("sign without digits in message");
    }
    tokens.emplace_back(start, i - start);
  }
  if (tokens.size() >= 2)
    mf.layout.separator = std::string(body.substr(tokens[0].first + tokens[0].second,
                                                  tokens[1].first - tokens[0].first - tokens[0].second));
  for (const auto& [pos, len] : tokens) {
    Coefficient c;
    std::string tok(body.substr(pos, len));
    if (tok[0] == '+') tok.erase(0, 1);
    c.set_str(tok, 10);
    mf.digits.push_back(std::move(c));
  }
  if (render_message(mf.digits, mf.layout) != content)
    throw FormatError("digit file must be integers in canonical form joined by one consistent separator");
  return mf;
}

}  // namespace grpkc
