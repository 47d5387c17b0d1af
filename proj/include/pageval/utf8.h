#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pageval::utf8 {

// Strict decoder: rejects overlong forms, surrogates, values past U+10FFFF,
// and truncated sequences. Throws ParseError naming the byte offset.
std::vector<std::uint32_t> decode(std::string_view bytes);

std::string encode(const std::vector<std::uint32_t>& codePoints);
void append(std::string& out, std::uint32_t cp);

}  // namespace pageval::utf8
