#include "pageval/utf8.h"

#include "pageval/types.h"

namespace pageval::utf8 {

std::vector<std::uint32_t> decode(std::string_view bytes) {
  std::vector<std::uint32_t> out;
  out.reserve(bytes.size());
  size_t i = 0;
  auto fail = [&](const char* what) {
    throw ParseError("invalid UTF-8 (" + std::string(what) + ") at byte offset " +
                     std::to_string(i));
  };
  while (i < bytes.size()) {
    std::uint8_t b0 = bytes[i];
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    int len;
    std::uint32_t cp;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
    } else {
      fail("bad lead byte");
      return out;  // unreachable
    }
    if (i + len > bytes.size()) fail("truncated sequence");
    for (int k = 1; k < len; ++k) {
      std::uint8_t bk = bytes[i + k];
      if ((bk & 0xC0) != 0x80) fail("bad continuation byte");
      cp = (cp << 6) | (bk & 0x3F);
    }
    static const std::uint32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len]) fail("overlong encoding");
    if (cp >= 0xD800 && cp <= 0xDFFF) fail("surrogate code point");
    if (cp > 0x10FFFF) fail("code point out of range");
    out.push_back(cp);
    i += len;
  }
  return out;
}

void append(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string encode(const std::vector<std::uint32_t>& codePoints) {
  std::string out;
  out.reserve(codePoints.size());
  for (auto cp : codePoints) append(out, cp);
  return out;
}

}  // namespace pageval::utf8
