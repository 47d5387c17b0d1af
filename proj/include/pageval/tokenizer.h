#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "pageval/types.h"

namespace pageval {

using TokenizerFn = std::function<std::vector<std::string>(std::string_view)>;

// The "space" tokenizer (split on runs of U+0020, drop empties) is built in.
void registerTokenizer(const std::string& id, TokenizerFn fn);
bool hasTokenizer(const std::string& id);

// Throws ConfigError for an unknown tokenizer id.
std::vector<std::string> tokenize(std::string_view text, const std::string& tokenizerId);
std::vector<std::vector<std::string>> tokenizePage(const Page& page,
                                                   const std::string& tokenizerId);

// Order-free token-multiset overlap: tp = sum over token types of
// min(hyp count, gt count); fp/fn are the leftovers.
struct BowCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t gtTokens = 0;
  std::uint64_t hypTokens = 0;

  bool operator==(const BowCounts&) const = default;
};

BowCounts bagOfWords(const Page& hyp, const Page& gt, const std::string& tokenizerId);
BowCounts aggregate(const std::vector<BowCounts>& perPage);

double precision(const BowCounts& c);
double recall(const BowCounts& c);

}  // namespace pageval
