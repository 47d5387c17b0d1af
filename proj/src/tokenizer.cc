#include "pageval/tokenizer.h"

#include <unordered_map>

namespace pageval {

namespace {

std::vector<std::string> splitOnSpaces(std::string_view text) {
  std::vector<std::string> toks;
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ' ') {
      ++i;
      continue;
    }
    size_t j = text.find(' ', i);
    if (j == std::string_view::npos) j = text.size();
    toks.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return toks;
}

std::unordered_map<std::string, TokenizerFn>& registry() {
  static std::unordered_map<std::string, TokenizerFn> r{{"space", splitOnSpaces}};
  return r;
}

}  // namespace

void registerTokenizer(const std::string& id, TokenizerFn fn) {
  registry()[id] = std::move(fn);
}

bool hasTokenizer(const std::string& id) { return registry().count(id) > 0; }

std::vector<std::string> tokenize(std::string_view text, const std::string& tokenizerId) {
  auto it = registry().find(tokenizerId);
  if (it == registry().end())
    throw ConfigError("unknown tokenizer: " + tokenizerId);
  return it->second(text);
}

std::vector<std::vector<std::string>> tokenizePage(const Page& page,
                                                   const std::string& tokenizerId) {
  std::vector<std::vector<std::string>> out;
  out.reserve(page.lines.size());
  for (const auto& l : page.lines) out.push_back(tokenize(l.text, tokenizerId));
  return out;
}

BowCounts bagOfWords(const Page& hyp, const Page& gt, const std::string& tokenizerId) {
  std::unordered_map<std::string, std::uint64_t> hypBag, gtBag;
  BowCounts c;
  for (const auto& l : hyp.lines)
    for (auto& t : tokenize(l.text, tokenizerId)) {
      ++hypBag[std::move(t)];
      ++c.hypTokens;
    }
  for (const auto& l : gt.lines)
    for (auto& t : tokenize(l.text, tokenizerId)) {
      ++gtBag[std::move(t)];
      ++c.gtTokens;
    }
  for (const auto& [tok, gn] : gtBag) {
    auto it = hypBag.find(tok);
    if (it != hypBag.end()) c.tp += std::min(gn, it->second);
  }
  c.fp = c.hypTokens - c.tp;
  c.fn = c.gtTokens - c.tp;
  return c;
}

BowCounts aggregate(const std::vector<BowCounts>& perPage) {
  BowCounts t;
  for (const auto& c : perPage) {
    t.tp += c.tp;
    t.fp += c.fp;
    t.fn += c.fn;
    t.gtTokens += c.gtTokens;
    t.hypTokens += c.hypTokens;
  }
  return t;
}

double precision(const BowCounts& c) {
  if (c.hypTokens == 0) throw EvalError("precision undefined: hypothesis has no tokens");
  return static_cast<double>(c.tp) / static_cast<double>(c.hypTokens);
}

double recall(const BowCounts& c) {
  if (c.gtTokens == 0) throw EvalError("recall undefined: ground truth has no tokens");
  return static_cast<double>(c.tp) / static_cast<double>(c.gtTokens);
}

}  // namespace pageval
