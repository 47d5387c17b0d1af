#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "pageval/types.h"

namespace pageval {

struct PageDocument {
  Page page;
  std::string sourcePath;
  std::vector<std::string> warnings;
};

// PageXML subset: TextRegion/TextLine/TextEquiv/Unicode and Baseline points,
// honoring a region-level ReadingOrder when present. Element matching ignores
// namespace prefixes. Malformed XML raises ParseError with a location;
// malformed baseline points produce a warning and drop the baseline.
PageDocument parsePageXml(std::string_view xml, const std::string& sourceName);

// One line per text line; CRLF treated as LF; a trailing newline does not add
// a line; edge spaces are stripped with a warning. Input must be valid UTF-8.
PageDocument parsePlainText(std::string_view text, const std::string& sourceName);

// Inverse of parsePlainText for already-normalized pages: lines joined with
// LF, trailing newline included (empty page -> empty string).
std::string serializePlainText(const Page& page);

// Dispatches on extension: .xml or .txt.
PageDocument loadPageFile(const std::filesystem::path& path);

struct PagePair {
  std::string id;
  PageDocument gt;
  PageDocument hyp;
};

struct PairOptions {
  bool skipUnpairedGt = false;     // default: unpaired ground truth is an error
  bool strictUnpairedHyp = false;  // count unpaired hypotheses against an empty page
};

struct TestSet {
  std::vector<PagePair> pairs;
  std::vector<std::string> warnings;
};

// Pairs two files directly, or the files of two directories by filename stem.
TestSet pairTestSet(const std::filesystem::path& gtPath,
                    const std::filesystem::path& hypPath, const PairOptions& opts = {});

}  // namespace pageval
