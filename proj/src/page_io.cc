#include "pageval/page_io.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include "pageval/geometry.h"
#include "pageval/utf8.h"

namespace pageval {

namespace {

namespace pt = boost::property_tree;

std::string_view localName(std::string_view key) {
  auto p = key.rfind(':');
  return p == std::string_view::npos ? key : key.substr(p + 1);
}

const pt::ptree* findChild(const pt::ptree& node, std::string_view local) {
  for (const auto& [key, child] : node)
    if (localName(key) == local) return &child;
  return nullptr;
}

std::string attr(const pt::ptree& node, const std::string& name) {
  auto x = node.get_child_optional("<xmlattr>");
  if (!x) return "";
  return x->get<std::string>(name, "");
}

// Edge whitespace is stripped (with a warning); interior newlines cannot be
// represented in a Line and are replaced by spaces.
std::string cleanLineText(std::string text, const std::string& where,
                          std::vector<std::string>& warnings) {
  auto isEdgeWs = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  size_t b = 0, e = text.size();
  while (b < e && isEdgeWs(text[b])) ++b;
  while (e > b && isEdgeWs(text[e - 1])) --e;
  if (b != 0 || e != text.size()) {
    warnings.push_back("trimmed edge whitespace on " + where);
    text = text.substr(b, e - b);
  }
  bool replaced = false;
  for (auto& c : text)
    if (c == '\n' || c == '\r') {
      c = ' ';
      replaced = true;
    }
  if (replaced) warnings.push_back("replaced embedded line breaks on " + where);
  return text;
}

std::optional<Baseline> parsePoints(const std::string& points, const std::string& where,
                                    std::vector<std::string>& warnings) {
  Baseline base;
  std::istringstream ss(points);
  std::string tok;
  while (ss >> tok) {
    auto comma = tok.find(',');
    if (comma == std::string::npos) {
      warnings.push_back("malformed baseline points on " + where + ": '" + tok + "'");
      return std::nullopt;
    }
    Point p;
    auto first = tok.substr(0, comma), second = tok.substr(comma + 1);
    auto r1 = std::from_chars(first.data(), first.data() + first.size(), p.x);
    auto r2 = std::from_chars(second.data(), second.data() + second.size(), p.y);
    if (r1.ec != std::errc{} || r2.ec != std::errc{} ||
        r1.ptr != first.data() + first.size() || r2.ptr != second.data() + second.size()) {
      warnings.push_back("malformed baseline points on " + where + ": '" + tok + "'");
      return std::nullopt;
    }
    if (p.x < 0 || p.y < 0) {
      warnings.push_back("negative baseline coordinates on " + where);
      return std::nullopt;
    }
    base.push_back(p);
  }
  base = normalizeBaseline(std::move(base));
  if (base.empty()) {
    warnings.push_back("empty baseline on " + where);
    return std::nullopt;
  }
  return base;
}

std::string stem(const std::filesystem::path& p) { return p.stem().string(); }

}  // namespace

PageDocument parsePageXml(std::string_view xml, const std::string& sourceName) {
  PageDocument doc;
  doc.sourcePath = sourceName;
  doc.page.id = stem(sourceName);

  pt::ptree tree;
  try {
    std::istringstream ss{std::string(xml)};
    pt::read_xml(ss, tree);
  } catch (const pt::xml_parser_error& e) {
    throw ParseError(sourceName + ":" + std::to_string(e.line()) + ": " + e.message());
  }

  const pt::ptree* root = findChild(tree, "PcGts");
  if (!root) throw ParseError(sourceName + ": no PcGts root element");
  const pt::ptree* pageNode = findChild(*root, "Page");
  if (!pageNode) throw ParseError(sourceName + ": no Page element");

  // Region order: ReadingOrder references first (by index), the rest in
  // document order.
  std::vector<std::pair<std::string, const pt::ptree*>> regions;
  for (const auto& [key, child] : *pageNode)
    if (localName(key) == "TextRegion") regions.push_back({attr(child, "id"), &child});

  std::vector<std::pair<int, std::string>> refs;
  if (const pt::ptree* ro = findChild(*pageNode, "ReadingOrder")) {
    std::function<void(const pt::ptree&)> collect = [&](const pt::ptree& node) {
      for (const auto& [key, child] : node) {
        auto local = localName(key);
        if (local == "RegionRefIndexed") {
          int idx = 0;
          auto s = attr(child, "index");
          std::from_chars(s.data(), s.data() + s.size(), idx);
          refs.push_back({idx, attr(child, "regionRef")});
        } else if (local != "<xmlattr>") {
          collect(child);
        }
      }
    };
    collect(*ro);
  }
  std::stable_sort(refs.begin(), refs.end(),
                   [](auto& a, auto& b) { return a.first < b.first; });

  std::vector<const pt::ptree*> ordered;
  std::vector<char> used(regions.size(), 0);
  for (const auto& [idx, refId] : refs) {
    for (size_t k = 0; k < regions.size(); ++k)
      if (!used[k] && regions[k].first == refId) {
        ordered.push_back(regions[k].second);
        used[k] = 1;
        break;
      }
  }
  for (size_t k = 0; k < regions.size(); ++k)
    if (!used[k]) ordered.push_back(regions[k].second);

  int lineNo = 0;
  for (const pt::ptree* region : ordered) {
    for (const auto& [key, lineNode] : *region) {
      if (localName(key) != "TextLine") continue;
      ++lineNo;
      Line line;
      line.id = attr(lineNode, "id");
      if (line.id.empty()) line.id = "l" + std::to_string(lineNo);
      const std::string where = "line " + line.id + " of " + sourceName;

      std::string text;
      if (const pt::ptree* te = findChild(lineNode, "TextEquiv"))
        if (const pt::ptree* uni = findChild(*te, "Unicode"))
          text = uni->get_value<std::string>();
      line.text = cleanLineText(std::move(text), where, doc.warnings);
      utf8::decode(line.text);  // validate

      if (const pt::ptree* bl = findChild(lineNode, "Baseline"))
        line.baseline = parsePoints(attr(*bl, "points"), where, doc.warnings);

      doc.page.lines.push_back(std::move(line));
    }
  }
  return doc;
}

PageDocument parsePlainText(std::string_view text, const std::string& sourceName) {
  PageDocument doc;
  doc.sourcePath = sourceName;
  doc.page.id = stem(sourceName);
  utf8::decode(text);  // validate once, with byte offsets into the file

  size_t pos = 0;
  int lineNo = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, (nl == std::string_view::npos ? text.size() : nl) - pos);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    ++lineNo;

    std::string_view trimmed = raw;
    while (!trimmed.empty() && trimmed.front() == ' ') trimmed.remove_prefix(1);
    while (!trimmed.empty() && trimmed.back() == ' ') trimmed.remove_suffix(1);
    if (trimmed.size() != raw.size())
      doc.warnings.push_back("trimmed edge spaces on line " + std::to_string(lineNo) +
                             " of " + sourceName);
    doc.page.lines.push_back(
        {std::string(trimmed), std::nullopt, "l" + std::to_string(lineNo)});

    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return doc;
}

std::string serializePlainText(const Page& page) {
  std::string out;
  for (const auto& line : page.lines) {
    out += line.text;
    out += '\n';
  }
  return out;
}

PageDocument loadPageFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string content = buf.str();

  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (ext == ".xml") return parsePageXml(content, path.string());
  if (ext == ".txt") return parsePlainText(content, path.string());
  throw ParseError("unsupported file type: " + path.string());
}

TestSet pairTestSet(const std::filesystem::path& gtPath,
                    const std::filesystem::path& hypPath, const PairOptions& opts) {
  namespace fs = std::filesystem;
  if (!fs::exists(gtPath)) throw ParseError("path does not exist: " + gtPath.string());
  if (!fs::exists(hypPath)) throw ParseError("path does not exist: " + hypPath.string());

  TestSet ts;
  if (fs::is_regular_file(gtPath) && fs::is_regular_file(hypPath)) {
    PagePair pair;
    pair.gt = loadPageFile(gtPath);
    pair.hyp = loadPageFile(hypPath);
    pair.id = pair.gt.page.id;
    pair.hyp.page.id = pair.id;
    ts.pairs.push_back(std::move(pair));
    return ts;
  }
  if (!fs::is_directory(gtPath) || !fs::is_directory(hypPath))
    throw ParseError("--gt and --hyp must both be files or both be directories");

  auto scan = [](const fs::path& dir) {
    std::map<std::string, fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (!entry.is_regular_file()) continue;
      auto ext = entry.path().extension().string();
      std::transform(ext.begin(), ext.end(), ext.begin(),
                     [](unsigned char c) { return std::tolower(c); });
      if (ext != ".xml" && ext != ".txt") continue;
      auto s = stem(entry.path());
      if (files.count(s))
        throw ParseError("duplicate page stem '" + s + "' in " + dir.string());
      files[s] = entry.path();
    }
    return files;
  };

  auto gtFiles = scan(gtPath), hypFiles = scan(hypPath);
  for (const auto& [s, gtFile] : gtFiles) {
    auto it = hypFiles.find(s);
    if (it == hypFiles.end()) {
      if (!opts.skipUnpairedGt)
        throw ParseError("no hypothesis page for ground truth '" + s + "'");
      ts.warnings.push_back("skipping unpaired ground truth '" + s + "'");
      continue;
    }
    PagePair pair;
    pair.id = s;
    pair.gt = loadPageFile(gtFile);
    pair.hyp = loadPageFile(it->second);
    ts.pairs.push_back(std::move(pair));
  }
  for (const auto& [s, hypFile] : hypFiles) {
    if (gtFiles.count(s)) continue;
    if (!opts.strictUnpairedHyp) {
      ts.warnings.push_back("skipping unpaired hypothesis '" + s + "'");
      continue;
    }
    ts.warnings.push_back("counting unpaired hypothesis '" + s +
                          "' against an empty page");
    PagePair pair;
    pair.id = s;
    pair.gt.page.id = s;
    pair.hyp = loadPageFile(hypFile);
    ts.pairs.push_back(std::move(pair));
  }
  std::sort(ts.pairs.begin(), ts.pairs.end(),
            [](const PagePair& a, const PagePair& b) { return a.id < b.id; });
  return ts;
}

}  // namespace pageval
