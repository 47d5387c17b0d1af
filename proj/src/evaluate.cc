#include "pageval/evaluate.h"

#include <atomic>
#include <exception>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "pageval/dp_engine.h"
#include "pageval/greedy.h"
#include "pageval/version.h"

namespace pageval {

namespace {

using ordered_json = nlohmann::ordered_json;

const char* levelName(Level l) {
  switch (l) {
    case Level::Character: return "cer";
    case Level::Word: return "wer";
    case Level::BagOfWords: return "bow";
  }
  return "?";
}

// Rates are emitted as fractions; null when the denominator is zero.
ordered_json ratesJson(const ErrorCounts& c) {
  ordered_json r;
  r["errorRate"] = c.gtLen ? ordered_json(errorRate(c)) : ordered_json(nullptr);
  r["precision"] = c.hypLen ? ordered_json(precision(c)) : ordered_json(nullptr);
  r["recall"] = c.gtLen ? ordered_json(recall(c)) : ordered_json(nullptr);
  return r;
}

ordered_json countsJson(const ErrorCounts& c) {
  ordered_json j;
  j["ins"] = c.ins;
  j["del"] = c.del;
  j["sub"] = c.sub;
  j["cor"] = c.cor;
  j["gtLen"] = c.gtLen;
  j["hypLen"] = c.hypLen;
  return j;
}

ordered_json bowCountsJson(const BowCounts& c) {
  ordered_json j;
  j["tp"] = c.tp;
  j["fp"] = c.fp;
  j["fn"] = c.fn;
  j["gtTokens"] = c.gtTokens;
  j["hypTokens"] = c.hypTokens;
  return j;
}

ordered_json bowRatesJson(const BowCounts& c) {
  ordered_json r;
  r["precision"] = c.hypTokens ? ordered_json(precision(c)) : ordered_json(nullptr);
  r["recall"] = c.gtTokens ? ordered_json(recall(c)) : ordered_json(nullptr);
  return r;
}

std::string pct(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(1) << v * 100.0 << '%';
  return os.str();
}

}  // namespace

EvalResult evaluatePair(const Page& hyp, const Page& gt, const MeasureConfig& cfg) {
  if (cfg.level == Level::BagOfWords)
    throw ConfigError("bag-of-words level is order-free; use bagOfWords()");
  return cfg.readingOrder ? solve(hyp, gt, cfg) : greedyLd(hyp, gt, cfg);
}

std::string measureLabel(const MeasureConfig& cfg) {
  std::string base = cfg.level == Level::Character ? "CER"
                     : cfg.level == Level::Word    ? "WER"
                                                   : "BOW";
  if (cfg.level == Level::BagOfWords) return base;
  std::vector<char> marks;
  if (cfg.readingOrder) marks.push_back('R');
  if (cfg.segmentation) marks.push_back('S');
  if (cfg.geometry) marks.push_back('G');
  if (marks.empty()) return base;
  if (marks.size() == 1) return base + "^" + marks[0];
  std::string sup;
  for (char m : marks) {
    if (!sup.empty()) sup += ',';
    sup += m;
  }
  return base + "^{" + sup + "}";
}

Report evaluateTestSet(const TestSet& testSet, const MeasureConfig& cfg, int jobs) {
  Report report;
  report.config = cfg;
  report.measure = measureLabel(cfg);
  report.pages.resize(testSet.pairs.size());

  unsigned n = jobs > 0 ? unsigned(jobs) : std::max(1u, std::thread::hardware_concurrency());
  std::size_t cap = std::max<std::size_t>(testSet.pairs.size(), 1);
  if (n > cap) n = unsigned(cap);

  std::atomic<std::size_t> next{0};
  std::exception_ptr firstError;
  std::mutex errorMutex;
  auto worker = [&] {
    for (std::size_t k = next.fetch_add(1); k < testSet.pairs.size();
         k = next.fetch_add(1)) {
      try {
        const auto& pair = testSet.pairs[k];
        PageReport& pr = report.pages[k];
        pr.id = pair.id;
        if (cfg.level == Level::BagOfWords) {
          pr.bow = bagOfWords(pair.hyp.page, pair.gt.page, cfg.tokenizer);
        } else {
          auto r = evaluatePair(pair.hyp.page, pair.gt.page, cfg);
          pr.counts = r.counts;
          pr.alignment = std::move(r.alignment);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(errorMutex);
        if (!firstError) firstError = std::current_exception();
      }
    }
  };
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (firstError) std::rethrow_exception(firstError);

  std::vector<ErrorCounts> counts;
  std::vector<BowCounts> bows;
  for (const auto& p : report.pages) {
    counts.push_back(p.counts);
    bows.push_back(p.bow);
  }
  report.totalCounts = aggregate(counts);
  report.totalBow = aggregate(bows);
  return report;
}

std::string renderJson(const Report& report) {
  const bool bow = report.config.level == Level::BagOfWords;
  ordered_json j;
  j["version"] = PAGEVAL_VERSION;
  j["measure"] = report.measure;
  ordered_json cfg;
  cfg["level"] = levelName(report.config.level);
  cfg["readingOrder"] = report.config.readingOrder;
  cfg["geometry"] = report.config.geometry;
  cfg["segmentation"] = report.config.segmentation;
  cfg["tokenizer"] = report.config.tokenizer;
  cfg["toleranceFraction"] = report.config.toleranceFraction;
  cfg["toleranceCap"] = report.config.toleranceCap;
  j["config"] = cfg;

  ordered_json pages = ordered_json::object();
  for (const auto& p : report.pages) {
    ordered_json pj;
    if (bow) {
      pj["counts"] = bowCountsJson(p.bow);
      pj["rates"] = bowRatesJson(p.bow);
    } else {
      pj["counts"] = countsJson(p.counts);
      pj["rates"] = ratesJson(p.counts);
      ordered_json al;
      al["matched"] = p.alignment.matched.size();
      al["unmatchedHyp"] = p.alignment.unmatchedHyp.size();
      al["unmatchedGt"] = p.alignment.unmatchedGt.size();
      if (p.alignment.segmentedHyp)
        al["segmentedLines"] = p.alignment.segmentedHyp->lines.size();
      pj["alignment"] = al;
    }
    pages[p.id] = pj;
  }
  j["pages"] = pages;

  ordered_json total;
  if (bow) {
    total["counts"] = bowCountsJson(report.totalBow);
    total["rates"] = bowRatesJson(report.totalBow);
  } else {
    total["counts"] = countsJson(report.totalCounts);
    total["rates"] = ratesJson(report.totalCounts);
  }
  j["aggregate"] = total;
  return j.dump(2) + "\n";
}

std::string renderTable(const Report& report) {
  const bool bow = report.config.level == Level::BagOfWords;
  std::ostringstream os;
  os << "measure  " << report.measure << "\n";

  std::size_t idw = 5;  // fits "total"
  for (const auto& p : report.pages) idw = std::max(idw, p.id.size());
  auto cell = [&](const std::string& s) { os << std::setw(9) << s; };

  os << std::left << std::setw(int(idw)) << "page" << std::right;
  if (bow) {
    for (const char* h : {"FN", "FP", "TP", "Prec", "Rec"}) cell(h);
  } else {
    const char* rate = report.config.level == Level::Character ? "CER" : "WER";
    for (const char* h : {"INS", "DEL", "SUB", "COR", rate, "Prec", "Rec"}) cell(h);
  }
  os << "\n";

  auto countRow = [&](const std::string& id, const ErrorCounts& c) {
    os << std::left << std::setw(int(idw)) << id << std::right;
    cell(std::to_string(c.ins));
    cell(std::to_string(c.del));
    cell(std::to_string(c.sub));
    cell(std::to_string(c.cor));
    cell(c.gtLen ? pct(errorRate(c)) : "-");
    cell(c.hypLen ? pct(precision(c)) : "-");
    cell(c.gtLen ? pct(recall(c)) : "-");
    os << "\n";
  };
  auto bowRow = [&](const std::string& id, const BowCounts& c) {
    os << std::left << std::setw(int(idw)) << id << std::right;
    cell(std::to_string(c.fn));
    cell(std::to_string(c.fp));
    cell(std::to_string(c.tp));
    cell(c.hypTokens ? pct(precision(c)) : "-");
    cell(c.gtTokens ? pct(recall(c)) : "-");
    os << "\n";
  };

  for (const auto& p : report.pages)
    bow ? bowRow(p.id, p.bow) : countRow(p.id, p.counts);
  bow ? bowRow("total", report.totalBow) : countRow("total", report.totalCounts);
  return os.str();
}

std::string renderAlignmentJson(const Report& report) {
  ordered_json pages = ordered_json::object();
  for (const auto& p : report.pages) {
    ordered_json pj;
    ordered_json matched = ordered_json::array();
    for (const auto& [hy, gx] : p.alignment.matched)
      matched.push_back(ordered_json::array({hy, gx}));
    pj["matched"] = matched;
    pj["unmatchedHyp"] = p.alignment.unmatchedHyp;
    pj["unmatchedGt"] = p.alignment.unmatchedGt;
    if (p.alignment.segmentedHyp) {
      ordered_json lines = ordered_json::array();
      for (const auto& l : p.alignment.segmentedHyp->lines) lines.push_back(l.text);
      pj["segmentedHyp"] = lines;
    }
    pages[p.id] = pj;
  }
  ordered_json j;
  j["pages"] = pages;
  return j.dump(2) + "\n";
}

}  // namespace pageval
