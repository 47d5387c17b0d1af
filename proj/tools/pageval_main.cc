#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "pageval/evaluate.h"
#include "pageval/version.h"

using namespace pageval;

int main(int argc, char** argv) {
  CLI::App app{"pageval - error measures between ground-truth and recognized pages"};
  app.set_version_flag("--version", PAGEVAL_VERSION);

  std::string gtPath, hypPath;
  std::string level = "cer";
  std::string format = "table";
  std::string dumpAlignment;
  MeasureConfig cfg;
  PairOptions pairOpts;
  int jobs = 0;

  app.add_option("--gt", gtPath, "Ground-truth page file or directory")->required();
  app.add_option("--hyp", hypPath, "Hypothesis page file or directory")->required();
  app.add_option("--level", level, "Measure level: cer, wer or bow (default cer)");
  auto* roFlag = app.add_flag("--reading-order,!--no-reading-order", cfg.readingOrder,
                              "Require matches to follow reading order (default on)");
  auto* geoFlag = app.add_flag("--geometry", cfg.geometry,
                               "Restrict matches to geometrically close baselines");
  auto* segFlag = app.add_flag("--segmentation", cfg.segmentation,
                               "Forgive hypothesis line splits and merges");
  app.add_option("--tokenizer", cfg.tokenizer, "Tokenizer id for word level (default space)");
  app.add_option("--tolerance-fraction", cfg.toleranceFraction,
                 "Baseline tolerance as a fraction of the closest-line distance");
  app.add_option("--tolerance-cap", cfg.toleranceCap, "Upper bound on the tolerance, px");
  app.add_option("--format", format, "Output format: table or json");
  app.add_option("--dump-alignment", dumpAlignment, "Write per-page alignment detail to FILE");
  app.add_option("--jobs", jobs, "Evaluate pages on up to N threads (0: auto)");
  app.add_flag("--skip-unpaired-gt", pairOpts.skipUnpairedGt,
               "Skip ground-truth pages without a hypothesis instead of failing");
  app.add_flag("--strict-unpaired-hyp", pairOpts.strictUnpairedHyp,
               "Count unpaired hypothesis pages against an empty page");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (level == "cer") {
    cfg.level = Level::Character;
  } else if (level == "wer") {
    cfg.level = Level::Word;
  } else if (level == "bow") {
    cfg.level = Level::BagOfWords;
  } else {
    std::cerr << "error: unknown level '" << level << "' (expected cer, wer or bow)\n";
    return 2;
  }
  if (format != "table" && format != "json") {
    std::cerr << "error: unknown format '" << format << "' (expected table or json)\n";
    return 2;
  }
  if (!hasTokenizer(cfg.tokenizer)) {
    std::cerr << "error: unknown tokenizer '" << cfg.tokenizer << "'\n";
    return 2;
  }
  if (cfg.level == Level::BagOfWords) {
    if (roFlag->count())
      std::cerr << "warning: reading-order flag has no effect at bow level\n";
    if (geoFlag->count())
      std::cerr << "warning: --geometry has no effect at bow level\n";
    if (segFlag->count())
      std::cerr << "warning: --segmentation has no effect at bow level\n";
    cfg.readingOrder = false;
    cfg.geometry = false;
    cfg.segmentation = false;
  }

  try {
    TestSet ts = pairTestSet(gtPath, hypPath, pairOpts);
    for (const auto& w : ts.warnings) std::cerr << "warning: " << w << "\n";
    for (const auto& pair : ts.pairs) {
      for (const auto& w : pair.gt.warnings) std::cerr << "warning: " << w << "\n";
      for (const auto& w : pair.hyp.warnings) std::cerr << "warning: " << w << "\n";
    }
    Report report = evaluateTestSet(ts, cfg, jobs);
    std::cout << (format == "json" ? renderJson(report) : renderTable(report));
    if (!dumpAlignment.empty()) {
      if (cfg.level == Level::BagOfWords) {
        std::cerr << "warning: --dump-alignment has no effect at bow level\n";
      } else {
        std::ofstream out(dumpAlignment, std::ios::binary);
        if (!out) throw EvalError("cannot write " + dumpAlignment);
        out << renderAlignmentJson(report);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
