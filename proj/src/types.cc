#include "pageval/types.h"

namespace pageval {

double errorRate(const ErrorCounts& c) {
  if (c.gtLen == 0) throw EvalError("error rate undefined: ground truth has length 0");
  return static_cast<double>(c.distance()) / static_cast<double>(c.gtLen);
}

double precision(const ErrorCounts& c) {
  if (c.hypLen == 0) throw EvalError("precision undefined: hypothesis has length 0");
  return static_cast<double>(c.cor) / static_cast<double>(c.hypLen);
}

double recall(const ErrorCounts& c) {
  if (c.gtLen == 0) throw EvalError("recall undefined: ground truth has length 0");
  return static_cast<double>(c.cor) / static_cast<double>(c.gtLen);
}

ErrorCounts aggregate(const std::vector<ErrorCounts>& perPage) {
  ErrorCounts total;
  for (const auto& c : perPage) {
    total.ins += c.ins;
    total.del += c.del;
    total.sub += c.sub;
    total.cor += c.cor;
    total.gtLen += c.gtLen;
    total.hypLen += c.hypLen;
  }
  return total;
}

}  // namespace pageval
