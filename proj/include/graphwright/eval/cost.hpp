#pragma once

#include <map>
#include <string>
#include <vector>

#include "graphwright/agents/pipeline.hpp"
#include "graphwright/core/rational.hpp"

namespace graphwright {

/// Currency per million tokens.
struct Rates {
  Rational input_per_million{0};
  Rational output_per_million{0};
};

struct TokenCost {
  std::int64_t input_tokens = 0;
  std::int64_t output_tokens = 0;
  Rational price{0};

  TokenCost& operator+=(const TokenCost& o) {
    input_tokens += o.input_tokens;
    output_tokens += o.output_tokens;
    price += o.price;
    return *this;
  }
  friend bool operator==(const TokenCost&, const TokenCost&) = default;
};

inline TokenCost price_usage(const Usage& u, const Rates& r) {
  TokenCost c;
  c.input_tokens = u.input_tokens;
  c.output_tokens = u.output_tokens;
  c.price = (Rational(u.input_tokens) * r.input_per_million + Rational(u.output_tokens) * r.output_per_million) /
            Rational(1'000'000);
  return c;
}

struct InstanceCost {
  std::string id;
  std::map<std::string, TokenCost> stages;  // keyed by agent
  TokenCost total;
};

struct CostReport {
  std::vector<InstanceCost> instances;
  std::map<std::string, TokenCost> stages;
  TokenCost total;
};

struct IdentifiedTrail {
  std::string id;
  Trail trail;
};

/// Every trail entry is priced, failed attempts included.
inline CostReport cost_report(const std::vector<IdentifiedTrail>& trails, const Rates& rates) {
  CostReport report;
  for (const auto& [id, trail] : trails) {
    InstanceCost ic;
    ic.id = id;
    for (const auto& e : trail) {
      const auto c = price_usage(e.usage, rates);
      ic.stages[e.agent] += c;
      ic.total += c;
      report.stages[e.agent] += c;
    }
    report.total += ic.total;
    report.instances.push_back(std::move(ic));
  }
  return report;
}

}  // namespace graphwright
