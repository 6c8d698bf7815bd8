// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ndpp/report.hpp"

#include <cmath>

namespace ndpp {

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

Json to_json(std::span<const int> s) {
  Json out = Json::array();
  for (int i : s) out.push_back(i);
  return out;
}

Json to_json(const GreedyTrace& g) {
  Json picks = Json::array();
  for (const auto& p : g.picks) picks.push_back({{"index", p.index}, {"marginal", number(p.marginal)}});
  return {{"picks", picks}, {"set", to_json(g.final_set)}, {"value", number(g.final_value)}};
}

Json to_json(const SearchTrace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    steps.push_back({{"set", to_json(s.set)}, {"value", number(s.value)},
                     {"factor", number(s.factor)}});
  }
  return {{"steps", steps},
          {"certified_local_max", t.certified_local_max},
          {"neighborhood_evals", t.neighborhood_evals},
          {"max_iters", t.max_iters}};
}

Json to_json(const MapReport& r) {
  return {{"set", to_json(r.set)},
          {"value", number(r.value)},
          {"init", r.init == InitMethod::kInduced ? "induced" : "standard"},
          {"iterations", r.iterations},
          {"greedy", to_json(r.greedy)},
          {"search", to_json(r.search)}};
}

Json to_json(const ExchangeReport& r) {
  Json witnesses = Json::array();
  for (const auto& w : r.witnesses) witnesses.push_back({{"s", w.s}, {"U", to_json(w.u)}});
  Json out = {{"S", to_json(r.s)},
              {"T", to_json(r.t)},
              {"variant", std::string(variant_name(r.variant))},
              {"distance", r.distance},
              {"vacuous", r.vacuous},
              {"measured_beta", number(r.measured_beta)},
              {"passed", r.passed},
              {"witness", witnesses}};
  if (r.variant == ExchangeVariant::kPairExchange) out["sum_bound_holds"] = r.sum_bound_holds;
  return out;
}

Json chain_json(const ChainMatrix& c, const ChainDiagnostics& d, const ConductanceResult& phi) {
  Json out = {{"n", c.n}, {"k", c.k}, {"l", c.l}, {"num_states", c.size()},
              {"gap", number(d.gap)}};
  if (phi.exact) {
    out["conductance"] = number(phi.value);
  } else {
    out["conductance_bounds"] = {number(phi.lower), number(phi.upper)};
  }
  out["cheeger_ok"] = phi.cheeger_ok;
  out["row_sum_error"] = number(d.row_sum_error);
  out["reversibility_error"] = number(d.reversibility_error);
  out["stationarity_error"] = number(d.stationarity_error);
  out["min_eigenvalue"] = number(d.min_eigenvalue);
  out["max_imag_part"] = number(d.max_imag_part);
  return out;
}

Json to_json(const CoresetReport& r) {
  Json parts = Json::array();
  Json coresets = Json::array();
  for (const auto& p : r.plan.parts) parts.push_back(to_json(p));
  for (const auto& c : r.plan.coresets) coresets.push_back(to_json(c));
  Json chain = Json::array();
  for (const auto& s : r.chain) {
    chain.push_back({{"part", s.part},
                     {"removed", s.removed},
                     {"added", s.added},
                     {"set", to_json(s.set)},
                     {"value", number(s.value)},
                     {"factor", number(s.factor)},
                     {"step_beta", number(s.step_beta)}});
  }
  return {{"parts", parts},
          {"coresets", coresets},
          {"opt_union", {{"set", to_json(r.opt_union.set)}, {"value", number(r.opt_union.value)}}},
          {"opt_coreset",
           {{"set", to_json(r.opt_coreset.set)}, {"value", number(r.opt_coreset.value)}}},
          {"ratio", number(r.ratio)},
          {"beta_hat", number(r.beta_hat)},
          {"zeta", r.plan.zeta},
          {"bound", number(r.bound)},
          {"bound_ok", r.bound_ok},
          {"chain", chain},
          {"chain_ok", r.chain_ok}};
}

}  // namespace ndpp
