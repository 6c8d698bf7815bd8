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

#pragma once

#include <json.hpp>

#include "ndpp/coreset.hpp"
#include "ndpp/downup.hpp"
#include "ndpp/exchange.hpp"
#include "ndpp/localsearch.hpp"

namespace ndpp {

using Json = nlohmann::ordered_json;

/// Finite numbers pass through; infinities and NaN become null.
Json number(double v);

Json to_json(std::span<const int> s);
Json to_json(const GreedyTrace& g);
Json to_json(const SearchTrace& t);
Json to_json(const MapReport& r);
Json to_json(const ExchangeReport& r);

/// {n, k, l, num_states, gap, conductance or bounds, cheeger_ok} plus the
/// invariant residuals.
Json chain_json(const ChainMatrix& c, const ChainDiagnostics& d, const ConductanceResult& phi);

/// {parts, coresets, opt_union, opt_coreset, ratio, beta_hat, bound_ok} plus
/// the replayed exchange chain.
Json to_json(const CoresetReport& r);

}  // namespace ndpp
