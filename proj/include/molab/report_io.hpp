// Copyright 2026 The molab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON (schema_version 1) and CSV serialisation of reports.

#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "molab/catalog.hpp"
#include "molab/mo_verify.hpp"
#include "molab/zeta.hpp"

namespace molab {

inline constexpr int kSchemaVersion = 1;

nlohmann::json complex_json(Complex z);

nlohmann::json to_json(const EulerFactorReport& r);
nlohmann::json to_json(const ConditionIReport& r);
nlohmann::json to_json(const ConditionIIReport& r);
nlohmann::json to_json(const MoCheckReport& r);
nlohmann::json to_json(const DistanceReport& r);
nlohmann::json to_json(const AbsoluteConvergenceReport& r);
nlohmann::json to_json(const MultiplicativityVerdict& r);
nlohmann::json to_json(const LowerBoundCertificate& r);
nlohmann::json to_json(const TransferReport& r);
nlohmann::json to_json(const ScanReport& r);
nlohmann::json to_json(const ZetaZero& z);
nlohmann::json to_json(const CatalogEntry& e);

/// Wraps a report as {"schema_version": 1, "kind": kind, ...fields}.
nlohmann::json envelope(const char* kind, nlohmann::json body);

/// CSV with header `window_lo,window_hi,sup_weighted,at_x`.
void write_scan_csv(std::ostream& out, const ScanReport& r);

}  // namespace molab
