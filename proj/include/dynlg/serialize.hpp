// Copyright 2026 The dynlg Authors
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

#include <string>

#include <json.hpp>

#include "dynlg/localglobal.hpp"
#include "dynlg/orbit.hpp"
#include "dynlg/ratmap.hpp"
#include "dynlg/zsigmondy.hpp"

namespace dynlg {

using Json = nlohmann::json;

inline constexpr const char* kCertificateSchema = "dynlg.certificate";
inline constexpr const char* kSchemaVersion = "1";

// Every number is written as a decimal string. Parsing throws ParseError on
// malformed input.

Json to_json(const ProjectivePoint& x);
ProjectivePoint point_from_json(const Json& j);

Json to_json(const PrimePowerModulus& m);
PrimePowerModulus modulus_from_json(const Json& j);

Json to_json(const RationalMap& phi);
RationalMap map_from_json(const Json& j);

Json to_json(const ModOrbit& o);
ModOrbit mod_orbit_from_json(const Json& j);

Json to_json(const HitSet& h);
HitSet hit_set_from_json(const Json& j);

Json to_json(const OrbitSummary& o);
Json to_json(const nt::Factorization& f);
Json to_json(const ZsigmondyResult& z);
Json to_json(const PlaceReport& r);
Json to_json(const DegreeOneRow& r);

Json to_json(const DecisionProblem& prob);
DecisionProblem problem_from_json(const Json& j);

/// Certificate document with the problem echoed.
Json certificate_document(const DecisionProblem& prob, const Certificate& cert);
struct CertificateDocument {
  DecisionProblem problem;
  Certificate certificate;
};
CertificateDocument certificate_from_json(const Json& j);

/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);

}  // namespace dynlg
