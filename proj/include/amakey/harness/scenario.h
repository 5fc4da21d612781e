// Copyright 2026 The Amakey Authors
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
//
////////////////////////////////////////////////////////////////////////////////

#ifndef AMAKEY_HARNESS_SCENARIO_H_
#define AMAKEY_HARNESS_SCENARIO_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "amakey/core/cards.h"
#include "amakey/core/rational.h"
#include "amakey/core/trust.h"
#include "amakey/harness/adversary.h"

namespace amakey::harness {

enum class ProbeKind { kSelfCheck, kFetch };

struct Probe {
  ProbeKind kind = ProbeKind::kFetch;
  // The querying user; for self_check this is also the subject.
  std::string viewer;
  std::string subject;
};

struct RatingSpec {
  std::string rater;
  std::string subject;
  TriState identity = TriState::kYes;
  TriState hash_match = TriState::kYes;
  TriState authentic = TriState::kYes;
};

// A world (users and ratings), one behavior against one target, and the
// client probes run once the behavior is armed. Everything derives from
// `seed`, so equal scripts give byte-identical reports.
struct Scenario {
  std::string id;
  uint64_t seed = 0;
  std::vector<std::string> users;
  std::vector<RatingSpec> ratings;
  AdversarialBehavior behavior;
  std::vector<Probe> probes;
};

// Line-oriented script:
//
//   scenario <id>
//   seed <n>
//   user <address>
//   rate <rater> <subject> <identity> <hash_match> <authentic>
//   behavior <kind> <target> [forged_s1=N] [forged_ratings=N] [spare=<user>]
//   probe self_check <user>
//   probe fetch <viewer> <subject>
//
// "#" starts a comment.
absl::StatusOr<Scenario> ParseScenarioScript(absl::string_view text);
std::string FormatScenarioScript(const Scenario& scenario);

struct ProbeResult {
  Probe probe;
  // A TrustOutcome or SelfCheckResult name, or "NotFound"/"Unavailable".
  std::string outcome;
  std::vector<std::string> findings;
};

struct DetectionReport {
  std::string scenario_id;
  BehaviorKind behavior = BehaviorKind::kHonest;
  std::string target;
  int64_t alpha = 0;
  Rational beta;
  std::vector<ProbeResult> probes;
  // Some probe ended in MitmDetected or Invalid.
  bool detected = false;
  // Some fetch probe ended in AutoTrusted.
  bool auto_trusted = false;
};

// Builds the world against an in-process keyserver, arms the behavior and
// runs the probes.
absl::StatusOr<DetectionReport> RunScenario(const Scenario& scenario,
                                            const TrustPolicy& policy);

// Five users, four of whom rate the target (yes, yes, yes). Probes: the
// target's self-check and one other user's lookup of the target.
Scenario DefaultScenario(BehaviorKind kind);

// Random world of 3 to 8 users with at least one rating of the target.
Scenario RandomScenario(BehaviorKind kind, uint64_t seed);

// Every adversarial behavior (plus the honest control when asked) under
// every policy, in that order.
absl::StatusOr<std::vector<DetectionReport>> ScenarioMatrix(
    const std::vector<TrustPolicy>& policies, bool include_honest = false);

std::string ReportsCsv(const std::vector<DetectionReport>& reports);
std::string ReportText(const DetectionReport& report);

}  // namespace amakey::harness

#endif  // AMAKEY_HARNESS_SCENARIO_H_
