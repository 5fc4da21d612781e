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

#include "amakey/harness/scenario.h"

#include <filesystem>
#include <map>
#include <memory>
#include <random>
#include <set>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "amakey/client/card_cache.h"
#include "amakey/client/key_client.h"
#include "amakey/client/transport.h"
#include "amakey/core/bytes.h"
#include "amakey/core/crypto.h"
#include "amakey/core/signing.h"
#include "amakey/core/status_macros.h"
#include "amakey/core/wire.h"
#include "amakey/net/protocol.h"
#include "amakey/server/api.h"
#include "amakey/server/challenge.h"
#include "amakey/server/delivery.h"
#include "amakey/server/key_server.h"
#include "amakey/server/store.h"

namespace amakey::harness {
namespace {

using json = nlohmann::json;

constexpr char kEpoch[] = "2026-03-01T00:00:00Z";
constexpr std::chrono::seconds kStep{60};

absl::string_view ProbeKindName(ProbeKind kind) {
  return kind == ProbeKind::kSelfCheck ? "self_check" : "fetch";
}

std::string ProbeLabel(const Probe& probe) {
  if (probe.kind == ProbeKind::kSelfCheck) {
    return absl::StrCat("self_check(", probe.viewer, ")");
  }
  return absl::StrCat("fetch(", probe.viewer, "->", probe.subject, ")");
}

std::string StatusOutcome(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kNotFound:
      return "NotFound";
    case absl::StatusCode::kUnavailable:
      return "Unavailable";
    default:
      return absl::StrCat("Error:", absl::StatusCodeToString(status.code()));
  }
}

GuidelineChecklist FullChecklist() {
  GuidelineChecklist c;
  c.single_take = c.id_shown = c.spoken_in_groups = c.background_audio =
      c.visual_hash_shown = c.card_rotated_or_glass_written = true;
  return c;
}

// One simulated person: a key, a signed cache and a client bound to both.
struct User {
  LocalIdentity identity;
  std::unique_ptr<CardCache> cache;
  std::unique_ptr<InProcessTransport> transport;
  std::unique_ptr<KeyClient> client;
};

class World {
 public:
  World(const Scenario& scenario, const TrustPolicy& policy)
      : scenario_(scenario),
        policy_(policy),
        clock_(*ParseRfc3339(kEpoch)),
        challenges_(scenario.seed),
        server_(store_, mailbox_, challenges_, clock_.AsClock()),
        api_(server_),
        adversary_(api_.AsHandler(), scenario.behavior),
        cache_root_(std::filesystem::temp_directory_path() /
                    ("amakey-harness-" + HexEncode(SecureRandomBytes(8)))) {}

  ~World() {
    std::error_code ignored;
    std::filesystem::remove_all(cache_root_, ignored);
  }

  absl::StatusOr<DetectionReport> Run();

 private:
  absl::StatusOr<KeyPair> SeededKey(absl::string_view label) {
    DeterministicStream stream(absl::StrCat("amakey-harness|", scenario_.seed, "|", label));
    return KeyPair::Generate(kDefaultKeyAlgorithm, stream);
  }

  absl::StatusOr<User*> AddUser(const std::string& address_text,
                                absl::string_view key_label);
  absl::StatusOr<User*> Find(const std::string& address_text);
  absl::Status Register(User& user, absl::string_view attestment_label);
  absl::Status Rate(const RatingSpec& spec);
  absl::Status PrepareAdversary();
  ProbeResult RunProbe(const Probe& probe);

  const Scenario& scenario_;
  const TrustPolicy policy_;
  ManualClock clock_;
  InMemoryStore store_;
  InMemoryMailbox mailbox_;
  ArithmeticChallengeProvider challenges_;
  KeyServer server_;
  KeyServerApi api_;
  AdversarialServer adversary_;
  std::filesystem::path cache_root_;
  std::map<std::string, std::unique_ptr<User>> users_;
};

absl::StatusOr<User*> World::AddUser(const std::string& address_text,
                                     absl::string_view key_label) {
  AMAKEY_ASSIGN_OR_RETURN(ContactAddress address, ContactAddress::Parse(address_text));
  AMAKEY_ASSIGN_OR_RETURN(KeyPair key, SeededKey(key_label));
  auto user = std::make_unique<User>(User{{address, std::move(key)}, nullptr, nullptr, nullptr});
  user->cache = std::make_unique<CardCache>(
      (cache_root_ / HexEncode(Sha256(address.ToString()))).string(),
      user->identity.key, clock_.AsClock());
  user->transport = std::make_unique<InProcessTransport>(
      adversary_.AsHandler(), absl::StrCat("client-", address.ToString()));
  user->client = std::make_unique<KeyClient>(
      *user->transport, KeyClientOptions{.identity = &user->identity,
                                         .cache = user->cache.get(),
                                         .clock = clock_.AsClock()});
  User* raw = user.get();
  users_[address.ToString()] = std::move(user);
  return raw;
}

absl::StatusOr<User*> World::Find(const std::string& address_text) {
  AMAKEY_ASSIGN_OR_RETURN(ContactAddress address, ContactAddress::Parse(address_text));
  auto it = users_.find(address.ToString());
  if (it == users_.end()) {
    return absl::InvalidArgumentError(absl::StrCat("unknown user '", address_text, "'"));
  }
  return it->second.get();
}

absl::Status World::Register(User& user, absl::string_view attestment_label) {
  const ContactAddress& address = user.identity.address;
  IdentityCard card{
      address, user.identity.key.public_key(),
      AttestmentRef{AttestmentKind::kContentHash,
                    DigestHex(DigestAlgorithm::kSha256,
                              absl::StrCat(attestment_label, "|", address.ToString())),
                    FullChecklist()},
      std::nullopt, clock_.Now()};
  AMAKEY_RETURN_IF_ERROR(user.client->Register(card));
  std::optional<std::string> nonce = mailbox_.LatestNonce(address, NoncePurpose::kRegister);
  if (!nonce) return absl::InternalError("no registration nonce delivered");
  AMAKEY_RETURN_IF_ERROR(user.client->ConfirmRegistration(*nonce));
  clock_.Advance(kStep);
  return absl::OkStatus();
}

absl::Status World::Rate(const RatingSpec& spec) {
  AMAKEY_ASSIGN_OR_RETURN(User * rater, Find(spec.rater));
  AMAKEY_ASSIGN_OR_RETURN(User * subject, Find(spec.subject));
  AMAKEY_ASSIGN_OR_RETURN(
      TrustReport report,
      rater->client->FetchAndValidate(subject->identity.address, policy_));
  if (!report.card) return absl::InternalError("honest lookup lacked a card");
  AMAKEY_RETURN_IF_ERROR(rater->client->ReviewAndRate(
      *report.card, {spec.identity, spec.hash_match, spec.authentic, ""},
      SolveArithmeticPuzzle));
  clock_.Advance(kStep);
  return absl::OkStatus();
}

absl::Status World::PrepareAdversary() {
  const AdversarialBehavior& behavior = scenario_.behavior;
  if (behavior.kind == BehaviorKind::kHonest) return absl::OkStatus();
  const std::string target_text = behavior.target.ToString();
  std::optional<RegistrationRecord> record = store_.GetRecord(behavior.target);
  if (!record) {
    return absl::FailedPreconditionError(
        absl::StrCat("target ", target_text, " is not registered"));
  }
  AdversarialPayload payload;
  switch (behavior.kind) {
    case BehaviorKind::kSubstituteKey: {
      AMAKEY_ASSIGN_OR_RETURN(KeyPair attacker, SeededKey("attacker"));
      IdentityCard fake = record->signed_card.card;
      fake.public_key = attacker.public_key();
      AMAKEY_ASSIGN_OR_RETURN(payload.fake_card, SignIdentityCard(fake, attacker));
      break;
    }
    case BehaviorKind::kImpostorCard: {
      AMAKEY_ASSIGN_OR_RETURN(KeyPair attacker, SeededKey("attacker"));
      IdentityCard fake{
          behavior.target, attacker.public_key(),
          AttestmentRef{AttestmentKind::kContentHash,
                        DigestHex(DigestAlgorithm::kSha256,
                                  absl::StrCat("attacker video|", target_text)),
                        FullChecklist()},
          record->signed_card.card.display_name, clock_.Now()};
      AMAKEY_ASSIGN_OR_RETURN(SignedIdentityCard signed_fake,
                              SignIdentityCard(fake, attacker));
      for (int i = 0; i < behavior.forged_ratings; ++i) {
        AMAKEY_ASSIGN_OR_RETURN(
            User * sybil,
            AddUser(absl::StrCat("sybil", i, "@attacker.example"),
                    absl::StrCat("sybil", i)));
        AMAKEY_RETURN_IF_ERROR(Register(*sybil, "sybil video"));
        RatingCard rating{TriState::kYes, TriState::kYes, TriState::kYes, "",
                          sybil->identity.address, signed_fake, clock_.Now()};
        AMAKEY_ASSIGN_OR_RETURN(SignedRatingCard signed_rating,
                                SignRatingCard(rating, sybil->identity.key));
        payload.forged_ratings.push_back(std::move(signed_rating));
        clock_.Advance(kStep);
      }
      payload.fake_card = std::move(signed_fake);
      break;
    }
    case BehaviorKind::kReplayRemovedCard: {
      // Capture, then the owner removes the card and registers a new key.
      AMAKEY_ASSIGN_OR_RETURN(LookupResponse old, server_.Lookup(behavior.target));
      AMAKEY_ASSIGN_OR_RETURN(payload.replayed_lookup, ToWire(old));
      AMAKEY_ASSIGN_OR_RETURN(User * owner, Find(target_text));
      AMAKEY_RETURN_IF_ERROR(owner->client->RemoveOwnCard());
      clock_.Advance(kStep);
      AMAKEY_ASSIGN_OR_RETURN(owner, AddUser(target_text, absl::StrCat(target_text, "|rotated")));
      AMAKEY_RETURN_IF_ERROR(Register(*owner, "rotated video"));
      // Viewers review the new card and keep it in their signed caches.
      for (const Probe& probe : scenario_.probes) {
        if (probe.kind != ProbeKind::kFetch) continue;
        auto subject = ContactAddress::Parse(probe.subject);
        if (!subject.ok() || *subject != behavior.target) continue;
        AMAKEY_ASSIGN_OR_RETURN(User * viewer, Find(probe.viewer));
        AMAKEY_ASSIGN_OR_RETURN(TrustReport fresh,
                                viewer->client->FetchAndValidate(behavior.target, policy_));
        if (fresh.outcome == TrustOutcome::kInvalid) {
          return absl::InternalError("honest lookup of the new card failed validation");
        }
        AMAKEY_RETURN_IF_ERROR(viewer->client->ConfirmAfterReview(fresh).status());
      }
      break;
    }
    case BehaviorKind::kStripRatings:
    case BehaviorKind::kForgeStats:
    case BehaviorKind::kHonest:
      break;
  }
  adversary_.set_payload(std::move(payload));
  return absl::OkStatus();
}

ProbeResult World::RunProbe(const Probe& probe) {
  ProbeResult result{probe, "", {}};
  absl::StatusOr<User*> viewer = Find(probe.viewer);
  if (!viewer.ok()) {
    result.outcome = StatusOutcome(viewer.status());
    return result;
  }
  KeyClient& client = *(*viewer)->client;
  if (probe.kind == ProbeKind::kSelfCheck) {
    auto check = client.SelfCheck((*viewer)->identity.address,
                                   (*viewer)->identity.key.public_key());
    result.outcome = check.ok() ? std::string(SelfCheckResultName(*check))
                                : StatusOutcome(check.status());
    return result;
  }
  auto subject = ContactAddress::Parse(probe.subject);
  if (!subject.ok()) {
    result.outcome = StatusOutcome(subject.status());
    return result;
  }
  auto report = client.FetchAndValidate(*subject, policy_);
  if (!report.ok()) {
    result.outcome = StatusOutcome(report.status());
    return result;
  }
  result.outcome = std::string(TrustOutcomeName(report->outcome));
  for (const Finding& f : report->discrepancies) {
    result.findings.emplace_back(FindingKindName(f.kind));
  }
  return result;
}

absl::StatusOr<DetectionReport> World::Run() {
  for (const std::string& address : scenario_.users) {
    AMAKEY_ASSIGN_OR_RETURN(User * user, AddUser(address, address));
    AMAKEY_RETURN_IF_ERROR(Register(*user, "video"));
  }
  for (const RatingSpec& rating : scenario_.ratings) {
    AMAKEY_RETURN_IF_ERROR(Rate(rating));
  }
  AMAKEY_RETURN_IF_ERROR(PrepareAdversary());
  adversary_.Arm();

  DetectionReport report;
  report.scenario_id = scenario_.id;
  report.behavior = scenario_.behavior.kind;
  report.target = scenario_.behavior.target.ToString();
  report.alpha = policy_.alpha();
  report.beta = policy_.beta();
  for (const Probe& probe : scenario_.probes) {
    ProbeResult result = RunProbe(probe);
    report.detected |= result.outcome == SelfCheckResultName(SelfCheckResult::kMitmDetected) ||
                       result.outcome == TrustOutcomeName(TrustOutcome::kInvalid);
    report.auto_trusted |= result.outcome == TrustOutcomeName(TrustOutcome::kAutoTrusted);
    report.probes.push_back(std::move(result));
  }
  return report;
}

absl::StatusOr<int64_t> ParseCount(absl::string_view text) {
  int64_t value = 0;
  if (!absl::SimpleAtoi(text, &value) || value < 0) {
    return absl::InvalidArgumentError(absl::StrCat("bad count '", text, "'"));
  }
  return value;
}

absl::Status ParseBehaviorLine(const std::vector<absl::string_view>& f,
                               Scenario& scenario) {
  if (f.size() < 3) {
    return absl::InvalidArgumentError("expected 'behavior <kind> <target> [options]'");
  }
  AMAKEY_ASSIGN_OR_RETURN(scenario.behavior.kind, ParseBehaviorKind(f[1]));
  AMAKEY_ASSIGN_OR_RETURN(scenario.behavior.target, ContactAddress::Parse(f[2]));
  for (size_t i = 3; i < f.size(); ++i) {
    std::pair<absl::string_view, absl::string_view> kv = absl::StrSplit(f[i], '=');
    if (kv.first == "forged_s1") {
      AMAKEY_ASSIGN_OR_RETURN(int64_t v, ParseCount(kv.second));
      scenario.behavior.forged_s1 = static_cast<int>(v);
    } else if (kv.first == "forged_ratings") {
      AMAKEY_ASSIGN_OR_RETURN(int64_t v, ParseCount(kv.second));
      scenario.behavior.forged_ratings = static_cast<int>(v);
    } else if (kv.first == "spare") {
      AMAKEY_ASSIGN_OR_RETURN(ContactAddress spared, ContactAddress::Parse(kv.second));
      scenario.behavior.spared_client_id = absl::StrCat("client-", spared.ToString());
    } else {
      return absl::InvalidArgumentError(absl::StrCat("unknown option '", f[i], "'"));
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Scenario> ParseScenarioScript(absl::string_view text) {
  Scenario scenario;
  bool have_behavior = false;
  int line_no = 0;
  for (absl::string_view raw : absl::StrSplit(text, '\n')) {
    ++line_no;
    absl::string_view line = absl::StripAsciiWhitespace(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::vector<absl::string_view> f =
        absl::StrSplit(line, absl::ByAnyChar(" \t"), absl::SkipEmpty());
    auto fail = [&](absl::string_view why) {
      return absl::InvalidArgumentError(absl::StrCat("line ", line_no, ": ", why));
    };
    auto check = [&](const absl::Status& s) {
      return s.ok() ? s : fail(s.message());
    };
    const absl::string_view verb = f[0];
    if (verb == "scenario" && f.size() == 2) {
      scenario.id = std::string(f[1]);
    } else if (verb == "seed" && f.size() == 2) {
      if (!absl::SimpleAtoi(f[1], &scenario.seed)) return fail("bad seed");
    } else if (verb == "user" && f.size() == 2) {
      scenario.users.emplace_back(f[1]);
    } else if (verb == "rate" && f.size() == 6) {
      RatingSpec r{std::string(f[1]), std::string(f[2])};
      auto a = ParseTriState(f[3]);
      auto b = ParseTriState(f[4]);
      auto c = ParseTriState(f[5]);
      for (const auto* s : {&a, &b, &c}) {
        if (!s->ok()) return fail(s->status().message());
      }
      r.identity = *a;
      r.hash_match = *b;
      r.authentic = *c;
      scenario.ratings.push_back(std::move(r));
    } else if (verb == "behavior") {
      if (absl::Status s = check(ParseBehaviorLine(f, scenario)); !s.ok()) return s;
      have_behavior = true;
    } else if (verb == "probe" && f.size() == 3 && f[1] == "self_check") {
      scenario.probes.push_back({ProbeKind::kSelfCheck, std::string(f[2]), std::string(f[2])});
    } else if (verb == "probe" && f.size() == 4 && f[1] == "fetch") {
      scenario.probes.push_back({ProbeKind::kFetch, std::string(f[2]), std::string(f[3])});
    } else {
      return fail(absl::StrCat("cannot parse '", line, "'"));
    }
  }
  if (scenario.id.empty()) return absl::InvalidArgumentError("missing 'scenario <id>'");
  if (!have_behavior) return absl::InvalidArgumentError("missing 'behavior' line");
  if (scenario.probes.empty()) return absl::InvalidArgumentError("no probes");
  return scenario;
}

std::string FormatScenarioScript(const Scenario& s) {
  std::string out = absl::StrCat("scenario ", s.id, "\nseed ", s.seed, "\n");
  for (const std::string& u : s.users) absl::StrAppend(&out, "user ", u, "\n");
  for (const RatingSpec& r : s.ratings) {
    absl::StrAppend(&out, "rate ", r.rater, " ", r.subject, " ", TriStateName(r.identity),
                    " ", TriStateName(r.hash_match), " ", TriStateName(r.authentic), "\n");
  }
  absl::StrAppend(&out, "behavior ", BehaviorKindName(s.behavior.kind), " ",
                  s.behavior.target.ToString(), " forged_s1=", s.behavior.forged_s1,
                  " forged_ratings=", s.behavior.forged_ratings, "\n");
  for (const Probe& p : s.probes) {
    absl::StrAppend(&out, "probe ", ProbeKindName(p.kind), " ", p.viewer);
    if (p.kind == ProbeKind::kFetch) absl::StrAppend(&out, " ", p.subject);
    out += "\n";
  }
  return out;
}

absl::StatusOr<DetectionReport> RunScenario(const Scenario& scenario,
                                            const TrustPolicy& policy) {
  World world(scenario, policy);
  return world.Run();
}

Scenario DefaultScenario(BehaviorKind kind) {
  Scenario s;
  s.id = absl::StrCat("default-", BehaviorKindName(kind));
  s.seed = 1;
  s.users = {"alice@example.org", "bob@example.org", "carol@example.org",
             "dave@example.org", "erin@example.org"};
  for (size_t i = 1; i < s.users.size(); ++i) {
    s.ratings.push_back({s.users[i], s.users[0]});
  }
  s.behavior.kind = kind;
  s.behavior.target = *ContactAddress::Parse(s.users[0]);
  s.probes = {{ProbeKind::kSelfCheck, s.users[0], s.users[0]},
              {ProbeKind::kFetch, s.users[1], s.users[0]}};
  return s;
}

Scenario RandomScenario(BehaviorKind kind, uint64_t seed) {
  // Raw engine output only, so worlds are identical on every standard library.
  std::mt19937_64 rng(seed);
  const auto answer = [&] {
    constexpr TriState kAnswers[] = {TriState::kYes, TriState::kYes, TriState::kNo,
                                     TriState::kUnsure};
    return kAnswers[rng() % 4];
  };
  Scenario s;
  s.id = absl::StrCat("random-", BehaviorKindName(kind), "-", seed);
  s.seed = seed;
  const size_t n = 3 + rng() % 6;
  for (size_t i = 0; i < n; ++i) {
    s.users.push_back(absl::StrCat("user", i, "@world", seed, ".example"));
  }
  for (size_t i = 1; i < n; ++i) {
    if (i == 1 || rng() % 5 != 0) {
      s.ratings.push_back({s.users[i], s.users[0], answer(), answer(), answer()});
    }
  }
  const size_t extra = rng() % n;
  for (size_t k = 0; k < extra; ++k) {
    const size_t a = 1 + rng() % (n - 1);
    const size_t b = 1 + rng() % (n - 1);
    if (a != b) s.ratings.push_back({s.users[a], s.users[b], answer(), answer(), answer()});
  }
  s.behavior.kind = kind;
  s.behavior.target = *ContactAddress::Parse(s.users[0]);
  s.probes = {{ProbeKind::kSelfCheck, s.users[0], s.users[0]},
              {ProbeKind::kFetch, s.users[1], s.users[0]}};
  if (n - 1 != 1) s.probes.push_back({ProbeKind::kFetch, s.users[n - 1], s.users[0]});
  return s;
}

absl::StatusOr<std::vector<DetectionReport>> ScenarioMatrix(
    const std::vector<TrustPolicy>& policies, bool include_honest) {
  std::vector<BehaviorKind> kinds = AdversarialKinds();
  if (include_honest) kinds.insert(kinds.begin(), BehaviorKind::kHonest);
  std::vector<DetectionReport> reports;
  for (BehaviorKind kind : kinds) {
    for (const TrustPolicy& policy : policies) {
      AMAKEY_ASSIGN_OR_RETURN(DetectionReport report,
                              RunScenario(DefaultScenario(kind), policy));
      reports.push_back(std::move(report));
    }
  }
  return reports;
}

std::string ReportsCsv(const std::vector<DetectionReport>& reports) {
  std::string out =
      "scenario_id,behavior,target,alpha,beta,outcomes,findings,detected,auto_trusted\n";
  for (const DetectionReport& r : reports) {
    std::vector<std::string> outcomes;
    std::set<std::string> findings;
    for (const ProbeResult& p : r.probes) {
      outcomes.push_back(absl::StrCat(ProbeLabel(p.probe), "=", p.outcome));
      findings.insert(p.findings.begin(), p.findings.end());
    }
    absl::StrAppend(&out, r.scenario_id, ",", BehaviorKindName(r.behavior), ",", r.target,
                    ",", r.alpha, ",", r.beta.ToString(), ",", absl::StrJoin(outcomes, ";"),
                    ",", absl::StrJoin(findings, "|"), ",", r.detected ? "true" : "false",
                    ",", r.auto_trusted ? "true" : "false", "\n");
  }
  return out;
}

std::string ReportText(const DetectionReport& r) {
  std::string out = absl::StrCat("scenario ", r.scenario_id, "\n  behavior ",
                                 BehaviorKindName(r.behavior), " against ", r.target,
                                 "\n  policy alpha=", r.alpha, " beta=", r.beta.ToString(),
                                 "\n");
  for (const ProbeResult& p : r.probes) {
    absl::StrAppend(&out, "  ", ProbeLabel(p.probe), " -> ", p.outcome);
    if (!p.findings.empty()) absl::StrAppend(&out, " [", absl::StrJoin(p.findings, ", "), "]");
    out += "\n";
  }
  absl::StrAppend(&out, "  detected: ", r.detected ? "yes" : "no",
                  "\n  auto-trusted: ", r.auto_trusted ? "yes" : "no", "\n");
  return out;
}

}  // namespace amakey::harness
