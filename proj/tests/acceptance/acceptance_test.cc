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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails. Each check compares library output against an
// oracle written here, independently of the library code path.

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "amakey/client/key_client.h"
#include "amakey/client/transport.h"
#include "amakey/core/bytes.h"
#include "amakey/core/canonical.h"
#include "amakey/core/crypto.h"
#include "amakey/core/fingerprint.h"
#include "amakey/core/kdf.h"
#include "amakey/core/signing.h"
#include "amakey/core/stats.h"
#include "amakey/core/trust.h"
#include "amakey/harness/scenario.h"
#include "amakey/server/challenge.h"
#include "amakey/wot/graph.h"
#include "amakey/wot/metrics.h"
#include "amakey/wot/scenario.h"
#include "boost/multiprecision/cpp_int.hpp"
#include "boost/rational.hpp"
#include "testing/fixtures.h"
#include "testing/server_fixture.h"

namespace amakey::acceptance {
namespace {

using ::amakey::testing::Addr;
using ::amakey::testing::MakeRating;
using ::amakey::testing::MakeSignedCard;
using ::amakey::testing::ReadFileOrDie;
using ::amakey::testing::T;
using ::amakey::testing::TestDataPath;
using ::amakey::testing::TestKey;
using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::rational<BigInt>;
using harness::BehaviorKind;
using harness::ProbeKind;

// Outcome of one criterion: pass flag and a one-line summary.
struct Verdict {
  bool pass = true;
  std::string detail;

  void Require(bool condition, const std::string& failure) {
    if (!condition && pass) {
      pass = false;
      detail = failure;
    }
  }
};

struct Criterion {
  std::string name;
  double limit_seconds;  // 0 for no time bound
  std::function<Verdict()> run;
};

TrustPolicy Policy(int64_t alpha, int64_t num, int64_t den) {
  return *TrustPolicy::Create(alpha, *Rational::Create(num, den));
}

// --- trust oracle ------------------------------------------------------------

Verdict TrustOracle() {
  std::mt19937_64 rng(20260301);
  int agree = 0;
  int trusted = 0;
  Verdict v;
  constexpr int kCases = 10000;
  for (int i = 0; i < kCases && v.pass; ++i) {
    const uint64_t max_s1 = i % 3 == 0 ? 12 : i % 3 == 1 ? 500 : (uint64_t{1} << 40);
    AggregateStats s;
    s.s1 = rng() % (max_s1 + 1);
    uint64_t* yes[] = {&s.s2, &s.s4, &s.s6};
    uint64_t* no[] = {&s.s3, &s.s5, &s.s7};
    for (int q = 0; q < 3; ++q) {
      *yes[q] = rng() % (s.s1 + 1);
      *no[q] = rng() % (s.s1 - *yes[q] + 1);
    }
    const int64_t den = 1 + static_cast<int64_t>(rng() % (i % 2 ? 16 : 1000003));
    const int64_t num = 1 + static_cast<int64_t>(rng() % den);
    const int64_t alpha = static_cast<int64_t>(rng() % (max_s1 + 2));

    // alpha < s1 and beta < min(s2-s3, s4-s5, s6-s7) / s1, in exact arithmetic.
    bool expected = false;
    if (BigInt(alpha) < BigInt(s.s1)) {
      const BigInt m = std::min({BigInt(s.s2) - BigInt(s.s3), BigInt(s.s4) - BigInt(s.s5),
                                 BigInt(s.s6) - BigInt(s.s7)});
      expected = BigRational(num, den) < BigRational(m, BigInt(s.s1));
    }
    const bool got = DecideTrust(s, Policy(alpha, num, den)) == TrustDecision::kTrusted;
    v.Require(got == expected,
              absl::StrCat("case ", i, " disagrees: s1=", s.s1, " alpha=", alpha, " beta=",
                           num, "/", den));
    agree += got == expected;
    trusted += expected;
  }
  if (v.pass) {
    v.detail = absl::StrCat(agree, "/", kCases, " agree (", trusted, " trusted)");
  }
  return v;
}

// --- aggregation oracle --------------------------------------------------------

Verdict AggregationOracle() {
  Verdict v;
  const SignedIdentityCard subject = MakeSignedCard("subject@example.org", TestKey("subj"));
  constexpr TriState kAnswers[] = {TriState::kYes, TriState::kNo, TriState::kUnsure};

  // Worked example: (yes,yes,yes), (unsure,yes,no), (no,unsure,yes).
  const std::vector<RatingCard> worked = {
      MakeRating(subject, "r1@example.org", TriState::kYes, TriState::kYes, TriState::kYes),
      MakeRating(subject, "r2@example.org", TriState::kUnsure, TriState::kYes, TriState::kNo),
      MakeRating(subject, "r3@example.org", TriState::kNo, TriState::kUnsure, TriState::kYes)};
  const AggregateStats example = Aggregate(worked);
  v.Require(example == AggregateStats{3, 1, 1, 2, 0, 2, 1}, "worked example differs");

  std::mt19937 rng(1321);
  constexpr int kLists = 1000;
  for (int list = 0; list < kLists && v.pass; ++list) {
    const int n = static_cast<int>(rng() % 201);
    std::vector<RatingCard> ratings;
    // Tally by question position and answer, straight from the draws.
    std::array<std::array<uint64_t, 3>, 3> tally{};
    for (int i = 0; i < n; ++i) {
      std::array<int, 3> a;
      for (int q = 0; q < 3; ++q) {
        a[q] = static_cast<int>(rng() % 3);
        ++tally[q][a[q]];
      }
      ratings.push_back(MakeRating(subject, "r@example.org", kAnswers[a[0]], kAnswers[a[1]],
                                   kAnswers[a[2]]));
    }
    const AggregateStats expected{static_cast<uint64_t>(n), tally[0][0], tally[0][1],
                                  tally[1][0], tally[1][1], tally[2][0], tally[2][1]};
    v.Require(Aggregate(ratings) == expected, absl::StrCat("list ", list, " (n=", n, ") differs"));
  }
  if (v.pass) v.detail = absl::StrCat(kLists, " lists + worked example (3,1,1,2,0,2,1) exact");
  return v;
}

// --- protocol round trip ------------------------------------------------------

Verdict ProtocolRoundTrip() {
  Verdict v;
  ::amakey::testing::ServerWorld world;
  struct User {
    LocalIdentity identity;
    std::unique_ptr<InProcessTransport> transport;
    std::unique_ptr<KeyClient> client;
  };
  std::vector<std::unique_ptr<User>> users;
  for (const char* name : {"owner", "rater1", "rater2", "rater3"}) {
    auto user = std::make_unique<User>(User{
        LocalIdentity{Addr(absl::StrCat(name, "@example.org")), TestKey(name)}, nullptr,
        nullptr});
    user->transport =
        std::make_unique<InProcessTransport>(world.api.AsHandler(), absl::StrCat("c-", name));
    user->client = std::make_unique<KeyClient>(
        *user->transport, KeyClientOptions{.identity = &user->identity});
    users.push_back(std::move(user));
  }
  const TrustPolicy policy = Policy(2, 1, 2);

  for (auto& u : users) {
    IdentityCard card = ::amakey::testing::MakeCard(u->identity.address.ToString(),
                                                    u->identity.key);
    card.contact_address = u->identity.address;
    absl::Status s = u->client->Register(card);
    v.Require(s.ok(), "register: " + s.ToString());
    const auto nonce = world.mailbox.LatestNonce(u->identity.address, NoncePurpose::kRegister);
    v.Require(nonce.has_value(), "no registration nonce delivered");
    if (!v.pass) return v;
    s = u->client->ConfirmRegistration(*nonce);
    v.Require(s.ok(), "confirm: " + s.ToString());
  }
  if (!v.pass) return v;

  KeyClient& owner = *users[0]->client;
  const ContactAddress& owner_address = users[0]->identity.address;
  auto first = users[1]->client->FetchAndValidate(owner_address, policy);
  v.Require(first.ok(), "first lookup failed");
  if (!v.pass) return v;
  v.Require(first->outcome == TrustOutcome::kNeedsHumanReview && first->discrepancies.empty(),
            "first lookup not a clean unrated card");
  v.Require(first->card && first->card->card.public_key == users[0]->identity.key.public_key(),
            "first lookup returned a different key");
  v.Require(first->fingerprint == Fingerprint(users[0]->identity.key.public_key())->hex(),
            "fingerprint mismatch");
  if (!v.pass) return v;

  for (size_t r = 1; r <= 3; ++r) {
    const absl::Status s = users[r]->client->ReviewAndRate(
        *first->card, {TriState::kYes, TriState::kYes, TriState::kYes, "ok"},
        SolveArithmeticPuzzle);
    v.Require(s.ok(), "rating " + std::to_string(r) + ": " + s.ToString());
  }
  if (!v.pass) return v;

  auto second = users[1]->client->FetchAndValidate(owner_address, policy);
  v.Require(second.ok(), "second lookup failed");
  if (!v.pass) return v;
  v.Require(second->discrepancies.empty(), "second lookup has findings");
  v.Require(second->verified_rating_count == 3 && second->served_rating_count == 3,
            "expected 3 verified ratings");
  v.Require(second->recomputed_stats == AggregateStats{3, 3, 0, 3, 0, 3, 0},
            "recomputed stats differ");
  v.Require(second->claimed_stats && *second->claimed_stats == second->recomputed_stats,
            "claimed stats differ");
  v.Require(second->outcome == TrustOutcome::kAutoTrusted, "not auto-trusted");

  const auto self = owner.SelfCheck(owner_address, users[0]->identity.key.public_key());
  v.Require(self.ok() && *self == SelfCheckResult::kClean, "self-check not clean");

  const absl::Status removed = owner.RemoveOwnCard();
  v.Require(removed.ok(), "signed removal: " + removed.ToString());
  auto gone = users[1]->client->FetchAndValidate(owner_address, policy);
  v.Require(!gone.ok() && absl::IsNotFound(gone.status()), "card still served after removal");
  if (v.pass) {
    v.detail = "register, confirm, lookup, 3 ratings, lookup (AutoTrusted), removal";
  }
  return v;
}

// --- harness ----------------------------------------------------------------

const harness::ProbeResult* SelfCheckProbe(const harness::DetectionReport& r) {
  for (const auto& p : r.probes) {
    if (p.probe.kind == ProbeKind::kSelfCheck) return &p;
  }
  return nullptr;
}

bool AnyInvalid(const harness::DetectionReport& r) {
  for (const auto& p : r.probes) {
    if (p.outcome == "Invalid" || p.outcome == "MitmDetected") return true;
  }
  return false;
}

Verdict MitmDetection() {
  Verdict v;
  const TrustPolicy policy = Policy(1, 1, 2);
  int detected = 0;
  int false_positives = 0;
  constexpr uint64_t kWorlds = 100;
  for (uint64_t seed = 1; seed <= kWorlds; ++seed) {
    auto attacked = harness::RunScenario(
        harness::RandomScenario(BehaviorKind::kSubstituteKey, seed), policy);
    v.Require(attacked.ok(), absl::StrCat("world ", seed, ": ", attacked.status().ToString()));
    if (!v.pass) return v;
    const auto* probe = SelfCheckProbe(*attacked);
    if (probe != nullptr && probe->outcome == "MitmDetected") ++detected;

    auto honest =
        harness::RunScenario(harness::RandomScenario(BehaviorKind::kHonest, seed), policy);
    v.Require(honest.ok(), absl::StrCat("control ", seed, ": ", honest.status().ToString()));
    if (!v.pass) return v;
    if (honest->detected || AnyInvalid(*honest)) ++false_positives;
  }
  v.Require(detected == static_cast<int>(kWorlds),
            absl::StrCat("self-check detected ", detected, "/", kWorlds));
  v.Require(false_positives == 0, absl::StrCat(false_positives, " false positives"));
  if (v.pass) {
    v.detail = absl::StrCat(detected, "/", kWorlds, " detected by self-check, ",
                            false_positives, "/", kWorlds, " honest false positives");
  }
  return v;
}

Verdict AdversarialSuite() {
  Verdict v;
  const std::vector<TrustPolicy> policies = {Policy(0, 1, 2), Policy(1, 1, 2),
                                             Policy(3, 9, 10), Policy(0, 1, 1)};
  int runs = 0;
  for (BehaviorKind kind :
       {BehaviorKind::kForgeStats, BehaviorKind::kStripRatings, BehaviorKind::kReplayRemovedCard}) {
    std::vector<harness::Scenario> scenarios = {harness::DefaultScenario(kind)};
    for (uint64_t seed = 1; seed <= 30; ++seed) {
      scenarios.push_back(harness::RandomScenario(kind, seed));
    }
    for (const auto& scenario : scenarios) {
      for (const TrustPolicy& policy : policies) {
        auto r = harness::RunScenario(scenario, policy);
        v.Require(r.ok(), scenario.id + ": " + r.status().ToString());
        if (!v.pass) return v;
        ++runs;
        v.Require(r->detected && AnyInvalid(*r) && !r->auto_trusted,
                  scenario.id + " not detected under alpha=" + std::to_string(policy.alpha()));
      }
    }
  }

  // impostor_card: without forged verifiable ratings it is never AutoTrusted;
  // with k forged yes-ratings it is AutoTrusted exactly when k > alpha and the
  // all-yes ratio 1 exceeds beta.
  int impostor_runs = 0;
  for (uint64_t seed = 0; seed <= 30; ++seed) {
    harness::Scenario s = seed == 0 ? harness::DefaultScenario(BehaviorKind::kImpostorCard)
                                    : harness::RandomScenario(BehaviorKind::kImpostorCard, seed);
    for (const TrustPolicy& policy : policies) {
      s.behavior.forged_ratings = 0;
      auto r = harness::RunScenario(s, policy);
      v.Require(r.ok(), s.id + ": " + r.status().ToString());
      if (!v.pass) return v;
      ++impostor_runs;
      v.Require(!r->auto_trusted, s.id + " auto-trusted with no forged ratings");
    }
  }
  for (const TrustPolicy& policy : policies) {
    for (int k = 1; k <= 4; ++k) {
      harness::Scenario s = harness::DefaultScenario(BehaviorKind::kImpostorCard);
      s.behavior.forged_ratings = k;
      auto r = harness::RunScenario(s, policy);
      v.Require(r.ok(), "impostor k=" + std::to_string(k));
      if (!v.pass) return v;
      ++impostor_runs;
      const bool expected = k > policy.alpha() && policy.beta() < Rational::FromInteger(1);
      v.Require(r->auto_trusted == expected,
                absl::StrCat("impostor k=", k, " alpha=", policy.alpha(), " beta=",
                             policy.beta().ToString(), " auto_trusted=", r->auto_trusted));
    }
  }
  if (v.pass) {
    v.detail = absl::StrCat(runs, "/", runs,
                            " forge_stats/strip_ratings/replay_removed_card runs detected; ",
                            impostor_runs, " impostor_card runs, none auto-trusted without "
                            "forged ratings");
  }
  return v;
}

// --- signature and tamper -------------------------------------------------------

using CardMutation = std::function<void(SignedIdentityCard&, std::mt19937&)>;

void Flip(std::string& bytes, std::mt19937& rng) {
  bytes[rng() % bytes.size()] ^= static_cast<char>(1 + rng() % 255);
}

// One entry per field of a signed identity card, signature included.
std::vector<CardMutation> CardMutations() {
  std::vector<CardMutation> m = {
      [](SignedIdentityCard& c, std::mt19937& rng) {
        c.card.contact_address = Addr(absl::StrCat("x", rng() % 1000, "@example.org"));
      },
      [](SignedIdentityCard& c, std::mt19937&) {
        c.card.contact_address = Addr("phone:+15550123");
      },
      [](SignedIdentityCard& c, std::mt19937&) {
        c.card.public_key.algorithm = std::string(kRsa2048PssSha256);
      },
      [](SignedIdentityCard& c, std::mt19937& rng) { Flip(c.card.public_key.key_bytes, rng); },
      [](SignedIdentityCard& c, std::mt19937&) {
        c.card.attestment.kind = AttestmentKind::kHostedUrl;
      },
      [](SignedIdentityCard& c, std::mt19937& rng) {
        std::string& value = c.card.attestment.value;
        const size_t i = rng() % value.size();
        value[i] = value[i] == 'a' ? 'b' : 'a';
      },
      [](SignedIdentityCard& c, std::mt19937& rng) {
        c.card.display_name = absl::StrCat(c.card.display_name.value_or(""), rng() % 10);
      },
      [](SignedIdentityCard& c, std::mt19937&) { c.card.display_name.reset(); },
      [](SignedIdentityCard& c, std::mt19937& rng) {
        c.card.created_at += std::chrono::seconds(1 + rng() % 86400);
      },
      [](SignedIdentityCard& c, std::mt19937& rng) { Flip(c.signature, rng); },
  };
  for (int flag = 0; flag < 7; ++flag) {
    m.push_back([flag](SignedIdentityCard& c, std::mt19937&) {
      GuidelineChecklist& k = c.card.attestment.checklist;
      bool* flags[] = {&k.single_take,       &k.id_shown,
                       &k.spoken_in_groups,  &k.background_audio,
                       &k.visual_hash_shown, &k.card_rotated_or_glass_written,
                       &k.horizontally_flipped};
      *flags[flag] = !*flags[flag];
    });
  }
  return m;
}

Verdict SignatureTamper() {
  Verdict v;
  std::mt19937 rng(4242);
  std::vector<std::pair<std::string, KeyPair>> keys;
  for (int i = 0; i < 6; ++i) {
    keys.emplace_back(absl::StrCat("u", i, "@example.org"), TestKey(absl::StrCat("tamper", i)));
  }
  const std::vector<CardMutation> card_mutations = CardMutations();
  int card_cases = 0;
  for (int i = 0; i < 1100 && v.pass; ++i) {
    const auto& [address, key] = keys[i % keys.size()];
    const SignedIdentityCard original = MakeSignedCard(address, key);
    v.Require(VerifyIdentityCard(original), "unmodified card fails");
    SignedIdentityCard mutated = original;
    card_mutations[i % card_mutations.size()](mutated, rng);
    v.Require(!(mutated == original), "mutation was a no-op");
    v.Require(!VerifyIdentityCard(mutated),
              absl::StrCat("card mutation ", i % card_mutations.size(), " still verifies"));
    ++card_cases;
  }

  const KeyPair rater = TestKey("tamper-rater");
  const std::vector<std::function<void(SignedRatingCard&, std::mt19937&)>> rating_mutations = {
      [](SignedRatingCard& r, std::mt19937&) {
        r.rating.q_identity =
            r.rating.q_identity == TriState::kYes ? TriState::kNo : TriState::kYes;
      },
      [](SignedRatingCard& r, std::mt19937&) {
        r.rating.q_hash_match =
            r.rating.q_hash_match == TriState::kUnsure ? TriState::kYes : TriState::kUnsure;
      },
      [](SignedRatingCard& r, std::mt19937&) {
        r.rating.q_authentic =
            r.rating.q_authentic == TriState::kNo ? TriState::kUnsure : TriState::kNo;
      },
      [](SignedRatingCard& r, std::mt19937& rng) {
        r.rating.comment += static_cast<char>('a' + rng() % 26);
      },
      [](SignedRatingCard& r, std::mt19937& rng) {
        r.rating.rater_address = Addr(absl::StrCat("y", rng() % 1000, "@example.org"));
      },
      [](SignedRatingCard& r, std::mt19937& rng) {
        r.rating.rated_at -= std::chrono::seconds(1 + rng() % 86400);
      },
      [](SignedRatingCard& r, std::mt19937& rng) { Flip(r.signature, rng); },
      // Any field of the embedded subject card, including its signature.
      [&card_mutations](SignedRatingCard& r, std::mt19937& rng) {
        card_mutations[rng() % card_mutations.size()](r.rating.subject_card, rng);
      },
  };
  int rating_cases = 0;
  for (int i = 0; i < 1100 && v.pass; ++i) {
    const auto& [address, key] = keys[i % keys.size()];
    const SignedIdentityCard subject = MakeSignedCard(address, key);
    RatingCard rating = MakeRating(subject, "rater@example.org", TriState::kYes,
                                   TriState::kUnsure, TriState::kNo);
    rating.comment = "seen";
    const SignedRatingCard original = *SignRatingCard(rating, rater);
    v.Require(VerifyRatingCard(original, rater.public_key()), "unmodified rating fails");
    SignedRatingCard mutated = original;
    rating_mutations[i % rating_mutations.size()](mutated, rng);
    v.Require(!(mutated == original), "mutation was a no-op");
    v.Require(!VerifyRatingCard(mutated, rater.public_key()),
              absl::StrCat("rating mutation ", i % rating_mutations.size(), " still verifies"));
    ++rating_cases;
  }
  if (v.pass) {
    v.detail = absl::StrCat(card_cases, " card + ", rating_cases, " rating mutations over ",
                            card_mutations.size(), "+", rating_mutations.size(),
                            " fields, all rejected");
  }
  return v;
}

// --- canonical encoding -------------------------------------------------------

// The documents behind tests/data/golden (see make_golden.py there).
IdentityCard FixtureCardA() {
  return IdentityCard{
      Addr("Zoe@Example.org"), TestKey("fixture-a").public_key(),
      AttestmentRef{AttestmentKind::kContentHash,
                    DigestHex(DigestAlgorithm::kSha256, "fixture attestment video a"),
                    ::amakey::testing::FullChecklist()},
      std::string("Zoe\xCC\x88 Ampe\xCC\x80re"), T("2026-03-01T12:00:00Z")};
}

IdentityCard FixtureCardB() {
  return IdentityCard{Addr("phone:+15550100"), TestKey("fixture-b").public_key(),
                      AttestmentRef{AttestmentKind::kHostedUrl,
                                    "https://media.example.net/attest/b.webm", {}},
                      std::nullopt, T("2026-03-02T08:30:05Z")};
}

RatingCard FixtureRating() {
  return RatingCard{TriState::kYes,
                    TriState::kUnsure,
                    TriState::kNo,
                    "Looks \"mostly\" fine\nbut audio is dubbed \xE2\x80\x94 caf\xC3\xA9",
                    Addr("+15550100"),
                    *SignIdentityCard(FixtureCardA(), TestKey("fixture-a")),
                    T("2026-03-03T00:00:59Z")};
}

// Rebuilds `j` with object keys inserted in a random order at every level.
nlohmann::ordered_json Shuffled(const nlohmann::json& j, std::mt19937& rng) {
  if (j.is_object()) {
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    std::shuffle(keys.begin(), keys.end(), rng);
    nlohmann::ordered_json out = nlohmann::ordered_json::object();
    for (const auto& k : keys) out[k] = Shuffled(j.at(k), rng);
    return out;
  }
  if (j.is_array()) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& e : j) out.push_back(Shuffled(e, rng));
    return out;
  }
  return nlohmann::ordered_json::parse(j.dump());
}

Verdict CanonicalEncoding() {
  Verdict v;
  const std::string golden_a = ReadFileOrDie(TestDataPath("golden/fixture_card_a.json"));
  const std::string golden_b = ReadFileOrDie(TestDataPath("golden/fixture_card_b.json"));
  const std::string golden_r = ReadFileOrDie(TestDataPath("golden/fixture_rating.json"));
  v.Require(*CanonicalEncode(FixtureCardA()) == golden_a, "card A differs from golden");
  v.Require(*CanonicalEncode(FixtureCardB()) == golden_b, "card B differs from golden");
  v.Require(*CanonicalEncode(FixtureRating()) == golden_r, "rating differs from golden");
  if (!v.pass) return v;

  std::mt19937 rng(1000);
  const std::vector<std::pair<std::string, nlohmann::json>> docs = {
      {golden_a, ToJson(FixtureCardA())},
      {golden_b, ToJson(FixtureCardB())},
      {golden_r, ToJson(FixtureRating())}};
  constexpr int kOrders = 1000;
  for (int i = 0; i < kOrders && v.pass; ++i) {
    const auto& [golden, structured] = docs[i % docs.size()];
    // Shuffled key order, re-read through the structured decoders.
    const std::string permuted = Shuffled(structured, rng).dump();
    const nlohmann::json reparsed = nlohmann::json::parse(permuted);
    std::string encoded;
    if (i % docs.size() == 2) {
      auto rating = RatingCardFromJson(reparsed);
      v.Require(rating.ok(), "rating decode failed");
      if (!v.pass) break;
      encoded = *CanonicalEncode(*rating);
    } else {
      auto card = IdentityCardFromJson(reparsed);
      v.Require(card.ok(), "card decode failed");
      if (!v.pass) break;
      encoded = *CanonicalEncode(*card);
    }
    v.Require(encoded == golden, absl::StrCat("construction order ", i, " changes the bytes"));

    // Field-by-field construction in a random order.
    IdentityCard built;
    std::array<std::function<void()>, 5> setters = {
        [&] { built.contact_address = Addr("phone:+15550100"); },
        [&] { built.public_key = TestKey("fixture-b").public_key(); },
        [&] {
          built.attestment.kind = AttestmentKind::kHostedUrl;
          built.attestment.value = "https://media.example.net/attest/b.webm";
        },
        [&] { built.created_at = T("2026-03-02T08:30:05Z"); },
        [&] { built.display_name.reset(); }};
    std::shuffle(setters.begin(), setters.end(), rng);
    for (auto& set : setters) set();
    v.Require(*CanonicalEncode(built) == golden_b, "field order changes the bytes");
  }
  if (v.pass) v.detail = absl::StrCat("3 golden files byte-equal; ", kOrders, " orders stable");
  return v;
}

// --- fingerprint --------------------------------------------------------------

Verdict FingerprintConformance() {
  Verdict v;
  // RFC 1321, appendix A.5.
  const std::pair<const char*, const char*> kSuite[] = {
      {"", "d41d8cd98f00b204e9800998ecf8427e"},
      {"a", "0cc175b9c0f1b6a831c399e269772661"},
      {"abc", "900150983cd24fb0d6963f7d28e17f72"},
      {"message digest", "f96b697d7cb7938d525a2f31aaf161d0"},
      {"abcdefghijklmnopqrstuvwxyz", "c3fcd3d76192e4007dfb496cca67e13b"},
      {"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789",
       "d174ab98d277d9f5a5611c2c9f419d9f"},
      {"12345678901234567890123456789012345678901234567890123456789012345678901234567890",
       "57edf4a22be3c955ac49da2e2107b67a"},
  };
  for (const auto& [input, digest] : kSuite) {
    v.Require(FingerprintOfBytes(input).hex() == digest,
              absl::StrCat("MD5(\"", input, "\") differs"));
    v.Require(Fingerprint(PublicKeyMaterial{std::string(kEd25519X25519), input}).ok() ==
                  (std::string(input).size() > 0),
              "key path accepts or rejects unexpectedly");
    if (std::string(input).size() > 0) {
      v.Require(Fingerprint(PublicKeyMaterial{std::string(kEd25519X25519), input})->hex() ==
                    digest,
                "key fingerprint is not MD5 of key bytes");
    }
  }
  const KeyFingerprint abc = *KeyFingerprint::FromHex("900150983cd24fb0d6963f7d28e17f72");
  v.Require(*FormatFingerprintGroups(abc, 4) == "9001 5098 3cd2 4fb0 d696 3f7d 28e1 7f72",
            "grouping of 4 differs");

  std::mt19937_64 rng(128);
  int round_trips = 0;
  for (int i = 0; i < 500 && v.pass; ++i) {
    std::string bytes(16, '\0');
    for (char& c : bytes) c = static_cast<char>(rng());
    const KeyFingerprint fp = *KeyFingerprint::FromHex(HexEncode(bytes));
    for (int g = kMinFingerprintGroup; g <= kMaxFingerprintGroup; ++g) {
      const std::string grouped = *FormatFingerprintGroups(fp, g);
      std::string joined;
      for (char c : grouped) {
        if (c != ' ') joined += c;
      }
      v.Require(joined == fp.hex(), "grouping changes the digits");
      auto back = UngroupFingerprint(grouped);
      v.Require(back.ok() && *back == fp, "grouped form does not round-trip");
      ++round_trips;
    }
  }
  if (v.pass) {
    v.detail = absl::StrCat("7 RFC 1321 vectors; ", round_trips, " grouped round trips");
  }
  return v;
}

// --- key derivation -------------------------------------------------------------

constexpr char kDeriveFlag[] = "--derive-public-key";
constexpr char kDerivePassphrase[] = "tr0ub4dor & 3 horses";
constexpr char kDeriveSalt[] = "amakey.v1|email:alice@example.org";

std::string DerivedPublicKeyHex() {
  ExpansionParams params;
  params.iterations = 2000;
  auto key = DeriveKeypairFromPassphrase(kDerivePassphrase, kDeriveSalt, params);
  if (!key.ok()) return "error";
  return absl::StrCat(key->algorithm(), ":", HexEncode(key->public_key().key_bytes));
}

// Derivation in a separate process of this binary.
std::string DeriveInChild(const std::string& self) {
  const std::string command = absl::StrCat("'", self, "' ", kDeriveFlag);
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return "";
  std::string out;
  char buffer[512];
  while (fgets(buffer, sizeof(buffer), pipe) != nullptr) out += buffer;
  pclose(pipe);
  if (!out.empty() && out.back() == '\n') out.pop_back();
  return out;
}

Verdict KeyDerivation(const std::string& self) {
  Verdict v;
  struct Vector {
    DigestAlgorithm digest;
    std::string password, salt;
    uint32_t iterations;
    size_t length;
    const char* hex;
  };
  // RFC 6070 (HMAC-SHA1) and RFC 7914 section 11 (HMAC-SHA256).
  const Vector kVectors[] = {
      {DigestAlgorithm::kSha1, "password", "salt", 1, 20,
       "0c60c80f961f0e71f3a9b524af6012062fe037a6"},
      {DigestAlgorithm::kSha1, "password", "salt", 2, 20,
       "ea6c014dc72d6f8ccd1ed92ace1d41f0d8de8957"},
      {DigestAlgorithm::kSha1, "password", "salt", 4096, 20,
       "4b007901b765489abead49d926f721d065a429c1"},
      {DigestAlgorithm::kSha1, "passwordPASSWORDpassword",
       "saltSALTsaltSALTsaltSALTsaltSALTsalt", 4096, 25,
       "3d2eec4fe41c849b80c8d83662c0e44a8b291a964cf2f07038"},
      {DigestAlgorithm::kSha1, std::string("pass\0word", 9), std::string("sa\0lt", 5), 4096, 16,
       "56fa6aa75548099dcc37d7f03425e0c3"},
      {DigestAlgorithm::kSha256, "passwd", "salt", 1, 64,
       "55ac046e56e3089fec1691c22544b605f94185216dde0465e68b9d57c20dacbc"
       "49ca9cccf179b645991664b39d77ef317c71b845b1e30bd509112041d3a19783"},
      {DigestAlgorithm::kSha256, "Password", "NaCl", 80000, 64,
       "4ddcd8f60b98be21830cee5ef22701f9641a4418d04c0414aeff08876b34ab56"
       "a1d425a1225833549adb841b51c9b3176a272bdebba1d078478f62b397f33c8d"},
  };
  for (const auto& t : kVectors) {
    ExpansionParams params;
    params.digest = t.digest;
    params.iterations = t.iterations;
    params.seed_length = t.length;
    auto out = ExpandPassphrase(t.password, t.salt, params);
    v.Require(out.ok() && HexEncode(*out) == t.hex,
              absl::StrCat("PBKDF2 vector c=", t.iterations, " differs"));
  }
  const std::string here = DerivedPublicKeyHex();
  v.Require(here == DerivedPublicKeyHex(), "two derivations in one run differ");
  const std::string child1 = DeriveInChild(self);
  const std::string child2 = DeriveInChild(self);
  v.Require(!child1.empty() && child1 == here && child2 == here,
            "derivation differs across processes");
  if (v.pass) v.detail = "7 PBKDF2 vectors; keypair identical in 3 processes";
  return v;
}

// --- web of trust --------------------------------------------------------------

// Plain BFS on an adjacency matrix; returns -1 for unreachable.
std::vector<int> MatrixBfs(const std::vector<std::vector<bool>>& adj, size_t from) {
  std::vector<int> dist(adj.size(), -1);
  std::deque<size_t> queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    const size_t u = queue.front();
    queue.pop_front();
    for (size_t w = 0; w < adj.size(); ++w) {
      if (adj[u][w] && dist[w] < 0) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

Verdict WotSimulation() {
  Verdict v;
  const wot::WotGraph eve = wot::BuildEveScenario();
  int min_paths = 1 << 30;
  for (absl::string_view querier : {wot::kAlice, wot::kBob}) {
    for (absl::string_view impostor : {wot::kImpostorAlice, wot::kImpostorBob}) {
      auto paths = wot::NodeDisjointPaths(eve, querier, impostor);
      v.Require(paths.ok(), "disjoint paths failed");
      if (!v.pass) return v;
      min_paths = std::min(min_paths, paths->count);
      // Each witness path must be a real path, and the set node-disjoint.
      std::set<std::string> inner;
      for (const auto& p : paths->paths) {
        v.Require(p.front() == querier && p.back() == impostor, "path endpoints wrong");
        for (size_t i = 0; i + 1 < p.size(); ++i) {
          v.Require(eve.HasEdge(*eve.IndexOf(p[i]), *eve.IndexOf(p[i + 1])),
                    "path uses a missing edge");
          if (i > 0) v.Require(inner.insert(p[i]).second, "paths share a node");
        }
      }
    }
  }
  v.Require(min_paths >= 3, absl::StrCat("only ", min_paths, " node-disjoint paths"));
  // Every key the genuine owners certified signs the impostor keys directly.
  for (const std::string& associate : wot::EveAssociates()) {
    for (absl::string_view signer : {wot::kAlice, wot::kBob}) {
      v.Require(*wot::Distance(eve, signer, associate) == 1, "associate not a direct signee");
    }
    for (absl::string_view impostor : {wot::kImpostorAlice, wot::kImpostorBob}) {
      v.Require(*wot::Distance(eve, associate, impostor) == 1,
                "signee is not 1 hop from the impostor key");
    }
  }
  if (!v.pass) return v;

  std::mt19937 rng(100);
  int graphs = 0;
  for (int trial = 0; trial < 60 && v.pass; ++trial) {
    const size_t n = 1 + rng() % 100;
    const double density = std::uniform_real_distribution<double>(0.0, 4.0 / n)(rng);
    std::bernoulli_distribution coin(std::min(1.0, density));
    wot::WotGraph g;
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n));
    for (size_t i = 0; i < n; ++i) {
      (void)g.AddNode({absl::StrCat("n", i), wot::KeyTag::kGenuine, absl::StrCat("o", i)});
    }
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        if (i != j && coin(rng)) {
          adj[i][j] = true;
          (void)g.AddEdge(absl::StrCat("n", i), absl::StrCat("n", j));
        }
      }
    }
    const wot::MsdReport report = wot::ComputeMsdReport(g);
    std::vector<int64_t> in_total(n, 0);
    std::vector<int> in_reach(n, 0);
    for (size_t i = 0; i < n && v.pass; ++i) {
      const std::vector<int> d = MatrixBfs(adj, i);
      int64_t total = 0;
      int reach = 0;
      for (size_t j = 0; j < n; ++j) {
        if (j == i || d[j] < 0) continue;
        total += d[j];
        ++reach;
        in_total[j] += d[j];
        ++in_reach[j];
      }
      const Rational expected =
          reach == 0 ? Rational() : *Rational::Create(total, reach);
      v.Require(report.outbound[i].mean == expected && report.outbound[i].reachable == reach &&
                    report.outbound[i].unreachable == static_cast<int>(n) - 1 - reach,
                absl::StrCat("outbound msd of node ", i, " in graph ", trial));
    }
    for (size_t j = 0; j < n && v.pass; ++j) {
      const Rational expected =
          in_reach[j] == 0 ? Rational() : *Rational::Create(in_total[j], in_reach[j]);
      v.Require(report.inbound[j].mean == expected && report.inbound[j].reachable == in_reach[j],
                absl::StrCat("inbound msd of node ", j, " in graph ", trial));
    }
    ++graphs;
  }
  if (v.pass) {
    v.detail = absl::StrCat("Eve: ", min_paths, " node-disjoint paths, signees 1 hop from "
                            "impostor; msd matches BFS on ", graphs, " graphs (n<=100)");
  }
  return v;
}

int RunAll(const std::string& self) {
  const std::vector<Criterion> criteria = {
      {"trust-formula-oracle", 5, TrustOracle},
      {"aggregation-oracle", 5, AggregationOracle},
      {"protocol-round-trip", 10, ProtocolRoundTrip},
      {"mitm-detection", 30, MitmDetection},
      {"adversarial-suite", 60, AdversarialSuite},
      {"signature-tamper", 0, SignatureTamper},
      {"canonical-encoding", 0, CanonicalEncoding},
      {"fingerprint-conformance", 0, FingerprintConformance},
      {"key-derivation", 0, [&self] { return KeyDerivation(self); }},
      {"wot-simulation", 10, WotSimulation},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = absl::StrCat("exception: ", e.what());
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (v.pass && c.limit_seconds > 0 && seconds >= c.limit_seconds) {
      v.pass = false;
      v.detail = absl::StrCat("took ", seconds, " s; ", v.detail);
    }
    const std::string bound =
        c.limit_seconds > 0 ? absl::StrFormat("%.3f s < %.0f s", seconds, c.limit_seconds)
                            : absl::StrFormat("%.3f s", seconds);
    std::cout << (v.pass ? "PASS " : "FAIL ") << c.name << ": " << v.detail << " [" << bound
              << "]" << std::endl;
    failures += v.pass ? 0 : 1;
  }
  std::cout << (failures == 0 ? "ALL PASS" : absl::StrCat(failures, " FAILED")) << " ("
            << criteria.size() << " criteria)" << std::endl;
  return failures == 0 ? 0 : 1;
}

}  // namespace
}  // namespace amakey::acceptance

int main(int argc, char** argv) {
  if (argc == 2 && std::string(argv[1]) == amakey::acceptance::kDeriveFlag) {
    std::cout << amakey::acceptance::DerivedPublicKeyHex() << std::endl;
    return 0;
  }
  return amakey::acceptance::RunAll(std::filesystem::read_symlink("/proc/self/exe").string());
}
