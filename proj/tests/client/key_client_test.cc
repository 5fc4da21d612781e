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

#include "amakey/client/key_client.h"

#include <filesystem>

#include "amakey/core/canonical.h"
#include "amakey/core/fingerprint.h"
#include "amakey/core/wire.h"
#include "amakey/net/protocol.h"
#include "gtest/gtest.h"
#include "testing/server_fixture.h"

namespace amakey {
namespace {

using ::amakey::testing::Addr;
using ::amakey::testing::MakeCard;
using ::amakey::testing::MakeRating;
using ::amakey::testing::MakeSignedCard;
using ::amakey::testing::ServerWorld;
using ::amakey::testing::T;
using ::amakey::testing::TestKey;
using json = nlohmann::json;

constexpr TriState Y = TriState::kYes;
constexpr TriState N = TriState::kNo;

TrustPolicy Policy(int64_t alpha, int64_t num, int64_t den) {
  return *TrustPolicy::Create(alpha, *Rational::Create(num, den));
}

std::string TempDir(absl::string_view name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("amakey-client-" + std::string(name) + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  return dir.string();
}

class KeyClientTest : public ::testing::Test {
 protected:
  // Rewrites lookup responses for `target` before they reach the client.
  using Rewrite = std::function<void(json&)>;

  ApiResponse Serve(const ApiRequest& request) {
    seen_.push_back(request);
    ApiResponse response = w_.api.Handle(request);
    if (rewrite_ && request.path == paths::kLookup &&
        request.Query("address") == rewrite_target_ && response.status == 200) {
      json body = json::parse(response.body);
      rewrite_(body);
      response.body = body.dump();
    }
    return response;
  }

  SignedIdentityCard SubjectWithRatings(int yes_raters) {
    SignedIdentityCard subject = w_.RegisterVerified("subject@example.org", subject_key_);
    for (int i = 0; i < yes_raters; ++i) {
      const std::string name = "r" + std::to_string(i) + "@example.org";
      const KeyPair key = TestKey(name);
      w_.RegisterVerified(name, key);
      w_.Rate(subject, name, key, Y, Y, Y);
    }
    return subject;
  }

  ServerWorld w_;
  const KeyPair subject_key_ = TestKey("subject");
  const LocalIdentity me_{Addr("me@example.org"), TestKey("me")};
  std::vector<ApiRequest> seen_;
  Rewrite rewrite_;
  std::string rewrite_target_ = "email:subject@example.org";
  InProcessTransport transport_{[this](const ApiRequest& r) { return Serve(r); },
                                "client-1"};
  KeyClient client_{transport_, {.identity = &me_, .clock = w_.clock.AsClock()}};
};

TEST_F(KeyClientTest, TenVerifiedYesRatingsAutoTrust) {
  SignedIdentityCard subject = SubjectWithRatings(10);
  auto report = client_.FetchAndValidate(subject.card.contact_address, Policy(5, 1, 2));
  ASSERT_TRUE(report.ok()) << report.status();
  EXPECT_EQ(report->outcome, TrustOutcome::kAutoTrusted);
  EXPECT_TRUE(report->discrepancies.empty());
  EXPECT_EQ(report->verified_rating_count, 10);
  EXPECT_EQ(report->recomputed_stats, (AggregateStats{10, 10, 0, 10, 0, 10, 0}));
  EXPECT_EQ(report->fingerprint, Fingerprint(subject_key_.public_key())->hex());
}

TEST_F(KeyClientTest, UnratedCardNeedsHumanReview) {
  SignedIdentityCard subject = SubjectWithRatings(0);
  auto report = client_.FetchAndValidate(subject.card.contact_address, Policy(0, 1, 2));
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->outcome, TrustOutcome::kNeedsHumanReview);
  ASSERT_TRUE(report->card.has_value());
  EXPECT_EQ(report->card->card.attestment, subject.card.attestment);
}

TEST_F(KeyClientTest, NotFoundAndUnreachableAreDistinct) {
  EXPECT_EQ(client_.FetchAndValidate(Addr("ghost@example.org"), Policy(0, 1, 2))
                .status()
                .code(),
            absl::StatusCode::kNotFound);
  transport_.set_reachable(false);
  EXPECT_EQ(client_.FetchAndValidate(Addr("ghost@example.org"), Policy(0, 1, 2))
                .status()
                .code(),
            absl::StatusCode::kUnavailable);
}

TEST_F(KeyClientTest, ForgedStatsAreInvalid) {
  SignedIdentityCard subject = SubjectWithRatings(3);
  rewrite_ = [](json& body) { body["stats"]["s1"] = 10; };
  auto report = client_.FetchAndValidate(subject.card.contact_address, Policy(5, 1, 2));
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->outcome, TrustOutcome::kInvalid);
  EXPECT_TRUE(HasFinding(report->discrepancies, FindingKind::kStatsMismatch));
}

TEST_F(KeyClientTest, SubstitutedKeyFailsSignature) {
  SignedIdentityCard subject = SubjectWithRatings(0);
  const KeyPair mallory = TestKey("mallory");
  rewrite_ = [&](json& body) {
    SignedIdentityCard forged = subject;
    forged.card.public_key = mallory.public_key();
    body["signed_identity_card"] = *ToWire(forged);
    body["fingerprint"] = Fingerprint(mallory.public_key())->hex();
  };
  auto report = client_.FetchAndValidate(subject.card.contact_address, Policy(0, 1, 2));
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->outcome, TrustOutcome::kInvalid);
  EXPECT_TRUE(HasFinding(report->discrepancies, FindingKind::kBadCardSignature));
}

TEST_F(KeyClientTest, FingerprintClaimIsRechecked) {
  SignedIdentityCard subject = SubjectWithRatings(0);
  rewrite_ = [](json& body) { body["fingerprint"] = std::string(32, '0'); };
  auto report = client_.FetchAndValidate(subject.card.contact_address, Policy(0, 1, 2));
  EXPECT_EQ(report->outcome, TrustOutcome::kInvalid);
  EXPECT_TRUE(HasFinding(report->discrepancies, FindingKind::kFingerprintMismatch));
}

TEST_F(KeyClientTest, CardForAnotherAddressIsInvalid) {
  SignedIdentityCard subject = SubjectWithRatings(0);
  const KeyPair other = TestKey("other");
  SignedIdentityCard other_card = w_.RegisterVerified("other@example.org", other);
  rewrite_ = [&](json& body) {
    body["signed_identity_card"] = *ToWire(other_card);
    body["fingerprint"] = Fingerprint(other.public_key())->hex();
  };
  auto report = client_.FetchAndValidate(subject.card.contact_address, Policy(0, 1, 2));
  EXPECT_EQ(report->outcome, TrustOutcome::kInvalid);
  EXPECT_TRUE(HasFinding(report->discrepancies, FindingKind::kAddressMismatch));
}

TEST_F(KeyClientTest, RatingWithBadSignatureIsExcludedAndFlagged) {
  SignedIdentityCard subject = SubjectWithRatings(6);
  rewrite_ = [](json& body) {
    std::string sig = body["ratings"][0]["signature"];
    sig[0] = sig[0] == '0' ? '1' : '0';
    body["ratings"][0]["signature"] = sig;
  };
  auto report = client_.FetchAndValidate(subject.card.contact_address, Policy(1, 1, 2));
  ASSERT_TRUE(report.ok());
  EXPECT_EQ(report->verified_rating_count, 5);
  EXPECT_TRUE(HasFinding(report->discrepancies, FindingKind::kBadRatingSignature));
  // Server stats still count it.
  EXPECT_EQ(report->outcome, TrustOutcome::kInvalid);
  EXPECT_TRUE(HasFinding(report->discrepancies, FindingKind::kStatsMismatch));
}

TEST_F(KeyClientTest, ConsistentlyForgedRatingStillBlocksAutoTrust) {
  SignedIdentityCard subject = SubjectWithRatings(6);
  // A server that also fixes up the stats gets NeedsHumanReview, never
  // AutoTrusted.
  rewrite_ = [](json& body) {
    body["ratings"][0]["signature"] = std::string(128, 'a');
    body["stats"] = {{"s1", 5}, {"s2", 5}, {"s3", 0}, {"s4", 5},
                     {"s5", 0}, {"s6", 5}, {"s7", 0}};
  };
  auto report = client_.FetchAndValidate(subject.card.contact_address, Policy(1, 1, 2));
  EXPECT_EQ(report->outcome, TrustOutcome::kNeedsHumanReview);
  EXPECT_TRUE(HasFinding(report->discrepancies, FindingKind::kBadRatingSignature));
}

TEST_F(KeyClientTest, DuplicatedRatingCountsOnce) {
  SignedIdentityCard subject = SubjectWithRatings(2);
  rewrite_ = [](json& body) {
    body["ratings"].push_back(body["ratings"][0]);
    body["stats"]["s1"] = 3;
    body["stats"]["s2"] = 3;
    body["stats"]["s4"] = 3;
    body["stats"]["s6"] = 3;
  };
  auto report = client_.FetchAndValidate(subject.card.contact_address, Policy(1, 1, 2));
  EXPECT_EQ(report->verified_rating_count, 2);
  EXPECT_TRUE(HasFinding(report->discrepancies, FindingKind::kDuplicateRater));
  EXPECT_EQ(report->outcome, TrustOutcome::kInvalid);
}

TEST_F(KeyClientTest, RatingOfOtherCardExcluded) {
  SignedIdentityCard subject = SubjectWithRatings(1);
  const KeyPair rater = TestKey("r0@example.org");
  SignedIdentityCard other = w_.RegisterVerified("other@example.org", TestKey("other"));
  SignedRatingCard foreign = *SignRatingCard(
      MakeRating(other, "r0@example.org", Y, Y, Y, w_.clock.Now()), rater);
  rewrite_ = [&](json& body) {
    body["ratings"].push_back(*ToWire(foreign));
  };
  auto report = client_.FetchAndValidate(subject.card.contact_address, Policy(0, 1, 2));
  EXPECT_TRUE(HasFinding(report->discrepancies, FindingKind::kRatingSubjectMismatch));
  EXPECT_EQ(report->verified_rating_count, 1);
}

TEST_F(KeyClientTest, RaterLookupsUseDepthOne) {
  SubjectWithRatings(3);
  seen_.clear();
  ASSERT_TRUE(client_.FetchAndValidate(Addr("subject@example.org"), Policy(0, 1, 2)).ok());
  // One subject lookup plus one per rater; raters' own ratings are not
  // followed.
  EXPECT_EQ(seen_.size(), 4u);
}

TEST_F(KeyClientTest, CacheDetectsRollbackAndKeyChange) {
  const std::string dir = TempDir("rollback");
  CardCache cache(dir, me_.key, w_.clock.AsClock());
  KeyClient cached_client(transport_, {.identity = &me_,
                                       .cache = &cache,
                                       .clock = w_.clock.AsClock()});
  SignedIdentityCard original = SubjectWithRatings(3);
  auto first = cached_client.FetchAndValidate(original.card.contact_address,
                                              Policy(1, 1, 2));
  ASSERT_EQ(first->outcome, TrustOutcome::kAutoTrusted);
  ASSERT_TRUE(cache.Get(original.card.contact_address).entry.has_value());

  // Owner rotates to a newer card; a stale server replays the old one to a
  // client whose cache already holds the new one.
  ASSERT_TRUE(cache.Put(MakeSignedCard("subject@example.org", TestKey("subject-v2"),
                                       T("2026-03-04T00:00:00Z")))
                  .ok());
  auto replayed = cached_client.FetchAndValidate(original.card.contact_address,
                                                 Policy(1, 1, 2));
  EXPECT_EQ(replayed->outcome, TrustOutcome::kInvalid);
  EXPECT_TRUE(HasFinding(replayed->discrepancies, FindingKind::kRollback));

  // The reverse: the cache holds an older card than the server.
  ASSERT_TRUE(cache.Put(MakeSignedCard("subject@example.org", TestKey("subject-v0"),
                                       T("2026-02-01T00:00:00Z")))
                  .ok());
  auto changed = cached_client.FetchAndValidate(original.card.contact_address,
                                                Policy(1, 1, 2));
  EXPECT_EQ(changed->outcome, TrustOutcome::kNeedsHumanReview);
  EXPECT_TRUE(HasFinding(changed->discrepancies, FindingKind::kKeyChanged));
  ASSERT_TRUE(cached_client.ConfirmAfterReview(*changed).ok());
  EXPECT_EQ(cache.Get(original.card.contact_address).entry->signed_card, original);
}

TEST_F(KeyClientTest, ReviewAndRateRoundTrip) {
  SignedIdentityCard subject = SubjectWithRatings(2);
  w_.RegisterVerified("me@example.org", me_.key);
  ASSERT_TRUE(client_
                  .ReviewAndRate(subject, {Y, Y, Y, "looks right"},
                                 SolveArithmeticPuzzle)
                  .ok());
  auto report = client_.FetchAndValidate(subject.card.contact_address, Policy(0, 1, 2));
  EXPECT_EQ(report->recomputed_stats.s1, 3u);
  const Rational before = *NetConfirmationRatio(report->recomputed_stats);

  const KeyPair late_key = TestKey("late");
  const LocalIdentity late{Addr("late@example.org"), late_key};
  w_.RegisterVerified("late@example.org", late_key);
  KeyClient late_client(transport_, {.identity = &late, .clock = w_.clock.AsClock()});
  ASSERT_TRUE(late_client.ReviewAndRate(subject, {N, N, N, ""}, SolveArithmeticPuzzle).ok());
  report = client_.FetchAndValidate(subject.card.contact_address, Policy(0, 1, 2));
  EXPECT_EQ(report->recomputed_stats.s1, 4u);
  EXPECT_LT(*NetConfirmationRatio(report->recomputed_stats), before);
}

TEST_F(KeyClientTest, UnsolvedChallengeRejectedVerbatim) {
  SignedIdentityCard subject = SubjectWithRatings(0);
  w_.RegisterVerified("me@example.org", me_.key);
  absl::Status status = client_.ReviewAndRate(
      subject, {Y, Y, Y, ""},
      [](absl::string_view) -> absl::StatusOr<std::string> { return "wrong"; });
  EXPECT_EQ(status.code(), absl::StatusCode::kPermissionDenied);
  EXPECT_NE(status.message().find("challenge"), std::string::npos);
}

TEST_F(KeyClientTest, RegisterConfirmAndRemoveOwnCard) {
  ASSERT_TRUE(client_.Register(MakeCard("me@example.org", me_.key)).ok());
  const std::string nonce = *w_.mailbox.LatestNonce(me_.address, NoncePurpose::kRegister);
  ASSERT_TRUE(client_.ConfirmRegistration(nonce).ok());
  EXPECT_EQ(*client_.SelfCheck(me_.address, me_.key.public_key()),
            SelfCheckResult::kClean);
  ASSERT_TRUE(client_.RemoveOwnCard().ok());
  EXPECT_EQ(*client_.SelfCheck(me_.address, me_.key.public_key()),
            SelfCheckResult::kNotRegistered);
}

TEST_F(KeyClientTest, RegisterRefusesForeignAddress) {
  EXPECT_EQ(client_.Register(MakeCard("else@example.org", me_.key)).code(),
            absl::StatusCode::kInvalidArgument);
}

TEST_F(KeyClientTest, LostKeyRemoval) {
  w_.RegisterVerified("me@example.org", TestKey("lost"));
  EXPECT_EQ(client_.RemoveOwnCard().code(), absl::StatusCode::kFailedPrecondition);
  ASSERT_TRUE(client_.BeginLostKeyRemoval(me_.address).ok());
  ASSERT_TRUE(client_
                  .ConfirmLostKeyRemoval(
                      *w_.mailbox.LatestNonce(me_.address, NoncePurpose::kRemove))
                  .ok());
  EXPECT_EQ(*client_.SelfCheck(me_.address, me_.key.public_key()),
            SelfCheckResult::kNotRegistered);
}

TEST_F(KeyClientTest, SelfCheckDetectsSubstitutionAndUsesAnonymousProfile) {
  w_.RegisterVerified("me@example.org", me_.key);
  const KeyPair mallory = TestKey("mallory");
  rewrite_target_ = "email:me@example.org";
  rewrite_ = [&](json& body) {
    body["signed_identity_card"] =
        *ToWire(MakeSignedCard("me@example.org", mallory));
  };
  seen_.clear();
  EXPECT_EQ(*client_.SelfCheck(me_.address, me_.key.public_key()),
            SelfCheckResult::kMitmDetected);
  ASSERT_EQ(seen_.size(), 1u);
  EXPECT_TRUE(seen_[0].headers.empty());
  EXPECT_EQ(seen_[0].remote_addr.rfind("anon-", 0), 0u);
}

TEST_F(KeyClientTest, IdentifiedProfileCarriesClientId) {
  seen_.clear();
  (void)client_.FetchAndValidate(Addr("ghost@example.org"), Policy(0, 1, 2));
  ASSERT_EQ(seen_.size(), 1u);
  EXPECT_EQ(seen_[0].Header("x-client-id"), "client-1");
  EXPECT_EQ(seen_[0].Header("user-agent"), kClientUserAgent);
}

TEST_F(KeyClientTest, SelfCheckTransportFailure) {
  transport_.set_reachable(false);
  EXPECT_EQ(client_.SelfCheck(me_.address, me_.key.public_key()).status().code(),
            absl::StatusCode::kUnavailable);
}

}  // namespace
}  // namespace amakey
