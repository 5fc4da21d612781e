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

#include "amakey/server/store.h"

#include <filesystem>
#include <fstream>

#include "amakey/server/file_store.h"
#include "gtest/gtest.h"
#include "testing/fixtures.h"

namespace amakey {
namespace {

using ::amakey::testing::Addr;
using ::amakey::testing::MakeRating;
using ::amakey::testing::MakeSignedCard;
using ::amakey::testing::T;
using ::amakey::testing::TestKey;

RegistrationRecord Verified(absl::string_view address, absl::string_view seed) {
  return RegistrationRecord{MakeSignedCard(address, TestKey(seed)),
                            RegistrationState::kVerified, std::nullopt,
                            T("2026-03-01T12:00:00Z"), T("2026-03-01T12:05:00Z")};
}

StoredRating RatingOf(const RegistrationRecord& subject, absl::string_view rater,
                      absl::string_view seed, Timestamp at) {
  return StoredRating{
      *SignRatingCard(MakeRating(subject.signed_card, rater, TriState::kYes,
                                 TriState::kNo, TriState::kUnsure, at),
                      TestKey(seed)),
      at};
}

std::string TempDir(absl::string_view name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("amakey-store-" + std::string(name) + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  return dir.string();
}

// Drives the same mutations through any Store.
void Populate(Store& store) {
  RegistrationRecord a = Verified("a@example.org", "a");
  RegistrationRecord b = Verified("b@example.org", "b");
  RegistrationRecord pending{MakeSignedCard("p@example.org", TestKey("p")),
                             RegistrationState::kPending,
                             Nonce{std::string(32, 'a'), T("2026-03-01T00:00:00Z"),
                                   NoncePurpose::kRegister},
                             T("2026-03-01T00:00:00Z"), std::nullopt};
  ASSERT_TRUE(store.PutRecord(a).ok());
  ASSERT_TRUE(store.PutRecord(b).ok());
  ASSERT_TRUE(store.PutRecord(pending).ok());
  ASSERT_TRUE(store.PutRating(RatingOf(a, "b@example.org", "b", T("2026-03-02T00:00:00Z"))).ok());
  ASSERT_TRUE(store.PutRating(RatingOf(b, "a@example.org", "a", T("2026-03-02T00:00:00Z"))).ok());
  ASSERT_TRUE(store
                  .PutRemovalTicket(RemovalTicket{
                      a.address(), Nonce{std::string(32, 'b'),
                                         T("2026-03-03T00:00:00Z"),
                                         NoncePurpose::kRemove}})
                  .ok());
}

TEST(InMemoryStoreTest, IndexesPendingNoncesAndTickets) {
  InMemoryStore store;
  Populate(store);
  EXPECT_EQ(store.FindPendingNonce(std::string(32, 'a')), Addr("p@example.org"));
  EXPECT_FALSE(store.FindPendingNonce(std::string(32, 'b')).has_value());
  ASSERT_TRUE(store.GetRemovalTicket(std::string(32, 'b')).has_value());
  EXPECT_EQ(store.RatingsFor(Addr("a@example.org")).size(), 1u);
}

TEST(InMemoryStoreTest, RatingUpsertIsPerRater) {
  InMemoryStore store;
  RegistrationRecord a = Verified("a@example.org", "a");
  ASSERT_TRUE(store.PutRecord(a).ok());
  ASSERT_TRUE(store.PutRating(RatingOf(a, "b@example.org", "b", T("2026-03-02T00:00:00Z"))).ok());
  ASSERT_TRUE(store.PutRating(RatingOf(a, "b@example.org", "b", T("2026-03-03T00:00:00Z"))).ok());
  ASSERT_TRUE(store.PutRating(RatingOf(a, "c@example.org", "c", T("2026-03-01T00:00:00Z"))).ok());
  auto ratings = store.RatingsFor(a.address());
  ASSERT_EQ(ratings.size(), 2u);
  EXPECT_EQ(ratings[0].rater(), Addr("c@example.org"));
  EXPECT_EQ(ratings[1].signed_rating.rating.rated_at, T("2026-03-03T00:00:00Z"));
}

TEST(InMemoryStoreTest, DeleteAddressCascades) {
  InMemoryStore store;
  Populate(store);
  ASSERT_TRUE(store.DeleteAddress(Addr("a@example.org")).ok());
  EXPECT_FALSE(store.GetRecord(Addr("a@example.org")).has_value());
  EXPECT_TRUE(store.RatingsFor(Addr("a@example.org")).empty());
  EXPECT_TRUE(store.RatingsFor(Addr("b@example.org")).empty());
  EXPECT_FALSE(store.GetRemovalTicket(std::string(32, 'b')).has_value());
  EXPECT_TRUE(store.GetRecord(Addr("b@example.org")).has_value());
}

TEST(InMemoryStoreTest, ExportImportRoundTrip) {
  InMemoryStore store;
  Populate(store);
  InMemoryStore copy;
  ASSERT_TRUE(copy.ImportState(store.ExportState()).ok());
  EXPECT_EQ(copy.ExportState(), store.ExportState());
  EXPECT_EQ(copy.FindPendingNonce(std::string(32, 'a')), Addr("p@example.org"));
}

TEST(FileStoreTest, ReopenReplaysLog) {
  const std::string dir = TempDir("replay");
  nlohmann::json expected;
  {
    auto store = FileStore::Open(dir);
    ASSERT_TRUE(store.ok()) << store.status();
    Populate(**store);
    ASSERT_TRUE((*store)->DeleteAddress(Addr("b@example.org")).ok());
    expected = (*store)->ExportState();
    EXPECT_EQ((*store)->log_entries(), 7u);
  }
  auto reopened = FileStore::Open(dir);
  ASSERT_TRUE(reopened.ok()) << reopened.status();
  EXPECT_EQ((*reopened)->ExportState(), expected);
}

TEST(FileStoreTest, CompactionPreservesStateAndTruncatesLog) {
  const std::string dir = TempDir("compact");
  nlohmann::json expected;
  {
    auto store = FileStore::Open(dir);
    ASSERT_TRUE(store.ok());
    Populate(**store);
    ASSERT_TRUE((*store)->Compact().ok());
    EXPECT_EQ((*store)->log_entries(), 0u);
    ASSERT_TRUE((*store)->DeleteRemovalTicket(std::string(32, 'b')).ok());
    expected = (*store)->ExportState();
  }
  EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(dir) / "snapshot.json"));
  auto reopened = FileStore::Open(dir);
  ASSERT_TRUE(reopened.ok());
  EXPECT_EQ((*reopened)->ExportState(), expected);
  EXPECT_EQ((*reopened)->log_entries(), 1u);
}

TEST(FileStoreTest, TornFinalLineIsDiscarded) {
  const std::string dir = TempDir("torn");
  nlohmann::json expected;
  {
    auto store = FileStore::Open(dir);
    ASSERT_TRUE(store.ok());
    Populate(**store);
    expected = (*store)->ExportState();
  }
  {
    std::ofstream log(std::filesystem::path(dir) / "log.jsonl", std::ios::app);
    log << R"({"op":"delete_address","addr)";
  }
  auto reopened = FileStore::Open(dir);
  ASSERT_TRUE(reopened.ok()) << reopened.status();
  EXPECT_EQ((*reopened)->ExportState(), expected);
  // The torn bytes are gone, so new appends land on a clean line.
  ASSERT_TRUE((*reopened)->DeleteAddress(Addr("a@example.org")).ok());
  expected = (*reopened)->ExportState();
  reopened->reset();
  auto again = FileStore::Open(dir);
  ASSERT_TRUE(again.ok()) << again.status();
  EXPECT_EQ((*again)->ExportState(), expected);
}

TEST(FileStoreTest, CorruptionInsideLogIsAnError) {
  const std::string dir = TempDir("corrupt");
  {
    auto store = FileStore::Open(dir);
    ASSERT_TRUE(store.ok());
    Populate(**store);
  }
  {
    std::ofstream log(std::filesystem::path(dir) / "log.jsonl", std::ios::app);
    log << "garbage\n" << R"({"op":"delete_ticket","nonce":"x"})" << "\n";
  }
  EXPECT_EQ(FileStore::Open(dir).status().code(), absl::StatusCode::kDataLoss);
}

}  // namespace
}  // namespace amakey
