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

#include "amakey/client/card_cache.h"

#include <filesystem>
#include <fstream>
#include <thread>

#include "gtest/gtest.h"
#include "testing/fixtures.h"

namespace amakey {
namespace {

using ::amakey::testing::Addr;
using ::amakey::testing::MakeSignedCard;
using ::amakey::testing::T;
using ::amakey::testing::TestKey;

class CardCacheTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = (std::filesystem::temp_directory_path() /
            ("amakey-cache-" + std::to_string(::getpid()) + "-" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name()))
               .string();
    std::filesystem::remove_all(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string ReadAll(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  }
  void WriteAll(const std::string& path, const std::string& bytes) {
    std::ofstream(path, std::ios::binary | std::ios::trunc) << bytes;
  }

  std::string dir_;
  const KeyPair owner_ = TestKey("cache-owner");
  ManualClock clock_{T("2026-03-05T00:00:00Z")};
  const SignedIdentityCard card_ = MakeSignedCard("bob@example.org", TestKey("bob"));
};

TEST_F(CardCacheTest, PutThenGet) {
  CardCache cache(dir_, owner_, clock_.AsClock());
  EXPECT_FALSE(cache.Get(card_.card.contact_address).entry.has_value());
  auto put = cache.Put(card_);
  ASSERT_TRUE(put.ok()) << put.status();
  CacheLookup got = cache.Get(card_.card.contact_address);
  ASSERT_TRUE(got.entry.has_value());
  EXPECT_FALSE(got.tamper.has_value());
  EXPECT_EQ(*got.entry, *put);
  EXPECT_EQ(got.entry->cached_at, clock_.Now());
  EXPECT_EQ(ReadAll(cache.PathFor(card_.card.contact_address)), *EncodeCacheEntry(*put));
}

TEST_F(CardCacheTest, AbsentAddressIsNotTamper) {
  CardCache cache(dir_, owner_, clock_.AsClock());
  CacheLookup got = cache.Get(Addr("nobody@example.org"));
  EXPECT_FALSE(got.entry.has_value());
  EXPECT_FALSE(got.tamper.has_value());
}

TEST_F(CardCacheTest, SwappedKeyIsTamper) {
  CardCache cache(dir_, owner_, clock_.AsClock());
  ASSERT_TRUE(cache.Put(card_).ok());
  // An attacker with file access writes a self-consistent card with their key
  // but cannot produce the owner's counter-signature.
  const SignedIdentityCard forged = MakeSignedCard("bob@example.org", TestKey("mallory"));
  const KeyPair attacker = TestKey("attacker");
  CardCache attacker_view(dir_, attacker, clock_.AsClock());
  ASSERT_TRUE(attacker_view.Put(forged).ok());

  CacheLookup got = cache.Get(card_.card.contact_address);
  EXPECT_FALSE(got.entry.has_value());
  ASSERT_TRUE(got.tamper.has_value());
  EXPECT_EQ(got.tamper->kind, FindingKind::kCacheTampered);
}

TEST_F(CardCacheTest, EverySingleBitFlipIsDetected) {
  CardCache cache(dir_, owner_, clock_.AsClock());
  ASSERT_TRUE(cache.Put(card_).ok());
  const std::string path = cache.PathFor(card_.card.contact_address);
  const std::string original = ReadAll(path);
  int checked = 0;
  for (size_t i = 0; i < original.size(); ++i) {
    for (int bit = 0; bit < 8; ++bit) {
      std::string mutated = original;
      mutated[i] = static_cast<char>(mutated[i] ^ (1 << bit));
      WriteAll(path, mutated);
      CacheLookup got = cache.Get(card_.card.contact_address);
      ASSERT_FALSE(got.entry.has_value()) << "byte " << i << " bit " << bit;
      ASSERT_TRUE(got.tamper.has_value());
      ++checked;
    }
  }
  EXPECT_GE(checked, 1000);
  WriteAll(path, original);
  EXPECT_TRUE(cache.Get(card_.card.contact_address).entry.has_value());
}

TEST_F(CardCacheTest, EntryUnderWrongAddressIsTamper) {
  CardCache cache(dir_, owner_, clock_.AsClock());
  const SignedIdentityCard carol = MakeSignedCard("carol@example.org", TestKey("carol"));
  ASSERT_TRUE(cache.Put(carol).ok());
  std::filesystem::create_directories(dir_);
  std::filesystem::copy_file(cache.PathFor(carol.card.contact_address),
                             cache.PathFor(card_.card.contact_address));
  CacheLookup got = cache.Get(card_.card.contact_address);
  EXPECT_FALSE(got.entry.has_value());
  EXPECT_TRUE(got.tamper.has_value());
}

TEST_F(CardCacheTest, RemoveDeletesEntry) {
  CardCache cache(dir_, owner_, clock_.AsClock());
  ASSERT_TRUE(cache.Put(card_).ok());
  ASSERT_TRUE(cache.Remove(card_.card.contact_address).ok());
  EXPECT_FALSE(cache.Get(card_.card.contact_address).entry.has_value());
  EXPECT_TRUE(cache.Remove(card_.card.contact_address).ok());
}

TEST_F(CardCacheTest, ConcurrentWritersLeaveOneValidEntry) {
  const SignedIdentityCard v1 = card_;
  const SignedIdentityCard v2 =
      MakeSignedCard("bob@example.org", TestKey("bob-2"), T("2026-03-02T00:00:00Z"));
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      CardCache session(dir_, owner_, SystemClock());
      for (int i = 0; i < 25; ++i) {
        ASSERT_TRUE(session.Put(t % 2 ? v1 : v2).ok());
        CacheLookup got = session.Get(v1.card.contact_address);
        ASSERT_TRUE(got.entry.has_value());
        ASSERT_TRUE(got.entry->signed_card == v1 || got.entry->signed_card == v2);
      }
    });
  }
  for (auto& t : threads) t.join();
  size_t files = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir_)) {
    (void)e;
    ++files;
  }
  EXPECT_EQ(files, 1u);
}

}  // namespace
}  // namespace amakey
