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

#include "amakey/core/canonical.h"

#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "amakey/core/bytes.h"
#include "amakey/core/crypto.h"
#include "amakey/core/status_macros.h"
#include "amakey/core/text.h"

namespace amakey {
namespace {

using nlohmann::json;

absl::StatusOr<json> Normalize(const json& value) {
  switch (value.type()) {
    case json::value_t::null:
    case json::value_t::boolean:
    case json::value_t::number_integer:
    case json::value_t::number_unsigned:
      return value;
    case json::value_t::string: {
      AMAKEY_ASSIGN_OR_RETURN(std::string s,
                              NormalizeNfc(value.get_ref<const std::string&>()));
      return json(std::move(s));
    }
    case json::value_t::array: {
      json out = json::array();
      for (const auto& item : value) {
        AMAKEY_ASSIGN_OR_RETURN(json n, Normalize(item));
        out.push_back(std::move(n));
      }
      return out;
    }
    case json::value_t::object: {
      json out = json::object();
      for (const auto& [key, item] : value.items()) {
        AMAKEY_ASSIGN_OR_RETURN(std::string k, NormalizeNfc(key));
        AMAKEY_ASSIGN_OR_RETURN(json n, Normalize(item));
        if (out.contains(k)) {
          return absl::InvalidArgumentError(
              "object keys collide after normalization");
        }
        out[k] = std::move(n);
      }
      return out;
    }
    default:
      return absl::InvalidArgumentError(
          "canonical form admits no floating-point or binary values");
  }
}

absl::Status ExpectType(const json& j, absl::string_view type) {
  AMAKEY_ASSIGN_OR_RETURN(std::string actual, GetString(j, "type"));
  if (actual != type) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected document type ", type, ", got ", actual));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::string> GetHex(const json& j, absl::string_view key) {
  AMAKEY_ASSIGN_OR_RETURN(std::string hex, GetString(j, key));
  return HexDecode(hex);
}

absl::StatusOr<Timestamp> GetTimestamp(const json& j, absl::string_view key) {
  AMAKEY_ASSIGN_OR_RETURN(std::string text, GetString(j, key));
  return ParseRfc3339(text);
}

absl::StatusOr<TriState> GetTriState(const json& j, absl::string_view key) {
  AMAKEY_ASSIGN_OR_RETURN(std::string text, GetString(j, key));
  // Short forms are for humans; the wire spells answers out.
  if (text != "yes" && text != "no" && text != "unsure") {
    return absl::InvalidArgumentError(
        absl::StrCat("answer '", key, "' must be yes, no or unsure"));
  }
  return ParseTriState(text);
}

json ChecklistToJson(const GuidelineChecklist& c) {
  return json{{"single_take", c.single_take},
              {"id_shown", c.id_shown},
              {"spoken_in_groups", c.spoken_in_groups},
              {"background_audio", c.background_audio},
              {"visual_hash_shown", c.visual_hash_shown},
              {"card_rotated_or_glass_written", c.card_rotated_or_glass_written},
              {"horizontally_flipped", c.horizontally_flipped}};
}

absl::StatusOr<GuidelineChecklist> ChecklistFromJson(const json& j) {
  GuidelineChecklist c;
  AMAKEY_ASSIGN_OR_RETURN(c.single_take, GetBool(j, "single_take"));
  AMAKEY_ASSIGN_OR_RETURN(c.id_shown, GetBool(j, "id_shown"));
  AMAKEY_ASSIGN_OR_RETURN(c.spoken_in_groups, GetBool(j, "spoken_in_groups"));
  AMAKEY_ASSIGN_OR_RETURN(c.background_audio, GetBool(j, "background_audio"));
  AMAKEY_ASSIGN_OR_RETURN(c.visual_hash_shown, GetBool(j, "visual_hash_shown"));
  AMAKEY_ASSIGN_OR_RETURN(c.card_rotated_or_glass_written,
                          GetBool(j, "card_rotated_or_glass_written"));
  AMAKEY_ASSIGN_OR_RETURN(c.horizontally_flipped,
                          GetBool(j, "horizontally_flipped"));
  return c;
}

template <typename T, typename Decode>
absl::StatusOr<T> DecodeStrict(absl::string_view bytes, Decode decode) {
  AMAKEY_ASSIGN_OR_RETURN(json j, ParseJson(bytes));
  AMAKEY_ASSIGN_OR_RETURN(T value, decode(j));
  AMAKEY_ASSIGN_OR_RETURN(std::string again, CanonicalEncode(value));
  if (again != bytes) {
    return absl::InvalidArgumentError("payload is not in canonical form");
  }
  return value;
}

}  // namespace

absl::StatusOr<std::string> GetString(const json& j, absl::string_view key) {
  if (!j.is_object()) return absl::InvalidArgumentError("expected an object");
  const auto it = j.find(std::string(key));
  if (it == j.end() || !it->is_string()) {
    return absl::InvalidArgumentError(
        absl::StrCat("missing string field '", key, "'"));
  }
  return it->get<std::string>();
}

absl::StatusOr<bool> GetBool(const json& j, absl::string_view key) {
  if (!j.is_object()) return absl::InvalidArgumentError("expected an object");
  const auto it = j.find(std::string(key));
  if (it == j.end() || !it->is_boolean()) {
    return absl::InvalidArgumentError(
        absl::StrCat("missing boolean field '", key, "'"));
  }
  return it->get<bool>();
}

absl::StatusOr<int64_t> GetInt(const json& j, absl::string_view key) {
  if (!j.is_object()) return absl::InvalidArgumentError("expected an object");
  const auto it = j.find(std::string(key));
  if (it == j.end() || !it->is_number_integer()) {
    return absl::InvalidArgumentError(
        absl::StrCat("missing integer field '", key, "'"));
  }
  return it->get<int64_t>();
}

absl::StatusOr<const json*> GetObject(const json& j, absl::string_view key) {
  if (!j.is_object()) return absl::InvalidArgumentError("expected an object");
  const auto it = j.find(std::string(key));
  if (it == j.end() || !it->is_object()) {
    return absl::InvalidArgumentError(
        absl::StrCat("missing object field '", key, "'"));
  }
  return &*it;
}

absl::StatusOr<json> ParseJson(absl::string_view text) {
  if (!IsValidUtf8(text)) return absl::InvalidArgumentError("invalid UTF-8");
  json j = json::parse(text.begin(), text.end(), nullptr,
                       /*allow_exceptions=*/false);
  if (j.is_discarded()) return absl::InvalidArgumentError("malformed JSON");
  return j;
}

absl::StatusOr<std::string> CanonicalJson(const json& value) {
  AMAKEY_ASSIGN_OR_RETURN(json normalized, Normalize(value));
  return normalized.dump(-1, ' ', /*ensure_ascii=*/false,
                         json::error_handler_t::strict);
}

json AddressToJson(const ContactAddress& address) {
  return json{{"scheme", std::string(AddressSchemeName(address.scheme()))},
              {"value", address.value()}};
}

absl::StatusOr<ContactAddress> AddressFromJson(const json& j) {
  AMAKEY_ASSIGN_OR_RETURN(std::string scheme_name, GetString(j, "scheme"));
  AMAKEY_ASSIGN_OR_RETURN(std::string value, GetString(j, "value"));
  AMAKEY_ASSIGN_OR_RETURN(AddressScheme scheme, ParseAddressScheme(scheme_name));
  AMAKEY_ASSIGN_OR_RETURN(ContactAddress address,
                          ContactAddress::Create(scheme, value));
  if (address.value() != value) {
    return absl::InvalidArgumentError("contact address is not normalized");
  }
  return address;
}

json ToJson(const IdentityCard& card) {
  json j{{"type", std::string(kIdentityCardType)},
         {"contact_address", AddressToJson(card.contact_address)},
         {"public_key",
          {{"algorithm", card.public_key.algorithm},
           {"key_bytes", HexEncode(card.public_key.key_bytes)}}},
         {"attestment",
          {{"kind", std::string(AttestmentKindName(card.attestment.kind))},
           {"value", card.attestment.value},
           {"checklist", ChecklistToJson(card.attestment.checklist)}}},
         {"created_at", FormatRfc3339(card.created_at)}};
  if (card.display_name.has_value()) j["display_name"] = *card.display_name;
  return j;
}

json ToJson(const SignedIdentityCard& signed_card) {
  return json{{"card", ToJson(signed_card.card)},
              {"signature", HexEncode(signed_card.signature)}};
}

json ToJson(const RatingCard& rating) {
  return json{
      {"type", std::string(kRatingCardType)},
      {"answers",
       {{"identity", std::string(TriStateName(rating.q_identity))},
        {"hash_match", std::string(TriStateName(rating.q_hash_match))},
        {"authentic", std::string(TriStateName(rating.q_authentic))}}},
      {"comment", rating.comment},
      {"rater_address", AddressToJson(rating.rater_address)},
      {"subject_card", ToJson(rating.subject_card)},
      {"rated_at", FormatRfc3339(rating.rated_at)}};
}

json ToJson(const RemovalRequest& request) {
  return json{{"type", std::string(kRemovalRequestType)},
              {"address", AddressToJson(request.address)},
              {"card_digest", request.card_digest},
              {"requested_at", FormatRfc3339(request.requested_at)}};
}

absl::StatusOr<IdentityCard> IdentityCardFromJson(const json& j) {
  AMAKEY_RETURN_IF_ERROR(ExpectType(j, kIdentityCardType));
  AMAKEY_ASSIGN_OR_RETURN(const json* address_json,
                          GetObject(j, "contact_address"));
  AMAKEY_ASSIGN_OR_RETURN(ContactAddress address, AddressFromJson(*address_json));
  AMAKEY_ASSIGN_OR_RETURN(const json* key_json, GetObject(j, "public_key"));
  PublicKeyMaterial key;
  AMAKEY_ASSIGN_OR_RETURN(key.algorithm, GetString(*key_json, "algorithm"));
  AMAKEY_ASSIGN_OR_RETURN(key.key_bytes, GetHex(*key_json, "key_bytes"));
  AMAKEY_ASSIGN_OR_RETURN(const json* att_json, GetObject(j, "attestment"));
  AttestmentRef attestment;
  AMAKEY_ASSIGN_OR_RETURN(std::string kind, GetString(*att_json, "kind"));
  AMAKEY_ASSIGN_OR_RETURN(attestment.kind, ParseAttestmentKind(kind));
  AMAKEY_ASSIGN_OR_RETURN(attestment.value, GetString(*att_json, "value"));
  AMAKEY_ASSIGN_OR_RETURN(const json* checklist_json,
                          GetObject(*att_json, "checklist"));
  AMAKEY_ASSIGN_OR_RETURN(attestment.checklist,
                          ChecklistFromJson(*checklist_json));
  AMAKEY_ASSIGN_OR_RETURN(Timestamp created_at, GetTimestamp(j, "created_at"));
  std::optional<std::string> display_name;
  if (j.contains("display_name")) {
    AMAKEY_ASSIGN_OR_RETURN(display_name, GetString(j, "display_name"));
  }
  IdentityCard card{std::move(address), std::move(key), std::move(attestment),
                    std::move(display_name), created_at};
  AMAKEY_RETURN_IF_ERROR(ValidateIdentityCard(card));
  return card;
}

absl::StatusOr<SignedIdentityCard> SignedIdentityCardFromJson(const json& j) {
  AMAKEY_ASSIGN_OR_RETURN(const json* card_json, GetObject(j, "card"));
  AMAKEY_ASSIGN_OR_RETURN(IdentityCard card, IdentityCardFromJson(*card_json));
  AMAKEY_ASSIGN_OR_RETURN(std::string signature, GetHex(j, "signature"));
  return SignedIdentityCard{std::move(card), std::move(signature)};
}

absl::StatusOr<RatingCard> RatingCardFromJson(const json& j) {
  AMAKEY_RETURN_IF_ERROR(ExpectType(j, kRatingCardType));
  AMAKEY_ASSIGN_OR_RETURN(const json* answers, GetObject(j, "answers"));
  AMAKEY_ASSIGN_OR_RETURN(TriState identity, GetTriState(*answers, "identity"));
  AMAKEY_ASSIGN_OR_RETURN(TriState hash_match,
                          GetTriState(*answers, "hash_match"));
  AMAKEY_ASSIGN_OR_RETURN(TriState authentic, GetTriState(*answers, "authentic"));
  AMAKEY_ASSIGN_OR_RETURN(std::string comment, GetString(j, "comment"));
  AMAKEY_ASSIGN_OR_RETURN(const json* rater_json, GetObject(j, "rater_address"));
  AMAKEY_ASSIGN_OR_RETURN(ContactAddress rater, AddressFromJson(*rater_json));
  AMAKEY_ASSIGN_OR_RETURN(const json* subject_json, GetObject(j, "subject_card"));
  AMAKEY_ASSIGN_OR_RETURN(SignedIdentityCard subject,
                          SignedIdentityCardFromJson(*subject_json));
  AMAKEY_ASSIGN_OR_RETURN(Timestamp rated_at, GetTimestamp(j, "rated_at"));
  RatingCard rating{identity,         hash_match,         authentic,
                    std::move(comment), std::move(rater), std::move(subject),
                    rated_at};
  AMAKEY_RETURN_IF_ERROR(ValidateRatingCard(rating));
  return rating;
}

absl::StatusOr<RemovalRequest> RemovalRequestFromJson(const json& j) {
  AMAKEY_RETURN_IF_ERROR(ExpectType(j, kRemovalRequestType));
  AMAKEY_ASSIGN_OR_RETURN(const json* address_json, GetObject(j, "address"));
  AMAKEY_ASSIGN_OR_RETURN(ContactAddress address, AddressFromJson(*address_json));
  AMAKEY_ASSIGN_OR_RETURN(std::string digest, GetString(j, "card_digest"));
  AMAKEY_ASSIGN_OR_RETURN(Timestamp requested_at,
                          GetTimestamp(j, "requested_at"));
  RemovalRequest request{std::move(address), std::move(digest), requested_at};
  AMAKEY_RETURN_IF_ERROR(ValidateRemovalRequest(request));
  return request;
}

absl::StatusOr<std::string> CanonicalEncode(const IdentityCard& card) {
  AMAKEY_RETURN_IF_ERROR(ValidateIdentityCard(card));
  return CanonicalJson(ToJson(card));
}

absl::StatusOr<std::string> CanonicalEncode(const RatingCard& rating) {
  AMAKEY_RETURN_IF_ERROR(ValidateRatingCard(rating));
  return CanonicalJson(ToJson(rating));
}

absl::StatusOr<std::string> CanonicalEncode(const RemovalRequest& request) {
  AMAKEY_RETURN_IF_ERROR(ValidateRemovalRequest(request));
  return CanonicalJson(ToJson(request));
}

absl::StatusOr<IdentityCard> DecodeIdentityCard(absl::string_view bytes) {
  return DecodeStrict<IdentityCard>(bytes, IdentityCardFromJson);
}

absl::StatusOr<RatingCard> DecodeRatingCard(absl::string_view bytes) {
  return DecodeStrict<RatingCard>(bytes, RatingCardFromJson);
}

absl::StatusOr<RemovalRequest> DecodeRemovalRequest(absl::string_view bytes) {
  return DecodeStrict<RemovalRequest>(bytes, RemovalRequestFromJson);
}

absl::StatusOr<std::string> CardDigest(const IdentityCard& card) {
  AMAKEY_ASSIGN_OR_RETURN(std::string bytes, CanonicalEncode(card));
  return DigestHex(DigestAlgorithm::kSha256, bytes);
}

}  // namespace amakey
