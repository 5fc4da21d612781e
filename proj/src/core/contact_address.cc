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

#include "amakey/core/contact_address.h"

#include <unicode/locid.h>
#include <unicode/unistr.h>

#include <string>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/strip.h"
#include "amakey/core/status_macros.h"
#include "amakey/core/text.h"

namespace amakey {
namespace {

constexpr absl::string_view kListSeparators = ",;<>\"";

std::string UnicodeLower(absl::string_view text) {
  icu::UnicodeString s = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
  s.toLower(icu::Locale::getRoot());
  std::string out;
  s.toUTF8String(out);
  return out;
}

bool HasWhitespaceOrSeparator(absl::string_view text) {
  for (char c : text) {
    if (absl::ascii_isspace(static_cast<unsigned char>(c)) ||
        absl::ascii_iscntrl(static_cast<unsigned char>(c)) ||
        kListSeparators.find(c) != absl::string_view::npos) {
      return true;
    }
  }
  return false;
}

bool LooksLikePhone(absl::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (!absl::ascii_isdigit(static_cast<unsigned char>(c)) &&
        absl::string_view("+ -().").find(c) == absl::string_view::npos) {
      return false;
    }
  }
  return true;
}

}  // namespace

absl::string_view AddressSchemeName(AddressScheme scheme) {
  switch (scheme) {
    case AddressScheme::kEmail:
      return "email";
    case AddressScheme::kPhone:
      return "phone";
    case AddressScheme::kOtherId:
      return "other-id";
  }
  return "unknown";
}

absl::StatusOr<AddressScheme> ParseAddressScheme(absl::string_view name) {
  if (name == "email") return AddressScheme::kEmail;
  if (name == "phone") return AddressScheme::kPhone;
  if (name == "other-id" || name == "id") return AddressScheme::kOtherId;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown address scheme '", name, "'"));
}

absl::StatusOr<std::string> NormalizeAddressValue(AddressScheme scheme,
                                                  absl::string_view raw) {
  AMAKEY_ASSIGN_OR_RETURN(std::string nfc, NormalizeNfc(raw));
  std::string value =
      UnicodeLower(absl::StripAsciiWhitespace(absl::string_view(nfc)));
  if (value.empty()) return absl::InvalidArgumentError("empty address");

  switch (scheme) {
    case AddressScheme::kEmail: {
      if (HasWhitespaceOrSeparator(value)) {
        return absl::InvalidArgumentError(
            "email address contains whitespace or list separators");
      }
      const size_t at = value.find('@');
      if (at == std::string::npos || value.find('@', at + 1) != std::string::npos) {
        return absl::InvalidArgumentError(
            "email address must contain exactly one '@'");
      }
      if (at == 0 || at + 1 == value.size()) {
        return absl::InvalidArgumentError("email local part or domain is empty");
      }
      return value;
    }
    case AddressScheme::kPhone: {
      if (!LooksLikePhone(value)) {
        return absl::InvalidArgumentError("phone number has invalid characters");
      }
      std::string digits;
      for (size_t i = 0; i < value.size(); ++i) {
        const char c = value[i];
        if (c == '+') {
          if (!digits.empty()) {
            return absl::InvalidArgumentError("'+' only allowed as a prefix");
          }
          digits.push_back(c);
        } else if (absl::ascii_isdigit(static_cast<unsigned char>(c))) {
          digits.push_back(c);
        }
      }
      const size_t n = digits.size() - (absl::StartsWith(digits, "+") ? 1 : 0);
      if (n < 3 || n > 20) {
        return absl::InvalidArgumentError("phone number must have 3-20 digits");
      }
      return digits;
    }
    case AddressScheme::kOtherId:
      if (HasWhitespaceOrSeparator(value)) {
        return absl::InvalidArgumentError(
            "identifier contains whitespace or list separators");
      }
      return value;
  }
  return absl::InvalidArgumentError("unknown scheme");
}

absl::StatusOr<ContactAddress> ContactAddress::Create(AddressScheme scheme,
                                                      absl::string_view raw) {
  AMAKEY_ASSIGN_OR_RETURN(std::string value, NormalizeAddressValue(scheme, raw));
  return ContactAddress(scheme, std::move(value));
}

absl::StatusOr<ContactAddress> ContactAddress::Parse(absl::string_view text) {
  text = absl::StripAsciiWhitespace(text);
  for (absl::string_view prefix : {"email:", "phone:", "other-id:", "id:"}) {
    if (absl::StartsWithIgnoreCase(text, prefix)) {
      AMAKEY_ASSIGN_OR_RETURN(
          AddressScheme scheme,
          ParseAddressScheme(absl::AsciiStrToLower(
              prefix.substr(0, prefix.size() - 1))));
      return Create(scheme, text.substr(prefix.size()));
    }
  }
  if (absl::StrContains(text, '@')) return Create(AddressScheme::kEmail, text);
  if (LooksLikePhone(text)) return Create(AddressScheme::kPhone, text);
  return absl::InvalidArgumentError(absl::StrCat(
      "cannot infer address scheme for '", text,
      "'; prefix it with email:, phone: or id:"));
}

std::string ContactAddress::ToString() const {
  return absl::StrCat(AddressSchemeName(scheme_), ":", value_);
}

}  // namespace amakey
