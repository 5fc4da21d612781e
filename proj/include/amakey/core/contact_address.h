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

#ifndef AMAKEY_CORE_CONTACT_ADDRESS_H_
#define AMAKEY_CORE_CONTACT_ADDRESS_H_

#include <compare>
#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace amakey {

enum class AddressScheme { kEmail, kPhone, kOtherId };

absl::string_view AddressSchemeName(AddressScheme scheme);
absl::StatusOr<AddressScheme> ParseAddressScheme(absl::string_view name);

// One reachable identifier (email, phone number, or another account id) in
// normalized form. Normalization lowercases and trims; phone numbers also lose
// their punctuation. Two addresses are equal iff their normalized forms match.
class ContactAddress {
 public:
  // Empty placeholder so records can be default-constructed; it fails every
  // validation.
  ContactAddress() = default;

  static absl::StatusOr<ContactAddress> Create(AddressScheme scheme,
                                               absl::string_view raw);

  // Accepts "email:a@b", "phone:+1 555 0100", "id:handle", or a bare value
  // whose scheme is inferred ("@" means email, digits and dial punctuation
  // mean phone).
  static absl::StatusOr<ContactAddress> Parse(absl::string_view text);

  AddressScheme scheme() const { return scheme_; }
  const std::string& value() const { return value_; }

  // "scheme:value"; Parse(ToString()) round-trips.
  std::string ToString() const;

  friend bool operator==(const ContactAddress&, const ContactAddress&) = default;
  friend auto operator<=>(const ContactAddress&, const ContactAddress&) = default;

 private:
  ContactAddress(AddressScheme scheme, std::string value)
      : scheme_(scheme), value_(std::move(value)) {}

  AddressScheme scheme_ = AddressScheme::kEmail;
  std::string value_;
};

// Normalized value for `raw` under `scheme`, or an error when the value can
// not be a single address of that scheme.
absl::StatusOr<std::string> NormalizeAddressValue(AddressScheme scheme,
                                                  absl::string_view raw);

}  // namespace amakey

#endif  // AMAKEY_CORE_CONTACT_ADDRESS_H_
