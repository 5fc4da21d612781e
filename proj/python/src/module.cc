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

#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "amakey/cli/cli.h"
#include "amakey/core/bytes.h"
#include "amakey/core/cards.h"
#include "amakey/core/fingerprint.h"
#include "amakey/core/kdf.h"
#include "amakey/core/stats.h"
#include "amakey/core/trust.h"
#include "amakey/harness/scenario.h"
#include "amakey/wot/graph.h"
#include "amakey/wot/scenario.h"
#include "pybind11/pybind11.h"
#include "pybind11/stl.h"

namespace py = pybind11;

namespace amakey {
namespace {

void Raise(const absl::Status& status) {
  if (absl::IsInvalidArgument(status) || absl::IsOutOfRange(status)) {
    throw py::value_error(std::string(status.message()));
  }
  throw std::runtime_error(status.ToString());
}

template <typename T>
T Unwrap(absl::StatusOr<T> value) {
  if (!value.ok()) Raise(value.status());
  return *std::move(value);
}

using StatsTuple = std::tuple<uint64_t, uint64_t, uint64_t, uint64_t, uint64_t, uint64_t,
                              uint64_t>;

StatsTuple ToTuple(const AggregateStats& s) {
  return {s.s1, s.s2, s.s3, s.s4, s.s5, s.s6, s.s7};
}

AggregateStats FromTuple(const StatsTuple& t) {
  return {std::get<0>(t), std::get<1>(t), std::get<2>(t), std::get<3>(t),
          std::get<4>(t), std::get<5>(t), std::get<6>(t)};
}

StatsTuple AggregateAnswers(
    const std::vector<std::tuple<std::string, std::string, std::string>>& answers) {
  AggregateStats total;
  for (const auto& [identity, hash_match, authentic] : answers) {
    RatingCard rating;
    rating.q_identity = Unwrap(ParseTriState(identity));
    rating.q_hash_match = Unwrap(ParseTriState(hash_match));
    rating.q_authentic = Unwrap(ParseTriState(authentic));
    total += Aggregate(std::span<const RatingCard>(&rating, 1));
  }
  return ToTuple(total);
}

bool DecideTrustPy(const StatsTuple& stats, const std::string& alpha, const std::string& beta) {
  const TrustPolicy policy = Unwrap(TrustPolicy::Parse(alpha, beta));
  return DecideTrust(FromTuple(stats), policy) == TrustDecision::kTrusted;
}

std::string FingerprintPy(const py::bytes& key_bytes, const std::string& algorithm) {
  return Unwrap(Fingerprint(PublicKeyMaterial{algorithm, std::string(key_bytes)})).hex();
}

std::string FormatFingerprintPy(const std::string& hex, int group_size) {
  return Unwrap(FormatFingerprintGroups(Unwrap(KeyFingerprint::FromHex(hex)), group_size));
}

py::dict DerivePublicKey(const std::string& passphrase, const std::string& salt,
                         uint32_t iterations) {
  ExpansionParams params;
  params.iterations = iterations;
  const KeyPair key = Unwrap(DeriveKeypairFromPassphrase(passphrase, salt, params));
  py::dict out;
  out["algorithm"] = key.algorithm();
  out["key_bytes"] = py::bytes(key.public_key().key_bytes);
  out["fingerprint"] = Unwrap(Fingerprint(key.public_key())).hex();
  return out;
}

std::string AttackReportCsvPy(const std::string& edge_list) {
  const wot::WotGraph graph =
      edge_list.empty() ? wot::BuildEveScenario() : Unwrap(wot::ParseEdgeList(edge_list));
  return wot::AttackReportCsv(Unwrap(wot::BuildAttackReport(graph)));
}

std::string HarnessCsv(const std::string& behavior, const std::string& alpha,
                       const std::string& beta, uint64_t seed) {
  const harness::BehaviorKind kind = Unwrap(harness::ParseBehaviorKind(behavior));
  const TrustPolicy policy = Unwrap(TrustPolicy::Parse(alpha, beta));
  const harness::Scenario scenario =
      seed == 0 ? harness::DefaultScenario(kind) : harness::RandomScenario(kind, seed);
  return harness::ReportsCsv({Unwrap(harness::RunScenario(scenario, policy))});
}

std::tuple<int, std::string, std::string> RunCliPy(const std::vector<std::string>& args,
                                                   const std::string& stdin_text) {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  cli::CliIo io;
  io.in = &in;
  io.out = &out;
  io.err = &err;
  int code;
  {
    py::gil_scoped_release release;
    code = cli::RunCli(args, io);
  }
  return {code, out.str(), err.str()};
}

}  // namespace
}  // namespace amakey

PYBIND11_MODULE(_core, m) {
  using namespace amakey;
  m.doc() = "Bindings for the amakey C++ core.";
  m.def("aggregate", &AggregateAnswers, py::arg("answers"),
        "Sums (identity, hash_match, authentic) answers into (s1, ..., s7).");
  m.def("decide_trust", &DecideTrustPy, py::arg("stats"), py::arg("alpha"), py::arg("beta"));
  m.def("fingerprint", &FingerprintPy, py::arg("key_bytes"),
        py::arg("algorithm") = std::string(kDefaultKeyAlgorithm));
  m.def("format_fingerprint", &FormatFingerprintPy, py::arg("hex"), py::arg("group_size") = 4);
  m.def("derive_public_key", &DerivePublicKey, py::arg("passphrase"), py::arg("salt"),
        py::arg("iterations") = 200000);
  m.def("attack_report_csv", &AttackReportCsvPy, py::arg("edge_list") = std::string(),
        "Impostor report for an edge list; empty selects the Eve scenario.");
  m.def("harness_csv", &HarnessCsv, py::arg("behavior"), py::arg("alpha") = "5",
        py::arg("beta") = "1/2", py::arg("seed") = 0,
        "Runs one scenario world; seed 0 selects the default world.");
  m.def("run_cli", &RunCliPy, py::arg("args"), py::arg("stdin") = std::string(),
        "Runs the amakey CLI in-process; returns (exit_code, stdout, stderr).");
}
