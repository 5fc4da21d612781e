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

#include "amakey/cli/cli.h"

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "amakey/client/card_cache.h"
#include "amakey/client/key_client.h"
#include "amakey/client/local_bridge.h"
#include "amakey/client/transport.h"
#include "amakey/core/bytes.h"
#include "amakey/core/canonical.h"
#include "amakey/core/fingerprint.h"
#include "amakey/core/kdf.h"
#include "amakey/core/status_macros.h"
#include "amakey/harness/scenario.h"
#include "amakey/net/http.h"
#include "amakey/server/api.h"
#include "amakey/server/challenge.h"
#include "amakey/server/delivery.h"
#include "amakey/server/file_store.h"
#include "amakey/server/key_server.h"
#include "amakey/wot/scenario.h"

namespace amakey::cli {
namespace {

using json = nlohmann::json;

// Thrown inside command bodies to leave with a specific exit code.
struct CommandExit {
  int code;
};

struct GlobalFlags {
  std::string config_path;
  std::string format = "text";
  std::string passphrase_file;
  bool passphrase_stdin = false;
  std::string server, cache_dir, alpha, beta, address, salt, anonymous_proxy;
  std::string kdf_iterations;
};

class Session {
 public:
  Session(CliIo& io, CliConfig config, const GlobalFlags& flags)
      : io_(io), config_(std::move(config)), flags_(flags) {}

  bool json_mode() const { return flags_.format == "json"; }
  std::ostream& out() { return *io_.out; }
  std::ostream& err() { return *io_.err; }
  const CliConfig& config() const { return config_; }
  CliIo& io() { return io_; }

  // Canonical JSON in json mode, `text` otherwise.
  void Emit(json document, const std::string& text) {
    if (json_mode()) {
      document["schema"] = std::string(kJsonSchema);
      absl::StatusOr<std::string> encoded = CanonicalJson(document);
      out() << (encoded.ok() ? *encoded : document.dump()) << "\n";
    } else {
      out() << text;
    }
  }

  [[noreturn]] void Fail(const absl::Status& status) {
    const int code = ExitCodeFor(status);
    if (json_mode()) {
      Emit({{"error",
             {{"code", absl::AsciiStrToLower(absl::StatusCodeToString(status.code()))},
              {"message", std::string(status.message())},
              {"exit_code", code}}}},
           "");
    }
    err() << "error: " << status.message() << "\n";
    throw CommandExit{code};
  }

  template <typename T>
  T Must(absl::StatusOr<T> value) {
    if (!value.ok()) Fail(value.status());
    return *std::move(value);
  }
  void Must(const absl::Status& status) {
    if (!status.ok()) Fail(status);
  }

  std::string ReadLine(absl::string_view prompt) {
    if (!prompt.empty()) err() << prompt << std::flush;
    std::string line;
    if (!std::getline(*io_.in, line)) {
      Fail(absl::InvalidArgumentError("unexpected end of input"));
    }
    return std::string(absl::StripTrailingAsciiWhitespace(line));
  }

  ContactAddress OwnAddress() {
    if (config_.address.empty()) {
      Fail(absl::InvalidArgumentError("no address; pass --address or set it in the config"));
    }
    return Must(ContactAddress::Parse(config_.address));
  }

  bool HasPassphraseSource() const {
    return !flags_.passphrase_file.empty() || flags_.passphrase_stdin;
  }

  std::string Passphrase() {
    std::string passphrase;
    if (!flags_.passphrase_file.empty()) {
      std::ifstream in(flags_.passphrase_file);
      if (!in) Fail(absl::NotFoundError("cannot read passphrase file"));
      std::getline(in, passphrase);
      passphrase = std::string(absl::StripTrailingAsciiWhitespace(passphrase));
    } else {
      passphrase = ReadLine("passphrase: ");
    }
    if (passphrase.empty()) Fail(absl::InvalidArgumentError("empty passphrase"));
    return passphrase;
  }

  // Loads the local identity once, deriving the key from the passphrase.
  const LocalIdentity& Identity() {
    if (!identity_) {
      ContactAddress address = OwnAddress();
      ExpansionParams params;
      params.iterations = config_.kdf_iterations;
      KeyPair key = Must(DeriveKeypairFromPassphrase(
          Passphrase(), SaltFor(config_, address.ToString()), params));
      identity_.emplace(LocalIdentity{std::move(address), std::move(key)});
    }
    return *identity_;
  }

  KeyClient& Client(bool with_identity) {
    if (client_) return *client_;
    BaseUrl base = Must(BaseUrl::Parse(config_.server));
    transport_ = std::make_unique<HttpTransport>(
        base, HttpTransportOptions{.client_id = config_.client_id,
                                   .anonymous_proxy = config_.anonymous_proxy});
    KeyClientOptions options;
    if (with_identity) {
      options.identity = &Identity();
      if (!config_.cache_dir.empty()) {
        cache_ = std::make_unique<CardCache>(config_.cache_dir, identity_->key,
                                             SystemClock());
        options.cache = cache_.get();
      }
    }
    client_ = std::make_unique<KeyClient>(*transport_, options);
    return *client_;
  }

  TrustPolicy Policy() { return Must(PolicyOf(config_)); }

  // Blocks until io.stop flips.
  void WaitForStop() {
    while (io_.stop == nullptr || !io_.stop->load()) {
      std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
  }

 private:
  CliIo& io_;
  CliConfig config_;
  const GlobalFlags& flags_;
  std::optional<LocalIdentity> identity_;
  std::unique_ptr<Transport> transport_;
  std::unique_ptr<CardCache> cache_;
  std::unique_ptr<KeyClient> client_;
};

std::string Grouped(const std::string& hex) {
  auto fp = KeyFingerprint::FromHex(hex);
  if (!fp.ok()) return hex;
  auto grouped = FormatFingerprintGroups(*fp, 4);
  return grouped.ok() ? *grouped : hex;
}

std::string StatsLine(const json& s) {
  if (s.is_null()) return "none";
  return absl::StrCat("s1=", s["s1"].dump(), " s2=", s["s2"].dump(), " s3=", s["s3"].dump(),
                      " s4=", s["s4"].dump(), " s5=", s["s5"].dump(), " s6=", s["s6"].dump(),
                      " s7=", s["s7"].dump());
}

std::string ReportText(const ContactAddress& address, const TrustReport& report) {
  std::string out = absl::StrCat("address      ", address.ToString(), "\n",
                                 "outcome      ", TrustOutcomeName(report.outcome), "\n");
  if (report.card) {
    const IdentityCard& card = report.card->card;
    absl::StrAppend(&out, "fingerprint  ", Grouped(report.fingerprint), "\n",
                    "algorithm    ", card.public_key.algorithm, "\n",
                    "attestment   ", AttestmentKindName(card.attestment.kind), " ",
                    card.attestment.value, "\n", "guidelines   ",
                    MeetsMandatoryGuidelines(card.attestment.checklist) ? "all mandatory declared"
                                                                        : "incomplete",
                    "\n", "created      ", FormatRfc3339(card.created_at), "\n");
    if (card.display_name) absl::StrAppend(&out, "name         ", *card.display_name, "\n");
  }
  const json j = ToJson(report);
  absl::StrAppend(&out, "ratings      ", report.verified_rating_count, " verified of ",
                  report.served_rating_count, " served\n", "stats        ",
                  StatsLine(j["recomputed_stats"]), "\n");
  for (const Finding& f : report.discrepancies) {
    absl::StrAppend(&out, "finding      ", FindingKindName(f.kind), ": ", f.detail, "\n");
  }
  return out;
}

int OutcomeExit(TrustOutcome outcome) {
  return outcome == TrustOutcome::kInvalid ? kExitDetection : kExitOk;
}

// --- subcommands -----------------------------------------------------------

void Keygen(Session& s) {
  const LocalIdentity& id = s.Identity();
  const KeyFingerprint fp = s.Must(Fingerprint(id.key.public_key()));
  const std::string grouped = s.Must(FormatFingerprintGroups(fp, 4));
  s.Emit({{"command", "keygen"},
          {"address", id.address.ToString()},
          {"algorithm", id.key.algorithm()},
          {"fingerprint", fp.hex()},
          {"fingerprint_groups", grouped},
          {"public_key", Base64Encode(id.key.public_key().key_bytes)}},
         absl::StrCat("address      ", id.address.ToString(), "\nalgorithm    ",
                      id.key.algorithm(), "\nfingerprint  ", grouped, "\n"));
}

struct RegisterFlags {
  std::string attestment_hash;
  std::string attestment_url;
  std::string name;
  std::vector<std::string> guidelines;
  bool all_guidelines = false;
};

GuidelineChecklist ParseGuidelines(Session& s, const RegisterFlags& f) {
  GuidelineChecklist c;
  if (f.all_guidelines) {
    c.single_take = c.id_shown = c.spoken_in_groups = c.background_audio =
        c.visual_hash_shown = c.card_rotated_or_glass_written = true;
  }
  for (const std::string& g : f.guidelines) {
    if (g == "single_take") c.single_take = true;
    else if (g == "id_shown") c.id_shown = true;
    else if (g == "spoken_in_groups") c.spoken_in_groups = true;
    else if (g == "background_audio") c.background_audio = true;
    else if (g == "visual_hash_shown") c.visual_hash_shown = true;
    else if (g == "card_rotated_or_glass_written") c.card_rotated_or_glass_written = true;
    else if (g == "horizontally_flipped") c.horizontally_flipped = true;
    else s.Fail(absl::InvalidArgumentError(absl::StrCat("unknown guideline '", g, "'")));
  }
  return c;
}

void Register(Session& s, const RegisterFlags& f) {
  if (f.attestment_hash.empty() == f.attestment_url.empty()) {
    s.Fail(absl::InvalidArgumentError(
        "pass exactly one of --attestment-hash and --attestment-url"));
  }
  const LocalIdentity& id = s.Identity();
  IdentityCard card{
      id.address, id.key.public_key(),
      AttestmentRef{f.attestment_hash.empty() ? AttestmentKind::kHostedUrl
                                              : AttestmentKind::kContentHash,
                    f.attestment_hash.empty() ? f.attestment_url : f.attestment_hash,
                    ParseGuidelines(s, f)},
      f.name.empty() ? std::nullopt : std::optional<std::string>(f.name), SystemNow()};
  s.Must(s.Client(true).Register(card));
  s.Emit({{"command", "register"}, {"address", id.address.ToString()}, {"pending", true}},
         absl::StrCat("registration pending for ", id.address.ToString(),
                      "; confirm with the nonce sent to that address\n"));
}

void VerifyNonce(Session& s, const std::string& nonce) {
  s.Must(s.Client(false).ConfirmRegistration(nonce));
  s.Emit({{"command", "verify-nonce"}, {"verified", true}}, "registration verified\n");
}

int Lookup(Session& s, const std::string& address_text) {
  const ContactAddress address = s.Must(ContactAddress::Parse(address_text));
  KeyClient& client = s.Client(s.HasPassphraseSource());
  const TrustReport report = s.Must(client.FetchAndValidate(address, s.Policy()));
  json doc = ToJson(report);
  doc["command"] = "lookup";
  doc["address"] = address.ToString();
  s.Emit(doc, ReportText(address, report));
  return OutcomeExit(report.outcome);
}

struct RateFlags {
  std::string identity, hash_match, authentic, comment;
  bool comment_set = false;
};

int Rate(Session& s, const std::string& address_text, const RateFlags& f) {
  const ContactAddress address = s.Must(ContactAddress::Parse(address_text));
  KeyClient& client = s.Client(true);
  const TrustReport report = s.Must(client.FetchAndValidate(address, s.Policy()));
  if (report.outcome == TrustOutcome::kInvalid || !report.card) {
    s.err() << ReportText(address, report);
    s.Fail(absl::FailedPreconditionError("the keyserver response does not verify"));
  }
  s.err() << ReportText(address, report)
          << "Watch the attestment, then answer yes, no or unsure.\n";
  const std::string* preset[] = {&f.identity, &f.hash_match, &f.authentic};
  TriState answers[3];
  for (size_t i = 0; i < 3; ++i) {
    std::string text = *preset[i];
    if (text.empty()) text = s.ReadLine(absl::StrCat(RatingQuestions()[i].text, " "));
    answers[i] = s.Must(ParseTriState(text));
  }
  std::string comment = f.comment_set ? f.comment : s.ReadLine("comment (optional): ");
  const PendingChallenge challenge = s.Must(client.FetchChallenge());
  const std::string solution = s.ReadLine(absl::StrCat(challenge.puzzle, " "));
  s.Must(client.SubmitRating(*report.card, {answers[0], answers[1], answers[2], comment},
                             challenge, solution));
  s.Emit({{"command", "rate"},
          {"address", address.ToString()},
          {"card_digest", s.Must(CardDigest(report.card->card))},
          {"accepted", true}},
         "rating accepted\n");
  return kExitOk;
}

void Remove(Session& s) {
  const LocalIdentity& id = s.Identity();
  s.Must(s.Client(true).RemoveOwnCard());
  s.Emit({{"command", "remove"}, {"address", id.address.ToString()}, {"removed", true}},
         absl::StrCat("removed ", id.address.ToString(), "\n"));
}

void RemoveLost(Session& s, const std::string& address_text, const std::string& nonce) {
  KeyClient& client = s.Client(false);
  if (nonce.empty()) {
    const ContactAddress address = s.Must(ContactAddress::Parse(address_text));
    s.Must(client.BeginLostKeyRemoval(address));
    s.Emit({{"command", "remove-lost"}, {"address", address.ToString()}, {"pending", true}},
           "removal pending; confirm with the nonce sent to the address\n");
  } else {
    s.Must(client.ConfirmLostKeyRemoval(nonce));
    s.Emit({{"command", "remove-lost"}, {"removed", true}}, "removed\n");
  }
}

int SelfCheck(Session& s) {
  const LocalIdentity& id = s.Identity();
  const SelfCheckResult result =
      s.Must(s.Client(true).SelfCheck(id.address, id.key.public_key()));
  s.Emit({{"command", "self-check"},
          {"address", id.address.ToString()},
          {"result", std::string(SelfCheckResultName(result))}},
         absl::StrCat(SelfCheckResultName(result), "\n"));
  switch (result) {
    case SelfCheckResult::kClean:
      return kExitOk;
    case SelfCheckResult::kMitmDetected:
      return kExitDetection;
    case SelfCheckResult::kNotRegistered:
      return kExitValidation;
  }
  return kExitValidation;
}

struct WotFlags {
  std::string graph_file;
  std::string report = "attack";
  std::string from, to;
};

json OptionalInt(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

json MsdJson(const wot::MsdValue& v) {
  return {{"mean", v.mean.ToString()}, {"reachable", v.reachable},
          {"unreachable", v.unreachable}};
}

void WotSim(Session& s, const WotFlags& f) {
  wot::WotGraph graph = wot::BuildEveScenario();
  if (!f.graph_file.empty()) {
    std::ifstream in(f.graph_file);
    if (!in) s.Fail(absl::NotFoundError(absl::StrCat("cannot read ", f.graph_file)));
    std::stringstream buffer;
    buffer << in.rdbuf();
    graph = s.Must(wot::ParseEdgeList(buffer.str()));
  }
  if (f.report == "graph") {
    s.Emit({{"command", "wot-sim"}, {"edge_list", wot::FormatEdgeList(graph)}},
           wot::FormatEdgeList(graph));
  } else if (f.report == "msd") {
    const wot::MsdReport msd = wot::ComputeMsdReport(graph);
    std::string csv = "node,tag,owner,outbound_msd,outbound_reachable,inbound_msd,"
                      "inbound_reachable,msd_convention\n";
    json rows = json::array();
    for (size_t i = 0; i < graph.size(); ++i) {
      const wot::WotNode& n = graph.node(i);
      absl::StrAppend(&csv, n.id, ",", wot::KeyTagName(n.tag), ",", n.owner, ",",
                      msd.outbound[i].mean.ToString(), ",", msd.outbound[i].reachable, ",",
                      msd.inbound[i].mean.ToString(), ",", msd.inbound[i].reachable, ",",
                      msd.convention, "\n");
      rows.push_back({{"node", n.id},
                      {"tag", std::string(wot::KeyTagName(n.tag))},
                      {"owner", n.owner},
                      {"outbound", MsdJson(msd.outbound[i])},
                      {"inbound", MsdJson(msd.inbound[i])}});
    }
    s.Emit({{"command", "wot-sim"}, {"convention", msd.convention}, {"nodes", rows}}, csv);
  } else if (f.report == "paths") {
    const wot::DisjointPaths paths = s.Must(wot::NodeDisjointPaths(graph, f.from, f.to));
    const auto distance = s.Must(wot::Distance(graph, f.from, f.to));
    std::string text = absl::StrCat("distance ", distance ? absl::StrCat(*distance) : "unreachable",
                                    "\nnode-disjoint paths ", paths.count, "\n");
    for (const auto& p : paths.paths) absl::StrAppend(&text, "  ", absl::StrJoin(p, " -> "), "\n");
    s.Emit({{"command", "wot-sim"},
            {"from", f.from},
            {"to", f.to},
            {"distance", OptionalInt(distance)},
            {"disjoint_paths", paths.count},
            {"paths", paths.paths}},
           text);
  } else if (f.report == "attack") {
    const wot::AttackReport report = s.Must(wot::BuildAttackReport(graph));
    json rows = json::array();
    for (const wot::AttackRow& r : report.rows) {
      rows.push_back({{"querier", r.querier},
                      {"owner", r.owner},
                      {"genuine_key", r.genuine_key},
                      {"impostor_key", r.impostor_key},
                      {"genuine_distance", OptionalInt(r.genuine_distance)},
                      {"impostor_distance", OptionalInt(r.impostor_distance)},
                      {"genuine_hops_from_signee", OptionalInt(r.genuine_hops_from_signee)},
                      {"impostor_hops_from_signee", OptionalInt(r.impostor_hops_from_signee)},
                      {"impostor_disjoint_paths", r.impostor_disjoint_paths},
                      {"genuine_inbound_msd", MsdJson(r.genuine_inbound_msd)},
                      {"impostor_inbound_msd", MsdJson(r.impostor_inbound_msd)}});
    }
    s.Emit({{"command", "wot-sim"}, {"convention", report.convention}, {"rows", rows}},
           wot::AttackReportCsv(report));
  } else {
    s.Fail(absl::InvalidArgumentError(absl::StrCat("unknown report '", f.report, "'")));
  }
}

struct HarnessFlags {
  std::vector<std::string> scripts;
  std::vector<std::string> policies;
  bool matrix = false;
  bool include_honest = false;
  std::string behavior;
  uint64_t random_worlds = 0;
  bool csv = false;
};

json DetectionJson(const harness::DetectionReport& r) {
  json probes = json::array();
  for (const harness::ProbeResult& p : r.probes) {
    probes.push_back({{"kind", p.probe.kind == harness::ProbeKind::kSelfCheck ? "self_check"
                                                                               : "fetch"},
                      {"viewer", p.probe.viewer},
                      {"subject", p.probe.subject},
                      {"outcome", p.outcome},
                      {"findings", p.findings}});
  }
  return {{"scenario_id", r.scenario_id},
          {"behavior", std::string(harness::BehaviorKindName(r.behavior))},
          {"target", r.target},
          {"alpha", r.alpha},
          {"beta", r.beta.ToString()},
          {"probes", probes},
          {"detected", r.detected},
          {"auto_trusted", r.auto_trusted}};
}

void Harness(Session& s, const HarnessFlags& f) {
  std::vector<TrustPolicy> policies;
  for (const std::string& p : f.policies) {
    std::vector<std::string> parts = absl::StrSplit(p, ':');
    if (parts.size() != 2) {
      s.Fail(absl::InvalidArgumentError(absl::StrCat("policy '", p, "' is not alpha:beta")));
    }
    policies.push_back(s.Must(TrustPolicy::Parse(parts[0], parts[1])));
  }
  if (policies.empty()) policies.push_back(s.Policy());

  std::vector<harness::DetectionReport> reports;
  if (f.matrix) {
    reports = s.Must(harness::ScenarioMatrix(policies, f.include_honest));
  }
  for (const std::string& path : f.scripts) {
    std::ifstream in(path);
    if (!in) s.Fail(absl::NotFoundError(absl::StrCat("cannot read ", path)));
    std::stringstream buffer;
    buffer << in.rdbuf();
    const harness::Scenario scenario = s.Must(harness::ParseScenarioScript(buffer.str()));
    for (const TrustPolicy& policy : policies) {
      reports.push_back(s.Must(harness::RunScenario(scenario, policy)));
    }
  }
  if (f.random_worlds > 0) {
    const harness::BehaviorKind kind = s.Must(harness::ParseBehaviorKind(
        f.behavior.empty() ? "substitute_key" : f.behavior));
    for (uint64_t seed = 1; seed <= f.random_worlds; ++seed) {
      for (const TrustPolicy& policy : policies) {
        reports.push_back(s.Must(harness::RunScenario(harness::RandomScenario(kind, seed), policy)));
      }
    }
  }
  if (reports.empty()) {
    s.Fail(absl::InvalidArgumentError("nothing to run; pass --matrix, --script or --random"));
  }
  json rows = json::array();
  std::string text;
  for (const auto& r : reports) {
    rows.push_back(DetectionJson(r));
    text += harness::ReportText(r);
  }
  s.Emit({{"command", "harness"}, {"reports", rows}},
         f.csv ? harness::ReportsCsv(reports) : text);
}

// Prints each delivery instead of mailing it.
class ConsoleChannel : public DeliveryChannel {
 public:
  explicit ConsoleChannel(std::ostream& out) : out_(out) {}
  absl::Status Deliver(const DeliveryMessage& m) override {
    std::lock_guard<std::mutex> lock(mu_);
    out_ << "deliver " << NoncePurposeName(m.purpose) << " to " << m.to.ToString() << " "
         << m.link << std::endl;
    return absl::OkStatus();
  }

 private:
  std::mutex mu_;
  std::ostream& out_;
};

struct ServeFlags {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string data_dir;
  std::string spool_dir;
};

void Serve(Session& s, const ServeFlags& f) {
  std::unique_ptr<Store> store;
  if (f.data_dir.empty()) {
    store = std::make_unique<InMemoryStore>();
  } else {
    store = s.Must(FileStore::Open(f.data_dir));
  }
  std::unique_ptr<DeliveryChannel> channel;
  if (f.spool_dir.empty()) {
    channel = std::make_unique<ConsoleChannel>(s.out());
  } else {
    channel = std::make_unique<SpoolDirChannel>(f.spool_dir);
  }
  ArithmeticChallengeProvider challenges;
  KeyServer server(*store, *channel, challenges, SystemClock());
  KeyServerApi api(server);
  HttpServer http(api.AsHandler());
  const int port = s.Must(http.Start(f.host, f.port));
  s.out() << "listening on " << f.host << ":" << port << std::endl;
  if (s.io().on_listening) s.io().on_listening(port);
  s.WaitForStop();
  http.Stop();
}

void Bridge(Session& s, int port) {
  KeyClient& client = s.Client(true);
  LocalBridge bridge(client, s.Policy());
  LocalBridgeServer server(bridge);
  const int bound = s.Must(server.Start(port));
  s.out() << "bridge listening on " << kLoopbackHost << ":" << bound << std::endl;
  if (s.io().on_listening) s.io().on_listening(bound);
  s.WaitForStop();
  server.Stop();
}

}  // namespace

int ExitCodeFor(const absl::Status& status) {
  if (status.ok()) return kExitOk;
  if (status.code() == absl::StatusCode::kUnavailable ||
      status.code() == absl::StatusCode::kDeadlineExceeded) {
    return kExitTransport;
  }
  return kExitValidation;
}

int RunCli(const std::vector<std::string>& args, CliIo& io) {
  CLI::App app{"Key distribution with media attestments", "amakey"};
  app.require_subcommand(1);
  GlobalFlags g;
  app.add_option("--config", g.config_path, "key = value config file");
  app.add_option("--format", g.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--passphrase-file", g.passphrase_file, "first line is the passphrase");
  app.add_flag("--passphrase-stdin", g.passphrase_stdin, "read the passphrase from stdin");
  auto* o_server = app.add_option("--server", g.server, "keyserver base URL");
  auto* o_cache = app.add_option("--cache-dir", g.cache_dir, "signed card cache directory");
  auto* o_alpha = app.add_option("--alpha", g.alpha, "ratings count threshold");
  auto* o_beta = app.add_option("--beta", g.beta, "net confirmation threshold");
  auto* o_address = app.add_option("--address", g.address, "own contact address");
  auto* o_salt = app.add_option("--salt", g.salt, "key derivation salt");
  auto* o_iter = app.add_option("--kdf-iterations", g.kdf_iterations, "PBKDF2 iterations");
  auto* o_proxy =
      app.add_option("--anonymous-proxy", g.anonymous_proxy, "proxy for self-checks");

  auto* keygen = app.add_subcommand("keygen", "derive the keypair and print its fingerprint");

  RegisterFlags reg;
  auto* reg_cmd = app.add_subcommand("register", "sign and upload an identity card");
  reg_cmd->add_option("--attestment-hash", reg.attestment_hash, "hex digest of the video");
  reg_cmd->add_option("--attestment-url", reg.attestment_url, "URL of the hosted video");
  reg_cmd->add_option("--name", reg.name, "display name");
  reg_cmd->add_option("--guideline", reg.guidelines, "declared guideline (repeatable)");
  reg_cmd->add_flag("--all-guidelines", reg.all_guidelines, "declare every mandatory guideline");

  std::string nonce;
  auto* verify = app.add_subcommand("verify-nonce", "confirm a registration nonce");
  verify->add_option("nonce", nonce)->required();

  std::string target;
  auto* lookup = app.add_subcommand("lookup", "fetch and verify a card");
  lookup->add_option("address", target)->required();

  RateFlags rate_flags;
  auto* rate = app.add_subcommand("rate", "review and rate a card");
  rate->add_option("address", target)->required();
  rate->add_option("--identity", rate_flags.identity);
  rate->add_option("--hash-match", rate_flags.hash_match);
  rate->add_option("--authentic", rate_flags.authentic);
  auto* o_comment = rate->add_option("--comment", rate_flags.comment);

  auto* remove = app.add_subcommand("remove", "remove your own card (signed)");

  std::string lost_nonce;
  auto* remove_lost = app.add_subcommand("remove-lost", "remove a card whose key was lost");
  remove_lost->add_option("address", target);
  remove_lost->add_option("--nonce", lost_nonce, "confirm with the mailed nonce");

  auto* self_check = app.add_subcommand("self-check", "anonymously look up your own card");

  WotFlags wot_flags;
  auto* wot_cmd = app.add_subcommand("wot-sim", "web-of-trust impostor analysis");
  wot_cmd->add_option("--graph", wot_flags.graph_file, "edge-list file (default: Eve)");
  wot_cmd->add_option("--report", wot_flags.report, "attack, msd, paths or graph");
  wot_cmd->add_option("--from", wot_flags.from);
  wot_cmd->add_option("--to", wot_flags.to);

  HarnessFlags harness_flags;
  auto* harness_cmd = app.add_subcommand("harness", "run adversarial keyserver scenarios");
  harness_cmd->add_option("--script", harness_flags.scripts, "scenario file (repeatable)");
  harness_cmd->add_option("--policy", harness_flags.policies, "alpha:beta (repeatable)");
  harness_cmd->add_flag("--matrix", harness_flags.matrix, "every behavior x policy");
  harness_cmd->add_flag("--honest", harness_flags.include_honest, "add honest controls");
  harness_cmd->add_option("--random", harness_flags.random_worlds, "seeded random worlds");
  harness_cmd->add_option("--behavior", harness_flags.behavior, "behavior for --random");
  harness_cmd->add_flag("--csv", harness_flags.csv, "CSV instead of text");

  ServeFlags serve_flags;
  auto* serve = app.add_subcommand("serve", "run the keyserver");
  serve->add_option("--host", serve_flags.host);
  serve->add_option("--port", serve_flags.port);
  serve->add_option("--data-dir", serve_flags.data_dir, "persist to this directory");
  serve->add_option("--spool-dir", serve_flags.spool_dir, "write deliveries here");

  int bridge_port = 8765;
  auto* bridge = app.add_subcommand("bridge", "serve the loopback review/rate API");
  bridge->add_option("--port", bridge_port);

  std::vector<std::string> argv_storage{"amakey"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, *io.out, *io.err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  CliConfig config;
  auto setup = [&]() -> absl::Status {
    if (!g.config_path.empty()) AMAKEY_RETURN_IF_ERROR(ApplyConfigFile(g.config_path, config));
    ApplyEnvironment(io.env, config);
    if (o_server->count()) config.server = g.server;
    if (o_cache->count()) config.cache_dir = g.cache_dir;
    if (o_alpha->count()) config.alpha = g.alpha;
    if (o_beta->count()) config.beta = g.beta;
    if (o_address->count()) config.address = g.address;
    if (o_salt->count()) config.salt = g.salt;
    if (o_proxy->count()) config.anonymous_proxy = g.anonymous_proxy;
    if (o_iter->count()) AMAKEY_RETURN_IF_ERROR(ApplyConfigText("kdf_iterations = " + g.kdf_iterations, config));
    return ValidateConfig(config);
  };
  if (absl::Status status = setup(); !status.ok()) {
    *io.err << "error: " << status.message() << "\n";
    return kExitValidation;
  }

  Session session(io, config, g);
  try {
    if (*keygen) Keygen(session);
    else if (*reg_cmd) Register(session, reg);
    else if (*verify) VerifyNonce(session, nonce);
    else if (*lookup) return Lookup(session, target);
    else if (*rate) {
      rate_flags.comment_set = o_comment->count() > 0;
      return Rate(session, target, rate_flags);
    } else if (*remove) Remove(session);
    else if (*remove_lost) {
      if (target.empty() && lost_nonce.empty()) {
        session.Fail(absl::InvalidArgumentError("pass an address or --nonce"));
      }
      RemoveLost(session, target, lost_nonce);
    } else if (*self_check) return SelfCheck(session);
    else if (*wot_cmd) WotSim(session, wot_flags);
    else if (*harness_cmd) Harness(session, harness_flags);
    else if (*serve) Serve(session, serve_flags);
    else if (*bridge) Bridge(session, bridge_port);
  } catch (const CommandExit& exit) {
    return exit.code;
  }
  return kExitOk;
}

}  // namespace amakey::cli
