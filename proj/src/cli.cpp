// Copyright 2026 The Classmark Lookup Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "lookup/cli.hpp"

#include <pthread.h>
#include <signal.h>

#include <cctype>
#include <filesystem>
#include <memory>
#include <optional>
#include <thread>

#include "CLI11.hpp"
#include "lookup/archive.hpp"
#include "lookup/config.hpp"
#include "lookup/notation.hpp"
#include "lookup/resolver.hpp"
#include "lookup/service.hpp"
#include "lookup/store.hpp"

namespace lookup::cli {

namespace {

namespace fs = std::filesystem;

struct Globals {
  std::string base_uri = std::string(resolver::kDefaultBaseUri);
  std::string snapshot;
  std::string format = "json";
};

// Whitespace stripped outside quotes; an unterminated quote runs to the end.
std::string display_text(std::string_view raw) {
  std::string out;
  bool quoted = false;
  for (char c : raw) {
    if (c == '"') quoted = !quoted;
    if (!quoted && std::isspace(static_cast<unsigned char>(c))) continue;
    out += c;
  }
  return out;
}

void print_parse_error(std::ostream& err, std::string_view raw,
                       const notation::ParseError& e) {
  err << "error: " << e.message() << "\n";
  err << "  " << display_text(raw) << "\n";
  err << "  " << std::string(e.position, ' ') << "^\n";
}

std::string node_label(const notation::Node& node) {
  if (const auto* m = node.as<notation::MainNumber>()) {
    (void)m;
    return "main-number";
  }
  if (const auto* a = node.as<notation::CommonAuxiliary>()) {
    return std::string(notation::to_string(a->kind)) + "-auxiliary";
  }
  if (const auto* s = node.as<notation::SpecialAuxiliary>()) {
    return std::string(notation::to_string(s->kind)) + "-auxiliary";
  }
  return std::string(notation::operator_name(node));
}

void print_tree(std::ostream& out, const notation::Node& node, int depth) {
  out << std::string(2 * depth, ' ') << node_label(node) << " [" << node.span.begin << ","
      << node.span.end << ") " << notation::serialize(node) << "\n";
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, notation::SpecialAuxiliary>) {
          print_tree(out, *n.attached_to, depth + 1);
        } else if constexpr (std::is_same_v<T, notation::Attachment>) {
          print_tree(out, *n.base, depth + 1);
          for (const auto& a : n.auxiliaries) print_tree(out, a, depth + 1);
        } else if constexpr (std::is_same_v<T, notation::Range>) {
          print_tree(out, *n.low, depth + 1);
          print_tree(out, *n.high, depth + 1);
        } else if constexpr (std::is_same_v<T, notation::Relation> ||
                             std::is_same_v<T, notation::Coordination>) {
          for (const auto& m : n.members) print_tree(out, m, depth + 1);
        } else if constexpr (std::is_same_v<T, notation::Group>) {
          print_tree(out, *n.inner, depth + 1);
        }
      },
      node.value);
}

std::optional<service::Format> format_from(const std::string& text, std::ostream& err) {
  auto f = service::negotiate(std::nullopt, text);
  if (!f) {
    err << "error: " << f.error().message << "\n";
    return std::nullopt;
  }
  return *f;
}

int open_snapshot(const Globals& g, std::ostream& err,
                  std::shared_ptr<const store::Snapshot>& snapshot) {
  if (g.snapshot.empty()) {
    err << "error: --snapshot is required\n";
    return kExitUsage;
  }
  auto loaded = store::load_archive(g.snapshot);
  if (!loaded) {
    err << "error: " << loaded.error().describe() << "\n";
    return kExitData;
  }
  snapshot = *loaded;
  return kExitOk;
}

int cmd_ingest(const std::vector<std::string>& paths, const std::string& output,
               std::ostream& out, std::ostream& err) {
  Expected<store::SourceFiles, store::IngestError> sources =
      paths.size() == 1 ? store::read_sources(paths[0])
      : paths.size() == 3
          ? store::read_sources(paths[0], paths[1], paths[2])
          : Expected<store::SourceFiles, store::IngestError>(unexpected(store::IngestError{
                store::IngestError::Kind::io, "", 0,
                "give a directory or the records, redirects and alignments files"}));
  if (!sources) {
    err << "error: " << sources.error().describe() << "\n";
    return paths.size() == 1 || paths.size() == 3 ? kExitData : kExitUsage;
  }
  auto snapshot = store::load_sources(*sources);
  if (!snapshot) {
    err << "error: " << snapshot.error().describe() << "\n";
    return kExitData;
  }
  for (const std::string& d : snapshot->integrity().dangling) {
    err << "warning: " << d << "\n";
  }
  out << snapshot->records().size() << " records, " << snapshot->redirects().size()
      << " redirects, " << snapshot->alignments().size() << " alignments\n";
  out << "checksum " << snapshot->checksum() << "\n";
  if (!output.empty()) {
    auto written = store::write_archive(output, *sources, *snapshot);
    if (!written) {
      err << "error: " << written.error().describe() << "\n";
      return kExitRuntime;
    }
    out << "archive written to " << output << "\n";
  }
  return kExitOk;
}

int cmd_parse(const std::string& classmark, std::ostream& out, std::ostream& err) {
  auto tree = notation::parse(classmark);
  if (!tree) {
    print_parse_error(err, classmark, tree.error());
    return kExitData;
  }
  out << "classmark " << tree->input.normalized << "\n";
  print_tree(out, tree->root, 1);
  out << "leaves\n";
  for (const notation::Leaf& leaf : notation::leaves(*tree)) {
    out << "  " << leaf.notation << " " << notation::to_string(leaf.kind) << " ["
        << leaf.span.begin << "," << leaf.span.end << ")\n";
  }
  return kExitOk;
}

int cmd_lookup(const Globals& g, const std::string& classmark, const std::string& tier_text,
               const std::string& version_label, std::ostream& out, std::ostream& err) {
  auto format = format_from(g.format, err);
  if (!format) return kExitUsage;
  auto tier = store::parse_tier(tier_text);
  if (!tier) {
    err << "error: tier must be summary, abridged or full\n";
    return kExitUsage;
  }
  std::shared_ptr<const store::Snapshot> snapshot;
  if (int rc = open_snapshot(g, err, snapshot); rc != kExitOk) return rc;
  const resolver::Resolver resolver(snapshot, g.base_uri);
  std::optional<store::VersionCode> version;
  if (!version_label.empty()) {
    version = snapshot->find_version(version_label);
    if (!version) {
      err << "error: unknown version " << version_label << "\n";
      return kExitData;
    }
  }
  auto report = resolver.interpret(classmark, *tier, version);
  if (!report) {
    print_parse_error(err, classmark, report.error());
    return kExitData;
  }
  out << service::render_report(*report, resolver, *format).body;
  return kExitOk;
}

int cmd_mint(const Globals& g, const std::string& notation, bool legacy, std::ostream& out,
             std::ostream& err) {
  std::shared_ptr<const store::Snapshot> snapshot;
  if (int rc = open_snapshot(g, err, snapshot); rc != kExitOk) return rc;
  const resolver::Resolver resolver(snapshot, g.base_uri);
  auto uri = legacy ? resolver.legacy_lookup(notation) : resolver.mint_uri(notation);
  if (!uri) {
    err << "error: " << (legacy ? "no record with identifier " : "no class ") << notation
        << "\n";
    return kExitData;
  }
  out << uri->str() << "\n";
  return kExitOk;
}

int cmd_serve(const Globals& g, const std::string& config_path, std::ostream& out,
              std::ostream& err) {
  auto config = config::load_config(config_path);
  if (!config) {
    err << "error: " << config.error().message << "\n";
    return kExitData;
  }
  if (!g.snapshot.empty()) config->snapshot = g.snapshot;
  auto snapshot = store::load_archive(config->snapshot);
  if (!snapshot) {
    err << "error: " << snapshot.error().describe() << "\n";
    return kExitData;
  }
  if (g.base_uri != resolver::kDefaultBaseUri) config->service.base_uri = g.base_uri;

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  service::LookupService svc(config->service, *snapshot);
  service::HttpServer server(svc, &out, config->static_dir);
  const int port = server.bind(config->host, config->port);
  if (port < 0) {
    err << "error: cannot bind " << config->host << ":" << config->port << "\n";
    return kExitRuntime;
  }
  err << "listening on http://" << config->host << ":" << port << " snapshot "
      << (*snapshot)->checksum() << std::endl;

  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  const bool ok = server.listen();
  // listen() may also end on its own; wake the waiter so it can be joined.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  err << "stopped" << std::endl;
  return ok ? kExitOk : kExitRuntime;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Classmark parser, resolver and linked-data service", "cmlookup"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--base-uri", g.base_uri, "Base URI for minted identifiers");
  app.add_option("--snapshot", g.snapshot, "Snapshot archive directory");
  app.add_option("--format", g.format, "Output format: json, ttl or html");

  std::vector<std::string> ingest_paths;
  std::string ingest_output;
  auto* ingest = app.add_subcommand("ingest", "Validate ingestion files and write an archive");
  ingest->add_option("paths", ingest_paths, "Directory, or records redirects alignments files")
      ->required();
  ingest->add_option("-o,--output", ingest_output, "Archive directory to write");

  std::string classmark;
  auto* parse = app.add_subcommand("parse", "Print the parse tree of a classmark");
  parse->add_option("classmark", classmark)->required();

  std::string lookup_classmark;
  std::string tier = "summary";
  std::string version;
  auto* lookup = app.add_subcommand("lookup", "Interpret a classmark against a snapshot");
  lookup->add_option("classmark", lookup_classmark)->required();
  lookup->add_option("--tier", tier, "summary, abridged or full");
  lookup->add_option("--version", version, "Version label, default latest");

  std::string mint_notation;
  bool legacy = false;
  auto* mint = app.add_subcommand("mint", "Print the URI of a notation");
  mint->add_option("notation", mint_notation)->required();
  mint->add_flag("--legacy", legacy, "Treat the argument as a legacy record identifier");

  std::string config_path;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--config", config_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*ingest) return cmd_ingest(ingest_paths, ingest_output, out, err);
    if (*parse) return cmd_parse(classmark, out, err);
    if (*lookup) return cmd_lookup(g, lookup_classmark, tier, version, out, err);
    if (*mint) return cmd_mint(g, mint_notation, legacy, out, err);
    if (*serve) return cmd_serve(g, config_path, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("cmlookup");
  for (const std::string& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace lookup::cli
