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

#include "lookup/archive.hpp"

#include <fstream>
#include <iterator>

#include "json.hpp"

namespace lookup::store {

namespace fs = std::filesystem;

namespace {

Expected<std::string, IngestError> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return unexpected(IngestError{IngestError::Kind::io, path.string(), 0,
                                  "cannot open file"});
  }
  return std::string(std::istreambuf_iterator<char>(in), {});
}

bool write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  return static_cast<bool>(out);
}

}  // namespace

Expected<SourceFiles, IngestError> read_sources(const fs::path& records,
                                                const fs::path& redirects,
                                                const fs::path& alignments) {
  auto a = read_file(records);
  if (!a) return unexpected(a.error());
  auto b = read_file(redirects);
  if (!b) return unexpected(b.error());
  auto c = read_file(alignments);
  if (!c) return unexpected(c.error());
  return SourceFiles{std::move(*a), std::move(*b), std::move(*c)};
}

Expected<SourceFiles, IngestError> read_sources(const fs::path& dir) {
  return read_sources(dir / kRecordsFile, dir / kRedirectsFile, dir / kAlignmentsFile);
}

Expected<Snapshot, IngestError> load_sources(const SourceFiles& sources) {
  return load_snapshot(std::string_view(sources.records),
                       std::string_view(sources.redirects),
                       std::string_view(sources.alignments));
}

std::string manifest_json(const Snapshot& snapshot) {
  nlohmann::ordered_json m;
  m["format"] = 1;
  m["checksum"] = snapshot.checksum();
  m["records"] = snapshot.records().size();
  m["redirects"] = snapshot.redirects().size();
  m["alignments"] = snapshot.alignments().size();
  auto versions = nlohmann::ordered_json::array();
  for (const VersionCode& v : snapshot.versions()) {
    versions.push_back({{"label", v.label}, {"ordinal", v.ordinal}});
  }
  m["versions"] = std::move(versions);
  return m.dump(2) + "\n";
}

Expected<bool, IngestError> write_archive(const fs::path& dir,
                                          const SourceFiles& sources,
                                          const Snapshot& snapshot) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    return unexpected(IngestError{IngestError::Kind::io, dir.string(), 0, ec.message()});
  }
  const std::pair<const char*, const std::string*> files[] = {
      {kRecordsFile, &sources.records},
      {kRedirectsFile, &sources.redirects},
      {kAlignmentsFile, &sources.alignments},
  };
  for (const auto& [name, content] : files) {
    if (!write_file(dir / name, *content)) {
      return unexpected(IngestError{IngestError::Kind::io, (dir / name).string(), 0,
                                    "cannot write file"});
    }
  }
  if (!write_file(dir / kManifestFile, manifest_json(snapshot))) {
    return unexpected(IngestError{IngestError::Kind::io,
                                  (dir / kManifestFile).string(), 0,
                                  "cannot write file"});
  }
  return true;
}

Expected<std::shared_ptr<const Snapshot>, IngestError> load_archive(const fs::path& dir) {
  auto manifest_text = read_file(dir / kManifestFile);
  if (!manifest_text) return unexpected(manifest_text.error());
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(*manifest_text);
  } catch (const nlohmann::json::parse_error& e) {
    return unexpected(IngestError{IngestError::Kind::malformed,
                                  (dir / kManifestFile).string(), 0, e.what()});
  }
  if (!manifest.contains("checksum") || !manifest["checksum"].is_string()) {
    return unexpected(IngestError{IngestError::Kind::malformed,
                                  (dir / kManifestFile).string(), 0,
                                  "manifest has no checksum"});
  }
  auto sources = read_sources(dir);
  if (!sources) return unexpected(sources.error());
  auto snapshot = load_sources(*sources);
  if (!snapshot) return unexpected(snapshot.error());
  const auto expected_sum = manifest["checksum"].get<std::string>();
  if (snapshot->checksum() != expected_sum) {
    return unexpected(IngestError{IngestError::Kind::checksum_mismatch, dir.string(), 0,
                                  "manifest says " + expected_sum + ", files hash to " +
                                      snapshot->checksum()});
  }
  return std::make_shared<const Snapshot>(std::move(*snapshot));
}

}  // namespace lookup::store
