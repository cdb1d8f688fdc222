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

// Snapshot archives: a directory holding the validated records.jsonl,
// redirects.jsonl and alignments.jsonl verbatim, plus manifest.json with the
// checksum, record counts and version list.

#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "lookup/expected.hpp"
#include "lookup/store.hpp"

namespace lookup::store {

inline constexpr const char* kRecordsFile = "records.jsonl";
inline constexpr const char* kRedirectsFile = "redirects.jsonl";
inline constexpr const char* kAlignmentsFile = "alignments.jsonl";
inline constexpr const char* kManifestFile = "manifest.json";

struct SourceFiles {
  std::string records;
  std::string redirects;
  std::string alignments;
};

// Reads the three ingestion files; a directory argument is expanded to the
// standard file names inside it.
Expected<SourceFiles, IngestError> read_sources(const std::filesystem::path& records,
                                                const std::filesystem::path& redirects,
                                                const std::filesystem::path& alignments);
Expected<SourceFiles, IngestError> read_sources(const std::filesystem::path& dir);

Expected<Snapshot, IngestError> load_sources(const SourceFiles& sources);

std::string manifest_json(const Snapshot& snapshot);

Expected<bool, IngestError> write_archive(const std::filesystem::path& dir,
                                          const SourceFiles& sources,
                                          const Snapshot& snapshot);

// Loads an archive and verifies the manifest checksum.
Expected<std::shared_ptr<const Snapshot>, IngestError> load_archive(
    const std::filesystem::path& dir);

}  // namespace lookup::store
