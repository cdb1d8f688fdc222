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


#include "fixtures.hpp"

#include <unistd.h>

#include <cstdlib>
#include <iostream>

#include "lookup/archive.hpp"

namespace lookup::testing {

std::filesystem::path source_dir() { return LOOKUP_SOURCE_DIR; }

std::filesystem::path sample_dir() { return source_dir() / "data" / "sample"; }

std::shared_ptr<const store::Snapshot> sample_snapshot() {
  auto sources = store::read_sources(sample_dir());
  if (!sources) {
    std::cerr << sources.error().describe() << "\n";
    std::abort();
  }
  auto snap = store::load_sources(*sources);
  if (!snap) {
    std::cerr << snap.error().describe() << "\n";
    std::abort();
  }
  return std::make_shared<const store::Snapshot>(std::move(*snap));
}

std::shared_ptr<const store::Snapshot> snapshot_of(const std::string& records,
                                                   const std::string& redirects,
                                                   const std::string& alignments) {
  auto snap = store::load_snapshot(std::string_view(records), std::string_view(redirects),
                                   std::string_view(alignments));
  if (!snap) {
    std::cerr << snap.error().describe() << "\n";
    std::abort();
  }
  return std::make_shared<const store::Snapshot>(std::move(*snap));
}

std::filesystem::path fresh_temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() /
             ("lookup-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace lookup::testing
