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


// Shared test data: the shipped sample vocabulary and small inline
// vocabularies built from JSON lines.

#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "lookup/store.hpp"

namespace lookup::testing {

std::filesystem::path source_dir();
std::filesystem::path sample_dir();

// Loads data/sample; aborts the process if it does not load.
std::shared_ptr<const store::Snapshot> sample_snapshot();

// Loads inline JSON lines; aborts on failure.
std::shared_ptr<const store::Snapshot> snapshot_of(const std::string& records,
                                                   const std::string& redirects = "",
                                                   const std::string& alignments = "");

std::filesystem::path fresh_temp_dir(const std::string& name);

}  // namespace lookup::testing
