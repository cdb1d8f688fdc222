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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "lookup/archive.hpp"
#include "lookup/service.hpp"

namespace lookup::cli {
namespace {

namespace fs = std::filesystem;
using testing::fresh_temp_dir;
using testing::sample_dir;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    archive_ = new fs::path(fresh_temp_dir("cli_archive"));
    const Outcome r = run({"ingest", sample_dir().string(), "-o", archive_->string()});
    ASSERT_EQ(r.code, kExitOk) << r.err;
  }
  static void TearDownTestSuite() { delete archive_; }
  static std::string archive() { return archive_->string(); }

  static fs::path* archive_;
};

fs::path* CliTest::archive_ = nullptr;

TEST_F(CliTest, IngestReportsCounts) {
  const Outcome r = run({"ingest", sample_dir().string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("40 records, 3 redirects, 2 alignments\n"), std::string::npos);
  EXPECT_NE(r.out.find("checksum "), std::string::npos);
  EXPECT_TRUE(fs::exists(fs::path(archive()) / store::kManifestFile));
}

TEST_F(CliTest, IngestThreeFiles) {
  const fs::path d = sample_dir();
  const Outcome r = run({"ingest", (d / "records.jsonl").string(), (d / "redirects.jsonl").string(),
                     (d / "alignments.jsonl").string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
}

TEST_F(CliTest, IngestMissingFileIsDataError) {
  const Outcome r = run({"ingest", "/nonexistent/records.jsonl", "/nonexistent/r.jsonl",
                     "/nonexistent/a.jsonl"});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST_F(CliTest, IngestDuplicateRecordIsDataError) {
  const fs::path dir = fresh_temp_dir("cli_duplicate");
  std::string records = slurp(sample_dir() / "records.jsonl");
  const std::string first = records.substr(0, records.find('\n') + 1);
  write(dir / "records.jsonl", records + first);
  write(dir / "redirects.jsonl", slurp(sample_dir() / "redirects.jsonl"));
  write(dir / "alignments.jsonl", slurp(sample_dir() / "alignments.jsonl"));
  const Outcome r = run({"ingest", dir.string()});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("duplicate"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find(":41"), std::string::npos) << r.err;
}

TEST_F(CliTest, IngestWrongArity) {
  EXPECT_EQ(run({"ingest", "a", "b"}).code, kExitUsage);
}

TEST_F(CliTest, ParsePrintsTreeAndLeaves) {
  const Outcome r = run({"parse", "311:[622+669]"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(r.out.rfind("classmark 311:[622+669]\n", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("leaves\n  311 main [0,3)\n  622 main [5,8)\n  669 main [9,12)\n"),
            std::string::npos)
      << r.out;
}

TEST_F(CliTest, ParseErrorShowsCaret) {
  const Outcome r = run({"parse", "68.13"});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("  68.13\n    ^\n"), std::string::npos) << r.err;
}

TEST_F(CliTest, LookupMatchesServiceBody) {
  const Outcome r = run({"--snapshot", archive(), "lookup", "681.3(035)", "--tier", "full"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  service::ServiceOptions opts;
  opts.keys.emplace("k", service::KeyEntry{"k", store::Tier::full});
  service::LookupService svc(opts, testing::sample_snapshot());
  const service::Response resp = svc.handle(
      {"GET", "/lookup?classmark=681.3(035)", {{"authorization", "Bearer k"}}});
  EXPECT_EQ(r.out, resp.body);
}

TEST_F(CliTest, LookupTurtleAndVersion) {
  const Outcome ttl = run({"--snapshot", archive(), "--format", "ttl", "lookup", "=162.3"});
  ASSERT_EQ(ttl.code, kExitOk) << ttl.err;
  EXPECT_EQ(ttl.out.rfind("# classmark =162.3\n", 0), 0u);
  EXPECT_EQ(run({"--snapshot", archive(), "lookup", "5", "--version", "MRF77"}).code, kExitData);
  EXPECT_EQ(run({"--snapshot", archive(), "lookup", "5", "--tier", "gold"}).code, kExitUsage);
  EXPECT_EQ(run({"--snapshot", archive(), "lookup", "68.13"}).code, kExitData);
  EXPECT_EQ(run({"lookup", "5"}).code, kExitUsage);
  EXPECT_EQ(run({"--snapshot", "/nonexistent", "lookup", "5"}).code, kExitData);
}

TEST_F(CliTest, Mint) {
  Outcome r = run({"--snapshot", archive(), "mint", "=162.3"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out, "https://udcdata.info/MRF93/%3D162.3\n");
  r = run({"--snapshot", archive(), "--base-uri", "http://example.org", "mint", "004"});
  EXPECT_EQ(r.out, "http://example.org/MRF01/004\n");
  r = run({"--snapshot", archive(), "mint", "--legacy", "068288"});
  EXPECT_EQ(r.out, "https://udcdata.info/MRF93/%3D162.3\n");
  EXPECT_EQ(run({"--snapshot", archive(), "mint", "999"}).code, kExitData);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run({"parse"}).code, kExitUsage);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
  EXPECT_EQ(run({"serve"}).code, kExitUsage);
}

TEST_F(CliTest, ServeWithUnreadableConfig) {
  const Outcome r = run({"serve", "--config", "/nonexistent.json"});
  EXPECT_EQ(r.code, kExitData);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST_F(CliTest, UnknownNotationIsAnAnswer) {
  const Outcome r = run({"--snapshot", archive(), "lookup", "999"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("\"status\": \"unknown\""), std::string::npos) << r.out;
}

}  // namespace
}  // namespace lookup::cli
