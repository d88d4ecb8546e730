// Copyright 2026 The ArtKit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// The `artkit` command-line front end. Each subcommand is a thin wrapper
// over the library; `run` is separated from main() so tests can drive it.

#ifndef ARTKIT_TOOLS_COMMANDS_HPP_
#define ARTKIT_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "artkit/asset_io.hpp"
#include "artkit/corpus.hpp"
#include "artkit/eval.hpp"
#include "artkit/refine.hpp"

namespace artkit::cli {

/// Flags shared by every subcommand. Each can also be set through an
/// ARTKIT_<FLAG> environment variable (e.g. ARTKIT_SEED, ARTKIT_GRID_RES).
struct CommonOptions {
  uint64_t seed = 0;
  std::string up_axis = "y";
  /// Overrides the refiner config file when set.
  std::optional<int> grid_res;
  int jobs = 0;  // 0 keeps the OpenMP default
  std::string out;
  bool quiet = false;
};

struct IngestArgs {
  std::filesystem::path urdf;
  std::string id;
  std::string category;
  std::string source;
};
struct EncodeArgs {
  std::filesystem::path asset;
  bool human = false;
};
struct DecodeArgs {
  std::filesystem::path script;
  std::optional<std::filesystem::path> cloud;
  std::string id;
  std::string category;
};
struct RefineArgs {
  std::filesystem::path asset;
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> report;
};
struct EvalArgs {
  std::filesystem::path pred_dir;
  std::filesystem::path gt_dir;
  std::filesystem::path manifest;
};
struct CorpusArgs {
  std::filesystem::path dataset_dir;
  std::optional<std::filesystem::path> policy;
  bool no_augment = false;
  bool no_clouds = false;
  int cloud_points = kPredictorCloudSize;
};

// Each command writes its files under `common.out` (a file path or a
// directory, depending on the command) and its summary to `log`.
void cmd_ingest(const IngestArgs& args, const CommonOptions& common, std::ostream& log);
void cmd_encode(const EncodeArgs& args, const CommonOptions& common, std::ostream& out);
void cmd_decode(const DecodeArgs& args, const CommonOptions& common, std::ostream& log);
RefineResult cmd_refine(const RefineArgs& args, const CommonOptions& common, std::ostream& log);
EvalReport cmd_eval(const EvalArgs& args, const CommonOptions& common, std::ostream& out);
CorpusOutput cmd_corpus(const CorpusArgs& args, const CommonOptions& common, std::ostream& log);
void cmd_codebook_dump(const CommonOptions& common, std::ostream& out);

/// Reads `id,category` lines; a header line starting with "id" is skipped.
std::vector<std::pair<std::string, std::string>> read_manifest(const std::filesystem::path& path);

/// Parses argv and dispatches. Returns the process exit code: 0 on success,
/// 1 for usage errors, 2 for library errors (printed as
/// "error: <Variant>: message").
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace artkit::cli

#endif  // ARTKIT_TOOLS_COMMANDS_HPP_
