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


#include "commands.hpp"

#include <omp.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "artkit/codec.hpp"
#include "artkit/config.hpp"
#include "artkit/geometry.hpp"
#include "artkit/mesh_io.hpp"

namespace artkit::cli {
namespace {

namespace fs = std::filesystem;

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorCode::kIoFailure, "cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) raise(ErrorCode::kIoFailure, "cannot write " + path.string());
}

fs::path require_out(const CommonOptions& common, const char* what) {
  if (common.out.empty()) raise(ErrorCode::kInvalidArgument, std::string("--out is required for ") + what);
  return common.out;
}

void print_warnings(const Warnings& warnings, std::ostream& log) {
  for (const std::string& w : warnings) log << "warning: " << w << "\n";
}

nlohmann::json interval_json(const Interval& r) { return {r.lo, r.hi}; }

nlohmann::json report_json(const RefineResult& result) {
  nlohmann::json limits = nlohmann::json::array();
  for (const RefinedLimit& l : result.limits) {
    const Joint& j = result.object.joint(l.joint_id);
    nlohmann::json e = {{"joint_id", l.joint_id},
                        {"name", j.name},
                        {"kind", std::string(to_string(j.kind))},
                        {"original", interval_json(l.original)},
                        {"corrected", interval_json(l.corrected)},
                        {"contact_found", l.contact_found},
                        {"diagnostics", l.diagnostics}};
    e["contact_lo"] = l.contact_lo ? nlohmann::json(*l.contact_lo) : nlohmann::json(nullptr);
    e["contact_hi"] = l.contact_hi ? nlohmann::json(*l.contact_hi) : nlohmann::json(nullptr);
    limits.push_back(std::move(e));
  }
  return {{"limits", limits}, {"errors", result.errors}};
}

// Every .urdf under `dir`, sorted so batch output never depends on
// directory iteration order.
std::vector<fs::path> find_urdfs(const fs::path& dir) {
  if (!fs::is_directory(dir)) raise(ErrorCode::kIoFailure, dir.string() + " is not a directory");
  std::vector<fs::path> out;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".urdf") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Runs `body(i)` for i in [0, n) across threads and rethrows the first
// library error by index once all items are done.
template <typename Body>
void parallel_items(int n, Body body) {
  std::vector<std::optional<Error>> errors(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (const Error& e) {
      errors[i] = e;
    }
  }
  for (auto& e : errors) {
    if (e) throw *e;
  }
}

ArticulatedObject load_prediction(const fs::path& dir, const std::string& id) {
  const fs::path urdf = dir / (id + ".urdf");
  if (fs::exists(urdf)) return load_asset(urdf).object;
  const fs::path script = dir / (id + ".txt");
  if (fs::exists(script)) {
    try {
      return parse_script(read_text(script));
    } catch (const Error& e) {
      raise(e.code(), script.string() + ": " + e.what());
    }
  }
  raise(ErrorCode::kIoFailure, "no prediction for '" + id + "' in " + dir.string());
}

std::string env_name(const std::string& long_name) {
  std::string name = "ARTKIT_";
  for (char c : long_name) name += c == '-' ? '_' : static_cast<char>(std::toupper(c));
  return name;
}

void attach_env_names(CLI::App& app) {
  for (CLI::Option* opt : app.get_options()) {
    const std::string lname = opt->get_single_name();
    if (!opt->nonpositional() || lname == "help" || lname.empty()) continue;
    opt->envname(env_name(lname));
  }
  for (CLI::App* sub : app.get_subcommands({})) attach_env_names(*sub);
}

void print_options(const CLI::App& app, const std::string& prefix, std::ostream& out) {
  for (const CLI::Option* opt : app.get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help") continue;
    std::string value;
    if (opt->get_expected_max() == 0) {
      value = opt->count() > 0 ? "true" : "false";
    } else if (opt->count() > 0) {
      for (const std::string& r : opt->results()) value += (value.empty() ? "" : " ") + r;
    } else {
      value = opt->get_default_str();
    }
    out << prefix << name << " = " << value << "\n";
  }
}

}  // namespace

void cmd_ingest(const IngestArgs& args, const CommonOptions& common, std::ostream& log) {
  const fs::path out = require_out(common, "ingest");
  Warnings warnings;
  const ArticulatedObject raw = load_urdf_file(args.urdf, &warnings);
  auto [object, transform] = normalize(raw);
  AssetMeta meta;
  meta.id = args.id.empty() ? out.stem().string() : args.id;
  if (!args.category.empty()) meta.category = args.category;
  meta.source = args.source;
  meta.normalization = transform;
  if (meta.category) object.category = meta.category;
  save_asset(out, object, meta);
  print_warnings(warnings, log);
  const auto screws = std::count_if(object.joints.begin(), object.joints.end(),
                                    [](const Joint& j) { return j.kind == JointKind::kScrew; });
  log << "ingested " << meta.id << ": " << object.links.size() << " links, "
      << object.joints.size() << " joints (" << screws << " screw) -> " << out.string() << "\n";
}

void cmd_encode(const EncodeArgs& args, const CommonOptions& common, std::ostream& out) {
  const Asset asset = load_asset(args.asset);
  const ArticulationScript script = encode_object(asset.object);
  const std::string text =
      render(script, args.human ? ScriptForm::kHuman : ScriptForm::kTokens) + "\n";
  if (common.out.empty()) {
    out << text;
  } else {
    write_text(common.out, text);
  }
}

void cmd_decode(const DecodeArgs& args, const CommonOptions& common, std::ostream& log) {
  const fs::path out = require_out(common, "decode");
  ArticulatedObject object;
  try {
    object = parse_script(read_text(args.script));
  } catch (const Error& e) {
    raise(e.code(), args.script.string() + ": " + e.what());
  }
  if (args.cloud) {
    const PointCloud cloud = load_ply_cloud(*args.cloud);
    std::vector<Aabb> boxes;
    for (const Link& l : object.links) boxes.push_back(l.aabb);
    const std::vector<Aabb> grown = expand_boxes(cloud.points, boxes);
    for (size_t i = 0; i < object.links.size(); ++i) object.links[i].aabb = grown[i];
    log << "expanded " << boxes.size() << " boxes over " << cloud.size() << " points\n";
  }
  AssetMeta meta;
  meta.id = args.id.empty() ? out.stem().string() : args.id;
  if (!args.category.empty()) {
    meta.category = args.category;
    object.category = args.category;
  }
  save_asset(out, object, meta);
  log << "decoded " << object.links.size() << " links, " << object.joints.size()
      << " joints -> " << out.string() << "\n";
}

RefineResult cmd_refine(const RefineArgs& args, const CommonOptions& common, std::ostream& log) {
  Warnings warnings;
  const Asset asset = load_asset(args.asset, &warnings);
  RefinerConfig config;
  if (args.config) config = refiner_config_from(load_key_values(*args.config));
  if (common.grid_res) config.grid_resolution = *common.grid_res;
  config = refiner_config_from({}, config);  // range checks
  if (!common.quiet) log << "# refiner\n" << to_key_values(config);

  RefineResult result = refine_all(asset.object, config);
  print_warnings(warnings, log);
  for (const RefinedLimit& l : result.limits) {
    for (const std::string& d : l.diagnostics) {
      log << "joint " << l.joint_id << ": " << d << "\n";
    }
    log << "joint " << l.joint_id << ": [" << l.original.lo << ", " << l.original.hi << "] -> ["
        << l.corrected.lo << ", " << l.corrected.hi << "]"
        << (l.contact_found ? "" : " (no contact)") << "\n";
  }
  for (const std::string& e : result.errors) log << "skipped " << e << "\n";

  const std::string report = report_json(result).dump(2) + "\n";
  if (!common.out.empty()) {
    const fs::path out = common.out;
    save_asset(out, result.object, asset.meta);
    fs::path report_path = args.report.value_or(out.parent_path() / (out.stem().string() + ".refine.json"));
    write_text(report_path, report);
    log << "wrote " << out.string() << " and " << report_path.string() << "\n";
  } else if (args.report) {
    write_text(*args.report, report);
  } else {
    log << report;
  }
  return result;
}

std::vector<std::pair<std::string, std::string>> read_manifest(const fs::path& path) {
  std::istringstream in(read_text(path));
  std::vector<std::pair<std::string, std::string>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const size_t comma = line.find(',');
    if (comma == std::string::npos) {
      raise(ErrorCode::kConfigError,
            path.string() + ":" + std::to_string(line_no) + ": expected 'id,category'");
    }
    std::string id = line.substr(0, comma);
    std::string category = line.substr(comma + 1);
    if (rows.empty() && id == "id" && category == "category") continue;
    rows.emplace_back(std::move(id), std::move(category));
  }
  return rows;
}

EvalReport cmd_eval(const EvalArgs& args, const CommonOptions& common, std::ostream& out) {
  const UpAxisMap up = UpAxisMap::parse(common.up_axis);
  const auto manifest = read_manifest(args.manifest);
  std::vector<EvalCase> cases(manifest.size());
  parallel_items(static_cast<int>(manifest.size()), [&](int i) {
    const auto& [id, category] = manifest[i];
    cases[i].id = id;
    cases[i].category = category;
    cases[i].pred = load_prediction(args.pred_dir, id);
    cases[i].gt = load_asset(args.gt_dir / (id + ".urdf")).object;
  });
  EvalReport report = evaluate(cases, up);
  if (!common.out.empty()) {
    const fs::path dir = common.out;
    write_text(dir / "report.json", report.to_json() + "\n");
    write_text(dir / "report.txt", report.to_table());
  }
  out << report.to_table();
  return report;
}

CorpusOutput cmd_corpus(const CorpusArgs& args, const CommonOptions& common, std::ostream& log) {
  const fs::path out = require_out(common, "corpus");
  CorpusOptions options;
  options.seed = common.seed;
  options.augment = !args.no_augment;
  options.sample_clouds = !args.no_clouds;
  options.cloud_points = args.cloud_points;
  if (args.policy) options.policy = filter_policy_from(load_key_values(*args.policy));

  const std::vector<fs::path> files = find_urdfs(args.dataset_dir);
  std::vector<CorpusEntry> entries(files.size());
  parallel_items(static_cast<int>(files.size()), [&](int i) {
    Asset asset = load_asset(files[i]);
    CorpusEntry& e = entries[i];
    e.id = asset.meta.id;
    e.category = asset.meta.category.value_or("unknown");
    e.source = asset.meta.source.empty() ? "unknown" : asset.meta.source;
    e.object = normalize(asset.object).first;
    e.object.category = e.category;
  });

  CorpusOutput result = build_corpus(std::move(entries), options);
  std::string jsonl;
  for (const std::string& r : result.records) jsonl += r + "\n";
  write_text(out / "corpus.jsonl", jsonl);
  for (const auto& [id, cloud] : result.clouds) {
    const fs::path p = out / point_cloud_path(id);
    fs::create_directories(p.parent_path());
    save_ply_cloud(p, cloud);
  }
  write_text(out / "stats.json", result.stats.to_json() + "\n");
  write_text(out / "stats.txt", result.stats.to_text());
  write_text(out / "dropped.json", nlohmann::json(result.dropped).dump(2) + "\n");

  log << "kept " << result.records.size() << " of " << files.size() << " objects; tasks";
  for (const auto& [task, n] : result.task_counts) log << " " << static_cast<int>(task) << ":" << n;
  log << "\n";
  return result;
}

void cmd_codebook_dump(const CommonOptions& common, std::ostream& out) {
  const std::string csv = AxisCodebook::standard().to_csv();
  if (common.out.empty()) {
    out << csv;
  } else {
    write_text(common.out, csv);
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Articulated-object asset and script tooling", "artkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.option_defaults()->always_capture_default();

  CommonOptions common;
  int grid_res = 0;
  app.add_option("--seed", common.seed, "Root seed for every random stream");
  app.add_option("--up-axis", common.up_axis, "Prediction up axis: y, z or e.g. x,z,-y");
  app.add_option("--grid-res", grid_res, "Collision grid resolution")->check(CLI::Range(4, 4096));
  app.add_option("--jobs", common.jobs, "Worker threads (0 = OpenMP default)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out", common.out, "Output file or directory");
  app.add_flag("-q,--quiet", common.quiet, "Do not print the effective configuration");

  IngestArgs ingest;
  CLI::App* c_ingest = app.add_subcommand("ingest", "URDF -> normalized asset");
  c_ingest->add_option("urdf", ingest.urdf)->required()->check(CLI::ExistingFile);
  c_ingest->add_option("--id", ingest.id);
  c_ingest->add_option("--category", ingest.category);
  c_ingest->add_option("--source", ingest.source);

  EncodeArgs encode;
  CLI::App* c_encode = app.add_subcommand("encode", "asset -> articulation script");
  c_encode->add_option("asset", encode.asset)->required()->check(CLI::ExistingFile);
  c_encode->add_flag("--human", encode.human, "Bare-integer form instead of tokens");

  DecodeArgs decode;
  std::string decode_cloud;
  CLI::App* c_decode = app.add_subcommand("decode", "articulation script -> asset");
  c_decode->add_option("script", decode.script)->required()->check(CLI::ExistingFile);
  c_decode->add_option("--cloud", decode_cloud, "PLY cloud used to grow the boxes")
      ->check(CLI::ExistingFile);
  c_decode->add_option("--id", decode.id);
  c_decode->add_option("--category", decode.category);

  RefineArgs refine;
  std::string refine_config;
  std::string refine_report;
  CLI::App* c_refine = app.add_subcommand("refine", "collision-based joint limit correction");
  c_refine->add_option("asset", refine.asset)->required()->check(CLI::ExistingFile);
  c_refine->add_option("--config", refine_config, "Refiner key=value file")
      ->check(CLI::ExistingFile);
  c_refine->add_option("--report", refine_report, "Report path (JSON)");

  EvalArgs eval;
  CLI::App* c_eval = app.add_subcommand("eval", "score predictions against ground truth");
  c_eval->add_option("pred_dir", eval.pred_dir)->required()->check(CLI::ExistingDirectory);
  c_eval->add_option("gt_dir", eval.gt_dir)->required()->check(CLI::ExistingDirectory);
  c_eval->add_option("manifest", eval.manifest)->required()->check(CLI::ExistingFile);

  CorpusArgs corpus;
  std::string corpus_policy;
  CLI::App* c_corpus = app.add_subcommand("corpus", "build the conversation corpus");
  c_corpus->add_option("dataset_dir", corpus.dataset_dir)->required()
      ->check(CLI::ExistingDirectory);
  c_corpus->add_option("--policy", corpus_policy, "Filter policy key=value file")
      ->check(CLI::ExistingFile);
  c_corpus->add_flag("--no-augment", corpus.no_augment);
  c_corpus->add_flag("--no-clouds", corpus.no_clouds, "Skip writing point clouds");
  c_corpus->add_option("--cloud-points", corpus.cloud_points)->check(CLI::PositiveNumber);

  CLI::App* c_codebook = app.add_subcommand("codebook-dump", "print the axis codebook as CSV");

  attach_env_names(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help exits 0; every other parse failure is a usage error.
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }
  if (grid_res > 0) common.grid_res = grid_res;
  if (!decode_cloud.empty()) decode.cloud = decode_cloud;
  if (!refine_config.empty()) refine.config = refine_config;
  if (!refine_report.empty()) refine.report = refine_report;
  if (!corpus_policy.empty()) corpus.policy = corpus_policy;
  if (common.jobs > 0) omp_set_num_threads(common.jobs);
  if (!common.quiet) {
    err << "# effective configuration\n";
    print_options(app, "", err);
    for (const CLI::App* sub : app.get_subcommands()) print_options(*sub, sub->get_name() + ".", err);
  }

  try {
    if (c_ingest->parsed()) {
      cmd_ingest(ingest, common, err);
    } else if (c_encode->parsed()) {
      cmd_encode(encode, common, out);
    } else if (c_decode->parsed()) {
      cmd_decode(decode, common, err);
    } else if (c_refine->parsed()) {
      cmd_refine(refine, common, err);
    } else if (c_eval->parsed()) {
      cmd_eval(eval, common, out);
    } else if (c_corpus->parsed()) {
      cmd_corpus(corpus, common, err);
    } else if (c_codebook->parsed()) {
      cmd_codebook_dump(common, out);
    }
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace artkit::cli
