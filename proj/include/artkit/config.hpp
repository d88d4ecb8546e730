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

// key=value configuration files for the refiner and the corpus filter.
//
// INI syntax: `key = value` lines, `#` or `;` comments. `[section]`
// headers are allowed for readability and otherwise ignored.

#ifndef ARTKIT_CONFIG_HPP_
#define ARTKIT_CONFIG_HPP_

#include <filesystem>
#include <map>
#include <string>

#include "artkit/corpus.hpp"
#include "artkit/refine.hpp"

namespace artkit {

using KeyValues = std::map<std::string, std::string>;

/// Raises ConfigError on malformed input or duplicate keys.
KeyValues parse_key_values(const std::string& text);
KeyValues load_key_values(const std::filesystem::path& path);

/// Keys: steps, grid_resolution, tau, eps_v, rot_tolerance_deg,
/// trans_tolerance, occupancy (solid | interior | surface), parallel.
/// Unknown keys raise ConfigError.
RefinerConfig refiner_config_from(const KeyValues& kv, RefinerConfig base = {});
std::string to_key_values(const RefinerConfig& config);

/// Keys: max_joints, min_part_volume_fraction, excluded_categories
/// (comma separated, may be empty).
FilterPolicy filter_policy_from(const KeyValues& kv, FilterPolicy base = {});
std::string to_key_values(const FilterPolicy& policy);

}  // namespace artkit

#endif  // ARTKIT_CONFIG_HPP_
