/**
 * Copyright 2026 The rtbench Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "json.hpp"
#include "rtbench/model.hpp"

namespace rtbench {

// Instance files are JSON objects:
//   { "n": 4,
//     "linear_terms": [[i, h_i], ...],
//     "pair_terms":   [[i, j, J_ij], ...],
//     "triple_terms": [[p, q, r, K_pqr], ...],
//     "metadata": { ... } }
// Terms are written in canonical (sorted) key order. Doubles are printed in
// their shortest round-trip decimal form.

nlohmann::json instance_to_json(const HuboInstance& inst);
nlohmann::json instance_to_json(const IsingInstance& inst);
HuboInstance instance_from_json(const nlohmann::json& j);

std::string serialize_instance(const HuboInstance& inst);
std::string serialize_instance(const IsingInstance& inst);
HuboInstance parse_instance(const std::string& text);

HuboInstance load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const HuboInstance& inst);
void save_instance(const std::filesystem::path& path, const IsingInstance& inst);

std::uint64_t fnv1a64(const std::string& data);
/// 16-hex-digit FNV-1a digest of the canonical serialization.
std::string instance_hash(const HuboInstance& inst);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace rtbench
