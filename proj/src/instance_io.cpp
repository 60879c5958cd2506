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

#include "rtbench/instance_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rtbench {

namespace {

nlohmann::json terms_json(const std::map<int, double>& linear, const std::map<PairKey, double>& pairs,
                          const std::map<TripleKey, double>* triples, int n,
                          const nlohmann::json& metadata) {
  nlohmann::json j;
  j["n"] = n;
  auto& lin = j["linear_terms"] = nlohmann::json::array();
  for (const auto& [i, v] : linear) lin.push_back({i, v});
  auto& pr = j["pair_terms"] = nlohmann::json::array();
  for (const auto& [k, v] : pairs) pr.push_back({k[0], k[1], v});
  auto& tr = j["triple_terms"] = nlohmann::json::array();
  if (triples)
    for (const auto& [k, v] : *triples) tr.push_back({k[0], k[1], k[2], v});
  j["metadata"] = metadata.is_null() ? nlohmann::json::object() : metadata;
  return j;
}

}  // namespace

nlohmann::json instance_to_json(const HuboInstance& inst) {
  return terms_json(inst.linear_terms(), inst.pair_terms(), &inst.triple_terms(), inst.size(),
                    inst.metadata);
}

nlohmann::json instance_to_json(const IsingInstance& inst) {
  return terms_json(inst.fields(), inst.couplings(), nullptr, inst.size(), inst.metadata);
}

HuboInstance instance_from_json(const nlohmann::json& j) {
  try {
    HuboInstance inst(j.at("n").get<int>());
    if (j.contains("linear_terms"))
      for (const auto& t : j.at("linear_terms")) {
        if (t.size() != 2) throw std::invalid_argument("linear term needs [i, value]");
        inst.add_linear(t[0].get<int>(), t[1].get<double>());
      }
    if (j.contains("pair_terms"))
      for (const auto& t : j.at("pair_terms")) {
        if (t.size() != 3) throw std::invalid_argument("pair term needs [i, j, value]");
        inst.add_pair(t[0].get<int>(), t[1].get<int>(), t[2].get<double>());
      }
    if (j.contains("triple_terms"))
      for (const auto& t : j.at("triple_terms")) {
        if (t.size() != 4) throw std::invalid_argument("triple term needs [p, q, r, value]");
        inst.add_triple(t[0].get<int>(), t[1].get<int>(), t[2].get<int>(), t[3].get<double>());
      }
    if (j.contains("metadata")) inst.metadata = j.at("metadata");
    return inst;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed instance: ") + e.what());
  }
}

std::string serialize_instance(const HuboInstance& inst) { return instance_to_json(inst).dump(1) + "\n"; }
std::string serialize_instance(const IsingInstance& inst) { return instance_to_json(inst).dump(1) + "\n"; }

HuboInstance parse_instance(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("instance is not valid JSON: ") + e.what());
  }
  return instance_from_json(j);
}

HuboInstance load_instance(const std::filesystem::path& path) { return parse_instance(read_text_file(path)); }

void save_instance(const std::filesystem::path& path, const HuboInstance& inst) {
  write_text_file(path, serialize_instance(inst));
}

void save_instance(const std::filesystem::path& path, const IsingInstance& inst) {
  write_text_file(path, serialize_instance(inst));
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string instance_hash(const HuboInstance& inst) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(serialize_instance(inst))));
  return buf;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace rtbench
