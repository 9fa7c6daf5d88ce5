// Copyright 2026 The streamdec Authors. All Rights Reserved.
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

#include "streamdec/corpus.h"

#include <fstream>
#include <set>

#include "json.hpp"

namespace streamdec {

namespace {

std::vector<int> IntArray(const nlohmann::json& doc, const char* field,
                          const std::string& where) {
  if (!doc.contains(field) || !doc.at(field).is_array()) {
    throw InputError(where + ": '" + field + "' must be an array of integers");
  }
  std::vector<int> out;
  for (const auto& v : doc.at(field)) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw InputError(where + ": '" + field +
                       "' must hold non-negative integers");
    }
    out.push_back(v.get<int>());
  }
  if (out.empty()) throw InputError(where + ": '" + field + "' is empty");
  return out;
}

}  // namespace

std::vector<CorpusRecord> ParseCorpus(std::istream& in) {
  std::vector<CorpusRecord> corpus;
  std::set<std::string> ids;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "line " + std::to_string(line_no);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError(where + ": malformed JSON (" + e.what() + ")");
    }
    if (!doc.is_object()) throw InputError(where + ": record must be an object");
    CorpusRecord record;
    if (!doc.contains("id") || !doc.at("id").is_string()) {
      throw InputError(where + ": 'id' must be a string");
    }
    record.id = doc.at("id").get<std::string>();
    record.source = IntArray(doc, "source", where);
    const auto ref = IntArray(doc, "reference", where);
    record.reference.assign(ref.begin(), ref.end());
    if (!doc.contains("block_ms") || !doc.at("block_ms").is_number() ||
        !(doc.at("block_ms").get<double>() > 0.0)) {
      throw InputError(where + ": 'block_ms' must be a positive number");
    }
    record.block_ms = doc.at("block_ms").get<double>();
    if (!ids.insert(record.id).second) {
      throw InputError(where + ": duplicate id '" + record.id + "'");
    }
    corpus.push_back(std::move(record));
  }
  if (corpus.empty()) throw InputError("corpus has no records");
  return corpus;
}

std::vector<CorpusRecord> LoadCorpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open corpus file '" + path + "'");
  try {
    return ParseCorpus(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string CorpusRecordToJson(const CorpusRecord& record) {
  nlohmann::ordered_json doc;
  doc["id"] = record.id;
  doc["source"] = record.source;
  doc["reference"] = record.reference;
  doc["block_ms"] = record.block_ms;
  return doc.dump();
}

void WriteCorpus(const std::vector<CorpusRecord>& corpus, std::ostream& out) {
  for (const auto& record : corpus) out << CorpusRecordToJson(record) << '\n';
}

}  // namespace streamdec
