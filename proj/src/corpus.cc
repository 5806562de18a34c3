// Copyright 2026 The Authors.
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


#include "qopt/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "qopt/errors.h"
#include "qopt/tokenizer.h"

namespace qopt {
namespace {

using nlohmann::json;

std::string OptionalString(const json& record, const char* key) {
  auto it = record.find(key);
  if (it == record.end() || it->is_null()) return {};
  if (!it->is_string()) {
    throw DataError(std::string("field '") + key + "' must be a string");
  }
  return it->get<std::string>();
}

std::vector<std::string> TagArray(const json& value, const char* key) {
  if (!value.is_array()) {
    throw DataError(std::string("field '") + key + "' must be an array");
  }
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  for (const auto& item : value) {
    if (!item.is_string()) {
      throw DataError(std::string("field '") + key + "' must hold strings");
    }
    std::string tag = NormalizeTag(item.get<std::string>());
    if (!tag.empty() && seen.insert(tag).second) out.push_back(std::move(tag));
  }
  return out;
}

bool IsBlank(const std::string& line) {
  return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

Document ParseRecord(const std::string& json_line) {
  json record;
  try {
    record = json::parse(json_line);
  } catch (const json::parse_error& e) {
    throw DataError(std::string("invalid JSON: ") + e.what());
  }
  if (!record.is_object()) throw DataError("record is not a JSON object");

  Document doc;
  auto id = record.find("id");
  if (id == record.end() || !id->is_string() || id->get<std::string>().empty()) {
    throw DataError("missing or non-string 'id'");
  }
  doc.id = id->get<std::string>();
  auto text = record.find("text");
  if (text == record.end() || !text->is_string()) {
    throw DataError("missing or non-string 'text'");
  }
  doc.text = text->get<std::string>();
  doc.author = NormalizeTag(OptionalString(record, "user"));
  doc.location = NormalizeText(OptionalString(record, "location"));
  if (std::string lang = OptionalString(record, "lang"); !lang.empty()) {
    doc.lang = NormalizeText(lang);
  }

  TokenizedText tokens = Tokenize(doc.text);
  doc.terms = std::move(tokens.terms);
  doc.hashtags = record.contains("hashtags")
                     ? TagArray(record["hashtags"], "hashtags")
                     : std::move(tokens.hashtags);
  doc.mentions = record.contains("mentions")
                     ? TagArray(record["mentions"], "mentions")
                     : std::move(tokens.mentions);
  return doc;
}

IngestResult IngestStream(std::istream& in) {
  IngestResult result;
  std::unordered_set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    try {
      Document doc = ParseRecord(line);
      if (!ids.insert(doc.id).second) {
        throw DataError("duplicate id '" + doc.id + "'");
      }
      result.documents.push_back(std::move(doc));
    } catch (const Error& e) {
      result.errors.push_back({line_no, e.what()});
    }
  }
  return result;
}

IngestResult Ingest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read corpus file " + path.string());
  return IngestStream(in);
}

void WriteCorpus(const std::vector<Document>& docs, std::ostream& out) {
  for (const Document& doc : docs) {
    json record = {{"id", doc.id}, {"text", doc.text}};
    if (!doc.author.empty()) record["user"] = doc.author;
    if (!doc.location.empty()) record["location"] = doc.location;
    if (doc.lang) record["lang"] = *doc.lang;
    out << record.dump() << '\n';
  }
}

std::vector<Document> Preprocess(std::vector<Document> docs,
                                 const PreprocessOptions& options) {
  std::vector<Document> out;
  out.reserve(docs.size());
  std::unordered_set<std::string> seen_texts;
  for (Document& doc : docs) {
    if (!options.keep_lang.empty() && doc.lang &&
        *doc.lang != options.keep_lang) {
      continue;
    }
    if (doc.hashtags.empty()) continue;
    if (!seen_texts.insert(NormalizeText(doc.text)).second) continue;
    out.push_back(std::move(doc));
  }
  return out;
}

LabeledCorpus Label(std::vector<Document> docs,
                    const std::set<std::string>& labeling_hashtags,
                    const std::string& topic) {
  LabeledCorpus corpus;
  corpus.topic = topic;
  for (const std::string& tag : labeling_hashtags) {
    std::string normalized = NormalizeTag(tag);
    if (!normalized.empty()) corpus.labeling_hashtags.insert(normalized);
  }
  if (corpus.labeling_hashtags.empty()) {
    throw UsageError("labeling hashtag set for topic '" + topic +
                     "' is empty");
  }
  for (Document& doc : docs) {
    const bool positive = std::any_of(
        doc.hashtags.begin(), doc.hashtags.end(), [&](const std::string& h) {
          return corpus.labeling_hashtags.contains(h);
        });
    (positive ? corpus.positives : corpus.negatives).push_back(std::move(doc));
  }
  return corpus;
}

std::set<std::string> LoadLabelingHashtags(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read labeling file " + path.string());
  std::set<std::string> tags;
  std::string line;
  while (std::getline(in, line)) {
    std::string tag = NormalizeTag(line);
    if (!tag.empty()) tags.insert(std::move(tag));
  }
  return tags;
}

}  // namespace qopt
