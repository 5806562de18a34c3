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


#ifndef QOPT_CORPUS_H_
#define QOPT_CORPUS_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "qopt/document.h"

namespace qopt {

struct RecordError {
  std::size_t line = 0;  // 1-based
  std::string message;
};

struct IngestResult {
  std::vector<Document> documents;
  std::vector<RecordError> errors;
};

// Reads a JSON-lines corpus. Each line is an object with "id" and "text"
// (required) and optional "user", "location", "lang", "hashtags" and
// "mentions". Pre-tokenized hashtag/mention arrays replace extraction from
// the text for those classes. Malformed records are skipped and reported;
// an unreadable file throws a data error.
IngestResult Ingest(const std::filesystem::path& path);
IngestResult IngestStream(std::istream& in);

// Parses one record. Throws DataError on malformed input.
Document ParseRecord(const std::string& json_line);

void WriteCorpus(const std::vector<Document>& docs, std::ostream& out);

struct PreprocessOptions {
  // Records carrying a "lang" tag are kept only when it matches. Records
  // without a tag are always kept. Empty disables the filter.
  std::string keep_lang = "en";
};

// Drops language-mismatched records, hashtag-less records and duplicate
// texts (first occurrence wins). Survivor order is preserved.
std::vector<Document> Preprocess(std::vector<Document> docs,
                                 const PreprocessOptions& options = {});

// Partitions documents into P (carrying any labeling hashtag) and N.
LabeledCorpus Label(std::vector<Document> docs,
                    const std::set<std::string>& labeling_hashtags,
                    const std::string& topic);

// One hashtag per line; '#' prefixes, blank lines and surrounding whitespace
// are tolerated.
std::set<std::string> LoadLabelingHashtags(const std::filesystem::path& path);

}  // namespace qopt

#endif  // QOPT_CORPUS_H_
