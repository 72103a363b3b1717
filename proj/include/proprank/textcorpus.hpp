// Copyright 2026 The proprank Authors.
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace proprank {

// Sparse vectors are (index, value) pairs sorted by index.
using SparseVec = std::vector<std::pair<int32_t, double>>;

double sparse_dot(const SparseVec& a, const SparseVec& b);
double sparse_norm(const SparseVec& a);

namespace text {

// Classic Porter stemming algorithm (1980 rules, with the reference
// implementation's step-2 adjustments). Expects a lowercased token.
std::string porter_stem(std::string_view word);

// The bundled English stop list, version 1. Sorted, lowercase.
const std::vector<std::string>& default_stopwords();

// Lowercases and splits on anything that is not an ASCII alphanumeric;
// bytes >= 0x80 are kept so UTF-8 words survive untouched.
std::vector<std::string> tokenize(std::string_view text);

// tokenize + stop word removal + stemming. Deterministic.
std::vector<std::string> preprocess(std::string_view text);
std::vector<std::string> preprocess(std::string_view text,
                                    const std::unordered_set<std::string>& stopwords);

std::unordered_set<std::string> load_stopword_file(const std::filesystem::path& path);

}  // namespace text

struct BagOfWords {
    std::vector<std::pair<int32_t, int32_t>> counts;  // term id -> count, sorted

    int64_t total() const;
    bool empty() const { return counts.empty(); }
};

class Vocabulary {
public:
    // Assigns dense ids 0..|V|-1 in lexicographic term order and counts
    // in how many documents each term occurs. Requires >= 1 document.
    static Vocabulary build(const std::vector<std::vector<std::string>>& docs);

    int32_t term_id(std::string_view term) const;  // -1 when absent
    const std::string& term(int32_t id) const { return terms_.at(id); }
    int32_t size() const { return static_cast<int32_t>(terms_.size()); }
    int64_t doc_frequency(int32_t id) const { return doc_frequency_.at(id); }
    int64_t total_docs() const { return total_docs_; }
    const std::vector<std::string>& terms() const { return terms_; }

    BagOfWords bag(const std::vector<std::string>& tokens) const;  // OOV dropped

private:
    std::vector<std::string> terms_;
    std::unordered_map<std::string, int32_t> index_;
    std::vector<int64_t> doc_frequency_;
    int64_t total_docs_ = 0;
};

// IDF weighting with document-frequency pruning. Terms are ranked by
// descending document frequency; the top `prune_high` and bottom
// `prune_low` fractions are dropped (a nonzero fraction always drops at
// least one term; boundary ties resolve by lexicographic term order).
class TfIdfModel {
public:
    static TfIdfModel fit(const Vocabulary& vocab, double prune_low = 0.2,
                          double prune_high = 0.2);

    bool retained(int32_t id) const { return retained_.at(id); }
    double idf(int32_t id) const { return idf_.at(id); }
    int32_t retained_count() const { return retained_count_; }
    double prune_low() const { return prune_low_; }
    double prune_high() const { return prune_high_; }

    // count * idf over retained terms.
    SparseVec vectorize(const BagOfWords& bag) const;

private:
    std::vector<bool> retained_;
    std::vector<double> idf_;
    int32_t retained_count_ = 0;
    double prune_low_ = 0, prune_high_ = 0;
};

// Raw term counts as a sparse vector (the unweighted feature mode).
SparseVec raw_counts(const BagOfWords& bag);

// A preprocessed document collection with a shared vocabulary.
class TextCorpus {
public:
    // documents: (doc id, raw text). Duplicated ids throw.
    static TextCorpus from_documents(const std::vector<std::pair<std::string, std::string>>& docs);
    // JSONL file of {"doc_id": ..., "text": ...} records.
    static TextCorpus load_jsonl(const std::filesystem::path& path);

    const Vocabulary& vocabulary() const { return vocab_; }
    const BagOfWords* bag(const std::string& doc_id) const;
    // Preprocesses free text against this corpus' vocabulary; OOV dropped.
    BagOfWords bag_for_text(std::string_view text) const;
    const std::vector<std::string>& doc_ids() const { return doc_ids_; }
    int64_t size() const { return static_cast<int64_t>(doc_ids_.size()); }

    // Stable content hash used to key model caches.
    uint64_t fingerprint() const { return fingerprint_; }

private:
    Vocabulary vocab_;
    std::map<std::string, BagOfWords> docs_;
    std::vector<std::string> doc_ids_;  // sorted
    uint64_t fingerprint_ = 0;
};

}  // namespace proprank
