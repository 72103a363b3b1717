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

#include "proprank/textcorpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "proprank/io.hpp"

namespace proprank {

double sparse_dot(const SparseVec& a, const SparseVec& b) {
    double dot = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->first < ib->first) ++ia;
        else if (ib->first < ia->first) ++ib;
        else {
            dot += ia->second * ib->second;
            ++ia;
            ++ib;
        }
    }
    return dot;
}

double sparse_norm(const SparseVec& a) {
    double sq = 0;
    for (const auto& [id, v] : a) sq += v * v;
    return std::sqrt(sq);
}

namespace text {

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string cur;
    for (unsigned char c : text) {
        if (std::isalnum(c) || c >= 0x80) {
            cur += static_cast<char>(std::tolower(c));
        } else if (!cur.empty()) {
            tokens.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));
    return tokens;
}

std::vector<std::string> preprocess(std::string_view text,
                                    const std::unordered_set<std::string>& stopwords) {
    std::vector<std::string> out;
    for (auto& token : tokenize(text)) {
        if (stopwords.count(token)) continue;
        out.push_back(porter_stem(token));
    }
    return out;
}

std::vector<std::string> preprocess(std::string_view text) {
    static const std::unordered_set<std::string> stops(default_stopwords().begin(),
                                                       default_stopwords().end());
    return preprocess(text, stops);
}

}  // namespace text

int64_t BagOfWords::total() const {
    int64_t n = 0;
    for (const auto& [id, c] : counts) n += c;
    return n;
}

Vocabulary Vocabulary::build(const std::vector<std::vector<std::string>>& docs) {
    if (docs.empty()) throw std::invalid_argument("vocabulary requires at least one document");
    Vocabulary v;
    v.total_docs_ = static_cast<int64_t>(docs.size());

    std::map<std::string, int64_t> df;
    for (const auto& doc : docs) {
        std::unordered_set<std::string> seen;
        for (const auto& t : doc)
            if (seen.insert(t).second) ++df[t];
    }
    v.terms_.reserve(df.size());
    v.doc_frequency_.reserve(df.size());
    for (auto& [term, count] : df) {  // std::map iterates lexicographically
        v.index_.emplace(term, static_cast<int32_t>(v.terms_.size()));
        v.terms_.push_back(term);
        v.doc_frequency_.push_back(count);
    }
    return v;
}

int32_t Vocabulary::term_id(std::string_view term) const {
    auto it = index_.find(std::string(term));
    return it == index_.end() ? -1 : it->second;
}

BagOfWords Vocabulary::bag(const std::vector<std::string>& tokens) const {
    std::map<int32_t, int32_t> counts;
    for (const auto& t : tokens) {
        int32_t id = term_id(t);
        if (id >= 0) ++counts[id];
    }
    BagOfWords b;
    b.counts.assign(counts.begin(), counts.end());
    return b;
}

TfIdfModel TfIdfModel::fit(const Vocabulary& vocab, double prune_low, double prune_high) {
    if (vocab.size() == 0) throw std::invalid_argument("empty vocabulary");
    if (prune_low < 0 || prune_high < 0 || prune_low + prune_high > 1.0)
        throw std::invalid_argument("prune fractions must be non-negative and sum to <= 1");

    const int32_t n = vocab.size();
    std::vector<int32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    // Descending document frequency; boundary ties resolve by term order
    // (ids are assigned lexicographically) so pruning is deterministic.
    std::stable_sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
        if (vocab.doc_frequency(a) != vocab.doc_frequency(b))
            return vocab.doc_frequency(a) > vocab.doc_frequency(b);
        return a < b;
    });

    auto cut = [n](double fraction) -> int32_t {
        if (fraction <= 0) return 0;
        auto c = static_cast<int32_t>(std::floor(n * fraction));
        return std::max<int32_t>(1, c);
    };
    int32_t n_high = cut(prune_high);
    int32_t n_low = cut(prune_low);
    if (n_high + n_low >= n)
        throw std::runtime_error("empty vocabulary after pruning");

    TfIdfModel m;
    m.prune_low_ = prune_low;
    m.prune_high_ = prune_high;
    m.retained_.assign(n, false);
    m.idf_.assign(n, 0.0);
    for (int32_t r = n_high; r < n - n_low; ++r) {
        int32_t id = order[r];
        m.retained_[id] = true;
        m.idf_[id] = std::log(static_cast<double>(vocab.total_docs()) /
                              static_cast<double>(vocab.doc_frequency(id)));
        ++m.retained_count_;
    }
    return m;
}

SparseVec TfIdfModel::vectorize(const BagOfWords& bag) const {
    SparseVec out;
    for (const auto& [id, count] : bag.counts) {
        if (id < 0 || id >= static_cast<int32_t>(retained_.size()))
            throw std::out_of_range("term id outside this model's vocabulary");
        if (retained_[id]) out.emplace_back(id, count * idf_[id]);
    }
    return out;
}

SparseVec raw_counts(const BagOfWords& bag) {
    SparseVec out;
    out.reserve(bag.counts.size());
    for (const auto& [id, count] : bag.counts) out.emplace_back(id, static_cast<double>(count));
    return out;
}

TextCorpus TextCorpus::from_documents(const std::vector<std::pair<std::string, std::string>>& docs) {
    if (docs.empty()) throw std::invalid_argument("corpus requires at least one document");
    TextCorpus corpus;

    std::map<std::string, std::vector<std::string>> tokenized;
    for (const auto& [id, raw] : docs) {
        if (!tokenized.emplace(id, text::preprocess(raw)).second)
            throw std::invalid_argument("duplicate document id: " + id);
    }

    std::vector<std::vector<std::string>> token_docs;
    token_docs.reserve(tokenized.size());
    for (const auto& [id, tokens] : tokenized) token_docs.push_back(tokens);
    corpus.vocab_ = Vocabulary::build(token_docs);

    uint64_t fp = io::fnv1a("proprank-corpus-v1");
    for (const auto& [id, tokens] : tokenized) {
        BagOfWords bag = corpus.vocab_.bag(tokens);
        fp = io::fnv1a(id, fp);
        for (const auto& [tid, count] : bag.counts) {
            fp = io::fnv1a_mix(fp, static_cast<uint64_t>(tid));
            fp = io::fnv1a_mix(fp, static_cast<uint64_t>(count));
        }
        corpus.doc_ids_.push_back(id);
        corpus.docs_.emplace(id, std::move(bag));
    }
    corpus.fingerprint_ = fp;
    return corpus;
}

TextCorpus TextCorpus::load_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open corpus file: " + path.string());
    std::vector<std::pair<std::string, std::string>> docs;
    std::vector<std::string> errors;
    io::for_each_jsonl(
        in,
        [&](int line, const nlohmann::json& doc) {
            if (!doc.is_object() || !doc.contains("doc_id") || !doc["doc_id"].is_string() ||
                !doc.contains("text") || !doc["text"].is_string()) {
                errors.push_back("line " + std::to_string(line) + ": need {doc_id, text}");
                return;
            }
            docs.emplace_back(doc["doc_id"].get<std::string>(), doc["text"].get<std::string>());
        },
        [&](int line, const std::string& msg) {
            errors.push_back("line " + std::to_string(line) + ": " + msg);
        });
    if (!errors.empty())
        throw std::runtime_error("corpus " + path.string() + ": " + errors.front() +
                                 (errors.size() > 1 ? " (+" + std::to_string(errors.size() - 1) + " more)" : ""));
    return from_documents(docs);
}

const BagOfWords* TextCorpus::bag(const std::string& doc_id) const {
    auto it = docs_.find(doc_id);
    return it == docs_.end() ? nullptr : &it->second;
}

BagOfWords TextCorpus::bag_for_text(std::string_view raw) const {
    return vocab_.bag(text::preprocess(raw));
}

}  // namespace proprank
