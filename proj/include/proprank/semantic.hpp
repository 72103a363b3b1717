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
//
// Latent topic models over the article corpus. Entities are represented
// by the topics of their articles, properties by the topics of their
// label + description; the judge prefers the property whose topic vector
// is closer (by cosine) to the entity's.

#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "proprank/judge.hpp"
#include "proprank/kbstore.hpp"
#include "proprank/textcorpus.hpp"

namespace proprank {

enum class TopicKind { Lsi, Lda };

struct TopicVector {
    TopicKind kind = TopicKind::Lsi;
    std::vector<double> values;
};

// Cosine similarity of two topic vectors of the same kind and length.
// Throws std::invalid_argument on mismatched vectors or zero norms.
double cosine(const TopicVector& u, const TopicVector& v);

// Rank-k truncated SVD of the TF-IDF term-document matrix.
struct LsiModel {
    int k = 0;
    uint64_t seed = 0;
    uint64_t corpus_fingerprint = 0;
    std::vector<std::string> terms;     // row manifest, corpus vocabulary order
    Eigen::MatrixXd term_topics;        // |V| x k, orthonormal columns
    Eigen::VectorXd singular_values;    // k, non-increasing
    Eigen::MatrixXd doc_topics;         // D x k, training document representations
    std::vector<std::string> doc_ids;
};

// Seeded randomized subspace iteration: Gaussian sketch, `power_iterations`
// orthonormalized power steps, then an exact SVD of the projected matrix.
// Throws if k exceeds min(|V|, docs).
LsiModel train_lsi(const TextCorpus& corpus, const TfIdfModel& tfidf, int k, uint64_t seed,
                   int oversample = 10, int power_iterations = 3);

// Fold-in projection diag(1/sigma) * U^T * x of the bag's TF-IDF vector.
// Components with vanishing singular values are zeroed. Throws
// AbstainError when nothing in the bag survives the model vocabulary.
TopicVector lsi_infer(const LsiModel& model, const TfIdfModel& tfidf, const BagOfWords& bag);

struct LdaOptions {
    int topics = 100;
    double alpha = -1;  // < 0 means 1/topics
    double beta = 0.01;
    uint64_t seed = 42;
    int train_sweeps = 1000;
    int infer_sweeps = 200;

    double resolved_alpha() const { return alpha < 0 ? 1.0 / topics : alpha; }
};

struct LdaModel {
    int k = 0;
    double alpha = 0;
    double beta = 0;
    uint64_t seed = 0;
    int train_sweeps = 0;
    int infer_sweeps = 200;
    uint64_t corpus_fingerprint = 0;
    std::vector<std::string> terms;          // column manifest
    std::vector<std::vector<double>> phi;    // k x |V|; each row sums to 1
};

// Collapsed Gibbs sampling over raw token counts for a fixed sweep budget;
// deterministic under the seed. phi is the beta-smoothed topic-word
// estimate from the final state.
LdaModel train_lda(const TextCorpus& corpus, const LdaOptions& options);

// Gibbs inference with phi held fixed; returns the alpha-smoothed
// document-topic distribution of the final state. The inference seed is
// derived from the model seed and the bag content, so results do not
// depend on call order.
TopicVector lda_infer(const LdaModel& model, const BagOfWords& bag);

// Bag of the property's label + description against the corpus
// vocabulary. Throws AbstainError when preprocessing leaves nothing.
BagOfWords property_text_bag(const TextCorpus& corpus, const PropertyDef& def);

nlohmann::json lsi_model_to_json(const LsiModel& model);
LsiModel lsi_model_from_json(const nlohmann::json& j);
nlohmann::json lda_model_to_json(const LdaModel& model);
LdaModel lda_model_from_json(const nlohmann::json& j);

class SemanticJudge : public PreferenceJudge {
public:
    // LSI variant
    SemanticJudge(const KnowledgeStore& store, const TextCorpus& corpus,
                  const TfIdfModel& tfidf, const LsiModel& lsi);
    // LDA variant
    SemanticJudge(const KnowledgeStore& store, const TextCorpus& corpus, const LdaModel& lda);

    PreferenceJudgment judge(const EntityId& e, const PropertyId& p,
                             const PropertyId& q) const override;
    std::string name() const override { return kind_ == TopicKind::Lsi ? "lsi" : "lda"; }

private:
    TopicVector entity_vector(const EntityId& e) const;
    TopicVector property_vector(const PropertyId& p) const;
    TopicVector infer(const BagOfWords& bag) const;

    const KnowledgeStore& store_;
    const TextCorpus& corpus_;
    const TfIdfModel* tfidf_ = nullptr;
    const LsiModel* lsi_ = nullptr;
    const LdaModel* lda_ = nullptr;
    TopicKind kind_;
    mutable std::map<std::string, TopicVector> cache_;  // "e:" / "p:" keys
    mutable std::mutex mutex_;
};

}  // namespace proprank
