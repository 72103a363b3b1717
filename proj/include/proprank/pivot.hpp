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
// Property pivoting: per property pair (p, q), a binary logistic
// regression over article bags of words decides whether an entity looks
// like the "has p, not q" or the "has q, not p" population. The trained
// classifier doubles as a preference judge: the predicted side's property
// is taken to be the more interesting one.

#pragma once

#include <filesystem>
#include <functional>
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

enum class FeatureMode { Counts, TfIdf };

std::string to_string(FeatureMode mode);
FeatureMode feature_mode_from_string(const std::string& s);

struct PivotDataset {
    PropertyId p, q;  // label 1 means "has p, not q"
    FeatureMode mode = FeatureMode::Counts;
    std::vector<EntityId> train_pos, train_neg;
    std::vector<EntityId> holdout_pos, holdout_neg;
};

struct PivotParams {
    int64_t cap = 10000;   // training entities per side
    int holdout = 200;     // holdout total, split evenly over the sides
    int64_t min_side = 50; // minimum eligible entities per side
};

// Deterministic dataset assembly: per side, eligible entities (those with
// an article in the corpus) in sorted-id order; the first `cap` train and
// the next `holdout / 2` are held out. Throws AbstainError("insufficient
// pivot data ...") when a side is smaller than `min_side`.
PivotDataset build_pivot_dataset(const KnowledgeStore& store, const TextCorpus& corpus,
                                 const PropertyId& p, const PropertyId& q, FeatureMode mode,
                                 const PivotParams& params = {});

struct LogisticHyperparams {
    double learning_rate = 0.1;
    double l2 = 1e-4;       // applied to weights, not the bias
    int max_epochs = 500;
    double tolerance = 1e-6;  // stop when the loss delta falls below this
    uint64_t seed = 42;       // recorded; the zero-initialised fit is deterministic
};

struct LogisticModel {
    PropertyId p, q;
    FeatureMode mode = FeatureMode::Counts;
    SparseVec weights;  // term id -> weight, sorted; zero weights omitted
    double bias = 0;
    int epochs_run = 0;
    bool converged = false;
    double final_loss = 0;
    uint64_t seed = 0;
    uint64_t corpus_fingerprint = 0;
    LogisticHyperparams hyper;

    // sigma(w.x + b), the probability of the "has p, not q" side
    double predict(const SparseVec& features) const;
};

// Plain L2-regularised logistic regression pieces, exposed so tests can
// check the analytic gradient against finite differences.
struct LogisticProblem {
    std::vector<SparseVec> features;
    std::vector<int> labels;  // 0/1
    int dim = 0;
    double l2 = 0;
};

double logistic_loss(const LogisticProblem& prob, const std::vector<double>& weights, double bias);
void logistic_gradient(const LogisticProblem& prob, const std::vector<double>& weights,
                       double bias, std::vector<double>* grad_w, double* grad_b);

struct FitTrace {
    std::vector<double> epoch_losses;  // non-increasing by construction
    int epochs = 0;
    bool converged = false;
};

// Full-batch gradient descent with backtracking line search: each epoch
// starts from the configured learning rate and halves it until the loss
// does not increase. Deterministic.
std::pair<std::vector<double>, double> fit_logistic(const LogisticProblem& prob,
                                                    const LogisticHyperparams& hyper,
                                                    FitTrace* trace = nullptr);

// Feature vector of an entity's article, or nullopt when the entity has
// no article (or the bag is empty in the given mode).
std::optional<SparseVec> entity_features(const KnowledgeStore& store, const TextCorpus& corpus,
                                         const TfIdfModel* tfidf, FeatureMode mode,
                                         const EntityId& e);

LogisticModel train_logistic(const PivotDataset& dataset, const KnowledgeStore& store,
                             const TextCorpus& corpus, const TfIdfModel* tfidf,
                             const LogisticHyperparams& hyper, FitTrace* trace = nullptr);

// Fraction of holdout entities classified into their true side. The
// decision threshold is 0.5; exactly 0.5 counts as the negative side.
double pivot_accuracy(const LogisticModel& model, const PivotDataset& dataset,
                      const KnowledgeStore& store, const TextCorpus& corpus,
                      const TfIdfModel* tfidf);

nlohmann::json logistic_model_to_json(const LogisticModel& model, const Vocabulary& vocab);
LogisticModel logistic_model_from_json(const nlohmann::json& j, const Vocabulary& vocab);

// Disk + memory cache of trained pivot models, keyed by canonical pair,
// feature mode and corpus fingerprint. Writes are serialised per cache.
class PivotCache {
public:
    // `dir` may be empty for a memory-only cache.
    PivotCache(std::filesystem::path dir, uint64_t corpus_fingerprint);

    std::optional<LogisticModel> load(const PropertyId& p, const PropertyId& q,
                                      FeatureMode mode, const Vocabulary& vocab);
    void store(const LogisticModel& model, const Vocabulary& vocab);

private:
    std::filesystem::path model_path(const PropertyId& p, const PropertyId& q,
                                     FeatureMode mode) const;

    std::filesystem::path dir_;
    uint64_t corpus_fingerprint_;
    std::map<std::string, LogisticModel> memory_;
    mutable std::mutex mutex_;
};

// Models are trained and cached for the canonical (lexicographically
// smaller, larger) orientation only; judging a reversed pair flips the
// scores, which makes the antisymmetry exact.
class PivotJudge : public PreferenceJudge {
public:
    PivotJudge(const KnowledgeStore& store, const TextCorpus& corpus, const TfIdfModel* tfidf,
               FeatureMode mode, PivotParams params, LogisticHyperparams hyper,
               PivotCache* cache);

    PreferenceJudgment judge(const EntityId& e, const PropertyId& p,
                             const PropertyId& q) const override;
    std::string name() const override {
        return mode_ == FeatureMode::TfIdf ? "regression_tfidf" : "regression_counts";
    }

    // Trains (or loads) the canonical model for a pair; used by the
    // pre-warming CLI command.
    const LogisticModel& model_for(const PropertyId& p, const PropertyId& q) const;

private:
    const KnowledgeStore& store_;
    const TextCorpus& corpus_;
    const TfIdfModel* tfidf_;
    FeatureMode mode_;
    PivotParams params_;
    LogisticHyperparams hyper_;
    PivotCache* cache_;
    mutable std::map<std::pair<PropertyId, PropertyId>, LogisticModel> models_;
    mutable std::mutex mutex_;
};

}  // namespace proprank
