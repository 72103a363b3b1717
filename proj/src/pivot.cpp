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

#include "proprank/pivot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "proprank/io.hpp"

namespace proprank {

namespace {

constexpr int kModelFormatVersion = 1;

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// log(1 + exp(z)) without overflow
double softplus(double z) {
    if (z > 0) return z + std::log1p(std::exp(-z));
    return std::log1p(std::exp(z));
}

double dense_margin(const SparseVec& x, const std::vector<double>& w, double b) {
    double z = b;
    for (const auto& [id, v] : x) z += w[id] * v;
    return z;
}

}  // namespace

std::string to_string(FeatureMode mode) {
    return mode == FeatureMode::TfIdf ? "tfidf" : "counts";
}

FeatureMode feature_mode_from_string(const std::string& s) {
    if (s == "tfidf") return FeatureMode::TfIdf;
    if (s == "counts") return FeatureMode::Counts;
    throw std::invalid_argument("unknown feature mode: " + s);
}

PivotDataset build_pivot_dataset(const KnowledgeStore& store, const TextCorpus& corpus,
                                 const PropertyId& p, const PropertyId& q, FeatureMode mode,
                                 const PivotParams& params) {
    // Pull more than cap so the holdout can be drawn after the cap.
    const int per_side_holdout = params.holdout / 2;
    auto [side_p, side_q] =
        store.split_by_pivot(p, q, std::numeric_limits<int64_t>::max());

    auto eligible = [&](std::vector<EntityId>& side) {
        std::vector<EntityId> kept;
        for (const auto& id : side) {
            const auto& article = store.entity(id).article;
            if (article && corpus.bag(*article) != nullptr) kept.push_back(id);
        }
        side = std::move(kept);
    };
    eligible(side_p);
    eligible(side_q);

    if (static_cast<int64_t>(side_p.size()) < params.min_side ||
        static_cast<int64_t>(side_q.size()) < params.min_side)
        throw AbstainError("insufficient pivot data for " + p + " vs " + q + " (" +
                           std::to_string(side_p.size()) + " / " + std::to_string(side_q.size()) +
                           " eligible, need " + std::to_string(params.min_side) + " per side)");

    PivotDataset ds;
    ds.p = p;
    ds.q = q;
    ds.mode = mode;
    auto take = [&](const std::vector<EntityId>& side, std::vector<EntityId>& train,
                    std::vector<EntityId>& holdout) {
        size_t cap = static_cast<size_t>(params.cap);
        for (size_t i = 0; i < side.size(); ++i) {
            if (i < cap) train.push_back(side[i]);
            else if (holdout.size() < static_cast<size_t>(per_side_holdout)) holdout.push_back(side[i]);
            else break;
        }
    };
    take(side_p, ds.train_pos, ds.holdout_pos);
    take(side_q, ds.train_neg, ds.holdout_neg);
    return ds;
}

double logistic_loss(const LogisticProblem& prob, const std::vector<double>& weights,
                     double bias) {
    double loss = 0;
    for (size_t i = 0; i < prob.features.size(); ++i) {
        double z = dense_margin(prob.features[i], weights, bias);
        // cross-entropy: softplus(z) - y*z
        loss += softplus(z) - prob.labels[i] * z;
    }
    loss /= static_cast<double>(prob.features.size());
    double reg = 0;
    for (double w : weights) reg += w * w;
    return loss + 0.5 * prob.l2 * reg;
}

void logistic_gradient(const LogisticProblem& prob, const std::vector<double>& weights,
                       double bias, std::vector<double>* grad_w, double* grad_b) {
    grad_w->assign(weights.size(), 0.0);
    double gb = 0;
    const double inv_n = 1.0 / static_cast<double>(prob.features.size());
    for (size_t i = 0; i < prob.features.size(); ++i) {
        double z = dense_margin(prob.features[i], weights, bias);
        double residual = (sigmoid(z) - prob.labels[i]) * inv_n;
        for (const auto& [id, v] : prob.features[i]) (*grad_w)[id] += residual * v;
        gb += residual;
    }
    for (size_t j = 0; j < weights.size(); ++j) (*grad_w)[j] += prob.l2 * weights[j];
    *grad_b = gb;
}

std::pair<std::vector<double>, double> fit_logistic(const LogisticProblem& prob,
                                                    const LogisticHyperparams& hyper,
                                                    FitTrace* trace) {
    if (prob.features.empty()) throw std::invalid_argument("no training examples");
    if (prob.features.size() != prob.labels.size())
        throw std::invalid_argument("labels not aligned with features");

    std::vector<double> w(prob.dim, 0.0);
    double b = 0.0;
    double loss = logistic_loss(prob, w, b);
    if (trace) {
        trace->epoch_losses.clear();
        trace->epoch_losses.push_back(loss);
    }

    std::vector<double> grad_w;
    double grad_b = 0;
    std::vector<double> candidate(prob.dim);
    int epoch = 0;
    bool converged = false;
    for (; epoch < hyper.max_epochs; ++epoch) {
        logistic_gradient(prob, w, b, &grad_w, &grad_b);
        // Backtracking keeps the per-epoch loss non-increasing even when
        // the configured rate overshoots.
        double step = hyper.learning_rate;
        double new_loss = loss;
        double new_b = b;
        for (int halving = 0; halving < 40; ++halving) {
            for (int j = 0; j < prob.dim; ++j) candidate[j] = w[j] - step * grad_w[j];
            new_b = b - step * grad_b;
            new_loss = logistic_loss(prob, candidate, new_b);
            if (new_loss <= loss) break;
            step *= 0.5;
        }
        if (new_loss > loss) break;  // no acceptable step; already at a minimum
        w.swap(candidate);
        b = new_b;
        double delta = loss - new_loss;
        loss = new_loss;
        if (trace) trace->epoch_losses.push_back(loss);
        if (delta < hyper.tolerance) {
            converged = true;
            ++epoch;
            break;
        }
    }
    if (trace) {
        trace->epochs = epoch;
        trace->converged = converged;
    }
    return {std::move(w), b};
}

std::optional<SparseVec> entity_features(const KnowledgeStore& store, const TextCorpus& corpus,
                                         const TfIdfModel* tfidf, FeatureMode mode,
                                         const EntityId& e) {
    const auto& article = store.entity(e).article;
    if (!article) return std::nullopt;
    const BagOfWords* bag = corpus.bag(*article);
    if (!bag) return std::nullopt;
    SparseVec features =
        mode == FeatureMode::TfIdf ? tfidf->vectorize(*bag) : raw_counts(*bag);
    if (features.empty()) return std::nullopt;
    return features;
}

LogisticModel train_logistic(const PivotDataset& dataset, const KnowledgeStore& store,
                             const TextCorpus& corpus, const TfIdfModel* tfidf,
                             const LogisticHyperparams& hyper, FitTrace* trace) {
    if (dataset.mode == FeatureMode::TfIdf && !tfidf)
        throw std::invalid_argument("TF-IDF mode requires a fitted TfIdfModel");

    LogisticProblem prob;
    prob.dim = corpus.vocabulary().size();
    prob.l2 = hyper.l2;
    auto add = [&](const std::vector<EntityId>& side, int label) {
        for (const auto& e : side) {
            auto features = entity_features(store, corpus, tfidf, dataset.mode, e);
            if (!features) continue;  // dataset construction requires articles; bags can
                                      // still be empty under aggressive pruning
            prob.features.push_back(std::move(*features));
            prob.labels.push_back(label);
        }
    };
    add(dataset.train_pos, 1);
    add(dataset.train_neg, 0);
    if (prob.features.empty())
        throw AbstainError("no usable training features for " + dataset.p + " vs " + dataset.q);

    FitTrace local_trace;
    FitTrace* t = trace ? trace : &local_trace;
    auto [w, b] = fit_logistic(prob, hyper, t);

    LogisticModel model;
    model.p = dataset.p;
    model.q = dataset.q;
    model.mode = dataset.mode;
    model.bias = b;
    model.epochs_run = t->epochs;
    model.converged = t->converged;
    model.final_loss = t->epoch_losses.empty() ? 0.0 : t->epoch_losses.back();
    model.seed = hyper.seed;
    model.corpus_fingerprint = corpus.fingerprint();
    model.hyper = hyper;
    for (int32_t j = 0; j < static_cast<int32_t>(w.size()); ++j)
        if (w[j] != 0.0) model.weights.emplace_back(j, w[j]);
    return model;
}

double LogisticModel::predict(const SparseVec& features) const {
    return sigmoid(bias + sparse_dot(weights, features));
}

double pivot_accuracy(const LogisticModel& model, const PivotDataset& dataset,
                      const KnowledgeStore& store, const TextCorpus& corpus,
                      const TfIdfModel* tfidf) {
    int correct = 0, total = 0;
    auto score = [&](const std::vector<EntityId>& side, int label) {
        for (const auto& e : side) {
            auto features = entity_features(store, corpus, tfidf, dataset.mode, e);
            if (!features) continue;
            ++total;
            int predicted = model.predict(*features) > 0.5 ? 1 : 0;
            if (predicted == label) ++correct;
        }
    };
    score(dataset.holdout_pos, 1);
    score(dataset.holdout_neg, 0);
    if (total == 0) throw std::invalid_argument("empty holdout");
    return static_cast<double>(correct) / total;
}

nlohmann::json logistic_model_to_json(const LogisticModel& model, const Vocabulary& vocab) {
    nlohmann::json weights = nlohmann::json::object();
    for (const auto& [id, w] : model.weights) weights[vocab.term(id)] = w;
    return nlohmann::json{
        {"format_version", kModelFormatVersion},
        {"kind", "logistic_pivot"},
        {"p", model.p},
        {"q", model.q},
        {"mode", to_string(model.mode)},
        {"bias", model.bias},
        {"weights", std::move(weights)},
        {"epochs_run", model.epochs_run},
        {"converged", model.converged},
        {"final_loss", model.final_loss},
        {"seed", model.seed},
        {"corpus_fingerprint", model.corpus_fingerprint},
        {"hyper",
         {{"learning_rate", model.hyper.learning_rate},
          {"l2", model.hyper.l2},
          {"max_epochs", model.hyper.max_epochs},
          {"tolerance", model.hyper.tolerance}}},
    };
}

LogisticModel logistic_model_from_json(const nlohmann::json& j, const Vocabulary& vocab) {
    if (j.value("format_version", -1) != kModelFormatVersion)
        throw std::runtime_error("unsupported pivot model format version");
    LogisticModel model;
    model.p = j.at("p").get<std::string>();
    model.q = j.at("q").get<std::string>();
    model.mode = feature_mode_from_string(j.at("mode").get<std::string>());
    model.bias = j.at("bias").get<double>();
    model.epochs_run = j.at("epochs_run").get<int>();
    model.converged = j.at("converged").get<bool>();
    model.final_loss = j.at("final_loss").get<double>();
    model.seed = j.at("seed").get<uint64_t>();
    model.corpus_fingerprint = j.at("corpus_fingerprint").get<uint64_t>();
    model.hyper.learning_rate = j.at("hyper").at("learning_rate").get<double>();
    model.hyper.l2 = j.at("hyper").at("l2").get<double>();
    model.hyper.max_epochs = j.at("hyper").at("max_epochs").get<int>();
    model.hyper.tolerance = j.at("hyper").at("tolerance").get<double>();
    for (const auto& [term, w] : j.at("weights").items()) {
        int32_t id = vocab.term_id(term);
        if (id < 0)
            throw std::runtime_error("model term '" + term + "' not in the current vocabulary");
        model.weights.emplace_back(id, w.get<double>());
    }
    std::sort(model.weights.begin(), model.weights.end());
    return model;
}

PivotCache::PivotCache(std::filesystem::path dir, uint64_t corpus_fingerprint)
    : dir_(std::move(dir)), corpus_fingerprint_(corpus_fingerprint) {}

std::filesystem::path PivotCache::model_path(const PropertyId& p, const PropertyId& q,
                                             FeatureMode mode) const {
    std::string name = p + "__" + q + "__" + to_string(mode) + "__" +
                       io::to_hex(corpus_fingerprint_) + ".json";
    for (char& c : name)
        if (c == '/' || c == '\\' || c == ':') c = '_';
    return dir_ / name;
}

std::optional<LogisticModel> PivotCache::load(const PropertyId& p, const PropertyId& q,
                                              FeatureMode mode, const Vocabulary& vocab) {
    std::lock_guard<std::mutex> lock(mutex_);
    std::string key = p + "\t" + q + "\t" + to_string(mode);
    auto it = memory_.find(key);
    if (it != memory_.end()) return it->second;
    if (dir_.empty()) return std::nullopt;
    auto path = model_path(p, q, mode);
    if (!std::filesystem::exists(path)) return std::nullopt;
    LogisticModel model =
        logistic_model_from_json(nlohmann::json::parse(io::read_file(path)), vocab);
    if (model.corpus_fingerprint != corpus_fingerprint_) return std::nullopt;
    memory_.emplace(key, model);
    return model;
}

void PivotCache::store(const LogisticModel& model, const Vocabulary& vocab) {
    std::lock_guard<std::mutex> lock(mutex_);
    std::string key = model.p + "\t" + model.q + "\t" + to_string(model.mode);
    memory_.insert_or_assign(key, model);
    if (dir_.empty()) return;
    io::write_file_atomic(model_path(model.p, model.q, model.mode),
                          logistic_model_to_json(model, vocab).dump(2) + "\n");
}

PivotJudge::PivotJudge(const KnowledgeStore& store, const TextCorpus& corpus,
                       const TfIdfModel* tfidf, FeatureMode mode, PivotParams params,
                       LogisticHyperparams hyper, PivotCache* cache)
    : store_(store), corpus_(corpus), tfidf_(tfidf), mode_(mode), params_(params),
      hyper_(hyper), cache_(cache) {}

const LogisticModel& PivotJudge::model_for(const PropertyId& a, const PropertyId& b) const {
    if (a == b) throw std::invalid_argument("pivot judge needs two distinct properties");
    PropertyId p = std::min(a, b), q = std::max(a, b);
    std::lock_guard<std::mutex> lock(mutex_);
    auto key = std::make_pair(p, q);
    auto it = models_.find(key);
    if (it != models_.end()) return it->second;

    if (cache_) {
        auto cached = cache_->load(p, q, mode_, corpus_.vocabulary());
        if (cached) return models_.emplace(key, std::move(*cached)).first->second;
    }
    PivotDataset dataset = build_pivot_dataset(store_, corpus_, p, q, mode_, params_);
    LogisticModel model = train_logistic(dataset, store_, corpus_, tfidf_, hyper_);
    if (cache_) cache_->store(model, corpus_.vocabulary());
    return models_.emplace(key, std::move(model)).first->second;
}

PreferenceJudgment PivotJudge::judge(const EntityId& e, const PropertyId& p,
                                     const PropertyId& q) const {
    auto features = entity_features(store_, corpus_, tfidf_, mode_, e);
    if (!features) throw AbstainError("entity " + e + " has no usable article text");
    const LogisticModel& model = model_for(p, q);
    double prob_canonical = model.predict(*features);
    // model.p is the canonical first property; flip for reversed queries
    double score_p = model.p == p ? prob_canonical : 1.0 - prob_canonical;
    return PreferenceJudgment::from_scores(score_p, 1.0 - score_p);
}

}  // namespace proprank
