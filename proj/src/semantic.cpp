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

#include "proprank/semantic.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>

#include "proprank/io.hpp"
#include "proprank/rng.hpp"

namespace proprank {

namespace {

constexpr int kModelFormatVersion = 1;

Eigen::MatrixXd thin_q(const Eigen::MatrixXd& m) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    return qr.householderQ() * Eigen::MatrixXd::Identity(m.rows(), m.cols());
}

Eigen::SparseMatrix<double> tfidf_matrix(const TextCorpus& corpus, const TfIdfModel& tfidf) {
    const int rows = corpus.vocabulary().size();
    const int cols = static_cast<int>(corpus.size());
    std::vector<Eigen::Triplet<double>> triplets;
    for (int d = 0; d < cols; ++d) {
        const BagOfWords* bag = corpus.bag(corpus.doc_ids()[d]);
        for (const auto& [id, weight] : tfidf.vectorize(*bag))
            triplets.emplace_back(id, d, weight);
    }
    Eigen::SparseMatrix<double> a(rows, cols);
    a.setFromTriplets(triplets.begin(), triplets.end());
    return a;
}

// Tokens of a bag in term-id order; Gibbs state is per token.
std::vector<int32_t> expand_tokens(const BagOfWords& bag) {
    std::vector<int32_t> tokens;
    tokens.reserve(static_cast<size_t>(bag.total()));
    for (const auto& [id, count] : bag.counts)
        for (int32_t i = 0; i < count; ++i) tokens.push_back(id);
    return tokens;
}

uint64_t bag_hash(const BagOfWords& bag, uint64_t seed) {
    uint64_t h = seed;
    for (const auto& [id, count] : bag.counts) {
        h = io::fnv1a_mix(h, static_cast<uint64_t>(id));
        h = io::fnv1a_mix(h, static_cast<uint64_t>(count));
    }
    return h;
}

int sample_discrete(const std::vector<double>& weights, double total, Rng& rng) {
    double u = rng.next_double() * total;
    double cum = 0;
    int last = static_cast<int>(weights.size()) - 1;
    for (int t = 0; t <= last; ++t) {
        cum += weights[t];
        if (u < cum) return t;
    }
    return last;  // guards against rounding at the upper edge
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const nlohmann::json& j) {
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows == 0 ? 0 : static_cast<Eigen::Index>(j.at(0).size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = j.at(i).at(k).get<double>();
    return m;
}

}  // namespace

double cosine(const TopicVector& u, const TopicVector& v) {
    if (u.kind != v.kind) throw std::invalid_argument("topic vectors of different kinds");
    if (u.values.size() != v.values.size())
        throw std::invalid_argument("topic vectors of different lengths");
    double dot = 0, nu = 0, nv = 0;
    for (size_t i = 0; i < u.values.size(); ++i) {
        dot += u.values[i] * v.values[i];
        nu += u.values[i] * u.values[i];
        nv += v.values[i] * v.values[i];
    }
    if (nu == 0 || nv == 0) throw std::invalid_argument("cosine of a zero vector");
    return dot / std::sqrt(nu * nv);
}

LsiModel train_lsi(const TextCorpus& corpus, const TfIdfModel& tfidf, int k, uint64_t seed,
                   int oversample, int power_iterations) {
    const int v = corpus.vocabulary().size();
    const int d = static_cast<int>(corpus.size());
    if (k < 1) throw std::invalid_argument("topic count must be positive");
    if (k > std::min(v, d))
        throw std::invalid_argument("k=" + std::to_string(k) + " exceeds achievable rank " +
                                    std::to_string(std::min(v, d)));

    Eigen::SparseMatrix<double> a = tfidf_matrix(corpus, tfidf);
    const int l = std::min(k + std::max(0, oversample), std::min(v, d));

    Rng rng(seed);
    Eigen::MatrixXd omega(d, l);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < l; ++j) omega(i, j) = rng.next_gaussian();

    Eigen::MatrixXd q = thin_q(a * omega);
    for (int it = 0; it < power_iterations; ++it) {
        Eigen::MatrixXd z = thin_q(a.transpose() * q);
        q = thin_q(a * z);
    }

    Eigen::MatrixXd b = q.transpose() * a;  // l x d
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeThinU | Eigen::ComputeThinV);

    LsiModel model;
    model.k = k;
    model.seed = seed;
    model.corpus_fingerprint = corpus.fingerprint();
    model.terms = corpus.vocabulary().terms();
    model.term_topics = q * svd.matrixU().leftCols(k);
    model.singular_values = svd.singularValues().head(k);
    model.doc_topics = svd.matrixV().leftCols(k);
    model.doc_ids = corpus.doc_ids();
    return model;
}

TopicVector lsi_infer(const LsiModel& model, const TfIdfModel& tfidf, const BagOfWords& bag) {
    SparseVec x = tfidf.vectorize(bag);
    if (x.empty()) throw AbstainError("no inferable content");

    TopicVector topic;
    topic.kind = TopicKind::Lsi;
    topic.values.assign(model.k, 0.0);
    const double floor = model.singular_values(0) * 1e-12;
    for (int t = 0; t < model.k; ++t) {
        double sigma = model.singular_values(t);
        if (sigma <= floor) continue;
        double dot = 0;
        for (const auto& [id, weight] : x) dot += model.term_topics(id, t) * weight;
        topic.values[t] = dot / sigma;
    }
    return topic;
}

LdaModel train_lda(const TextCorpus& corpus, const LdaOptions& options) {
    const int k = options.topics;
    const int v = corpus.vocabulary().size();
    if (k < 1) throw std::invalid_argument("topic count must be positive");
    const double alpha = options.resolved_alpha();
    if (alpha <= 0) throw std::invalid_argument("alpha must be positive");
    if (options.beta <= 0) throw std::invalid_argument("beta must be positive");

    std::vector<std::vector<int32_t>> docs;
    docs.reserve(corpus.size());
    for (const auto& id : corpus.doc_ids()) docs.push_back(expand_tokens(*corpus.bag(id)));

    std::vector<std::vector<int>> doc_topic(docs.size(), std::vector<int>(k, 0));
    std::vector<std::vector<int64_t>> topic_word(k, std::vector<int64_t>(v, 0));
    std::vector<int64_t> topic_total(k, 0);
    std::vector<std::vector<int>> assignment(docs.size());

    Rng rng(options.seed);
    for (size_t m = 0; m < docs.size(); ++m) {
        assignment[m].resize(docs[m].size());
        for (size_t i = 0; i < docs[m].size(); ++i) {
            int t = static_cast<int>(rng.next_below(k));
            assignment[m][i] = t;
            ++doc_topic[m][t];
            ++topic_word[t][docs[m][i]];
            ++topic_total[t];
        }
    }

    const double v_beta = v * options.beta;
    std::vector<double> weights(k);
    for (int sweep = 0; sweep < options.train_sweeps; ++sweep) {
        for (size_t m = 0; m < docs.size(); ++m) {
            for (size_t i = 0; i < docs[m].size(); ++i) {
                const int32_t w = docs[m][i];
                int t = assignment[m][i];
                --doc_topic[m][t];
                --topic_word[t][w];
                --topic_total[t];

                double total = 0;
                for (int tt = 0; tt < k; ++tt) {
                    weights[tt] = (doc_topic[m][tt] + alpha) *
                                  (topic_word[tt][w] + options.beta) /
                                  (topic_total[tt] + v_beta);
                    total += weights[tt];
                }
                t = sample_discrete(weights, total, rng);

                assignment[m][i] = t;
                ++doc_topic[m][t];
                ++topic_word[t][w];
                ++topic_total[t];
            }
        }
    }

    LdaModel model;
    model.k = k;
    model.alpha = alpha;
    model.beta = options.beta;
    model.seed = options.seed;
    model.train_sweeps = options.train_sweeps;
    model.infer_sweeps = options.infer_sweeps;
    model.corpus_fingerprint = corpus.fingerprint();
    model.terms = corpus.vocabulary().terms();
    model.phi.assign(k, std::vector<double>(v, 0.0));
    for (int t = 0; t < k; ++t) {
        double row_sum = 0;
        for (int w = 0; w < v; ++w) {
            model.phi[t][w] = topic_word[t][w] + options.beta;
            row_sum += model.phi[t][w];
        }
        for (int w = 0; w < v; ++w) model.phi[t][w] /= row_sum;
    }
    return model;
}

TopicVector lda_infer(const LdaModel& model, const BagOfWords& bag) {
    // restrict to the model vocabulary
    BagOfWords known;
    for (const auto& [id, count] : bag.counts)
        if (id >= 0 && id < static_cast<int32_t>(model.terms.size()))
            known.counts.emplace_back(id, count);
    std::vector<int32_t> tokens = expand_tokens(known);
    if (tokens.empty()) throw AbstainError("no inferable content");

    const int k = model.k;
    Rng rng(bag_hash(known, io::fnv1a_mix(model.seed, 0x1DA1DA1DA1DA1DAULL)));
    std::vector<int> topic_count(k, 0);
    std::vector<int> assignment(tokens.size());
    for (size_t i = 0; i < tokens.size(); ++i) {
        int t = static_cast<int>(rng.next_below(k));
        assignment[i] = t;
        ++topic_count[t];
    }

    std::vector<double> weights(k);
    for (int sweep = 0; sweep < model.infer_sweeps; ++sweep) {
        for (size_t i = 0; i < tokens.size(); ++i) {
            const int32_t w = tokens[i];
            int t = assignment[i];
            --topic_count[t];
            double total = 0;
            for (int tt = 0; tt < k; ++tt) {
                weights[tt] = (topic_count[tt] + model.alpha) * model.phi[tt][w];
                total += weights[tt];
            }
            t = sample_discrete(weights, total, rng);
            assignment[i] = t;
            ++topic_count[t];
        }
    }

    TopicVector topic;
    topic.kind = TopicKind::Lda;
    topic.values.assign(k, 0.0);
    const double denom = static_cast<double>(tokens.size()) + k * model.alpha;
    for (int t = 0; t < k; ++t) topic.values[t] = (topic_count[t] + model.alpha) / denom;
    return topic;
}

BagOfWords property_text_bag(const TextCorpus& corpus, const PropertyDef& def) {
    if (def.label.empty()) throw std::invalid_argument("property " + def.id + " has no label");
    BagOfWords bag = corpus.bag_for_text(def.label + " " + def.description);
    if (bag.empty())
        throw AbstainError("property " + def.id + " has no inferable text content");
    return bag;
}

nlohmann::json lsi_model_to_json(const LsiModel& model) {
    Eigen::MatrixXd sigma = model.singular_values;
    return nlohmann::json{
        {"format_version", kModelFormatVersion},
        {"kind", "lsi"},
        {"k", model.k},
        {"seed", model.seed},
        {"corpus_fingerprint", model.corpus_fingerprint},
        {"terms", model.terms},
        {"term_topics", matrix_to_json(model.term_topics)},
        {"singular_values", matrix_to_json(sigma)},
        {"doc_topics", matrix_to_json(model.doc_topics)},
        {"doc_ids", model.doc_ids},
    };
}

LsiModel lsi_model_from_json(const nlohmann::json& j) {
    if (j.value("format_version", -1) != kModelFormatVersion || j.value("kind", "") != "lsi")
        throw std::runtime_error("not a supported lsi model file");
    LsiModel model;
    model.k = j.at("k").get<int>();
    model.seed = j.at("seed").get<uint64_t>();
    model.corpus_fingerprint = j.at("corpus_fingerprint").get<uint64_t>();
    model.terms = j.at("terms").get<std::vector<std::string>>();
    model.term_topics = matrix_from_json(j.at("term_topics"));
    model.singular_values = matrix_from_json(j.at("singular_values")).col(0);
    model.doc_topics = matrix_from_json(j.at("doc_topics"));
    model.doc_ids = j.at("doc_ids").get<std::vector<std::string>>();
    return model;
}

nlohmann::json lda_model_to_json(const LdaModel& model) {
    return nlohmann::json{
        {"format_version", kModelFormatVersion},
        {"kind", "lda"},
        {"k", model.k},
        {"alpha", model.alpha},
        {"beta", model.beta},
        {"seed", model.seed},
        {"train_sweeps", model.train_sweeps},
        {"infer_sweeps", model.infer_sweeps},
        {"corpus_fingerprint", model.corpus_fingerprint},
        {"terms", model.terms},
        {"phi", model.phi},
    };
}

LdaModel lda_model_from_json(const nlohmann::json& j) {
    if (j.value("format_version", -1) != kModelFormatVersion || j.value("kind", "") != "lda")
        throw std::runtime_error("not a supported lda model file");
    LdaModel model;
    model.k = j.at("k").get<int>();
    model.alpha = j.at("alpha").get<double>();
    model.beta = j.at("beta").get<double>();
    model.seed = j.at("seed").get<uint64_t>();
    model.train_sweeps = j.at("train_sweeps").get<int>();
    model.infer_sweeps = j.at("infer_sweeps").get<int>();
    model.corpus_fingerprint = j.at("corpus_fingerprint").get<uint64_t>();
    model.terms = j.at("terms").get<std::vector<std::string>>();
    model.phi = j.at("phi").get<std::vector<std::vector<double>>>();
    return model;
}

SemanticJudge::SemanticJudge(const KnowledgeStore& store, const TextCorpus& corpus,
                             const TfIdfModel& tfidf, const LsiModel& lsi)
    : store_(store), corpus_(corpus), tfidf_(&tfidf), lsi_(&lsi), kind_(TopicKind::Lsi) {}

SemanticJudge::SemanticJudge(const KnowledgeStore& store, const TextCorpus& corpus,
                             const LdaModel& lda)
    : store_(store), corpus_(corpus), lda_(&lda), kind_(TopicKind::Lda) {}

TopicVector SemanticJudge::infer(const BagOfWords& bag) const {
    return kind_ == TopicKind::Lsi ? lsi_infer(*lsi_, *tfidf_, bag) : lda_infer(*lda_, bag);
}

TopicVector SemanticJudge::entity_vector(const EntityId& e) const {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find("e:" + e);
        if (it != cache_.end()) return it->second;
    }
    const auto& article = store_.entity(e).article;
    if (!article || !corpus_.bag(*article))
        throw AbstainError("entity " + e + " has no article in the corpus");
    TopicVector topic = infer(*corpus_.bag(*article));
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.emplace("e:" + e, std::move(topic)).first->second;
}

TopicVector SemanticJudge::property_vector(const PropertyId& p) const {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = cache_.find("p:" + p);
        if (it != cache_.end()) return it->second;
    }
    TopicVector topic = infer(property_text_bag(corpus_, store_.property(p)));
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.emplace("p:" + p, std::move(topic)).first->second;
}

PreferenceJudgment SemanticJudge::judge(const EntityId& e, const PropertyId& p,
                                        const PropertyId& q) const {
    try {
        TopicVector ve = entity_vector(e);
        double sim_p = cosine(ve, property_vector(p));
        double sim_q = cosine(ve, property_vector(q));
        return PreferenceJudgment::from_scores(sim_p, sim_q);
    } catch (const AbstainError&) {
        throw;
    } catch (const std::invalid_argument& err) {
        throw AbstainError(std::string("semantic inference failed: ") + err.what());
    }
}

}  // namespace proprank
