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

#include "proprank/pipeline.hpp"

#include <chrono>

#include "proprank/io.hpp"

namespace proprank {

Vote StoreRecordJudge::judge_record(const GoldRecord& record) const {
    auto entity = store_.entity_by_label(record.entity_label);
    auto prop_a = store_.property_by_label(record.prop_a);
    auto prop_b = store_.property_by_label(record.prop_b);
    if (!entity || !prop_a || !prop_b) return Vote::Abstain;
    try {
        return to_vote(judge_.judge(*entity, *prop_a, *prop_b).winner);
    } catch (const AbstainError&) {
        return Vote::Abstain;
    }
}

Pipeline::Pipeline(RunConfig config) : config_(std::move(config)) {
    manifest_.config_hash = config_.hash();
}

void Pipeline::time_step(const std::string& name, const std::function<void()>& fn) {
    auto start = std::chrono::steady_clock::now();
    fn();
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    manifest_.step_seconds.emplace_back(name, elapsed.count());
}

const KnowledgeStore& Pipeline::store() {
    if (!store_) {
        time_step("ingest", [&] {
            store_ = KnowledgeStore::ingest_files(config_.paths.properties,
                                                  config_.paths.entities, config_.ingest,
                                                  &ingest_report_);
        });
    }
    return *store_;
}

const IngestReport& Pipeline::ingest_report() {
    store();
    return ingest_report_;
}

const TextCorpus& Pipeline::corpus() {
    if (!corpus_) {
        time_step("corpus", [&] {
            corpus_ = TextCorpus::load_jsonl(config_.paths.corpus);
            manifest_.corpus_fingerprint = corpus_->fingerprint();
        });
    }
    return *corpus_;
}

const TfIdfModel& Pipeline::tfidf() {
    if (!tfidf_) {
        const TextCorpus& c = corpus();
        time_step("tfidf", [&] {
            tfidf_ = TfIdfModel::fit(c.vocabulary(), config_.tfidf.prune_low,
                                     config_.tfidf.prune_high);
        });
    }
    return *tfidf_;
}

const LsiModel& Pipeline::lsi() {
    if (!lsi_) {
        const TextCorpus& c = corpus();
        const TfIdfModel& t = tfidf();
        std::filesystem::path cache;
        if (!config_.paths.cache_dir.empty())
            cache = std::filesystem::path(config_.paths.cache_dir) /
                    ("lsi_" + io::to_hex(c.fingerprint()) + "_k" +
                     std::to_string(config_.lsi.topics) + "_s" +
                     std::to_string(config_.lsi.seed) + ".json");
        if (!cache.empty() && std::filesystem::exists(cache)) {
            lsi_ = lsi_model_from_json(nlohmann::json::parse(io::read_file(cache)));
            if (lsi_->corpus_fingerprint != c.fingerprint()) lsi_.reset();
        }
        if (!lsi_) {
            time_step("train_lsi", [&] {
                lsi_ = train_lsi(c, t, config_.lsi.topics, config_.lsi.seed,
                                 config_.lsi.oversample, config_.lsi.power_iterations);
            });
            if (!cache.empty()) {
                io::write_file_atomic(cache, lsi_model_to_json(*lsi_).dump() + "\n");
                manifest_.artifacts.push_back(cache.string());
            }
        }
    }
    return *lsi_;
}

const LdaModel& Pipeline::lda() {
    if (!lda_) {
        const TextCorpus& c = corpus();
        std::filesystem::path cache;
        if (!config_.paths.cache_dir.empty())
            cache = std::filesystem::path(config_.paths.cache_dir) /
                    ("lda_" + io::to_hex(c.fingerprint()) + "_k" +
                     std::to_string(config_.lda.topics) + "_s" +
                     std::to_string(config_.lda.seed) + ".json");
        if (!cache.empty() && std::filesystem::exists(cache)) {
            lda_ = lda_model_from_json(nlohmann::json::parse(io::read_file(cache)));
            if (lda_->corpus_fingerprint != c.fingerprint()) lda_.reset();
        }
        if (!lda_) {
            time_step("train_lda", [&] { lda_ = train_lda(c, config_.lda); });
            if (!cache.empty()) {
                io::write_file_atomic(cache, lda_model_to_json(*lda_).dump() + "\n");
                manifest_.artifacts.push_back(cache.string());
            }
        }
    }
    return *lda_;
}

const SearchCountProvider& Pipeline::search_provider() {
    if (!search_) {
        if (config_.paths.search_counts.empty())
            throw ConfigError("the search_count method needs paths.search_counts");
        search_ = FixtureSearchCounts::load(config_.paths.search_counts);
    }
    return *search_;
}

PivotCache& Pipeline::pivot_cache() {
    if (!pivot_cache_)
        pivot_cache_.emplace(config_.paths.cache_dir.empty()
                                 ? std::filesystem::path()
                                 : std::filesystem::path(config_.paths.cache_dir),
                             corpus().fingerprint());
    return *pivot_cache_;
}

const std::vector<std::string>& Pipeline::builtin_method_names() {
    static const std::vector<std::string> names = {
        "human_frequency", "occupation_frequency", "search_count", "property_suggester",
        "regression_counts", "regression_tfidf", "lsi", "lda",
    };
    return names;
}

const PreferenceJudge& Pipeline::build_method(const std::string& name) {
    if (name == "human_frequency")
        return *judges_.emplace(name, std::make_unique<HumanFrequencyJudge>(store()))
                    .first->second;
    if (name == "occupation_frequency")
        return *judges_.emplace(name, std::make_unique<OccupationFrequencyJudge>(store()))
                    .first->second;
    if (name == "search_count")
        return *judges_
                    .emplace(name, std::make_unique<SearchCountJudge>(search_provider(), store()))
                    .first->second;
    if (name == "property_suggester")
        return *judges_.emplace(name, std::make_unique<PropertySuggesterJudge>(store()))
                    .first->second;
    if (name == "regression_counts" || name == "regression_tfidf") {
        FeatureMode mode =
            name == "regression_tfidf" ? FeatureMode::TfIdf : FeatureMode::Counts;
        const TfIdfModel* weights = mode == FeatureMode::TfIdf ? &tfidf() : nullptr;
        return *judges_
                    .emplace(name, std::make_unique<PivotJudge>(store(), corpus(), weights, mode,
                                                                config_.pivot, config_.regression,
                                                                &pivot_cache()))
                    .first->second;
    }
    if (name == "lsi")
        return *judges_
                    .emplace(name,
                             std::make_unique<SemanticJudge>(store(), corpus(), tfidf(), lsi()))
                    .first->second;
    if (name == "lda")
        return *judges_.emplace(name, std::make_unique<SemanticJudge>(store(), corpus(), lda()))
                    .first->second;

    // ensembles: configured specs plus the built-in paper combination
    EnsembleSpec spec;
    bool found = false;
    if (name == "paper_ensemble") {
        spec = best_paper_ensemble();
        found = true;
    }
    for (const auto& e : config_.ensembles) {
        if (e.name == name) {
            spec = e;
            found = true;
        }
    }
    if (!found) throw ConfigError("unknown method: " + name);
    std::vector<const PreferenceJudge*> members;
    for (const auto& member : spec.members) members.push_back(&method(member));
    return *judges_.emplace(name, std::make_unique<EnsembleJudge>(spec, std::move(members)))
                .first->second;
}

const PreferenceJudge& Pipeline::method(const std::string& name) {
    auto it = judges_.find(name);
    if (it != judges_.end()) return *it->second;
    return build_method(name);
}

std::vector<const PreferenceJudge*> Pipeline::configured_methods() {
    std::vector<std::string> names =
        config_.methods.empty() ? builtin_method_names() : config_.methods;
    std::vector<const PreferenceJudge*> out;
    out.reserve(names.size());
    for (const auto& name : names) out.push_back(&method(name));
    return out;
}

std::unique_ptr<RecordJudge> Pipeline::record_judge(const std::string& method_name) {
    return std::make_unique<StoreRecordJudge>(method(method_name), store());
}

JudgmentMatrix Pipeline::judgment_matrix(const std::vector<GoldRecord>& records,
                                         const std::vector<std::string>& method_names) {
    std::vector<std::string> record_ids;
    record_ids.reserve(records.size());
    for (size_t i = 0; i < records.size(); ++i) record_ids.push_back(std::to_string(i));

    JudgmentMatrix matrix(method_names, record_ids);
    for (const auto& name : method_names) {
        StoreRecordJudge rj(method(name), store());
        for (size_t i = 0; i < records.size(); ++i)
            matrix.set(record_ids[i], name, rj.judge_record(records[i]));
    }
    return matrix;
}

}  // namespace proprank
