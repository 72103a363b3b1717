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

#include <memory>
#include <optional>

#include "proprank/baselines.hpp"
#include "proprank/config.hpp"
#include "proprank/ensemble.hpp"
#include "proprank/golddata.hpp"
#include "proprank/pivot.hpp"
#include "proprank/semantic.hpp"

namespace proprank {

// Judges a gold record by resolving its labels against the store. Records
// whose entity or property labels do not resolve, and judge abstentions,
// become Vote::Abstain.
class StoreRecordJudge : public RecordJudge {
public:
    StoreRecordJudge(const PreferenceJudge& judge, const KnowledgeStore& store)
        : judge_(judge), store_(store) {}

    std::string name() const override { return judge_.name(); }
    Vote judge_record(const GoldRecord& record) const override;

private:
    const PreferenceJudge& judge_;
    const KnowledgeStore& store_;
};

// Lazily assembles the store, corpus, models and judges a RunConfig
// describes. Everything is built at most once per pipeline instance;
// topic models and pivot classifiers round-trip through cache_dir.
class Pipeline {
public:
    explicit Pipeline(RunConfig config);

    const RunConfig& config() const { return config_; }
    const KnowledgeStore& store();
    const TextCorpus& corpus();
    const TfIdfModel& tfidf();
    const LsiModel& lsi();
    const LdaModel& lda();
    const SearchCountProvider& search_provider();
    PivotCache& pivot_cache();
    const IngestReport& ingest_report();

    // Built-in method names: human_frequency, occupation_frequency,
    // search_count, property_suggester, regression_counts,
    // regression_tfidf, lsi, lda, plus configured ensemble names and
    // "paper_ensemble".
    const PreferenceJudge& method(const std::string& name);
    static const std::vector<std::string>& builtin_method_names();

    // Methods from config.methods (all built-ins when the list is empty).
    std::vector<const PreferenceJudge*> configured_methods();

    std::unique_ptr<RecordJudge> record_judge(const std::string& method_name);

    // Judges every configured method over every record; row ids are the
    // zero-based record indexes.
    JudgmentMatrix judgment_matrix(const std::vector<GoldRecord>& records,
                                   const std::vector<std::string>& method_names);

    RunManifest& manifest() { return manifest_; }
    void time_step(const std::string& name, const std::function<void()>& fn);

private:
    const PreferenceJudge& build_method(const std::string& name);

    RunConfig config_;
    RunManifest manifest_;
    std::optional<KnowledgeStore> store_;
    IngestReport ingest_report_;
    std::optional<TextCorpus> corpus_;
    std::optional<TfIdfModel> tfidf_;
    std::optional<LsiModel> lsi_;
    std::optional<LdaModel> lda_;
    std::optional<FixtureSearchCounts> search_;
    std::optional<PivotCache> pivot_cache_;
    std::map<std::string, std::unique_ptr<PreferenceJudge>> judges_;
};

}  // namespace proprank
