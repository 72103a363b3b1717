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

#include <filesystem>
#include <set>
#include <unordered_map>

#include "proprank/judge.hpp"
#include "proprank/kbstore.hpp"

namespace proprank {

// Baseline 1: the property used more often across all entities wins.
PreferenceJudgment human_frequency_judge(const KnowledgeStore& store, const EntityId& e,
                                         const PropertyId& p, const PropertyId& q);

// Baseline 2: usage counted only over entities sharing an occupation with
// `e`. An empty cohort falls back to the global frequency judgment.
PreferenceJudgment occupation_frequency_judge(const KnowledgeStore& store, const EntityId& e,
                                              const PropertyId& p, const PropertyId& q);

// Baseline 3: result counts for "<entity label> <property label>" queries.
PreferenceJudgment search_count_judge(const SearchCountProvider& provider,
                                      const KnowledgeStore& store, const EntityId& e,
                                      const PropertyId& p, const PropertyId& q);

// Sum of squared rule confidences conf(p -> candidate)^2 over the given
// property set, excluding the candidate itself. conf(p -> c) =
// cooccurrence(p, c) / usage(p); rules with usage 0 contribute nothing.
double association_score(const KnowledgeStore& store, const std::set<PropertyId>& properties,
                         const PropertyId& candidate);
double association_score(const KnowledgeStore& store, const EntityId& e,
                         const PropertyId& candidate);

// Baseline 4: the property with the larger association score wins. All
// candidates are scored; there are no suggestion thresholds.
PreferenceJudgment property_suggester_judge(const KnowledgeStore& store, const EntityId& e,
                                            const PropertyId& p, const PropertyId& q);

// Offline provider backed by a JSONL file of {"query": ..., "count": ...}
// records. Unknown queries raise ProviderError.
class FixtureSearchCounts : public SearchCountProvider {
public:
    static FixtureSearchCounts load(const std::filesystem::path& path);
    explicit FixtureSearchCounts(std::unordered_map<std::string, long long> counts)
        : counts_(std::move(counts)) {}

    long long count(const std::string& query) const override;

private:
    std::unordered_map<std::string, long long> counts_;
};

// PreferenceJudge adapters so the baselines plug into ensembles and the
// evaluation harness.

class HumanFrequencyJudge : public PreferenceJudge {
public:
    explicit HumanFrequencyJudge(const KnowledgeStore& store) : store_(store) {}
    PreferenceJudgment judge(const EntityId& e, const PropertyId& p,
                             const PropertyId& q) const override {
        return human_frequency_judge(store_, e, p, q);
    }
    std::string name() const override { return "human_frequency"; }

private:
    const KnowledgeStore& store_;
};

class OccupationFrequencyJudge : public PreferenceJudge {
public:
    explicit OccupationFrequencyJudge(const KnowledgeStore& store) : store_(store) {}
    PreferenceJudgment judge(const EntityId& e, const PropertyId& p,
                             const PropertyId& q) const override {
        return occupation_frequency_judge(store_, e, p, q);
    }
    std::string name() const override { return "occupation_frequency"; }

private:
    const KnowledgeStore& store_;
};

class SearchCountJudge : public PreferenceJudge {
public:
    SearchCountJudge(const SearchCountProvider& provider, const KnowledgeStore& store)
        : provider_(provider), store_(store) {}
    PreferenceJudgment judge(const EntityId& e, const PropertyId& p,
                             const PropertyId& q) const override {
        return search_count_judge(provider_, store_, e, p, q);
    }
    std::string name() const override { return "search_count"; }

private:
    const SearchCountProvider& provider_;
    const KnowledgeStore& store_;
};

class PropertySuggesterJudge : public PreferenceJudge {
public:
    explicit PropertySuggesterJudge(const KnowledgeStore& store) : store_(store) {}
    PreferenceJudgment judge(const EntityId& e, const PropertyId& p,
                             const PropertyId& q) const override {
        return property_suggester_judge(store_, e, p, q);
    }
    std::string name() const override { return "property_suggester"; }

private:
    const KnowledgeStore& store_;
};

}  // namespace proprank
