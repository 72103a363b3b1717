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

#include "proprank/baselines.hpp"

#include <fstream>

#include "proprank/io.hpp"

namespace proprank {

PreferenceJudgment human_frequency_judge(const KnowledgeStore& store, const EntityId&,
                                         const PropertyId& p, const PropertyId& q) {
    return PreferenceJudgment::from_scores(static_cast<double>(store.usage(p)),
                                           static_cast<double>(store.usage(q)));
}

PreferenceJudgment occupation_frequency_judge(const KnowledgeStore& store, const EntityId& e,
                                              const PropertyId& p, const PropertyId& q) {
    if (!store.has_property(p)) throw StoreError("unknown property: " + p);
    if (!store.has_property(q)) throw StoreError("unknown property: " + q);
    std::vector<EntityId> cohort = store.occupation_cohort(e);
    if (cohort.empty()) return human_frequency_judge(store, e, p, q);

    int64_t count_p = 0, count_q = 0;
    for (const auto& member : cohort) {
        const EntityRecord& rec = store.entity(member);
        if (rec.has_property(p)) ++count_p;
        if (rec.has_property(q)) ++count_q;
    }
    return PreferenceJudgment::from_scores(static_cast<double>(count_p),
                                           static_cast<double>(count_q));
}

PreferenceJudgment search_count_judge(const SearchCountProvider& provider,
                                      const KnowledgeStore& store, const EntityId& e,
                                      const PropertyId& p, const PropertyId& q) {
    const std::string& entity_label = store.entity(e).label;
    std::string query_p = entity_label + " " + store.property(p).label;
    std::string query_q = entity_label + " " + store.property(q).label;
    // queried in argument order so a failure reports the first bad query
    double count_p = static_cast<double>(provider.count(query_p));
    double count_q = static_cast<double>(provider.count(query_q));
    return PreferenceJudgment::from_scores(count_p, count_q);
}

double association_score(const KnowledgeStore& store, const std::set<PropertyId>& properties,
                         const PropertyId& candidate) {
    if (!store.has_property(candidate)) throw StoreError("unknown property: " + candidate);
    double score = 0;
    for (const auto& p : properties) {
        if (p == candidate) continue;
        int64_t usage = store.usage(p);
        if (usage == 0) continue;
        double conf = static_cast<double>(store.cooccurrence(p, candidate)) /
                      static_cast<double>(usage);
        score += conf * conf;
    }
    return score;
}

double association_score(const KnowledgeStore& store, const EntityId& e,
                         const PropertyId& candidate) {
    return association_score(store, store.entity(e).properties, candidate);
}

PreferenceJudgment property_suggester_judge(const KnowledgeStore& store, const EntityId& e,
                                            const PropertyId& p, const PropertyId& q) {
    return PreferenceJudgment::from_scores(association_score(store, e, p),
                                           association_score(store, e, q));
}

FixtureSearchCounts FixtureSearchCounts::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open search count fixture: " + path.string());
    std::unordered_map<std::string, long long> counts;
    std::vector<std::string> errors;
    io::for_each_jsonl(
        in,
        [&](int line, const nlohmann::json& doc) {
            if (!doc.is_object() || !doc.contains("query") || !doc["query"].is_string() ||
                !doc.contains("count") || !doc["count"].is_number_integer() ||
                doc["count"].get<long long>() < 0) {
                errors.push_back("line " + std::to_string(line) +
                                 ": need {query, count>=0}");
                return;
            }
            counts[doc["query"].get<std::string>()] = doc["count"].get<long long>();
        },
        [&](int line, const std::string& msg) {
            errors.push_back("line " + std::to_string(line) + ": " + msg);
        });
    if (!errors.empty())
        throw std::runtime_error("search count fixture " + path.string() + ": " + errors.front());
    return FixtureSearchCounts(std::move(counts));
}

long long FixtureSearchCounts::count(const std::string& query) const {
    auto it = counts_.find(query);
    if (it == counts_.end()) throw ProviderError("no fixture count", query);
    return it->second;
}

}  // namespace proprank
