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
// Shared fixtures and independent brute-force oracles for the test suite.
// The oracles recount everything from raw entity data on purpose: they
// must not share code with the store's incremental counters.

#pragma once

#include <json.hpp>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "proprank/kbstore.hpp"
#include "proprank/rng.hpp"

namespace proprank::testing {

struct RawEntity {
    std::string id;
    std::string label;
    std::string description;
    std::vector<std::string> occupations;
    std::set<std::string> properties;
    std::string article;  // empty = none
};

inline std::string entities_jsonl(const std::vector<RawEntity>& entities) {
    std::ostringstream out;
    for (const auto& e : entities) {
        nlohmann::json doc{{"id", e.id},
                           {"label", e.label.empty() ? e.id : e.label},
                           {"description", e.description},
                           {"occupations", e.occupations},
                           {"properties", std::vector<std::string>(e.properties.begin(),
                                                                   e.properties.end())}};
        if (!e.article.empty()) doc["article"] = e.article;
        out << doc.dump() << "\n";
    }
    return out.str();
}

inline KnowledgeStore store_from(const std::vector<RawEntity>& entities,
                                 const std::string& properties_jsonl = "",
                                 const IngestFilter& filter = {},
                                 IngestReport* report = nullptr) {
    std::istringstream ents(entities_jsonl(entities));
    if (properties_jsonl.empty()) return KnowledgeStore::ingest(nullptr, ents, filter, report);
    std::istringstream props(properties_jsonl);
    return KnowledgeStore::ingest(&props, ents, filter, report);
}

// The four-entity store used across the examples:
// e1{a,b} e2{a,b} e3{a} e4{b,c}
inline std::vector<RawEntity> toy_entities() {
    return {{"e1", "", "", {}, {"a", "b"}, ""},
            {"e2", "", "", {}, {"a", "b"}, ""},
            {"e3", "", "", {}, {"a"}, ""},
            {"e4", "", "", {}, {"b", "c"}, ""}};
}

inline KnowledgeStore toy_store() { return store_from(toy_entities()); }

// Random stores for property tests: <= max_entities entities over <=
// max_properties properties named "a".."h", occasional occupations.
inline std::vector<RawEntity> random_entities(Rng& rng, int max_entities = 50,
                                              int max_properties = 8) {
    int n = 1 + static_cast<int>(rng.next_below(max_entities));
    int props = 1 + static_cast<int>(rng.next_below(max_properties));
    std::vector<RawEntity> entities;
    for (int i = 0; i < n; ++i) {
        RawEntity e;
        e.id = "e" + std::to_string(i);
        for (int p = 0; p < props; ++p)
            if (rng.next_double() < 0.4) e.properties.insert(std::string(1, 'a' + p));
        if (rng.next_double() < 0.5)
            e.occupations.push_back("occ" + std::to_string(rng.next_below(3)));
        entities.push_back(std::move(e));
    }
    return entities;
}

// ---- brute-force oracles ------------------------------------------------

inline int64_t brute_usage(const std::vector<RawEntity>& entities, const std::string& p) {
    int64_t n = 0;
    for (const auto& e : entities) n += e.properties.count(p) ? 1 : 0;
    return n;
}

inline int64_t brute_cooccurrence(const std::vector<RawEntity>& entities, const std::string& p,
                                  const std::string& q) {
    int64_t n = 0;
    for (const auto& e : entities) n += (e.properties.count(p) && e.properties.count(q)) ? 1 : 0;
    return n;
}

// Materialises every rule p -> candidate over the raw data and sums the
// squared confidences, exactly as defined.
inline double brute_association_score(const std::vector<RawEntity>& entities,
                                      const std::set<std::string>& entity_properties,
                                      const std::string& candidate) {
    double score = 0;
    for (const auto& p : entity_properties) {
        if (p == candidate) continue;
        int64_t usage = brute_usage(entities, p);
        if (usage == 0) continue;
        double conf = static_cast<double>(brute_cooccurrence(entities, p, candidate)) /
                      static_cast<double>(usage);
        score += conf * conf;
    }
    return score;
}

inline std::set<std::string> brute_cohort(const std::vector<RawEntity>& entities,
                                          const std::string& id) {
    const RawEntity* self = nullptr;
    for (const auto& e : entities)
        if (e.id == id) self = &e;
    std::set<std::string> cohort;
    if (!self) return cohort;
    for (const auto& e : entities) {
        if (e.id == id) continue;
        for (const auto& occ : self->occupations)
            for (const auto& other : e.occupations)
                if (occ == other) cohort.insert(e.id);
    }
    return cohort;
}

}  // namespace proprank::testing
