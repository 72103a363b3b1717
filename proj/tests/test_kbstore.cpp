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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace proprank;
using namespace proprank::testing;

TEST_CASE("toy store counts match hand counts") {
    KnowledgeStore store = toy_store();
    CHECK(store.usage("a") == 3);
    CHECK(store.usage("b") == 3);
    CHECK(store.usage("c") == 1);
    CHECK(store.cooccurrence("a", "b") == 2);
    CHECK(store.cooccurrence("b", "a") == 2);
    CHECK(store.cooccurrence("a", "c") == 0);
    CHECK(store.entity_count() == 4);
}

TEST_CASE("empty stream is an error") {
    std::istringstream empty("");
    CHECK_THROWS_WITH_AS(KnowledgeStore::ingest(nullptr, empty), doctest::Contains("empty store"),
                         StoreError);
}

TEST_CASE("unknown lookups throw") {
    KnowledgeStore store = toy_store();
    CHECK_THROWS_AS(store.usage("nope"), StoreError);
    CHECK_THROWS_AS(store.entity("nope"), StoreError);
    CHECK_THROWS_AS(store.cooccurrence("a", "nope"), StoreError);
    CHECK_THROWS_AS(store.occupation_cohort("nope"), StoreError);
}

TEST_CASE("declared but unused property has usage 0") {
    std::string props = R"({"id": "p_unused", "label": "unused"})" "\n";
    KnowledgeStore store = store_from(toy_entities(), props);
    CHECK(store.usage("p_unused") == 0);
}

TEST_CASE("malformed records are reported with line numbers and skipped") {
    std::ostringstream raw;
    raw << entities_jsonl(toy_entities());
    raw << "this is not json\n";
    raw << R"({"label": "missing id"})" << "\n";
    raw << R"({"id": "e5", "properties": ["d"]})" << "\n";

    std::istringstream in(raw.str());
    IngestReport report;
    KnowledgeStore store = KnowledgeStore::ingest(nullptr, in, {}, &report);
    CHECK(store.entity_count() == 5);
    CHECK(store.usage("d") == 1);
    REQUIRE(report.errors.size() == 2);
    CHECK(report.errors[0].line == 5);
    CHECK(report.errors[1].line == 6);
}

TEST_CASE("duplicate entity ids keep the first record") {
    std::string raw = R"({"id": "e1", "properties": ["a"]})" "\n"
                      R"({"id": "e1", "properties": ["b"]})" "\n";
    std::istringstream in(raw);
    IngestReport report;
    KnowledgeStore store = KnowledgeStore::ingest(nullptr, in, {}, &report);
    CHECK(store.usage("a") == 1);
    CHECK_FALSE(store.has_property("b"));
    REQUIRE(report.errors.size() == 1);
    CHECK(report.errors[0].message == "duplicate entity id e1");
}

TEST_CASE("identifier properties are dropped when the filter asks") {
    std::string props =
        R"({"id": "a", "label": "alpha"})" "\n"
        R"({"id": "c", "label": "catalog id", "is_identifier": true})" "\n";
    IngestFilter filter;
    filter.drop_identifier_properties = true;
    KnowledgeStore store = store_from(toy_entities(), props, filter);
    CHECK_FALSE(store.has_property("c"));
    CHECK(store.entity("e4").properties == std::set<PropertyId>{"b"});
    CHECK(store.usage("a") == 3);
}

TEST_CASE("minimum usage filter drops rare properties") {
    IngestFilter filter;
    filter.min_property_usage = 2;
    KnowledgeStore store = store_from(toy_entities(), "", filter);
    CHECK(store.has_property("a"));
    CHECK(store.has_property("b"));
    CHECK_FALSE(store.has_property("c"));
    CHECK(store.entity("e4").properties == std::set<PropertyId>{"b"});
}

TEST_CASE("occupation cohort") {
    std::vector<RawEntity> entities = {
        {"e1", "", "", {"singer"}, {"a"}, ""},
        {"e2", "", "", {"singer"}, {"a", "b"}, ""},
        {"e3", "", "", {"actor"}, {"b"}, ""},
        {"e4", "", "", {}, {"a"}, ""},
        {"e5", "", "", {"actor", "singer"}, {"c"}, ""},
    };
    KnowledgeStore store = store_from(entities);

    SUBCASE("same profession only") {
        CHECK(store.occupation_cohort("e1") == std::vector<EntityId>{"e2", "e5"});
    }
    SUBCASE("no occupation gives an empty cohort") {
        CHECK(store.occupation_cohort("e4").empty());
    }
    SUBCASE("two occupations take the union of both cohorts") {
        auto cohort = store.occupation_cohort("e5");
        std::set<EntityId> expected = brute_cohort(entities, "e5");
        CHECK(std::set<EntityId>(cohort.begin(), cohort.end()) == expected);
        CHECK(expected == std::set<EntityId>{"e1", "e2", "e3"});
    }
}

TEST_CASE("split_by_pivot on the toy store") {
    KnowledgeStore store = toy_store();
    auto [with_a, with_b] = store.split_by_pivot("a", "b", 10);
    CHECK(with_a == std::vector<EntityId>{"e3"});
    CHECK(with_b == std::vector<EntityId>{"e4"});
    CHECK_THROWS_AS(store.split_by_pivot("a", "a", 10), std::invalid_argument);
}

TEST_CASE("split_by_pivot truncates deterministically by sorted id") {
    std::vector<RawEntity> entities;
    for (int i = 0; i < 9; ++i)
        entities.push_back({"e" + std::to_string(i), "", "", {}, {i % 2 ? "p" : "q"}, ""});
    KnowledgeStore store = store_from(entities);
    auto [with_p, with_q] = store.split_by_pivot("p", "q", 2);
    CHECK(with_p == std::vector<EntityId>{"e1", "e3"});
    CHECK(with_q == std::vector<EntityId>{"e0", "e2"});
}

TEST_CASE("ingest invariants hold on random stores") {
    Rng rng(20260809);
    for (int round = 0; round < 60; ++round) {
        auto entities = random_entities(rng);
        KnowledgeStore store = store_from(entities);

        // sum of property set sizes == sum of usage counts
        int64_t lhs = 0;
        for (const auto& e : entities) lhs += static_cast<int64_t>(e.properties.size());
        int64_t rhs = 0;
        for (const auto& [p, def] : store.properties()) rhs += store.usage(p);
        CHECK(lhs == rhs);

        for (const auto& [p, pd] : store.properties()) {
            CHECK(store.usage(p) == brute_usage(entities, p));
            for (const auto& [q, qd] : store.properties()) {
                if (p == q) continue;
                int64_t c = store.cooccurrence(p, q);
                CHECK(c == store.cooccurrence(q, p));
                CHECK(c == brute_cooccurrence(entities, p, q));
                CHECK(c <= std::min(store.usage(p), store.usage(q)));
            }
        }
    }
}

TEST_CASE("split_by_pivot sides are disjoint and exclude both/neither") {
    Rng rng(7);
    for (int round = 0; round < 40; ++round) {
        auto entities = random_entities(rng);
        KnowledgeStore store = store_from(entities);
        if (!store.has_property("a") || !store.has_property("b")) continue;

        auto [side_a, side_b] = store.split_by_pivot("a", "b", 1000);
        std::set<EntityId> sa(side_a.begin(), side_a.end()), sb(side_b.begin(), side_b.end());
        for (const auto& id : sa) CHECK(sb.count(id) == 0);
        for (const auto& e : entities) {
            bool ha = e.properties.count("a") > 0, hb = e.properties.count("b") > 0;
            bool in_split = sa.count(e.id) > 0 || sb.count(e.id) > 0;
            CHECK(in_split == (ha != hb));
        }
    }
}

TEST_CASE("label lookups resolve to the lowest id") {
    std::vector<RawEntity> entities = {
        {"e2", "Ada", "", {}, {"a"}, ""},
        {"e1", "Ada", "", {}, {"a"}, ""},
    };
    KnowledgeStore store = store_from(entities);
    CHECK(store.entity_by_label("Ada") == EntityId("e1"));
    CHECK_FALSE(store.entity_by_label("Bob").has_value());
}
