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

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "proprank/judge.hpp"

namespace proprank {

class StoreError : public std::runtime_error {
public:
    explicit StoreError(const std::string& what) : std::runtime_error(what) {}
};

struct EntityRecord {
    EntityId id;
    std::string label;
    std::string description;
    std::set<EntityId> occupations;   // may reference ids outside the store
    std::set<PropertyId> properties;
    std::optional<std::string> article;  // document id into the text corpus

    bool has_property(const PropertyId& p) const { return properties.count(p) > 0; }
};

struct PropertyDef {
    PropertyId id;
    std::string label;
    std::string description;
    bool is_identifier = false;
};

struct IngestFilter {
    bool drop_identifier_properties = false;
    int64_t min_property_usage = 0;  // 0 keeps everything
};

struct IngestError {
    std::string file;
    int line = 0;
    std::string message;
};

struct IngestReport {
    std::vector<IngestError> errors;
    int64_t entities_kept = 0;
    int64_t properties_kept = 0;
};

// Immutable once built. Entities are indexed together with per-property
// usage counts and symmetric pairwise co-occurrence counts, which is all
// the frequency- and association-based rankers need.
class KnowledgeStore {
public:
    // `properties` may be null; property ids mentioned only by entities are
    // auto-registered with their id as label. Malformed lines are reported
    // and skipped. Throws StoreError if no entity survives.
    static KnowledgeStore ingest(std::istream* properties, std::istream& entities,
                                 const IngestFilter& filter = {},
                                 IngestReport* report = nullptr);
    static KnowledgeStore ingest_files(const std::filesystem::path& properties,
                                       const std::filesystem::path& entities,
                                       const IngestFilter& filter = {},
                                       IngestReport* report = nullptr);

    // Count of entities carrying the property. Throws on unknown property.
    int64_t usage(const PropertyId& p) const;

    // Count of entities carrying both properties; symmetric.
    int64_t cooccurrence(const PropertyId& p, const PropertyId& q) const;

    // All entities sharing at least one occupation with `e`, excluding `e`
    // itself; the union is taken over multiple occupations. Sorted by id.
    std::vector<EntityId> occupation_cohort(const EntityId& e) const;

    // Entities with p but not q, and with q but not p, each truncated to
    // `cap` in sorted-id order. Entities having both or neither are left
    // out. Throws std::invalid_argument if p == q.
    std::pair<std::vector<EntityId>, std::vector<EntityId>>
    split_by_pivot(const PropertyId& p, const PropertyId& q, int64_t cap) const;

    const EntityRecord& entity(const EntityId& e) const;
    const PropertyDef& property(const PropertyId& p) const;
    bool has_entity(const EntityId& e) const { return entities_.count(e) > 0; }
    bool has_property(const PropertyId& p) const { return properties_.count(p) > 0; }

    std::optional<EntityId> entity_by_label(const std::string& label) const;
    std::optional<PropertyId> property_by_label(const std::string& label) const;

    const std::map<EntityId, EntityRecord>& entities() const { return entities_; }
    const std::map<PropertyId, PropertyDef>& properties() const { return properties_; }

    int64_t entity_count() const { return static_cast<int64_t>(entities_.size()); }
    int64_t property_count() const { return static_cast<int64_t>(properties_.size()); }

private:
    static std::pair<PropertyId, PropertyId> pair_key(const PropertyId& a, const PropertyId& b) {
        return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    }
    void index_entity(const EntityRecord& rec);
    void build_label_indexes();

    std::map<EntityId, EntityRecord> entities_;
    std::map<PropertyId, PropertyDef> properties_;
    std::map<PropertyId, int64_t> usage_;
    std::map<std::pair<PropertyId, PropertyId>, int64_t> cooccurrence_;  // key: (min,max)
    std::map<EntityId, std::vector<EntityId>> occupation_members_;
    std::map<std::string, EntityId> entity_labels_;      // first (lowest) id wins
    std::map<std::string, PropertyId> property_labels_;
};

}  // namespace proprank
