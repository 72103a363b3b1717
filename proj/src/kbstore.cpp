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

#include "proprank/kbstore.hpp"

#include <algorithm>
#include <fstream>

#include "proprank/io.hpp"

namespace proprank {

namespace {

void report_error(IngestReport* report, const std::string& file, int line,
                  const std::string& message) {
    if (report) report->errors.push_back({file, line, message});
}

std::optional<PropertyDef> parse_property(const nlohmann::json& doc, std::string* error) {
    if (!doc.is_object() || !doc.contains("id") || !doc["id"].is_string()) {
        *error = "missing string field 'id'";
        return std::nullopt;
    }
    PropertyDef def;
    def.id = doc["id"].get<std::string>();
    if (def.id.empty()) {
        *error = "empty property id";
        return std::nullopt;
    }
    def.label = doc.value("label", def.id);
    if (def.label.empty()) def.label = def.id;
    def.description = doc.value("description", "");
    def.is_identifier = doc.value("is_identifier", false);
    return def;
}

std::optional<EntityRecord> parse_entity(const nlohmann::json& doc, std::string* error) {
    if (!doc.is_object() || !doc.contains("id") || !doc["id"].is_string()) {
        *error = "missing string field 'id'";
        return std::nullopt;
    }
    EntityRecord rec;
    rec.id = doc["id"].get<std::string>();
    if (rec.id.empty()) {
        *error = "empty entity id";
        return std::nullopt;
    }
    rec.label = doc.value("label", rec.id);
    rec.description = doc.value("description", "");
    if (doc.contains("occupations")) {
        if (!doc["occupations"].is_array()) {
            *error = "'occupations' must be an array";
            return std::nullopt;
        }
        for (const auto& o : doc["occupations"]) {
            if (!o.is_string()) {
                *error = "'occupations' entries must be strings";
                return std::nullopt;
            }
            rec.occupations.insert(o.get<std::string>());
        }
    }
    if (doc.contains("properties")) {
        if (!doc["properties"].is_array()) {
            *error = "'properties' must be an array";
            return std::nullopt;
        }
        for (const auto& p : doc["properties"]) {
            if (!p.is_string() || p.get<std::string>().empty()) {
                *error = "'properties' entries must be non-empty strings";
                return std::nullopt;
            }
            rec.properties.insert(p.get<std::string>());
        }
    }
    if (doc.contains("article") && doc["article"].is_string())
        rec.article = doc["article"].get<std::string>();
    return rec;
}

}  // namespace

KnowledgeStore KnowledgeStore::ingest(std::istream* properties, std::istream& entities,
                                      const IngestFilter& filter, IngestReport* report) {
    KnowledgeStore store;

    if (properties) {
        io::for_each_jsonl(
            *properties,
            [&](int line, const nlohmann::json& doc) {
                std::string error;
                auto def = parse_property(doc, &error);
                if (!def) {
                    report_error(report, "properties", line, error);
                    return;
                }
                if (!store.properties_.emplace(def->id, *def).second)
                    report_error(report, "properties", line, "duplicate property id " + def->id);
            },
            [&](int line, const std::string& msg) { report_error(report, "properties", line, msg); });
    }

    io::for_each_jsonl(
        entities,
        [&](int line, const nlohmann::json& doc) {
            std::string error;
            auto rec = parse_entity(doc, &error);
            if (!rec) {
                report_error(report, "entities", line, error);
                return;
            }
            if (store.entities_.count(rec->id)) {
                report_error(report, "entities", line, "duplicate entity id " + rec->id);
                return;
            }
            // Auto-register properties that appear without a definition.
            for (const auto& p : rec->properties) {
                if (!store.properties_.count(p)) store.properties_.emplace(p, PropertyDef{p, p, "", false});
            }
            store.entities_.emplace(rec->id, std::move(*rec));
        },
        [&](int line, const std::string& msg) { report_error(report, "entities", line, msg); });

    if (filter.drop_identifier_properties) {
        std::set<PropertyId> dropped;
        for (auto it = store.properties_.begin(); it != store.properties_.end();) {
            if (it->second.is_identifier) {
                dropped.insert(it->first);
                it = store.properties_.erase(it);
            } else {
                ++it;
            }
        }
        for (auto& [id, rec] : store.entities_)
            for (const auto& p : dropped) rec.properties.erase(p);
    }

    if (filter.min_property_usage > 0) {
        std::map<PropertyId, int64_t> raw_usage;
        for (const auto& [id, rec] : store.entities_)
            for (const auto& p : rec.properties) ++raw_usage[p];
        std::set<PropertyId> dropped;
        for (auto it = store.properties_.begin(); it != store.properties_.end();) {
            if (raw_usage[it->first] < filter.min_property_usage) {
                dropped.insert(it->first);
                it = store.properties_.erase(it);
            } else {
                ++it;
            }
        }
        for (auto& [id, rec] : store.entities_)
            for (const auto& p : dropped) rec.properties.erase(p);
    }

    if (store.entities_.empty()) throw StoreError("empty store: no entities survived ingestion");

    for (const auto& [id, p] : store.properties_) store.usage_[id] = 0;
    for (const auto& [id, rec] : store.entities_) store.index_entity(rec);
    store.build_label_indexes();

    if (report) {
        report->entities_kept = store.entity_count();
        report->properties_kept = store.property_count();
    }
    return store;
}

KnowledgeStore KnowledgeStore::ingest_files(const std::filesystem::path& properties,
                                            const std::filesystem::path& entities,
                                            const IngestFilter& filter, IngestReport* report) {
    std::ifstream ents(entities);
    if (!ents) throw StoreError("cannot open entity file: " + entities.string());
    if (properties.empty()) return ingest(nullptr, ents, filter, report);
    std::ifstream props(properties);
    if (!props) throw StoreError("cannot open property file: " + properties.string());
    return ingest(&props, ents, filter, report);
}

void KnowledgeStore::index_entity(const EntityRecord& rec) {
    for (auto it = rec.properties.begin(); it != rec.properties.end(); ++it) {
        ++usage_[*it];
        for (auto jt = std::next(it); jt != rec.properties.end(); ++jt)
            ++cooccurrence_[pair_key(*it, *jt)];
    }
    for (const auto& occ : rec.occupations) occupation_members_[occ].push_back(rec.id);
}

void KnowledgeStore::build_label_indexes() {
    for (const auto& [id, rec] : entities_) entity_labels_.emplace(rec.label, id);
    for (const auto& [id, def] : properties_) property_labels_.emplace(def.label, id);
}

int64_t KnowledgeStore::usage(const PropertyId& p) const {
    auto it = usage_.find(p);
    if (it == usage_.end()) throw StoreError("unknown property: " + p);
    return it->second;
}

int64_t KnowledgeStore::cooccurrence(const PropertyId& p, const PropertyId& q) const {
    if (!has_property(p)) throw StoreError("unknown property: " + p);
    if (!has_property(q)) throw StoreError("unknown property: " + q);
    auto it = cooccurrence_.find(pair_key(p, q));
    return it == cooccurrence_.end() ? 0 : it->second;
}

std::vector<EntityId> KnowledgeStore::occupation_cohort(const EntityId& e) const {
    const EntityRecord& rec = entity(e);
    std::set<EntityId> members;
    for (const auto& occ : rec.occupations) {
        auto it = occupation_members_.find(occ);
        if (it == occupation_members_.end()) continue;
        members.insert(it->second.begin(), it->second.end());
    }
    members.erase(e);
    return {members.begin(), members.end()};
}

std::pair<std::vector<EntityId>, std::vector<EntityId>>
KnowledgeStore::split_by_pivot(const PropertyId& p, const PropertyId& q, int64_t cap) const {
    if (p == q) throw std::invalid_argument("split_by_pivot requires two distinct properties");
    std::vector<EntityId> with_p, with_q;
    for (const auto& [id, rec] : entities_) {
        bool hp = rec.has_property(p), hq = rec.has_property(q);
        if (hp == hq) continue;
        auto& side = hp ? with_p : with_q;
        if (static_cast<int64_t>(side.size()) < cap) side.push_back(id);
        if (static_cast<int64_t>(with_p.size()) >= cap &&
            static_cast<int64_t>(with_q.size()) >= cap)
            break;
    }
    return {std::move(with_p), std::move(with_q)};
}

const EntityRecord& KnowledgeStore::entity(const EntityId& e) const {
    auto it = entities_.find(e);
    if (it == entities_.end()) throw StoreError("unknown entity: " + e);
    return it->second;
}

const PropertyDef& KnowledgeStore::property(const PropertyId& p) const {
    auto it = properties_.find(p);
    if (it == properties_.end()) throw StoreError("unknown property: " + p);
    return it->second;
}

std::optional<EntityId> KnowledgeStore::entity_by_label(const std::string& label) const {
    auto it = entity_labels_.find(label);
    if (it == entity_labels_.end()) return std::nullopt;
    return it->second;
}

std::optional<PropertyId> KnowledgeStore::property_by_label(const std::string& label) const {
    auto it = property_labels_.find(label);
    if (it == property_labels_.end()) return std::nullopt;
    return it->second;
}

}  // namespace proprank
