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

#include "proprank/config.hpp"

#include <cstdlib>

#include "proprank/io.hpp"

namespace proprank {

namespace {

std::string resolve(const std::filesystem::path& base, const std::string& p) {
    if (p.empty()) return p;
    std::filesystem::path path(p);
    if (path.is_absolute()) return path.string();
    return (base / path).lexically_normal().string();
}

EnsembleSpec::TieBreak tie_break_from_string(const std::string& s) {
    if (s == "tie") return EnsembleSpec::TieBreak::Tie;
    if (s == "first_member") return EnsembleSpec::TieBreak::FirstMember;
    throw ConfigError("unknown tie_break: " + s + " (want 'tie' or 'first_member')");
}

std::string to_string(EnsembleSpec::TieBreak t) {
    return t == EnsembleSpec::TieBreak::Tie ? "tie" : "first_member";
}

}  // namespace

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    RunConfig c;
    if (j.contains("paths")) {
        const auto& p = j.at("paths");
        c.paths.entities = p.value("entities", "");
        c.paths.properties = p.value("properties", "");
        c.paths.corpus = p.value("corpus", "");
        c.paths.gold_csv = p.value("gold_csv", "");
        c.paths.search_counts = p.value("search_counts", "");
        c.paths.cache_dir = p.value("cache_dir", "");
        c.paths.output_dir = p.value("output_dir", c.paths.output_dir);
    }
    if (j.contains("ingest")) {
        const auto& f = j.at("ingest");
        c.ingest.drop_identifier_properties = f.value("drop_identifier_properties", false);
        c.ingest.min_property_usage = f.value("min_property_usage", int64_t{0});
    }
    if (j.contains("tfidf")) {
        c.tfidf.prune_low = j.at("tfidf").value("prune_low", 0.2);
        c.tfidf.prune_high = j.at("tfidf").value("prune_high", 0.2);
    }
    if (j.contains("lsi")) {
        const auto& l = j.at("lsi");
        c.lsi.topics = l.value("topics", c.lsi.topics);
        c.lsi.oversample = l.value("oversample", c.lsi.oversample);
        c.lsi.power_iterations = l.value("power_iterations", c.lsi.power_iterations);
        c.lsi.seed = l.value("seed", c.lsi.seed);
    }
    if (j.contains("lda")) {
        const auto& l = j.at("lda");
        c.lda.topics = l.value("topics", c.lda.topics);
        c.lda.alpha = l.value("alpha", c.lda.alpha);
        c.lda.beta = l.value("beta", c.lda.beta);
        c.lda.seed = l.value("seed", c.lda.seed);
        c.lda.train_sweeps = l.value("train_sweeps", c.lda.train_sweeps);
        c.lda.infer_sweeps = l.value("infer_sweeps", c.lda.infer_sweeps);
    }
    if (j.contains("pivot")) {
        const auto& p = j.at("pivot");
        c.pivot.cap = p.value("cap", c.pivot.cap);
        c.pivot.holdout = p.value("holdout", c.pivot.holdout);
        c.pivot.min_side = p.value("min_side", c.pivot.min_side);
        c.regression.learning_rate = p.value("learning_rate", c.regression.learning_rate);
        c.regression.l2 = p.value("l2", c.regression.l2);
        c.regression.max_epochs = p.value("max_epochs", c.regression.max_epochs);
        c.regression.tolerance = p.value("tolerance", c.regression.tolerance);
        c.regression.seed = p.value("seed", c.regression.seed);
    }
    if (j.contains("methods")) c.methods = j.at("methods").get<std::vector<std::string>>();
    if (j.contains("ensembles")) {
        for (const auto& e : j.at("ensembles")) {
            EnsembleSpec spec;
            spec.name = e.at("name").get<std::string>();
            spec.members = e.at("members").get<std::vector<std::string>>();
            spec.tie_break = tie_break_from_string(e.value("tie_break", "tie"));
            spec.validate();
            c.ensembles.push_back(std::move(spec));
        }
    }
    if (j.contains("evaluation") && j.at("evaluation").contains("thresholds"))
        c.thresholds = j.at("evaluation").at("thresholds").get<std::vector<double>>();
    if (j.contains("correlate"))
        c.correlate_min_agreement = j.at("correlate").value("min_agreement", 0.8);
    return c;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
    nlohmann::json j = nlohmann::json::parse(io::read_file(path), nullptr, true, true);
    RunConfig c = from_json(j);
    const auto base = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
    c.paths.entities = resolve(base, c.paths.entities);
    c.paths.properties = resolve(base, c.paths.properties);
    c.paths.corpus = resolve(base, c.paths.corpus);
    c.paths.gold_csv = resolve(base, c.paths.gold_csv);
    c.paths.search_counts = resolve(base, c.paths.search_counts);
    c.paths.cache_dir = resolve(base, c.paths.cache_dir);
    c.paths.output_dir = resolve(base, c.paths.output_dir);
    if (const char* env = std::getenv("PROPRANK_CACHE_DIR"); env && *env)
        c.paths.cache_dir = env;
    return c;
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json ensemble_list = nlohmann::json::array();
    for (const auto& e : ensembles)
        ensemble_list.push_back({{"name", e.name},
                                 {"members", e.members},
                                 {"tie_break", to_string(e.tie_break)}});
    return nlohmann::json{
        {"paths",
         {{"entities", paths.entities},
          {"properties", paths.properties},
          {"corpus", paths.corpus},
          {"gold_csv", paths.gold_csv},
          {"search_counts", paths.search_counts},
          {"cache_dir", paths.cache_dir},
          {"output_dir", paths.output_dir}}},
        {"ingest",
         {{"drop_identifier_properties", ingest.drop_identifier_properties},
          {"min_property_usage", ingest.min_property_usage}}},
        {"tfidf", {{"prune_low", tfidf.prune_low}, {"prune_high", tfidf.prune_high}}},
        {"lsi",
         {{"topics", lsi.topics},
          {"oversample", lsi.oversample},
          {"power_iterations", lsi.power_iterations},
          {"seed", lsi.seed}}},
        {"lda",
         {{"topics", lda.topics},
          {"alpha", lda.alpha},
          {"beta", lda.beta},
          {"seed", lda.seed},
          {"train_sweeps", lda.train_sweeps},
          {"infer_sweeps", lda.infer_sweeps}}},
        {"pivot",
         {{"cap", pivot.cap},
          {"holdout", pivot.holdout},
          {"min_side", pivot.min_side},
          {"learning_rate", regression.learning_rate},
          {"l2", regression.l2},
          {"max_epochs", regression.max_epochs},
          {"tolerance", regression.tolerance},
          {"seed", regression.seed}}},
        {"methods", methods},
        {"ensembles", std::move(ensemble_list)},
        {"evaluation", {{"thresholds", thresholds}}},
        {"correlate", {{"min_agreement", correlate_min_agreement}}},
    };
}

uint64_t RunConfig::hash() const { return io::fnv1a(to_json().dump()); }

nlohmann::json RunManifest::to_json() const {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& [name, seconds] : step_seconds)
        steps.push_back({{"step", name}, {"seconds", seconds}});
    return nlohmann::json{
        {"config_hash", io::to_hex(config_hash)},
        {"corpus_fingerprint", io::to_hex(corpus_fingerprint)},
        {"steps", std::move(steps)},
        {"artifacts", artifacts},
    };
}

}  // namespace proprank
