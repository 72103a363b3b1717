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
#include <string>
#include <vector>

#include <json.hpp>

#include "proprank/ensemble.hpp"
#include "proprank/kbstore.hpp"
#include "proprank/pivot.hpp"
#include "proprank/semantic.hpp"

namespace proprank {

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// One JSON file drives a whole run. Every random choice is controlled by
// an explicit seed; there are no entropy defaults anywhere.
struct RunConfig {
    struct Paths {
        std::string entities;
        std::string properties;
        std::string corpus;
        std::string gold_csv;
        std::string search_counts;
        std::string cache_dir;
        std::string output_dir = "proprank-out";
    } paths;

    IngestFilter ingest;

    struct TfIdf {
        double prune_low = 0.2;
        double prune_high = 0.2;
    } tfidf;

    struct Lsi {
        int topics = 400;  // desk-scale configs use far fewer
        int oversample = 10;
        int power_iterations = 3;
        uint64_t seed = 42;
    } lsi;

    LdaOptions lda;

    PivotParams pivot;
    LogisticHyperparams regression;

    std::vector<std::string> methods;
    std::vector<EnsembleSpec> ensembles;
    std::vector<double> thresholds = {0.7, 0.8, 0.9, 1.0};
    double correlate_min_agreement = 0.8;

    // The PROPRANK_CACHE_DIR environment variable overrides
    // paths.cache_dir. Relative paths resolve against the config file's
    // directory.
    static RunConfig load(const std::filesystem::path& path);
    static RunConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    uint64_t hash() const;  // over the canonical JSON form
};

struct RunManifest {
    uint64_t config_hash = 0;
    uint64_t corpus_fingerprint = 0;
    std::vector<std::pair<std::string, double>> step_seconds;
    std::vector<std::string> artifacts;

    nlohmann::json to_json() const;
};

}  // namespace proprank
