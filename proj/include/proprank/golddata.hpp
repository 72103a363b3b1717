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
#include <istream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "proprank/judge.hpp"

namespace proprank {

class GoldDataError : public std::runtime_error {
public:
    explicit GoldDataError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int kVotesPerRecord = 10;

// One annotated (entity, property A, property B) comparison with ten votes.
struct GoldRecord {
    std::string entity_label;
    std::string entity_description;
    std::string prop_a;
    std::string prop_b;
    int votes_a = 0;
    int votes_b = 0;

    enum class Preferred { A, B, None };

    int majority_votes() const { return std::max(votes_a, votes_b); }
    double agreement() const { return majority_votes() / static_cast<double>(kVotesPerRecord); }
    Preferred preferred() const {
        if (votes_a > votes_b) return Preferred::A;
        if (votes_b > votes_a) return Preferred::B;
        return Preferred::None;
    }
};

// CSV with header: entity_label, entity_description, prop_a, prop_b,
// votes_a, votes_b. Votes must sum to 10; violations raise GoldDataError
// carrying the row number.
std::vector<GoldRecord> load_gold(const std::filesystem::path& path);
std::vector<GoldRecord> load_gold(std::istream& in, const std::string& origin = "<stream>");

struct AgreementDistribution {
    std::map<int, int> counts;  // majority votes (5..10) -> number of records
    double mean = 0;            // mean agreement in [0.5, 1]
};

AgreementDistribution agreement_distribution(const std::vector<GoldRecord>& records);

// P(majority = m of n) when every vote is a fair coin flip.
std::map<int, double> random_agreement_model(int n_votes = kVotesPerRecord);

// Chance-corrected agreement for the two-category, ten-rater panel.
double fleiss_kappa(const std::vector<GoldRecord>& records);

// A method's vote on one gold record. Implementations convert their own
// failure modes into Vote::Abstain.
class RecordJudge {
public:
    virtual ~RecordJudge() = default;
    virtual std::string name() const = 0;
    virtual Vote judge_record(const GoldRecord& record) const = 0;
};

struct PprefResult {
    int hits = 0;
    int total = 0;        // records in the bucket
    int abstentions = 0;  // abstains among them (counted as misses)
    int ties = 0;         // method ties among them (counted as misses)
    double value() const { return total ? static_cast<double>(hits) / total : 0.0; }
};

// Fraction of records with agreement >= threshold where the judgment
// matches the annotator majority. Ties and abstentions are misses.
// Records with no majority (5:5) never enter a bucket. Throws
// GoldDataError if the bucket is empty.
PprefResult ppref(const std::vector<Vote>& judgments, const std::vector<GoldRecord>& records,
                  double threshold);

struct EvalBucket {
    double threshold = 0;
    int n = 0;
    double annotator_agreement_mean = 0;
    std::map<std::string, PprefResult> per_method;
    std::map<std::string, std::string> failures;  // method -> error message
};

struct EvalReport {
    std::vector<std::string> method_names;
    std::vector<EvalBucket> buckets;

    std::string to_text() const;
    nlohmann::json to_json() const;
};

// Runs every method over every record once, then buckets by agreement
// threshold. Adds the analytic "random" (50%) and per-bucket "annotators"
// reference rows. Method errors are recorded per bucket; the run continues.
EvalReport evaluate(const std::vector<const RecordJudge*>& methods,
                    const std::vector<GoldRecord>& records,
                    const std::vector<double>& thresholds = {0.7, 0.8, 0.9, 1.0});

}  // namespace proprank
