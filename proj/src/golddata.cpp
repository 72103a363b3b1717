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

#include "proprank/golddata.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "proprank/io.hpp"

namespace proprank {

namespace {

int parse_votes(const std::string& field, const std::string& origin, int row) {
    size_t pos = 0;
    int value;
    try {
        value = std::stoi(field, &pos);
    } catch (const std::exception&) {
        throw GoldDataError(origin + " row " + std::to_string(row) + ": bad vote count '" +
                            field + "'");
    }
    if (pos != field.size() || value < 0)
        throw GoldDataError(origin + " row " + std::to_string(row) + ": bad vote count '" +
                            field + "'");
    return value;
}

int bucket_min_votes(double threshold) {
    return static_cast<int>(std::lround(threshold * kVotesPerRecord));
}

std::string bucket_label(double threshold) {
    std::ostringstream ss;
    ss << (threshold >= 1.0 ? "=" : ">=") << std::lround(threshold * 100) << "%";
    return ss.str();
}

std::string percent(double v) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(1) << v * 100.0;
    return ss.str();
}

}  // namespace

std::vector<GoldRecord> load_gold(std::istream& in, const std::string& origin) {
    std::string line;
    if (!std::getline(in, line)) throw GoldDataError(origin + ": empty file");
    auto header = io::parse_csv_row(line);
    const std::vector<std::string> expected = {"entity_label", "entity_description",
                                               "prop_a", "prop_b", "votes_a", "votes_b"};
    if (header != expected)
        throw GoldDataError(origin + ": unexpected header (want entity_label,"
                            "entity_description,prop_a,prop_b,votes_a,votes_b)");

    std::vector<GoldRecord> records;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto fields = io::parse_csv_row(line);
        if (fields.size() != 6)
            throw GoldDataError(origin + " row " + std::to_string(row) + ": expected 6 fields, got " +
                                std::to_string(fields.size()));
        GoldRecord rec;
        rec.entity_label = fields[0];
        rec.entity_description = fields[1];
        rec.prop_a = fields[2];
        rec.prop_b = fields[3];
        rec.votes_a = parse_votes(fields[4], origin, row);
        rec.votes_b = parse_votes(fields[5], origin, row);
        if (rec.votes_a + rec.votes_b != kVotesPerRecord)
            throw GoldDataError(origin + " row " + std::to_string(row) + ": votes sum to " +
                                std::to_string(rec.votes_a + rec.votes_b) + ", expected " +
                                std::to_string(kVotesPerRecord));
        if (rec.prop_a.empty() || rec.prop_b.empty())
            throw GoldDataError(origin + " row " + std::to_string(row) + ": empty property label");
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<GoldRecord> load_gold(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw GoldDataError("cannot open gold file: " + path.string());
    return load_gold(in, path.string());
}

AgreementDistribution agreement_distribution(const std::vector<GoldRecord>& records) {
    if (records.empty()) throw GoldDataError("agreement distribution of an empty record set");
    AgreementDistribution dist;
    double sum = 0;
    for (const auto& rec : records) {
        ++dist.counts[rec.majority_votes()];
        sum += rec.agreement();
    }
    dist.mean = sum / static_cast<double>(records.size());
    return dist;
}

std::map<int, double> random_agreement_model(int n_votes) {
    if (n_votes < 1) throw std::invalid_argument("need at least one vote");
    // C(n, m) for the full row; exact in doubles for any plausible panel size.
    std::vector<double> binom(n_votes + 1);
    binom[0] = 1;
    for (int m = 1; m <= n_votes; ++m)
        binom[m] = binom[m - 1] * (n_votes - m + 1) / m;
    const double denom = std::pow(2.0, n_votes);

    std::map<int, double> dist;
    int m_min = (n_votes + 1) / 2;
    if (n_votes % 2 == 0) {
        dist[n_votes / 2] = binom[n_votes / 2] / denom;
        m_min = n_votes / 2 + 1;
    }
    for (int m = m_min; m <= n_votes; ++m) dist[m] = 2.0 * binom[m] / denom;
    return dist;
}

double fleiss_kappa(const std::vector<GoldRecord>& records) {
    if (records.size() < 2) throw GoldDataError("fleiss_kappa needs at least two records");
    const double n = kVotesPerRecord;
    const double N = static_cast<double>(records.size());

    double sum_a = 0, sum_extent = 0;
    for (const auto& rec : records) {
        sum_a += rec.votes_a;
        double a = rec.votes_a, b = rec.votes_b;
        sum_extent += (a * a + b * b - n) / (n * (n - 1));
    }
    double p_a = sum_a / (N * n);
    double p_b = 1.0 - p_a;
    double p_bar = sum_extent / N;
    double p_e = p_a * p_a + p_b * p_b;
    if (p_e >= 1.0) throw GoldDataError("degenerate category distribution");
    return (p_bar - p_e) / (1.0 - p_e);
}

PprefResult ppref(const std::vector<Vote>& judgments, const std::vector<GoldRecord>& records,
                  double threshold) {
    if (judgments.size() != records.size())
        throw GoldDataError("judgments not aligned with records");
    const int min_votes = bucket_min_votes(threshold);

    PprefResult result;
    for (size_t i = 0; i < records.size(); ++i) {
        const GoldRecord& rec = records[i];
        if (rec.preferred() == GoldRecord::Preferred::None) continue;
        if (rec.majority_votes() < min_votes) continue;
        ++result.total;
        switch (judgments[i]) {
        case Vote::First:
            if (rec.preferred() == GoldRecord::Preferred::A) ++result.hits;
            break;
        case Vote::Second:
            if (rec.preferred() == GoldRecord::Preferred::B) ++result.hits;
            break;
        case Vote::Tie:
            ++result.ties;
            break;
        case Vote::Abstain:
            ++result.abstentions;
            break;
        }
    }
    if (result.total == 0)
        throw GoldDataError("empty bucket at agreement threshold " + bucket_label(threshold));
    return result;
}

EvalReport evaluate(const std::vector<const RecordJudge*>& methods,
                    const std::vector<GoldRecord>& records,
                    const std::vector<double>& thresholds) {
    if (records.empty()) throw GoldDataError("no gold records to evaluate");

    EvalReport report;
    std::map<std::string, std::vector<Vote>> judgments;
    std::map<std::string, std::string> hard_failures;
    for (const RecordJudge* method : methods) {
        report.method_names.push_back(method->name());
        try {
            std::vector<Vote> votes;
            votes.reserve(records.size());
            for (const auto& rec : records) votes.push_back(method->judge_record(rec));
            judgments.emplace(method->name(), std::move(votes));
        } catch (const std::exception& err) {
            hard_failures.emplace(method->name(), err.what());
        }
    }

    for (double threshold : thresholds) {
        EvalBucket bucket;
        bucket.threshold = threshold;
        const int min_votes = bucket_min_votes(threshold);
        double agreement_sum = 0;
        for (const auto& rec : records) {
            if (rec.preferred() == GoldRecord::Preferred::None) continue;
            if (rec.majority_votes() < min_votes) continue;
            ++bucket.n;
            agreement_sum += rec.agreement();
        }
        bucket.annotator_agreement_mean = bucket.n ? agreement_sum / bucket.n : 0.0;

        for (const RecordJudge* method : methods) {
            const std::string& name = method->name();
            auto failed = hard_failures.find(name);
            if (failed != hard_failures.end()) {
                bucket.failures.emplace(name, failed->second);
                continue;
            }
            try {
                bucket.per_method.emplace(name, ppref(judgments.at(name), records, threshold));
            } catch (const std::exception& err) {
                bucket.failures.emplace(name, err.what());
            }
        }
        report.buckets.push_back(std::move(bucket));
    }
    return report;
}

std::string EvalReport::to_text() const {
    std::ostringstream out;
    size_t width = std::string("annotators").size();
    for (const auto& name : method_names) width = std::max(width, name.size());

    out << std::left << std::setw(static_cast<int>(width) + 2) << "method";
    out << "ppref on records with agreement\n";
    out << std::setw(static_cast<int>(width) + 2) << "";
    for (const auto& bucket : buckets)
        out << std::setw(16) << (bucket_label(bucket.threshold) + " (n=" + std::to_string(bucket.n) + ")");
    out << "\n";

    auto row = [&](const std::string& name, const std::function<std::string(const EvalBucket&)>& cell) {
        out << std::setw(static_cast<int>(width) + 2) << name;
        for (const auto& bucket : buckets) out << std::setw(16) << cell(bucket);
        out << "\n";
    };
    row("random", [](const EvalBucket&) { return percent(0.5); });
    row("annotators", [](const EvalBucket& b) { return percent(b.annotator_agreement_mean); });
    for (const auto& name : method_names) {
        row(name, [&](const EvalBucket& b) -> std::string {
            auto it = b.per_method.find(name);
            if (it == b.per_method.end()) return "error";
            std::string cell = percent(it->second.value());
            if (it->second.abstentions > 0)
                cell += " [" + std::to_string(it->second.abstentions) + "a]";
            return cell;
        });
    }

    bool any_failure = false;
    for (const auto& bucket : buckets) any_failure = any_failure || !bucket.failures.empty();
    if (any_failure) {
        out << "\nfailures:\n";
        for (const auto& bucket : buckets)
            for (const auto& [name, msg] : bucket.failures)
                out << "  " << bucket_label(bucket.threshold) << " " << name << ": " << msg << "\n";
    }
    return out.str();
}

nlohmann::json EvalReport::to_json() const {
    nlohmann::json j;
    j["method_names"] = method_names;
    j["buckets"] = nlohmann::json::array();
    for (const auto& bucket : buckets) {
        nlohmann::json b;
        b["threshold"] = bucket.threshold;
        b["label"] = bucket_label(bucket.threshold);
        b["n"] = bucket.n;
        b["annotator_agreement_mean"] = bucket.annotator_agreement_mean;
        b["random_reference"] = 0.5;
        nlohmann::json methods = nlohmann::json::object();
        for (const auto& [name, result] : bucket.per_method) {
            methods[name] = {{"ppref", result.value()},
                             {"hits", result.hits},
                             {"total", result.total},
                             {"abstentions", result.abstentions},
                             {"ties", result.ties}};
        }
        b["methods"] = std::move(methods);
        b["failures"] = bucket.failures;
        j["buckets"].push_back(std::move(b));
    }
    return j;
}

}  // namespace proprank
