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
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "proprank/judge.hpp"

namespace proprank {

class EnsembleError : public std::runtime_error {
public:
    explicit EnsembleError(const std::string& what) : std::runtime_error(what) {}
};

// Judgments of several methods over the same record list. Rows are
// records, columns are named methods.
class JudgmentMatrix {
public:
    JudgmentMatrix(std::vector<std::string> methods, std::vector<std::string> record_ids);

    void set(const std::string& record_id, const std::string& method, Vote v);
    Vote at(size_t row, size_t col) const { return cells_.at(row).at(col); }
    std::vector<Vote> column(const std::string& method) const;

    const std::vector<std::string>& methods() const { return methods_; }
    const std::vector<std::string>& record_ids() const { return record_ids_; }
    size_t rows() const { return record_ids_.size(); }

    // Long-form delimited text: record_id <TAB> method <TAB> judgment.
    // Methods and records appear in first-seen order on load. Cells not
    // present in the file default to ABSTAIN.
    static JudgmentMatrix load_tsv(const std::filesystem::path& path);
    std::string to_tsv() const;

private:
    size_t method_index(const std::string& method) const;
    size_t record_index(const std::string& record_id) const;

    std::vector<std::string> methods_;
    std::vector<std::string> record_ids_;
    std::vector<std::vector<Vote>> cells_;  // [record][method]
};

// Sample Pearson correlation between two judgment columns with FIRST
// encoded as 1 and SECOND as 0. Rows where either side is TIE or ABSTAIN
// are excluded. Throws EnsembleError when fewer than two rows survive or
// either column has zero variance.
double pearson(const std::vector<Vote>& a, const std::vector<Vote>& b);

struct CorrelationMatrix {
    std::vector<std::string> methods;
    // r[i][j]; diagonal and undefined cells are nullopt. Symmetric.
    std::vector<std::vector<std::optional<double>>> r;

    std::string to_text() const;
};

CorrelationMatrix correlation_matrix(const JudgmentMatrix& matrix);

struct EnsembleSpec {
    std::string name;
    std::vector<std::string> members;  // >= 3 distinct method names
    enum class TieBreak { Tie, FirstMember };
    TieBreak tie_break = TieBreak::Tie;

    void validate() const;
};

// Counts FIRST vs SECOND among the non-tie, non-abstain member votes;
// a strict majority wins and equal counts give a tie (or defer to the
// first member under TieBreak::FirstMember). All-abstain panels raise
// AbstainError. Scores carry the two vote counts.
PreferenceJudgment majority_judge(const std::vector<Vote>& member_votes,
                                  EnsembleSpec::TieBreak tie_break = EnsembleSpec::TieBreak::Tie);

// The best-performing five-method combination: search counts, LSI, LDA,
// occupation frequency and TF-IDF regression.
EnsembleSpec best_paper_ensemble();

class EnsembleJudge : public PreferenceJudge {
public:
    EnsembleJudge(EnsembleSpec spec, std::vector<const PreferenceJudge*> members);

    PreferenceJudgment judge(const EntityId& e, const PropertyId& p,
                             const PropertyId& q) const override;
    std::string name() const override { return spec_.name; }
    const EnsembleSpec& spec() const { return spec_; }

private:
    EnsembleSpec spec_;
    std::vector<const PreferenceJudge*> members_;
};

}  // namespace proprank
