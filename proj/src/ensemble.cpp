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

#include "proprank/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "proprank/io.hpp"

namespace proprank {

JudgmentMatrix::JudgmentMatrix(std::vector<std::string> methods,
                               std::vector<std::string> record_ids)
    : methods_(std::move(methods)), record_ids_(std::move(record_ids)) {
    cells_.assign(record_ids_.size(), std::vector<Vote>(methods_.size(), Vote::Abstain));
}

size_t JudgmentMatrix::method_index(const std::string& method) const {
    auto it = std::find(methods_.begin(), methods_.end(), method);
    if (it == methods_.end()) throw EnsembleError("unknown method column: " + method);
    return static_cast<size_t>(it - methods_.begin());
}

size_t JudgmentMatrix::record_index(const std::string& record_id) const {
    auto it = std::find(record_ids_.begin(), record_ids_.end(), record_id);
    if (it == record_ids_.end()) throw EnsembleError("unknown record id: " + record_id);
    return static_cast<size_t>(it - record_ids_.begin());
}

void JudgmentMatrix::set(const std::string& record_id, const std::string& method, Vote v) {
    cells_[record_index(record_id)][method_index(method)] = v;
}

std::vector<Vote> JudgmentMatrix::column(const std::string& method) const {
    size_t col = method_index(method);
    std::vector<Vote> out;
    out.reserve(cells_.size());
    for (const auto& row : cells_) out.push_back(row[col]);
    return out;
}

JudgmentMatrix JudgmentMatrix::load_tsv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw EnsembleError("cannot open judgment matrix: " + path.string());

    struct Cell {
        std::string record, method;
        Vote vote;
    };
    std::vector<Cell> cells;
    std::vector<std::string> methods, records;
    std::set<std::string> seen_methods, seen_records;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string record, method, vote;
        if (!std::getline(ss, record, '\t') || !std::getline(ss, method, '\t') ||
            !std::getline(ss, vote, '\t'))
            throw EnsembleError(path.string() + " line " + std::to_string(line_no) +
                                ": expected record<TAB>method<TAB>judgment");
        try {
            cells.push_back({record, method, vote_from_string(vote)});
        } catch (const std::invalid_argument& err) {
            throw EnsembleError(path.string() + " line " + std::to_string(line_no) + ": " +
                                err.what());
        }
        if (seen_methods.insert(method).second) methods.push_back(method);
        if (seen_records.insert(record).second) records.push_back(record);
    }
    JudgmentMatrix matrix(std::move(methods), std::move(records));
    for (const auto& cell : cells) matrix.set(cell.record, cell.method, cell.vote);
    return matrix;
}

std::string JudgmentMatrix::to_tsv() const {
    std::ostringstream out;
    for (size_t row = 0; row < record_ids_.size(); ++row)
        for (size_t col = 0; col < methods_.size(); ++col)
            out << record_ids_[row] << '\t' << methods_[col] << '\t'
                << to_string(cells_[row][col]) << '\n';
    return out.str();
}

double pearson(const std::vector<Vote>& a, const std::vector<Vote>& b) {
    if (a.size() != b.size()) throw EnsembleError("columns of different length");
    std::vector<double> xs, ys;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == Vote::Tie || a[i] == Vote::Abstain) continue;
        if (b[i] == Vote::Tie || b[i] == Vote::Abstain) continue;
        xs.push_back(a[i] == Vote::First ? 1.0 : 0.0);
        ys.push_back(b[i] == Vote::First ? 1.0 : 0.0);
    }
    if (xs.size() < 2) throw EnsembleError("undefined correlation: fewer than two shared rows");

    double mx = 0, my = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxy = 0, sxx = 0, syy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0 || syy == 0) throw EnsembleError("undefined correlation: zero variance column");
    return sxy / std::sqrt(sxx * syy);
}

CorrelationMatrix correlation_matrix(const JudgmentMatrix& matrix) {
    CorrelationMatrix out;
    out.methods = matrix.methods();
    size_t k = out.methods.size();
    out.r.assign(k, std::vector<std::optional<double>>(k, std::nullopt));

    std::vector<std::vector<Vote>> columns;
    columns.reserve(k);
    for (const auto& name : out.methods) columns.push_back(matrix.column(name));

    for (size_t i = 0; i < k; ++i) {
        for (size_t j = i + 1; j < k; ++j) {
            try {
                double r = pearson(columns[i], columns[j]);
                out.r[i][j] = r;
                out.r[j][i] = r;  // mirrored, so symmetry is exact
            } catch (const EnsembleError&) {
                // cell stays undefined
            }
        }
    }
    return out;
}

std::string CorrelationMatrix::to_text() const {
    size_t width = 8;
    for (const auto& name : methods) width = std::max(width, name.size() + 1);
    std::ostringstream out;
    out << std::left << std::setw(static_cast<int>(width)) << "";
    for (const auto& name : methods) out << std::setw(static_cast<int>(width)) << name;
    out << "\n";
    for (size_t i = 0; i < methods.size(); ++i) {
        out << std::setw(static_cast<int>(width)) << methods[i];
        for (size_t j = 0; j < methods.size(); ++j) {
            std::ostringstream cell;
            if (i == j) cell << "-";
            else if (r[i][j]) cell << std::fixed << std::setprecision(2) << *r[i][j];
            else cell << "n/a";
            out << std::setw(static_cast<int>(width)) << cell.str();
        }
        out << "\n";
    }
    return out.str();
}

void EnsembleSpec::validate() const {
    if (members.size() < 3) throw EnsembleError("ensemble needs at least three members");
    std::set<std::string> unique(members.begin(), members.end());
    if (unique.size() != members.size()) throw EnsembleError("ensemble members must be distinct");
}

PreferenceJudgment majority_judge(const std::vector<Vote>& member_votes,
                                  EnsembleSpec::TieBreak tie_break) {
    int firsts = 0, seconds = 0;
    bool all_abstain = true;
    for (Vote v : member_votes) {
        if (v != Vote::Abstain) all_abstain = false;
        if (v == Vote::First) ++firsts;
        else if (v == Vote::Second) ++seconds;
    }
    if (member_votes.empty() || all_abstain)
        throw AbstainError("all ensemble members abstained");

    if (firsts == seconds && tie_break == EnsembleSpec::TieBreak::FirstMember) {
        // Defer to member 1 when it took a side; the half point keeps the
        // winner/score invariant intact while preserving the counts.
        Vote lead = member_votes.front();
        if (lead == Vote::First) return PreferenceJudgment::from_scores(firsts + 0.5, seconds);
        if (lead == Vote::Second) return PreferenceJudgment::from_scores(firsts, seconds + 0.5);
    }
    return PreferenceJudgment::from_scores(firsts, seconds);
}

EnsembleSpec best_paper_ensemble() {
    EnsembleSpec spec;
    spec.name = "paper_ensemble";
    spec.members = {"search_count", "lsi", "lda", "occupation_frequency", "regression_tfidf"};
    spec.tie_break = EnsembleSpec::TieBreak::Tie;
    return spec;
}

EnsembleJudge::EnsembleJudge(EnsembleSpec spec, std::vector<const PreferenceJudge*> members)
    : spec_(std::move(spec)), members_(std::move(members)) {
    spec_.validate();
    if (members_.size() != spec_.members.size())
        throw EnsembleError("member judges do not match the ensemble spec");
}

PreferenceJudgment EnsembleJudge::judge(const EntityId& e, const PropertyId& p,
                                        const PropertyId& q) const {
    std::vector<Vote> votes;
    votes.reserve(members_.size());
    for (const PreferenceJudge* member : members_) {
        try {
            votes.push_back(to_vote(member->judge(e, p, q).winner));
        } catch (const AbstainError&) {
            votes.push_back(Vote::Abstain);
        }
    }
    return majority_judge(votes, spec_.tie_break);
}

}  // namespace proprank
