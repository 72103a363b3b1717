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

#include <stdexcept>
#include <string>

namespace proprank {

using EntityId = std::string;
using PropertyId = std::string;

// Outcome of comparing two properties for one entity.
enum class Winner { First, Second, Tie };

// Matrix cell / evaluation vote. Abstain marks a method that could not
// judge the pair at all, which is distinct from a tie.
enum class Vote { First, Second, Tie, Abstain };

inline Vote to_vote(Winner w) {
    switch (w) {
    case Winner::First: return Vote::First;
    case Winner::Second: return Vote::Second;
    default: return Vote::Tie;
    }
}

inline std::string to_string(Vote v) {
    switch (v) {
    case Vote::First: return "FIRST";
    case Vote::Second: return "SECOND";
    case Vote::Tie: return "TIE";
    default: return "ABSTAIN";
    }
}

inline Vote vote_from_string(const std::string& s) {
    if (s == "FIRST") return Vote::First;
    if (s == "SECOND") return Vote::Second;
    if (s == "TIE") return Vote::Tie;
    if (s == "ABSTAIN") return Vote::Abstain;
    throw std::invalid_argument("unknown vote: " + s);
}

// Thrown by judges that cannot produce a judgment for a pair (untrainable
// pivot, no article, empty property text, ...).
class AbstainError : public std::runtime_error {
public:
    explicit AbstainError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a search count provider fails; carries the query.
class ProviderError : public std::runtime_error {
public:
    ProviderError(const std::string& what, std::string query)
        : std::runtime_error(what + " [query: " + query + "]"), query_(std::move(query)) {}
    const std::string& query() const { return query_; }

private:
    std::string query_;
};

struct PreferenceJudgment {
    Winner winner = Winner::Tie;
    double score_first = 0.0;
    double score_second = 0.0;

    // Winner is always derived from the scores so that the
    // winner/score invariant cannot drift.
    static PreferenceJudgment from_scores(double first, double second) {
        PreferenceJudgment j;
        j.score_first = first;
        j.score_second = second;
        j.winner = first > second ? Winner::First
                 : first < second ? Winner::Second
                                  : Winner::Tie;
        return j;
    }
};

// Contract shared by every ranking method: decide which of two properties
// is the more interesting one for an entity. Implementations must be
// antisymmetric under swapping the two properties and may throw
// AbstainError when no judgment is possible.
class PreferenceJudge {
public:
    virtual ~PreferenceJudge() = default;
    virtual PreferenceJudgment judge(const EntityId& entity,
                                     const PropertyId& first,
                                     const PropertyId& second) const = 0;
    virtual std::string name() const = 0;
};

// Search result counts for free-text queries. Implementations declare
// their own thread safety; the bundled fixture provider is immutable
// after construction and safe for concurrent use.
class SearchCountProvider {
public:
    virtual ~SearchCountProvider() = default;
    virtual long long count(const std::string& query) const = 0;
};

}  // namespace proprank
