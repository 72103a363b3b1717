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

#include <map>
#include <sstream>

#include "proprank/golddata.hpp"
#include "proprank/rng.hpp"

#ifndef PROPRANK_TEST_DATA_DIR
#define PROPRANK_TEST_DATA_DIR "tests/data"
#endif

using namespace proprank;

namespace {

std::filesystem::path fixture_path() {
    return std::filesystem::path(PROPRANK_TEST_DATA_DIR) / "gold_fixture.csv";
}

// A method stub with one fixed vote per entity label.
class StubJudge : public RecordJudge {
public:
    StubJudge(std::string name, std::map<std::string, Vote> votes)
        : name_(std::move(name)), votes_(std::move(votes)) {}
    std::string name() const override { return name_; }
    Vote judge_record(const GoldRecord& record) const override {
        return votes_.at(record.entity_label);
    }

private:
    std::string name_;
    std::map<std::string, Vote> votes_;
};

// Always proposes the annotator majority.
class EchoJudge : public RecordJudge {
public:
    std::string name() const override { return "echo"; }
    Vote judge_record(const GoldRecord& record) const override {
        switch (record.preferred()) {
        case GoldRecord::Preferred::A: return Vote::First;
        case GoldRecord::Preferred::B: return Vote::Second;
        default: return Vote::Tie;
        }
    }
};

// Independent second implementation of the agreement statistic, written
// directly from the textbook formula over an n_ij category-count table.
double reference_kappa(const std::vector<std::pair<int, int>>& votes) {
    const double n = 10.0;
    const double big_n = static_cast<double>(votes.size());
    double p_sum[2] = {0, 0};
    double p_i_sum = 0;
    for (const auto& [a, b] : votes) {
        p_sum[0] += a;
        p_sum[1] += b;
        p_i_sum += (a * (a - 1) + b * (b - 1)) / (n * (n - 1));
    }
    double p_bar = p_i_sum / big_n;
    double pe = 0;
    for (double s : p_sum) {
        double pj = s / (big_n * n);
        pe += pj * pj;
    }
    return (p_bar - pe) / (1 - pe);
}

std::vector<GoldRecord> records_from_votes(const std::vector<std::pair<int, int>>& votes) {
    std::vector<GoldRecord> records;
    int i = 0;
    for (const auto& [a, b] : votes) {
        GoldRecord r;
        r.entity_label = "e" + std::to_string(i++);
        r.prop_a = "pa";
        r.prop_b = "pb";
        r.votes_a = a;
        r.votes_b = b;
        records.push_back(r);
    }
    return records;
}

}  // namespace

TEST_CASE("gold fixture loads with the published sample rows intact") {
    auto records = load_gold(fixture_path());
    REQUIRE(records.size() == 20);

    // Albert Johnson: (0, 10) -> preferred B, agreement 1.0
    CHECK(records[0].entity_label == "Albert Johnson");
    CHECK(records[0].preferred() == GoldRecord::Preferred::B);
    CHECK(records[0].agreement() == doctest::Approx(1.0));
    // Svetlana Navasardyan: (5, 5) -> no preference, agreement 0.5
    CHECK(records[2].preferred() == GoldRecord::Preferred::None);
    CHECK(records[2].agreement() == doctest::Approx(0.5));
    // quoted description with an embedded comma survives CSV parsing
    CHECK(records[16].entity_description == "Norwegian biathlete, retired");
}

TEST_CASE("bad vote rows are rejected with their row number") {
    std::istringstream in(
        "entity_label,entity_description,prop_a,prop_b,votes_a,votes_b\n"
        "Ok Person,desc,p1,p2,3,7\n"
        "Bad Person,desc,p1,p2,7,4\n");
    CHECK_THROWS_WITH_AS(load_gold(in, "gold"), doctest::Contains("row 3"), GoldDataError);

    std::istringstream negative(
        "entity_label,entity_description,prop_a,prop_b,votes_a,votes_b\n"
        "Bad Person,desc,p1,p2,-1,11\n");
    CHECK_THROWS_AS(load_gold(negative, "gold"), GoldDataError);

    std::istringstream bad_header("a,b,c\n");
    CHECK_THROWS_AS(load_gold(bad_header, "gold"), GoldDataError);
}

TEST_CASE("agreement distribution of the fixture") {
    auto records = load_gold(fixture_path());
    AgreementDistribution dist = agreement_distribution(records);
    CHECK(dist.mean == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(dist.counts[5] == 2);
    CHECK(dist.counts[6] == 3);
    CHECK(dist.counts[7] == 3);
    CHECK(dist.counts[8] == 3);
    CHECK(dist.counts[9] == 3);
    CHECK(dist.counts[10] == 6);

    SUBCASE("all-unanimous records put every mass at 1.0") {
        auto unanimous = records_from_votes({{10, 0}, {0, 10}, {10, 0}});
        AgreementDistribution d = agreement_distribution(unanimous);
        CHECK(d.mean == doctest::Approx(1.0));
        CHECK(d.counts[10] == 3);
        CHECK(d.counts.size() == 1);
    }
}

TEST_CASE("random agreement model is the exact binomial") {
    auto dist = random_agreement_model(10);
    CHECK(dist[10] == doctest::Approx(2.0 / 1024.0).epsilon(1e-15));
    CHECK(dist[8] + dist[9] + dist[10] == doctest::Approx(112.0 / 1024.0).epsilon(1e-15));
    CHECK(dist[5] == doctest::Approx(252.0 / 1024.0).epsilon(1e-15));
    double total = 0;
    for (const auto& [m, p] : dist) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-15));

    SUBCASE("odd panels have no tie level") {
        auto odd = random_agreement_model(3);
        CHECK(odd.count(1) == 0);
        CHECK(odd[2] == doctest::Approx(6.0 / 8.0));
        CHECK(odd[3] == doctest::Approx(2.0 / 8.0));
    }
    SUBCASE("invalid panel size") {
        CHECK_THROWS_AS(random_agreement_model(0), std::invalid_argument);
    }
}

TEST_CASE("fleiss kappa") {
    SUBCASE("perfectly split unanimous records give kappa 1") {
        CHECK(fleiss_kappa(records_from_votes({{10, 0}, {0, 10}})) == doctest::Approx(1.0));
    }
    SUBCASE("frozen four-record fixture, checked against a second implementation") {
        std::vector<std::pair<int, int>> votes = {{7, 3}, {2, 8}, {6, 4}, {10, 0}};
        double kappa = fleiss_kappa(records_from_votes(votes));
        CHECK(kappa == doctest::Approx(0.277037037037037).epsilon(1e-12));
        CHECK(kappa == doctest::Approx(187.0 / 675.0).epsilon(1e-12));
        CHECK(kappa == doctest::Approx(reference_kappa(votes)).epsilon(1e-12));
    }
    SUBCASE("20-record fixture agrees with the reference implementation") {
        auto records = load_gold(fixture_path());
        std::vector<std::pair<int, int>> votes;
        for (const auto& r : records) votes.emplace_back(r.votes_a, r.votes_b);
        CHECK(fleiss_kappa(records) == doctest::Approx(reference_kappa(votes)).epsilon(1e-12));
        CHECK(fleiss_kappa(records) == doctest::Approx(0.2671514741529965).epsilon(1e-12));
    }
    SUBCASE("invariant under record permutation and category swap") {
        Rng rng(55);
        std::vector<std::pair<int, int>> votes;
        for (int i = 0; i < 12; ++i) {
            int a = static_cast<int>(rng.next_below(11));
            votes.emplace_back(a, 10 - a);
        }
        double base = fleiss_kappa(records_from_votes(votes));
        for (int shuffle = 0; shuffle < 5; ++shuffle) {
            for (size_t i = votes.size(); i > 1; --i)
                std::swap(votes[i - 1], votes[rng.next_below(i)]);
            CHECK(fleiss_kappa(records_from_votes(votes)) == doctest::Approx(base).epsilon(1e-12));
        }
        std::vector<std::pair<int, int>> swapped;
        for (const auto& [a, b] : votes) swapped.emplace_back(b, a);
        CHECK(fleiss_kappa(records_from_votes(swapped)) == doctest::Approx(base).epsilon(1e-12));
    }
    SUBCASE("degenerate all-one-category distribution") {
        CHECK_THROWS_WITH_AS(fleiss_kappa(records_from_votes({{10, 0}, {10, 0}})),
                             doctest::Contains("degenerate"), GoldDataError);
    }
    SUBCASE("requires at least two records") {
        CHECK_THROWS_AS(fleiss_kappa(records_from_votes({{7, 3}})), GoldDataError);
    }
}

TEST_CASE("ppref with frozen fixture expectations") {
    auto records = load_gold(fixture_path());

    SUBCASE("echoing the majority scores 1.0 in every bucket") {
        EchoJudge echo;
        std::vector<Vote> votes;
        for (const auto& r : records) votes.push_back(echo.judge_record(r));
        for (double t : {0.7, 0.8, 0.9, 1.0}) {
            PprefResult r = ppref(votes, records, t);
            CHECK(r.value() == doctest::Approx(1.0));
            CHECK(r.abstentions == 0);
        }
    }
    SUBCASE("always-first hits exactly the A-preferring records") {
        std::vector<Vote> votes(records.size(), Vote::First);
        CHECK(ppref(votes, records, 0.7).value() == doctest::Approx(14.0 / 15.0));
        CHECK(ppref(votes, records, 0.8).value() == doctest::Approx(11.0 / 12.0));
        CHECK(ppref(votes, records, 0.9).value() == doctest::Approx(8.0 / 9.0));
        CHECK(ppref(votes, records, 1.0).value() == doctest::Approx(5.0 / 6.0));
    }
    SUBCASE("mixed stub with ties and abstentions, hand-computed") {
        const std::string pattern = "FSAFTSFSFFSTAFSFFSFS";
        std::vector<Vote> votes;
        for (char c : pattern)
            votes.push_back(c == 'F' ? Vote::First
                          : c == 'S' ? Vote::Second
                          : c == 'T' ? Vote::Tie
                                     : Vote::Abstain);
        PprefResult r7 = ppref(votes, records, 0.7);
        CHECK(r7.hits == 6);
        CHECK(r7.total == 15);
        CHECK(r7.abstentions == 1);
        PprefResult r8 = ppref(votes, records, 0.8);
        CHECK(r8.value() == doctest::Approx(6.0 / 12.0));
        CHECK(r8.abstentions == 1);
        PprefResult r9 = ppref(votes, records, 0.9);
        CHECK(r9.value() == doctest::Approx(5.0 / 9.0));
        CHECK(r9.abstentions == 0);
        PprefResult r10 = ppref(votes, records, 1.0);
        CHECK(r10.value() == doctest::Approx(4.0 / 6.0));
    }
    SUBCASE("empty bucket is an error") {
        auto low = records_from_votes({{6, 4}, {4, 6}});
        std::vector<Vote> votes(low.size(), Vote::First);
        CHECK_THROWS_WITH_AS(ppref(votes, low, 0.9), doctest::Contains("empty bucket"),
                             GoldDataError);
    }
    SUBCASE("misaligned judgments are rejected") {
        std::vector<Vote> votes(3, Vote::First);
        CHECK_THROWS_AS(ppref(votes, records, 0.7), GoldDataError);
    }
}

TEST_CASE("majority-echo scores 1.0 on random record sets") {
    Rng rng(808);
    EchoJudge echo;
    for (int round = 0; round < 50; ++round) {
        std::vector<std::pair<int, int>> raw;
        int n = 2 + static_cast<int>(rng.next_below(40));
        for (int i = 0; i < n; ++i) {
            int a = static_cast<int>(rng.next_below(11));
            raw.emplace_back(a, 10 - a);
        }
        auto records = records_from_votes(raw);
        std::vector<Vote> votes;
        for (const auto& r : records) votes.push_back(echo.judge_record(r));
        for (double t : {0.7, 0.8, 0.9, 1.0}) {
            try {
                CHECK(ppref(votes, records, t).value() == doctest::Approx(1.0));
            } catch (const GoldDataError&) {
                // empty bucket; nothing to assert
            }
        }
    }
}

TEST_CASE("evaluate assembles the report with reference rows") {
    auto records = load_gold(fixture_path());
    EchoJudge echo;
    std::map<std::string, Vote> always_first_votes;
    for (const auto& r : records) always_first_votes[r.entity_label] = Vote::First;
    StubJudge always_first("always_first", always_first_votes);

    EvalReport report = evaluate({&echo, &always_first}, records);
    REQUIRE(report.buckets.size() == 4);
    CHECK(report.buckets[0].n == 15);
    CHECK(report.buckets[1].n == 12);
    CHECK(report.buckets[2].n == 9);
    CHECK(report.buckets[3].n == 6);

    // per-bucket annotator agreement means, computed by hand
    CHECK(report.buckets[0].annotator_agreement_mean == doctest::Approx(13.2 / 15.0));
    CHECK(report.buckets[1].annotator_agreement_mean == doctest::Approx(11.1 / 12.0));
    CHECK(report.buckets[2].annotator_agreement_mean == doctest::Approx(8.7 / 9.0));
    CHECK(report.buckets[3].annotator_agreement_mean == doctest::Approx(1.0));

    CHECK(report.buckets[0].per_method.at("echo").value() == doctest::Approx(1.0));
    CHECK(report.buckets[3].per_method.at("always_first").value() == doctest::Approx(5.0 / 6.0));

    std::string text = report.to_text();
    CHECK(text.find("random") != std::string::npos);
    CHECK(text.find("annotators") != std::string::npos);
    CHECK(text.find("echo") != std::string::npos);

    nlohmann::json j = report.to_json();
    CHECK(j["buckets"].size() == 4);
    CHECK(j["buckets"][0]["n"] == 15);
    CHECK(j["buckets"][0]["methods"]["echo"]["ppref"] == doctest::Approx(1.0));
}

TEST_CASE("bucket counts fall and annotator means rise with the threshold") {
    Rng rng(4004);
    for (int round = 0; round < 30; ++round) {
        std::vector<std::pair<int, int>> raw;
        int n = 5 + static_cast<int>(rng.next_below(60));
        for (int i = 0; i < n; ++i) {
            int a = static_cast<int>(rng.next_below(11));
            raw.emplace_back(a, 10 - a);
        }
        auto records = records_from_votes(raw);
        EchoJudge echo;
        EvalReport report = evaluate({&echo}, records);
        for (size_t b = 1; b < report.buckets.size(); ++b) {
            CHECK(report.buckets[b].n <= report.buckets[b - 1].n);
            if (report.buckets[b].n > 0 && report.buckets[b - 1].n > 0)
                CHECK(report.buckets[b].annotator_agreement_mean >=
                      report.buckets[b - 1].annotator_agreement_mean - 1e-12);
        }
    }
}

TEST_CASE("evaluate reports per-method failures and keeps going") {
    class BrokenJudge : public RecordJudge {
    public:
        std::string name() const override { return "broken"; }
        Vote judge_record(const GoldRecord&) const override {
            throw std::runtime_error("model file corrupted");
        }
    };
    auto records = load_gold(fixture_path());
    EchoJudge echo;
    BrokenJudge broken;
    EvalReport report = evaluate({&echo, &broken}, records);
    CHECK(report.buckets[0].per_method.count("echo") == 1);
    CHECK(report.buckets[0].per_method.count("broken") == 0);
    CHECK(report.buckets[0].failures.at("broken") == "model file corrupted");
}
