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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "proprank/io.hpp"
#include "proprank/pipeline.hpp"

namespace {

using namespace proprank;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitAbstain = 2;

void write_manifest(Pipeline& pipeline) {
    const auto& out_dir = pipeline.config().paths.output_dir;
    if (out_dir.empty()) return;
    io::write_file_atomic(std::filesystem::path(out_dir) / "manifest.json",
                          pipeline.manifest().to_json().dump(2) + "\n");
}

void print_ingest_stats(Pipeline& pipeline, std::ostream& out) {
    const KnowledgeStore& store = pipeline.store();
    const IngestReport& report = pipeline.ingest_report();
    out << "entities: " << store.entity_count() << "\n";
    out << "properties: " << store.property_count() << "\n";
    for (const auto& err : report.errors)
        std::cerr << "warning: " << err.file << " line " << err.line << ": " << err.message
                  << "\n";

    out << "usage histogram (property: entities):\n";
    for (const auto& [id, def] : store.properties())
        out << "  " << id << " (" << def.label << "): " << store.usage(id) << "\n";
}

int cmd_ingest(const std::string& config_path) {
    Pipeline pipeline(RunConfig::load(config_path));
    std::ostringstream stats;
    print_ingest_stats(pipeline, stats);
    const TextCorpus& corpus = pipeline.corpus();
    stats << "corpus documents: " << corpus.size() << "\n";
    stats << "vocabulary terms: " << corpus.vocabulary().size() << "\n";
    stats << "corpus fingerprint: " << io::to_hex(corpus.fingerprint()) << "\n";
    std::cout << stats.str();

    const auto& out_dir = pipeline.config().paths.output_dir;
    if (!out_dir.empty()) {
        io::write_file_atomic(std::filesystem::path(out_dir) / "store_stats.txt", stats.str());
        pipeline.manifest().artifacts.push_back(
            (std::filesystem::path(out_dir) / "store_stats.txt").string());
    }
    write_manifest(pipeline);
    return kExitOk;
}

int cmd_stats(const std::string& config_path) {
    Pipeline pipeline(RunConfig::load(config_path));
    print_ingest_stats(pipeline, std::cout);
    return kExitOk;
}

int cmd_train_topics(const std::string& config_path, const std::string& kind) {
    Pipeline pipeline(RunConfig::load(config_path));
    if (kind == "lsi") {
        const LsiModel& model = pipeline.lsi();
        std::cout << "lsi: k=" << model.k << " sigma_max=" << model.singular_values(0) << "\n";
    } else if (kind == "lda") {
        const LdaModel& model = pipeline.lda();
        std::cout << "lda: k=" << model.k << " alpha=" << model.alpha << "\n";
    } else {
        std::cerr << "error: --kind must be lsi or lda\n";
        return kExitError;
    }
    write_manifest(pipeline);
    return kExitOk;
}

int cmd_train_pivot(const std::string& config_path, const std::string& pairs_path,
                    const std::string& mode_name) {
    Pipeline pipeline(RunConfig::load(config_path));
    std::ifstream pairs(pairs_path);
    if (!pairs) {
        std::cerr << "error: cannot open pair list: " << pairs_path << "\n";
        return kExitError;
    }
    const std::string method =
        feature_mode_from_string(mode_name) == FeatureMode::TfIdf ? "regression_tfidf"
                                                                  : "regression_counts";
    const auto& judge = dynamic_cast<const PivotJudge&>(pipeline.method(method));

    std::string p, q;
    int trained = 0, skipped = 0;
    while (pairs >> p >> q) {
        try {
            const LogisticModel& model = judge.model_for(p, q);
            std::cout << p << " vs " << q << ": epochs=" << model.epochs_run
                      << (model.converged ? "" : " (not converged)") << "\n";
            ++trained;
        } catch (const AbstainError& err) {
            std::cout << p << " vs " << q << ": skipped (" << err.what() << ")\n";
            ++skipped;
        }
    }
    std::cout << "trained " << trained << " pair(s), skipped " << skipped << "\n";
    write_manifest(pipeline);
    return kExitOk;
}

int cmd_judge(const std::string& config_path, const std::string& entity, const std::string& first,
              const std::string& second, const std::string& method) {
    Pipeline pipeline(RunConfig::load(config_path));
    if (first == second) {
        std::cerr << "error: the two properties must differ\n";
        return kExitError;
    }
    try {
        PreferenceJudgment j = pipeline.method(method).judge(entity, first, second);
        const KnowledgeStore& store = pipeline.store();
        auto label = [&](const PropertyId& p) {
            return store.has_property(p) ? store.property(p).label : p;
        };
        std::string winner = j.winner == Winner::First ? label(first)
                           : j.winner == Winner::Second ? label(second)
                                                        : "tie";
        std::cout << "winner: " << winner << "\n";
        std::cout << "score_first: " << j.score_first << "\n";
        std::cout << "score_second: " << j.score_second << "\n";
        return kExitOk;
    } catch (const AbstainError& err) {
        std::cerr << "abstain: " << err.what() << "\n";
        return kExitAbstain;
    }
}

int cmd_evaluate(const std::string& config_path, const std::string& matrix_out) {
    Pipeline pipeline(RunConfig::load(config_path));
    const RunConfig& config = pipeline.config();
    std::vector<GoldRecord> records = load_gold(config.paths.gold_csv);

    std::vector<std::string> method_names =
        config.methods.empty() ? Pipeline::builtin_method_names() : config.methods;
    std::vector<std::unique_ptr<RecordJudge>> owned;
    std::vector<const RecordJudge*> methods;
    for (const auto& name : method_names) {
        owned.push_back(pipeline.record_judge(name));
        methods.push_back(owned.back().get());
    }

    EvalReport report;
    pipeline.time_step("evaluate", [&] { report = evaluate(methods, records, config.thresholds); });
    std::cout << report.to_text();

    const auto out_dir = std::filesystem::path(config.paths.output_dir);
    io::write_file_atomic(out_dir / "report.txt", report.to_text());
    io::write_file_atomic(out_dir / "report.json", report.to_json().dump(2) + "\n");
    pipeline.manifest().artifacts.push_back((out_dir / "report.txt").string());
    pipeline.manifest().artifacts.push_back((out_dir / "report.json").string());

    if (!matrix_out.empty()) {
        JudgmentMatrix matrix = pipeline.judgment_matrix(records, method_names);
        io::write_file_atomic(matrix_out, matrix.to_tsv());
        pipeline.manifest().artifacts.push_back(matrix_out);
    }
    write_manifest(pipeline);
    return kExitOk;
}

int cmd_correlate(const std::string& config_path, const std::string& matrix_in) {
    Pipeline pipeline(RunConfig::load(config_path));
    const RunConfig& config = pipeline.config();

    std::optional<JudgmentMatrix> matrix;
    if (!matrix_in.empty()) {
        matrix = JudgmentMatrix::load_tsv(matrix_in);
        std::cout << "loaded judgment matrix: " << matrix->rows() << " records\n";
    } else {
        std::vector<GoldRecord> records = load_gold(config.paths.gold_csv);
        std::vector<GoldRecord> filtered;
        for (const auto& rec : records)
            if (rec.agreement() >= config.correlate_min_agreement &&
                rec.preferred() != GoldRecord::Preferred::None)
                filtered.push_back(rec);
        std::cout << "records with agreement >= " << config.correlate_min_agreement << ": "
                  << filtered.size() << " of " << records.size() << "\n";
        std::vector<std::string> method_names =
            config.methods.empty() ? Pipeline::builtin_method_names() : config.methods;
        matrix = pipeline.judgment_matrix(filtered, method_names);
    }

    CorrelationMatrix corr = correlation_matrix(*matrix);
    std::cout << corr.to_text();

    const auto out_dir = std::filesystem::path(config.paths.output_dir);
    io::write_file_atomic(out_dir / "correlations.txt", corr.to_text());
    io::write_file_atomic(out_dir / "judgment_matrix.tsv", matrix->to_tsv());
    pipeline.manifest().artifacts.push_back((out_dir / "correlations.txt").string());
    pipeline.manifest().artifacts.push_back((out_dir / "judgment_matrix.tsv").string());
    write_manifest(pipeline);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"proprank: entity-specific ranking of knowledge base properties"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("-c,--config", config_path, "run configuration (JSON)")->required();

    auto* ingest = app.add_subcommand("ingest", "build the store and corpus, persist stats");
    auto* stats = app.add_subcommand("stats", "print store statistics");

    auto* train_topics = app.add_subcommand("train-topics", "train and cache a topic model");
    std::string kind;
    train_topics->add_option("--kind", kind, "lsi or lda")->required();

    auto* train_pivot = app.add_subcommand("train-pivot", "pre-train pivot classifiers");
    std::string pairs_path, mode_name = "tfidf";
    train_pivot->add_option("--pairs", pairs_path, "file of 'P1 P2' lines")->required();
    train_pivot->add_option("--mode", mode_name, "counts or tfidf");

    auto* judge = app.add_subcommand("judge", "judge one (entity, property, property) triple");
    std::string entity, first, second, method = "human_frequency";
    judge->add_option("--entity", entity, "entity id")->required();
    judge->add_option("--first", first, "first property id")->required();
    judge->add_option("--second", second, "second property id")->required();
    judge->add_option("--method", method, "method name");

    auto* evaluate = app.add_subcommand("evaluate", "ppref evaluation against the gold CSV");
    std::string matrix_out;
    evaluate->add_option("--matrix-out", matrix_out, "also export the judgment matrix (TSV)");

    auto* correlate = app.add_subcommand("correlate", "pairwise Pearson correlations");
    std::string matrix_in;
    correlate->add_option("--matrix-in", matrix_in, "use a stored judgment matrix instead");

    CLI11_PARSE(app, argc, argv);

    try {
        if (ingest->parsed()) return cmd_ingest(config_path);
        if (stats->parsed()) return cmd_stats(config_path);
        if (train_topics->parsed()) return cmd_train_topics(config_path, kind);
        if (train_pivot->parsed()) return cmd_train_pivot(config_path, pairs_path, mode_name);
        if (judge->parsed()) return cmd_judge(config_path, entity, first, second, method);
        if (evaluate->parsed()) return cmd_evaluate(config_path, matrix_out);
        if (correlate->parsed()) return cmd_correlate(config_path, matrix_in);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
