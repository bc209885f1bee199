#pragma once

/**
 * @file pipeline.hpp
 * @brief End-to-end run: denoise -> segment -> extract -> discretize ->
 *        reduce -> cluster/evaluate, with every intermediate persisted under
 *        `<output_dir>/<stage>/`.
 */

#include <softsel/clustering.hpp>
#include <softsel/error.hpp>
#include <softsel/imaging.hpp>
#include <softsel/reduct.hpp>
#include <softsel/tabular.hpp>

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace softsel::pipeline {

enum class FilterKind { None, Mean, Gaussian, Median };

FilterKind parse_filter(const std::string& name);
std::string to_string(FilterKind kind);

struct PipelineConfig {
    std::filesystem::path input_dir;
    std::filesystem::path output_dir = "out";

    FilterKind filter = FilterKind::Median;
    std::size_t window = 5;
    std::optional<double> sigma;  ///< gaussian only; window/6 when unset

    bool segment = true;
    /// Empty means "image centre".
    std::vector<imaging::Pixel> seeds;
    double threshold = 40.0;
    imaging::Connectivity connectivity = imaging::Connectivity::Four;

    std::size_t levels = 32;
    std::size_t distance = 1;
    std::size_t bins = 4;
    /// Any of usqr, urr, ssusqr. Empty disables reduction.
    std::vector<std::string> methods = {"usqr", "urr", "ssusqr"};

    clustering::EvaluationParams evaluation;
};

/// Flat `key = value` text with `#` comments. Relative paths resolve against
/// `base_dir`. Unknown keys and malformed values throw InvalidArgument.
PipelineConfig parse_config(const std::string& text, const std::filesystem::path& base_dir = {});
PipelineConfig load_config(const std::filesystem::path& path);

/// Checks every parameter against its operation's preconditions and that the
/// input directory holds at least one PGM. Returns the sorted input files.
std::vector<std::filesystem::path> validate(const PipelineConfig& config);

/// Raised when a stage fails; carries the stage and, when known, the object.
class StageError : public Error {
public:
    StageError(std::string stage, std::string object_id, const std::string& message);
    [[nodiscard]] const std::string& stage() const { return stage_; }
    [[nodiscard]] const std::string& object_id() const { return object_id_; }

private:
    std::string stage_;
    std::string object_id_;
};

struct FeatureCountRow {
    std::string dataset;
    std::size_t extracted = 0;
    std::map<std::string, std::size_t> selected;  ///< method -> reduct size
};

struct EvaluationReportRow {
    std::string dataset;
    clustering::EvaluationRow row;
};

struct RunReport {
    std::vector<FeatureCountRow> feature_counts;
    std::vector<EvaluationReportRow> evaluation;
    std::vector<std::pair<std::string, double>> stage_seconds;
    std::vector<std::string> methods;
};

/// Runs every stage and writes report/feature_counts.csv,
/// report/evaluation.csv and report/summary.txt (all reproducible) plus
/// report/timing.csv.
RunReport run_pipeline(const PipelineConfig& config);

// ---------------------------------------------------------------------------
// Serialization shared with the CLI
// ---------------------------------------------------------------------------

/// Machine-readable reduct trace: members, selection order, per-round
/// cardinalities, significance and dependency values.
nlohmann::json reduct_to_json(const tabular::CategoricalTable& table, const ReductResult& result);

/// Reads the reduct member names back from reduct_to_json output.
clustering::NamedSubset subset_from_json(const nlohmann::json& doc);

ReductResult run_method(const std::string& method, const tabular::CategoricalTable& table);

/// `dataset,method,algorithm,features,dunn,silhouette`; undefined indices are
/// written as `undefined`.
void write_evaluation_csv(const std::vector<EvaluationReportRow>& rows, const std::filesystem::path& path);

void write_feature_counts_csv(const RunReport& report, const std::filesystem::path& path);

std::string summary_text(const RunReport& report);

}  // namespace softsel::pipeline
