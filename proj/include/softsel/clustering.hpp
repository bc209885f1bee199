#pragma once

/**
 * @file clustering.hpp
 * @brief K-Means and self-organizing-map clustering plus the Dunn and
 *        Silhouette validity indices used to compare feature subsets.
 */

#include <softsel/tabular.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace softsel::clustering {

/// n points x d features, row-major.
class DataMatrix {
public:
    DataMatrix(std::size_t rows, std::size_t cols, std::vector<double> values, bool standardized = false);

    static DataMatrix from_table(const tabular::FeatureTable& table);

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    [[nodiscard]] bool standardized() const { return standardized_; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return values_[i * cols_ + j]; }
    [[nodiscard]] std::span<const double> row(std::size_t i) const {
        return {values_.data() + i * cols_, cols_};
    }
    [[nodiscard]] const std::vector<double>& values() const { return values_; }

    friend bool operator==(const DataMatrix&, const DataMatrix&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> values_;
    bool standardized_;
};

/// Per-point cluster index in [0, k).
struct ClusterAssignment {
    std::vector<std::size_t> labels;
    std::size_t k = 0;
    /// k x d cluster centres (k-means) or weights of the non-empty units (SOM).
    std::vector<std::vector<double>> centroids;
    /// Within-cluster sum of squares after each assignment step (k-means only).
    std::vector<double> objective_history;
    /// Grid unit of each dense label (SOM only).
    std::vector<std::size_t> units;
};

double euclidean(std::span<const double> a, std::span<const double> b);

/// Columns to mean 0 and population standard deviation 1; zero-variance
/// columns become 0. Requires n >= 2.
DataMatrix standardize(const DataMatrix& data);

/// Lloyd's algorithm from k-means++ seeding. An empty cluster is re-seeded
/// with the point farthest from its own centre. Requires 2 <= k <= n.
ClusterAssignment kmeans(const DataMatrix& data, std::size_t k, std::uint64_t seed, std::size_t max_iter = 100);

struct SomParams {
    std::size_t grid_rows = 2;
    std::size_t grid_cols = 2;
    std::size_t epochs = 200;
    double learning_rate = 0.5;
    /// <= 0 selects max(grid_rows, grid_cols) / 2.
    double radius = 0.0;
};

/// Online SOM with exponentially decaying learning rate and Gaussian
/// neighbourhood radius. Labels are best-matching units relabelled densely
/// over the non-empty units in unit order.
ClusterAssignment som(const DataMatrix& data, const SomParams& params, std::uint64_t seed);

/// Minimum single-linkage distance between clusters over the maximum
/// cluster diameter. Throws UndefinedIndexError with fewer than two
/// non-empty clusters or when every cluster has zero diameter.
double dunn_index(const DataMatrix& data, const ClusterAssignment& assignment);

/// Mean silhouette; singleton members contribute 0. Throws
/// UndefinedIndexError with fewer than two non-empty clusters.
double silhouette(const DataMatrix& data, const ClusterAssignment& assignment);

struct NamedSubset {
    std::string name;
    std::vector<std::string> columns;
};

struct EvaluationParams {
    std::size_t k = 2;
    std::uint64_t seed = 1;
    std::size_t max_iter = 100;
    SomParams som;
};

/// One Dunn/Silhouette pair per (subset, algorithm). An index that is
/// undefined for the produced clustering is left empty.
struct EvaluationRow {
    std::string subset;
    std::string algorithm;  ///< "kmeans" or "som"
    std::size_t feature_count = 0;
    std::optional<double> dunn;
    std::optional<double> silhouette;
};

/// For every subset: select columns, standardize, cluster with k-means and
/// SOM, and score both clusterings.
std::vector<EvaluationRow> evaluate_subsets(const tabular::FeatureTable& table,
                                            const std::vector<NamedSubset>& subsets,
                                            const EvaluationParams& params);

}  // namespace softsel::clustering
