#pragma once

/**
 * @file tabular.hpp
 * @brief Continuous feature tables, equal-width discretization into a
 *        categorical information system, and CSV persistence.
 */

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace softsel::tabular {

/// Object id plus one finite value per column.
struct FeatureRow {
    std::string id;
    std::vector<double> values;
    friend bool operator==(const FeatureRow&, const FeatureRow&) = default;
};

class FeatureTable {
public:
    FeatureTable() = default;
    explicit FeatureTable(std::vector<std::string> columns);

    /// Throws InvalidArgument on arity mismatch, non-finite values or a
    /// duplicate id.
    void add_row(std::string id, std::vector<double> values);

    [[nodiscard]] const std::vector<std::string>& columns() const { return columns_; }
    [[nodiscard]] const std::vector<FeatureRow>& rows() const { return rows_; }
    [[nodiscard]] std::size_t row_count() const { return rows_.size(); }
    [[nodiscard]] std::size_t column_count() const { return columns_.size(); }
    [[nodiscard]] std::vector<double> column(std::size_t index) const;
    /// Throws InvalidArgument for an unknown name.
    [[nodiscard]] std::size_t column_index(const std::string& name) const;

    /// Keeps the named columns, in the order given.
    [[nodiscard]] FeatureTable select(std::span<const std::string> names) const;

    friend bool operator==(const FeatureTable&, const FeatureTable&) = default;

private:
    std::vector<std::string> columns_;
    std::vector<FeatureRow> rows_;
};

/// Multi-valued information system S = (U, A, V, f). Codes are dense per
/// attribute: code c of attribute a displays as labels(a)[c].
class CategoricalTable {
public:
    CategoricalTable(std::vector<std::string> objects, std::vector<std::string> attributes,
                     std::vector<std::vector<std::string>> labels,
                     std::vector<std::uint32_t> codes);

    [[nodiscard]] std::size_t object_count() const { return objects_.size(); }
    [[nodiscard]] std::size_t attribute_count() const { return attributes_.size(); }
    [[nodiscard]] const std::vector<std::string>& objects() const { return objects_; }
    [[nodiscard]] const std::vector<std::string>& attributes() const { return attributes_; }

    [[nodiscard]] std::uint32_t code(std::size_t object, std::size_t attribute) const {
        return codes_[object * attributes_.size() + attribute];
    }
    [[nodiscard]] const std::string& label(std::size_t object, std::size_t attribute) const {
        return labels_[attribute][code(object, attribute)];
    }
    /// |V_a|
    [[nodiscard]] std::size_t value_count(std::size_t attribute) const { return labels_[attribute].size(); }
    [[nodiscard]] const std::vector<std::string>& values(std::size_t attribute) const {
        return labels_[attribute];
    }

    /// Throws InvalidArgument for an unknown name.
    [[nodiscard]] std::size_t attribute_index(const std::string& name) const;

    friend bool operator==(const CategoricalTable&, const CategoricalTable&) = default;

private:
    std::vector<std::string> objects_;
    std::vector<std::string> attributes_;
    std::vector<std::vector<std::string>> labels_;
    std::vector<std::uint32_t> codes_;  // object-major
};

/// Per column: width = (max - min) / bins, code = min(floor((v - min) / width),
/// bins - 1). Constant columns map to code 0. Labels are "b0".."b{bins-1}".
CategoricalTable equal_width_discretize(const FeatureTable& table, std::size_t bins);

/// Maps raw labels to codes in first-appearance order per column.
CategoricalTable categorical_from_labels(std::vector<std::string> objects, std::vector<std::string> attributes,
                                         const std::vector<std::vector<std::string>>& rows);

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

/// Header `object_id,<columns...>`; one row per object.
FeatureTable read_table(const std::filesystem::path& path);
/// Values printed with 17 significant digits.
void write_table(const FeatureTable& table, const std::filesystem::path& path);

/// First column holds object ids, the remaining columns raw category labels.
CategoricalTable load_categorical(const std::filesystem::path& path);
void write_categorical(const CategoricalTable& table, const std::filesystem::path& path);

}  // namespace softsel::tabular
