#include <softsel/tabular.hpp>

#include <softsel/error.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <unordered_set>

namespace softsel::tabular {

FeatureTable::FeatureTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void FeatureTable::add_row(std::string id, std::vector<double> values) {
    if (values.size() != columns_.size()) {
        throw InvalidArgument("row '" + id + "' has " + std::to_string(values.size()) +
                              " values, expected " + std::to_string(columns_.size()));
    }
    if (!std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); })) {
        throw InvalidArgument("row '" + id + "' contains a non-finite value");
    }
    if (std::any_of(rows_.begin(), rows_.end(), [&](const FeatureRow& r) { return r.id == id; })) {
        throw InvalidArgument("duplicate object id '" + id + "'");
    }
    rows_.push_back({std::move(id), std::move(values)});
}

std::vector<double> FeatureTable::column(std::size_t index) const {
    std::vector<double> out;
    out.reserve(rows_.size());
    for (const auto& row : rows_) {
        out.push_back(row.values.at(index));
    }
    return out;
}

std::size_t FeatureTable::column_index(const std::string& name) const {
    const auto it = std::find(columns_.begin(), columns_.end(), name);
    if (it == columns_.end()) {
        throw InvalidArgument("unknown column '" + name + "'");
    }
    return static_cast<std::size_t>(it - columns_.begin());
}

FeatureTable FeatureTable::select(std::span<const std::string> names) const {
    std::vector<std::size_t> idx;
    for (const auto& n : names) {
        idx.push_back(column_index(n));
    }
    FeatureTable out(std::vector<std::string>(names.begin(), names.end()));
    for (const auto& row : rows_) {
        std::vector<double> values;
        values.reserve(idx.size());
        for (const auto i : idx) {
            values.push_back(row.values[i]);
        }
        out.rows_.push_back({row.id, std::move(values)});
    }
    return out;
}

CategoricalTable::CategoricalTable(std::vector<std::string> objects, std::vector<std::string> attributes,
                                   std::vector<std::vector<std::string>> labels,
                                   std::vector<std::uint32_t> codes)
    : objects_(std::move(objects)),
      attributes_(std::move(attributes)),
      labels_(std::move(labels)),
      codes_(std::move(codes)) {
    if (objects_.empty()) {
        throw InvalidArgument("categorical table has no objects");
    }
    if (labels_.size() != attributes_.size() || codes_.size() != objects_.size() * attributes_.size()) {
        throw InvalidArgument("categorical table shape mismatch");
    }
    for (std::size_t u = 0; u < objects_.size(); ++u) {
        for (std::size_t a = 0; a < attributes_.size(); ++a) {
            if (code(u, a) >= labels_[a].size()) {
                throw InvalidArgument("code out of range for attribute '" + attributes_[a] + "'");
            }
        }
    }
}

std::size_t CategoricalTable::attribute_index(const std::string& name) const {
    const auto it = std::find(attributes_.begin(), attributes_.end(), name);
    if (it == attributes_.end()) {
        throw InvalidArgument("unknown attribute '" + name + "'");
    }
    return static_cast<std::size_t>(it - attributes_.begin());
}

CategoricalTable equal_width_discretize(const FeatureTable& table, std::size_t bins) {
    if (bins < 2) {
        throw InvalidArgument("equal_width_discretize: bins must be >= 2");
    }
    if (table.row_count() == 0) {
        throw InvalidArgument("equal_width_discretize: empty table");
    }
    const auto n = table.row_count();
    const auto m = table.column_count();
    std::vector<std::uint32_t> codes(n * m, 0);
    for (std::size_t a = 0; a < m; ++a) {
        const auto col = table.column(a);
        if (!std::all_of(col.begin(), col.end(), [](double v) { return std::isfinite(v); })) {
            throw InvalidArgument("equal_width_discretize: non-finite value in '" + table.columns()[a] + "'");
        }
        const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
        const double width = (*hi - *lo) / static_cast<double>(bins);
        if (!(width > 0.0)) {
            continue;
        }
        for (std::size_t u = 0; u < n; ++u) {
            const double k = std::floor((col[u] - *lo) / width);
            codes[u * m + a] = static_cast<std::uint32_t>(std::min(k, static_cast<double>(bins - 1)));
        }
    }
    std::vector<std::string> bin_labels;
    for (std::size_t b = 0; b < bins; ++b) {
        bin_labels.push_back("b" + std::to_string(b));
    }
    std::vector<std::string> objects;
    for (const auto& row : table.rows()) {
        objects.push_back(row.id);
    }
    return CategoricalTable(std::move(objects), table.columns(),
                            std::vector<std::vector<std::string>>(m, bin_labels), std::move(codes));
}

CategoricalTable categorical_from_labels(std::vector<std::string> objects, std::vector<std::string> attributes,
                                         const std::vector<std::vector<std::string>>& rows) {
    const auto m = attributes.size();
    std::vector<std::vector<std::string>> labels(m);
    std::vector<std::map<std::string, std::uint32_t>> lookup(m);
    std::vector<std::uint32_t> codes;
    codes.reserve(rows.size() * m);
    for (const auto& row : rows) {
        if (row.size() != m) {
            throw InvalidArgument("categorical row arity mismatch");
        }
        for (std::size_t a = 0; a < m; ++a) {
            const auto [it, fresh] = lookup[a].try_emplace(row[a], static_cast<std::uint32_t>(labels[a].size()));
            if (fresh) {
                labels[a].push_back(row[a]);
            }
            codes.push_back(it->second);
        }
    }
    return CategoricalTable(std::move(objects), std::move(attributes), std::move(labels), std::move(codes));
}

// =============================================================================
// CSV
// =============================================================================

namespace {

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

struct CsvRecord {
    std::size_t line;
    std::vector<std::string> fields;
};

// Reads a header plus records. Blank lines are skipped; ragged rows and
// duplicate ids in the first column are rejected with the line number.
std::pair<std::vector<std::string>, std::vector<CsvRecord>> read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    std::vector<std::string> header;
    std::vector<CsvRecord> records;
    std::unordered_set<std::string> ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) {
            continue;
        }
        auto fields = split(line);
        if (header.empty()) {
            header = std::move(fields);
            continue;
        }
        if (fields.size() != header.size()) {
            throw FormatError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                              std::to_string(header.size()) + " fields, found " + std::to_string(fields.size()));
        }
        if (!ids.insert(fields.front()).second) {
            throw FormatError(path.string() + ":" + std::to_string(line_no) + ": duplicate object id '" +
                              fields.front() + "'");
        }
        records.push_back({line_no, std::move(fields)});
    }
    if (header.empty()) {
        throw FormatError(path.string() + ": missing header");
    }
    return {std::move(header), std::move(records)};
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    return out;
}

}  // namespace

FeatureTable read_table(const std::filesystem::path& path) {
    auto [header, records] = read_csv(path);
    if (header.front() != "object_id") {
        throw FormatError(path.string() + ": first column must be object_id");
    }
    FeatureTable table(std::vector<std::string>(header.begin() + 1, header.end()));
    for (auto& rec : records) {
        std::vector<double> values;
        for (std::size_t i = 1; i < rec.fields.size(); ++i) {
            const auto& text = rec.fields[i];
            char* end = nullptr;
            const double v = std::strtod(text.c_str(), &end);
            if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
                throw FormatError(path.string() + ":" + std::to_string(rec.line) + ": bad number '" + text + "'");
            }
            values.push_back(v);
        }
        table.add_row(std::move(rec.fields.front()), std::move(values));
    }
    return table;
}

void write_table(const FeatureTable& table, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << "object_id";
    for (const auto& c : table.columns()) {
        out << ',' << c;
    }
    out << '\n';
    char buf[32];
    for (const auto& row : table.rows()) {
        out << row.id;
        for (const auto v : row.values) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out << ',' << buf;
        }
        out << '\n';
    }
}

CategoricalTable load_categorical(const std::filesystem::path& path) {
    auto [header, records] = read_csv(path);
    if (records.empty() || header.size() < 2) {
        throw FormatError(path.string() + ": categorical table is empty");
    }
    std::vector<std::string> objects;
    std::vector<std::vector<std::string>> rows;
    for (auto& rec : records) {
        objects.push_back(rec.fields.front());
        rows.emplace_back(rec.fields.begin() + 1, rec.fields.end());
    }
    return categorical_from_labels(std::move(objects), std::vector<std::string>(header.begin() + 1, header.end()),
                                   rows);
}

void write_categorical(const CategoricalTable& table, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << "object_id";
    for (const auto& a : table.attributes()) {
        out << ',' << a;
    }
    out << '\n';
    for (std::size_t u = 0; u < table.object_count(); ++u) {
        out << table.objects()[u];
        for (std::size_t a = 0; a < table.attribute_count(); ++a) {
            out << ',' << table.label(u, a);
        }
        out << '\n';
    }
}

}  // namespace softsel::tabular
