#include <softsel/pipeline.hpp>

#include <softsel/roughset.hpp>
#include <softsel/softset.hpp>
#include <softsel/texture.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace softsel::pipeline {

namespace fs = std::filesystem;

FilterKind parse_filter(const std::string& name) {
    if (name == "none") return FilterKind::None;
    if (name == "mean") return FilterKind::Mean;
    if (name == "gaussian") return FilterKind::Gaussian;
    if (name == "median") return FilterKind::Median;
    throw InvalidArgument("unknown filter '" + name + "'");
}

std::string to_string(FilterKind kind) {
    switch (kind) {
        case FilterKind::None: return "none";
        case FilterKind::Mean: return "mean";
        case FilterKind::Gaussian: return "gaussian";
        case FilterKind::Median: return "median";
    }
    return "none";
}

StageError::StageError(std::string stage, std::string object_id, const std::string& message)
    : Error("stage '" + stage + "'" + (object_id.empty() ? "" : " object '" + object_id + "'") + ": " + message),
      stage_(std::move(stage)),
      object_id_(std::move(object_id)) {}

// =============================================================================
// Config
// =============================================================================

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep)) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

std::size_t to_count(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != value.size() || value.front() == '-') {
        throw InvalidArgument("config: '" + key + "' expects a non-negative integer, got '" + value + "'");
    }
    return static_cast<std::size_t>(v);
}

double to_real(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != value.size()) {
        throw InvalidArgument("config: '" + key + "' expects a number, got '" + value + "'");
    }
    return v;
}

bool to_flag(const std::string& key, const std::string& value) {
    if (value == "on" || value == "true" || value == "1" || value == "yes") return true;
    if (value == "off" || value == "false" || value == "0" || value == "no") return false;
    throw InvalidArgument("config: '" + key + "' expects on/off, got '" + value + "'");
}

std::vector<imaging::Pixel> to_seeds(const std::string& value) {
    std::vector<imaging::Pixel> seeds;
    if (value == "center" || value == "centre") {
        return seeds;
    }
    for (const auto& pair : split(value, ';')) {
        const auto parts = split(pair, ',');
        if (parts.size() != 2) {
            throw InvalidArgument("config: seed '" + pair + "' is not row,col");
        }
        seeds.push_back({to_count("seeds", parts[0]), to_count("seeds", parts[1])});
    }
    return seeds;
}

}  // namespace

PipelineConfig parse_config(const std::string& text, const fs::path& base_dir) {
    PipelineConfig cfg;
    const auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base_dir / p; };
    std::stringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidArgument("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));

        if (key == "input_dir") cfg.input_dir = resolve(value);
        else if (key == "output_dir") cfg.output_dir = resolve(value);
        else if (key == "filter") cfg.filter = parse_filter(value);
        else if (key == "window") cfg.window = to_count(key, value);
        else if (key == "sigma") cfg.sigma = to_real(key, value);
        else if (key == "segment") cfg.segment = to_flag(key, value);
        else if (key == "seeds") cfg.seeds = to_seeds(value);
        else if (key == "threshold") cfg.threshold = to_real(key, value);
        else if (key == "connectivity") {
            const auto c = to_count(key, value);
            if (c != 4 && c != 8) {
                throw InvalidArgument("config: connectivity must be 4 or 8");
            }
            cfg.connectivity = c == 4 ? imaging::Connectivity::Four : imaging::Connectivity::Eight;
        }
        else if (key == "levels") cfg.levels = to_count(key, value);
        else if (key == "distance") cfg.distance = to_count(key, value);
        else if (key == "bins") cfg.bins = to_count(key, value);
        else if (key == "methods") cfg.methods = split(value, ',');
        else if (key == "k") cfg.evaluation.k = to_count(key, value);
        else if (key == "seed") cfg.evaluation.seed = to_count(key, value);
        else if (key == "max_iter") cfg.evaluation.max_iter = to_count(key, value);
        else if (key == "som_rows") cfg.evaluation.som.grid_rows = to_count(key, value);
        else if (key == "som_cols") cfg.evaluation.som.grid_cols = to_count(key, value);
        else if (key == "som_epochs") cfg.evaluation.som.epochs = to_count(key, value);
        else if (key == "som_learning_rate") cfg.evaluation.som.learning_rate = to_real(key, value);
        else throw InvalidArgument("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    return cfg;
}

PipelineConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config " + path.string());
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.parent_path());
}

std::vector<fs::path> validate(const PipelineConfig& cfg) {
    if (cfg.input_dir.empty() || !fs::is_directory(cfg.input_dir)) {
        throw InvalidArgument("input_dir '" + cfg.input_dir.string() + "' is not a directory");
    }
    std::vector<fs::path> inputs;
    for (const auto& entry : fs::directory_iterator(cfg.input_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".pgm") {
            inputs.push_back(entry.path());
        }
    }
    std::sort(inputs.begin(), inputs.end());
    if (inputs.empty()) {
        throw InvalidArgument("input_dir '" + cfg.input_dir.string() + "' holds no .pgm images");
    }
    if (cfg.filter != FilterKind::None && (cfg.window < 3 || cfg.window % 2 == 0)) {
        throw InvalidArgument("window must be odd and >= 3");
    }
    if (cfg.sigma && !(*cfg.sigma > 0.0)) {
        throw InvalidArgument("sigma must be positive");
    }
    if (!(cfg.threshold >= 0.0)) {
        throw InvalidArgument("threshold must be >= 0");
    }
    if (cfg.levels < 2 || cfg.levels > 256) {
        throw InvalidArgument("levels must lie in [2,256]");
    }
    if (cfg.distance < 1) {
        throw InvalidArgument("distance must be >= 1");
    }
    if (cfg.bins < 2) {
        throw InvalidArgument("bins must be >= 2");
    }
    for (const auto& m : cfg.methods) {
        if (m != "usqr" && m != "urr" && m != "ssusqr") {
            throw InvalidArgument("unknown reduction method '" + m + "'");
        }
    }
    if (cfg.evaluation.k < 2 || cfg.evaluation.k > inputs.size()) {
        throw InvalidArgument("k must satisfy 2 <= k <= number of images (" + std::to_string(inputs.size()) + ")");
    }
    if (cfg.evaluation.som.grid_rows * cfg.evaluation.som.grid_cols < 2) {
        throw InvalidArgument("SOM grid must hold at least two units");
    }
    return inputs;
}

// =============================================================================
// Serialization
// =============================================================================

namespace {

nlohmann::json ratio_json(const Ratio& r) {
    return {{"value", r.value()}, {"numerator", r.numerator}, {"denominator", r.denominator}};
}

std::string format_real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

nlohmann::json reduct_to_json(const tabular::CategoricalTable& table, const ReductResult& result) {
    const auto& names = table.attributes();
    nlohmann::json doc;
    doc["method"] = result.method;
    doc["attributes"] = names;
    doc["target_cardinality"] = result.target_cardinality;
    doc["reduct"] = softset::attribute_names(table, result.reduct);
    doc["selection_order"] = softset::attribute_names(table, result.order);
    auto rounds = nlohmann::json::array();
    for (const auto& round : result.rounds) {
        nlohmann::json r;
        auto candidates = nlohmann::json::array();
        for (const auto& c : round.candidates) {
            nlohmann::json cj{{"attribute", names.at(c.attribute)}, {"cardinality", c.cardinality}};
            if (c.significance) {
                cj["significance"] = ratio_json(*c.significance);
            }
            if (c.dependency) {
                cj["dependency"] = ratio_json(*c.dependency);
            }
            candidates.push_back(std::move(cj));
        }
        r["candidates"] = std::move(candidates);
        r["chosen"] = round.chosen ? nlohmann::json(names.at(*round.chosen)) : nlohmann::json(nullptr);
        r["cardinality_after"] = round.cardinality_after;
        rounds.push_back(std::move(r));
    }
    doc["rounds"] = std::move(rounds);
    return doc;
}

clustering::NamedSubset subset_from_json(const nlohmann::json& doc) {
    if (!doc.contains("method") || !doc.contains("reduct")) {
        throw FormatError("reduct document lacks 'method' or 'reduct'");
    }
    return {doc.at("method").get<std::string>(), doc.at("reduct").get<std::vector<std::string>>()};
}

ReductResult run_method(const std::string& method, const tabular::CategoricalTable& table) {
    if (method == "ssusqr") return softset::ssusqr(table);
    if (method == "usqr") return roughset::usqr(table);
    if (method == "urr") return roughset::urr(table);
    throw InvalidArgument("unknown reduction method '" + method + "'");
}

void write_evaluation_csv(const std::vector<EvaluationReportRow>& rows, const fs::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << "dataset,method,algorithm,features,dunn,silhouette\n";
    for (const auto& r : rows) {
        out << r.dataset << ',' << r.row.subset << ',' << r.row.algorithm << ',' << r.row.feature_count << ','
            << (r.row.dunn ? format_real(*r.row.dunn) : "undefined") << ','
            << (r.row.silhouette ? format_real(*r.row.silhouette) : "undefined") << '\n';
    }
}

void write_feature_counts_csv(const RunReport& report, const fs::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << "dataset,extracted";
    for (const auto& m : report.methods) {
        out << ',' << m;
    }
    out << '\n';
    for (const auto& row : report.feature_counts) {
        out << row.dataset << ',' << row.extracted;
        for (const auto& m : report.methods) {
            out << ',' << row.selected.at(m);
        }
        out << '\n';
    }
}

std::string summary_text(const RunReport& report) {
    std::ostringstream out;
    out << "Features selected\n";
    out << "  dataset    extracted";
    for (const auto& m : report.methods) {
        out << "  " << m;
    }
    out << '\n';
    for (const auto& row : report.feature_counts) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "  %-10s %9zu", row.dataset.c_str(), row.extracted);
        out << buf;
        for (const auto& m : report.methods) {
            out << "  " << std::string(m.size() > 2 ? m.size() - 2 : 0, ' ') << std::to_string(row.selected.at(m));
        }
        out << '\n';
    }
    out << "\nCluster validity\n";
    for (const auto& r : report.evaluation) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "  %-10s %-10s %-7s dunn=%-12s silhouette=%s\n", r.dataset.c_str(),
                      r.row.subset.c_str(), r.row.algorithm.c_str(),
                      r.row.dunn ? format_real(*r.row.dunn).c_str() : "undefined",
                      r.row.silhouette ? format_real(*r.row.silhouette).c_str() : "undefined");
        out << buf;
    }
    return out.str();
}

// =============================================================================
// Run
// =============================================================================

namespace {

class StageTimer {
public:
    StageTimer(RunReport& report, std::string stage)
        : report_(report), stage_(std::move(stage)), start_(std::chrono::steady_clock::now()) {}
    ~StageTimer() {
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start_;
        report_.stage_seconds.emplace_back(stage_, elapsed.count());
    }
    StageTimer(const StageTimer&) = delete;
    StageTimer& operator=(const StageTimer&) = delete;

private:
    RunReport& report_;
    std::string stage_;
    std::chrono::steady_clock::time_point start_;
};

imaging::GrayImage denoise(const PipelineConfig& cfg, const imaging::GrayImage& image) {
    switch (cfg.filter) {
        case FilterKind::None: return image;
        case FilterKind::Mean: return imaging::mean_filter(image, cfg.window);
        case FilterKind::Gaussian:
            return imaging::gaussian_filter(image, cfg.window,
                                            cfg.sigma.value_or(imaging::default_gaussian_sigma(cfg.window)));
        case FilterKind::Median: return imaging::median_filter(image, cfg.window);
    }
    return image;
}

}  // namespace

RunReport run_pipeline(const PipelineConfig& cfg) {
    const auto inputs = validate(cfg);
    RunReport report;
    report.methods = cfg.methods;

    const auto dir = [&](const char* stage) {
        const auto d = cfg.output_dir / stage;
        fs::create_directories(d);
        return d;
    };

    std::vector<texture::ImageSample> samples;
    {
        StageTimer timer(report, "denoise+segment");
        const auto denoise_dir = dir("denoise");
        const auto segment_dir = dir("segment");
        for (const auto& path : inputs) {
            const auto id = path.stem().string();
            try {
                const auto raw = imaging::read_pgm(path);
                const auto clean = denoise(cfg, raw);
                imaging::write_pgm(clean, denoise_dir / (id + ".pgm"));
                auto mask = imaging::BinaryMask::full(clean);
                if (cfg.segment) {
                    auto seeds = cfg.seeds;
                    if (seeds.empty()) {
                        seeds.push_back({clean.height() / 2, clean.width() / 2});
                    }
                    mask = imaging::region_grow(clean, seeds, cfg.threshold, cfg.connectivity);
                    imaging::write_pgm(imaging::mask_to_image(mask), segment_dir / (id + "_mask.pgm"));
                    imaging::write_pgm(imaging::apply_mask(clean, mask), segment_dir / (id + ".pgm"));
                }
                samples.push_back({id, clean, std::move(mask)});
            } catch (const Error& e) {
                throw StageError("denoise+segment", id, e.what());
            }
        }
    }

    std::vector<tabular::FeatureTable> tables;
    {
        StageTimer timer(report, "extract");
        try {
            tables = texture::extract_dataset(samples, cfg.levels, cfg.distance);
        } catch (const Error& e) {
            throw StageError("extract", "", e.what());
        }
        const auto extract_dir = dir("extract");
        for (std::size_t d = 0; d < tables.size(); ++d) {
            tabular::write_table(tables[d], extract_dir / (std::string(texture::kDatasetNames[d]) + ".csv"));
        }
    }

    std::vector<tabular::CategoricalTable> categorical;
    {
        StageTimer timer(report, "discretize");
        const auto discretize_dir = dir("discretize");
        for (std::size_t d = 0; d < tables.size(); ++d) {
            categorical.push_back(tabular::equal_width_discretize(tables[d], cfg.bins));
            tabular::write_categorical(categorical.back(),
                                       discretize_dir / (std::string(texture::kDatasetNames[d]) + ".csv"));
        }
    }

    std::vector<std::vector<clustering::NamedSubset>> subsets(tables.size());
    {
        StageTimer timer(report, "reduce");
        const auto reduce_dir = cfg.methods.empty() ? fs::path{} : dir("reduce");
        for (std::size_t d = 0; d < tables.size(); ++d) {
            const std::string dataset(texture::kDatasetNames[d]);
            FeatureCountRow counts{dataset, tables[d].column_count(), {}};
            subsets[d].push_back({"unreduced", tables[d].columns()});
            for (const auto& method : cfg.methods) {
                ReductResult result;
                try {
                    result = run_method(method, categorical[d]);
                } catch (const Error& e) {
                    throw StageError("reduce", dataset, e.what());
                }
                const auto doc = reduct_to_json(categorical[d], result);
                std::ofstream(reduce_dir / (dataset + "_" + method + ".json")) << doc.dump(2) << '\n';
                counts.selected[method] = result.reduct.size();
                if (!result.reduct.empty()) {
                    subsets[d].push_back(subset_from_json(doc));
                }
            }
            report.feature_counts.push_back(std::move(counts));
        }
    }

    {
        StageTimer timer(report, "evaluate");
        for (std::size_t d = 0; d < tables.size(); ++d) {
            const std::string dataset(texture::kDatasetNames[d]);
            try {
                for (auto& row : clustering::evaluate_subsets(tables[d], subsets[d], cfg.evaluation)) {
                    report.evaluation.push_back({dataset, std::move(row)});
                }
            } catch (const Error& e) {
                throw StageError("evaluate", dataset, e.what());
            }
        }
    }

    const auto report_dir = dir("report");
    write_feature_counts_csv(report, report_dir / "feature_counts.csv");
    write_evaluation_csv(report.evaluation, report_dir / "evaluation.csv");
    std::ofstream(report_dir / "summary.txt") << summary_text(report);
    std::ofstream timing(report_dir / "timing.csv");
    timing << "stage,seconds\n";
    for (const auto& [stage, seconds] : report.stage_seconds) {
        timing << stage << ',' << format_real(seconds) << '\n';
    }
    return report;
}

}  // namespace softsel::pipeline
