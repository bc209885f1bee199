// Command-line front end for the softsel feature-selection laboratory.

#include <softsel/clustering.hpp>
#include <softsel/error.hpp>
#include <softsel/fixtures.hpp>
#include <softsel/imaging.hpp>
#include <softsel/pipeline.hpp>
#include <softsel/tabular.hpp>
#include <softsel/texture.hpp>
#include <softsel/worked_example.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace softsel;

namespace {

imaging::Pixel parse_pixel(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) {
        throw InvalidArgument("seed '" + text + "' is not row,col");
    }
    return {std::stoul(text.substr(0, comma)), std::stoul(text.substr(comma + 1))};
}

std::string format_db(const imaging::SnrResult& r) {
    if (r.infinite) {
        return "inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", r.decibels);
    return buf;
}

std::vector<texture::ImageSample> load_samples(const fs::path& in_dir, const std::string& mask_dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(in_dir)) {
        if (e.is_regular_file() && e.path().extension() == ".pgm") {
            files.push_back(e.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<texture::ImageSample> samples;
    for (const auto& f : files) {
        auto image = imaging::read_pgm(f);
        auto mask = imaging::BinaryMask::full(image);
        if (!mask_dir.empty()) {
            mask = imaging::image_to_mask(imaging::read_pgm(fs::path(mask_dir) / f.filename()));
        }
        samples.push_back({f.stem().string(), std::move(image), std::move(mask)});
    }
    return samples;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"softsel: soft-set unsupervised feature selection laboratory"};
    app.require_subcommand(1);
    int exit_code = 0;

    // denoise
    std::string in, out, filter = "median";
    std::size_t window = 5;
    double sigma = 0.0;
    auto* denoise = app.add_subcommand("denoise", "Apply a mean, gaussian or median filter to a PGM");
    denoise->add_option("--in", in, "Input PGM")->required();
    denoise->add_option("--out", out, "Output PGM")->required();
    denoise->add_option("--filter", filter)->check(CLI::IsMember({"mean", "gaussian", "median"}));
    denoise->add_option("--window", window, "Odd window size")->capture_default_str();
    denoise->add_option("--sigma", sigma, "Gaussian sigma (default window/6)");
    denoise->callback([&] {
        const auto image = imaging::read_pgm(in);
        imaging::GrayImage result = image;
        if (filter == "mean") {
            result = imaging::mean_filter(image, window);
        } else if (filter == "gaussian") {
            result = imaging::gaussian_filter(image, window, sigma > 0.0 ? sigma : imaging::default_gaussian_sigma(window));
        } else {
            result = imaging::median_filter(image, window);
        }
        imaging::write_pgm(result, out);
    });

    // noise
    std::string kind = "sp";
    double level = 0.05;
    std::uint64_t seed = 1;
    auto* noise = app.add_subcommand("noise", "Inject gaussian or salt-and-pepper noise");
    noise->add_option("--in", in)->required();
    noise->add_option("--out", out)->required();
    noise->add_option("--kind", kind)->check(CLI::IsMember({"gaussian", "sp"}));
    noise->add_option("--level", level, "Sigma (gaussian) or fraction (sp)");
    noise->add_option("--seed", seed);
    noise->callback([&] {
        const auto image = imaging::read_pgm(in);
        const imaging::NoiseKind k = kind == "gaussian" ? imaging::NoiseKind{imaging::GaussianNoise{level}}
                                                        : imaging::NoiseKind{imaging::SaltPepperNoise{level}};
        imaging::write_pgm(imaging::add_noise(image, k, seed), out);
    });

    // snr
    std::string original, processed;
    auto* snr = app.add_subcommand("snr", "Signal-to-noise ratio of a processed image in dB");
    snr->add_option("--original", original)->required();
    snr->add_option("--processed", processed)->required();
    snr->callback([&] {
        std::cout << format_db(imaging::snr(imaging::read_pgm(original), imaging::read_pgm(processed))) << '\n';
    });

    // segment
    std::vector<std::string> seeds;
    double threshold = 40.0;
    int connectivity = 4;
    std::string masked_out;
    auto* segment = app.add_subcommand("segment", "Region-growing segmentation; writes a 0/255 mask");
    segment->add_option("--in", in)->required();
    segment->add_option("--out", out, "Mask PGM")->required();
    segment->add_option("--seed", seeds, "row,col (repeatable)")->required();
    segment->add_option("--threshold", threshold)->capture_default_str();
    segment->add_option("--connectivity", connectivity)->check(CLI::IsMember({4, 8}));
    segment->add_option("--masked-out", masked_out, "Also write the masked image");
    segment->callback([&] {
        const auto image = imaging::read_pgm(in);
        std::vector<imaging::Pixel> pixels;
        for (const auto& s : seeds) {
            pixels.push_back(parse_pixel(s));
        }
        const auto mask = imaging::region_grow(image, pixels, threshold,
                                               connectivity == 8 ? imaging::Connectivity::Eight
                                                                 : imaging::Connectivity::Four);
        imaging::write_pgm(imaging::mask_to_image(mask), out);
        if (!masked_out.empty()) {
            imaging::write_pgm(imaging::apply_mask(image, mask), masked_out);
        }
        std::cout << mask.count() << " pixels in region\n";
    });

    // extract
    std::string in_dir, mask_dir, out_dir;
    std::size_t levels = 32, distance = 1;
    auto* extract = app.add_subcommand("extract", "GLCM (0/45/90/135) and GLDM texture features");
    extract->add_option("--in-dir", in_dir, "Directory of PGM images")->required();
    extract->add_option("--mask-dir", mask_dir, "Masks with matching file names (non-zero = inside)");
    extract->add_option("--levels", levels)->capture_default_str();
    extract->add_option("--distance", distance)->capture_default_str();
    extract->add_option("--out-dir", out_dir)->required();
    extract->callback([&] {
        const auto tables = texture::extract_dataset(load_samples(in_dir, mask_dir), levels, distance);
        fs::create_directories(out_dir);
        for (std::size_t d = 0; d < tables.size(); ++d) {
            tabular::write_table(tables[d], fs::path(out_dir) / (std::string(texture::kDatasetNames[d]) + ".csv"));
        }
    });

    // discretize
    std::size_t bins = 4;
    auto* discretize = app.add_subcommand("discretize", "Equal-width binning into a categorical table");
    discretize->add_option("--in", in)->required();
    discretize->add_option("--out", out)->required();
    discretize->add_option("--bins", bins)->capture_default_str();
    discretize->callback([&] {
        tabular::write_categorical(tabular::equal_width_discretize(tabular::read_table(in), bins), out);
    });

    // reduce
    std::string method = "ssusqr";
    auto* reduce = app.add_subcommand("reduce", "Unsupervised reduct of a categorical table");
    reduce->add_option("--method", method)->check(CLI::IsMember({"ssusqr", "usqr", "urr"}));
    reduce->add_option("--in", in, "Categorical CSV")->required();
    reduce->add_option("--out", out, "Reduct JSON (stdout when omitted)");
    reduce->callback([&] {
        const auto table = tabular::load_categorical(in);
        const auto doc = pipeline::reduct_to_json(table, pipeline::run_method(method, table));
        if (out.empty()) {
            std::cout << doc.dump(2) << '\n';
        } else {
            std::ofstream(out) << doc.dump(2) << '\n';
        }
    });

    // cluster
    std::string algo = "kmeans";
    std::size_t k = 2;
    std::vector<std::string> columns;
    clustering::SomParams som;
    auto* cluster = app.add_subcommand("cluster", "Cluster a feature table and report validity indices");
    cluster->add_option("--algo", algo)->check(CLI::IsMember({"kmeans", "som"}));
    cluster->add_option("--k", k)->capture_default_str();
    cluster->add_option("--seed", seed);
    cluster->add_option("--in", in, "Feature CSV")->required();
    cluster->add_option("--columns", columns, "Restrict to these columns")->delimiter(',');
    cluster->add_option("--som-rows", som.grid_rows)->capture_default_str();
    cluster->add_option("--som-cols", som.grid_cols)->capture_default_str();
    cluster->add_option("--som-epochs", som.epochs)->capture_default_str();
    cluster->add_option("--out", out, "Per-object labels CSV");
    cluster->callback([&] {
        auto table = tabular::read_table(in);
        if (!columns.empty()) {
            table = table.select(columns);
        }
        const auto data = clustering::standardize(clustering::DataMatrix::from_table(table));
        const auto assignment = algo == "som" ? clustering::som(data, som, seed) : clustering::kmeans(data, k, seed);
        const auto show = [&](const char* name, auto index) {
            try {
                std::cout << name << '=' << index(data, assignment) << '\n';
            } catch (const UndefinedIndexError&) {
                std::cout << name << "=undefined\n";
            }
        };
        std::cout << "clusters=" << assignment.k << '\n';
        show("dunn", clustering::dunn_index);
        show("silhouette", clustering::silhouette);
        if (!out.empty()) {
            std::ofstream labels(out);
            labels << "object_id,cluster\n";
            for (std::size_t i = 0; i < table.row_count(); ++i) {
                labels << table.rows()[i].id << ',' << assignment.labels[i] << '\n';
            }
        }
    });

    // evaluate
    std::vector<std::string> subset_files;
    std::string table_path;
    clustering::EvaluationParams eval;
    auto* evaluate = app.add_subcommand("evaluate", "Dunn/Silhouette grid for the unreduced set and each reduct");
    evaluate->add_option("--table", table_path, "Continuous feature CSV")->required();
    evaluate->add_option("--subsets", subset_files, "Reduct JSON files")->required();
    evaluate->add_option("--k", eval.k)->capture_default_str();
    evaluate->add_option("--seed", eval.seed)->capture_default_str();
    evaluate->add_option("--out", out, "Report CSV")->required();
    evaluate->callback([&] {
        const auto table = tabular::read_table(table_path);
        std::vector<clustering::NamedSubset> subsets{{"unreduced", table.columns()}};
        for (const auto& f : subset_files) {
            std::ifstream s(f);
            if (!s) {
                throw IoError("cannot open " + f);
            }
            subsets.push_back(pipeline::subset_from_json(nlohmann::json::parse(s)));
        }
        std::vector<pipeline::EvaluationReportRow> rows;
        for (auto& r : clustering::evaluate_subsets(table, subsets, eval)) {
            rows.push_back({fs::path(table_path).stem().string(), std::move(r)});
        }
        pipeline::write_evaluation_csv(rows, out);
    });

    // pipeline
    std::string config_path;
    auto* run = app.add_subcommand("pipeline", "Run every stage from a key=value config");
    run->add_option("--config", config_path)->required();
    run->callback([&] {
        const auto report = pipeline::run_pipeline(pipeline::load_config(config_path));
        std::cout << pipeline::summary_text(report);
        std::cout << "\nStage timing\n";
        for (const auto& [stage, seconds] : report.stage_seconds) {
            std::printf("  %-16s %.3f s\n", stage.c_str(), seconds);
        }
    });

    // worked-example
    auto* worked = app.add_subcommand("worked-example", "Replay the eight-object shapes-table derivation");
    worked->callback([&] {
        const auto verdict = worked_example::run_worked_example();
        worked_example::print_ledger(verdict, std::cout);
        exit_code = verdict.passed() ? 0 : 1;
    });

    // fixtures
    std::size_t count = 10;
    std::uint64_t fixture_seed = 7;
    auto* fixtures_cmd = app.add_subcommand("fixtures", "Write the synthetic slice set and the shapes table");
    fixtures_cmd->add_option("--out-dir", out_dir)->required();
    fixtures_cmd->add_option("--count", count)->capture_default_str();
    fixtures_cmd->add_option("--seed", fixture_seed)->capture_default_str();
    fixtures_cmd->callback([&] {
        for (const auto& p : fixtures::write_fixture_set(out_dir, count, fixture_seed)) {
            std::cout << p.string() << '\n';
        }
        const auto shapes = std::filesystem::path(out_dir) / "shapes.csv";
        std::ofstream out(shapes);
        if (!(out << fixtures::shapes_csv())) {
            throw IoError("cannot write " + shapes.string());
        }
        std::cout << shapes.string() << '\n';
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return exit_code;
}
