// Acceptance suite: one PASS/FAIL line per criterion, exit code 1 if any fail.

#include <softsel/clustering.hpp>
#include <softsel/fixtures.hpp>
#include <softsel/imaging.hpp>
#include <softsel/pipeline.hpp>
#include <softsel/roughset.hpp>
#include <softsel/softset.hpp>
#include <softsel/texture.hpp>

#include "oracles/table_oracle.hpp"
#include "oracles/texture_oracle.hpp"
#include "test_util.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>

using namespace softsel;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

AttributeSet all_of(const tabular::CategoricalTable& t) {
    AttributeSet a(t.attribute_count());
    std::iota(a.begin(), a.end(), std::size_t{0});
    return a;
}

// 1 --------------------------------------------------------------------------
Outcome worked_example_golden() {
    Outcome o;
    const auto t0 = Clock::now();
    const auto t = fixtures::shapes_table();
    const auto soft = softset::decompose(t);
    using B = std::vector<softset::Block>;
    const B expected[] = {{{0, 3, 4}, {1, 7}, {2, 5, 6}},
                          {{0, 2, 4}, {1, 3, 6, 7}, {5}},
                          {{0, 4}, {1, 6, 7}, {2, 3, 5}},
                          {{0, 3}, {1, 2, 5, 6}, {4, 7}}};
    for (std::size_t a = 0; a < 4; ++a) {
        o.require(soft.partitions[a].blocks() == expected[a], "partition a" + std::to_string(a + 1));
    }
    const auto card = [&](AttributeSet s) { return softset::partition_cardinality(softset::partition(soft, s)); };
    o.require(card({0, 1, 2, 3}) == 8, "S_T(U)");
    o.require(card({0, 3}) == 5, "a1xa4");
    o.require(card({1, 3}) == 7, "a2xa4");
    o.require(card({2, 3}) == 6, "a3xa4");
    o.require(card({0, 1, 3}) == 8, "a1xa2xa4");
    o.require(card({1, 2, 3}) == 7, "a2xa3xa4");
    const auto r = softset::ssusqr(t);
    o.require(r.reduct == AttributeSet{0, 1, 3}, "reduct");
    o.require(r.order == AttributeSet{3, 1, 0}, "order");
    const double s = seconds_since(t0);
    o.require(s < 1.0, "runtime");
    if (o.pass) o.detail = "reduct {a1,a2,a4}, order a4->a2->a1, " + fmt("%.4f s", s);
    return o;
}

// 2 --------------------------------------------------------------------------
Outcome significance_values() {
    Outcome o;
    const auto t = fixtures::shapes_table();
    const auto sig = [&](std::size_t a) { return softset::significance(t, a); };
    o.require(std::abs(sig(0).value() - 0.2) <= 1e-12, "Sig(a1)");
    o.require(std::abs(sig(1).value() - 0.2) <= 1e-12, "Sig(a2)");
    o.require(std::abs(sig(3).value() - 1.0 / 3.0) <= 1e-12, "Sig(a4)");
    o.require(sig(0) == Ratio{1, 5} && sig(1) == Ratio{1, 5} && sig(3) == Ratio{1, 3}, "exact ratios");
    o.require(sig(2).numerator == 0, "Sig(a3) = 0");
    if (o.pass) o.detail = "a1=1/5 a2=1/5 a4=1/3; a3=0 (printed 0.2: documented discrepancy)";
    return o;
}

// 3 --------------------------------------------------------------------------
Outcome oracle_equivalence() {
    Outcome o;
    const auto t0 = Clock::now();
    std::size_t valid = 0, covered = 0, minimal_hits = 0;
    constexpr std::size_t kTables = 200;
    for (std::uint64_t seed = 0; seed < kTables; ++seed) {
        const auto t = oracle::random_table(seed, 10, 6, 4);
        const auto target = oracle::group_by_tuple(t, all_of(t)).size();
        const auto s = softset::ssusqr(t);
        const auto u = roughset::usqr(t);
        const auto r = roughset::urr(t);
        bool ok = true;
        for (const auto* res : {&s, &u, &r}) {
            ok = ok && oracle::group_by_tuple(t, res->reduct).size() == target;
        }
        valid += ok;
        const auto minimal = softset::enumerate_reducts(t);
        const bool covers = std::any_of(minimal.begin(), minimal.end(), [&](const AttributeSet& m) {
            return std::includes(s.reduct.begin(), s.reduct.end(), m.begin(), m.end());
        });
        covered += covers;
        minimal_hits += std::find(minimal.begin(), minimal.end(), s.reduct) != minimal.end();
    }
    const double secs = seconds_since(t0);
    o.require(valid == kTables, std::to_string(valid) + "/200 valid");
    o.require(covered == kTables, std::to_string(covered) + "/200 cover a minimal reduct");
    o.require(secs < 30.0, "runtime");
    o.detail += (o.detail.empty() ? "" : "; ") + std::to_string(valid) + "/200 valid for all three methods, " +
                std::to_string(covered) + "/200 SSUSQR cover a minimal reduct (" + std::to_string(minimal_hits) +
                " exactly minimal), " + fmt("%.2f s", secs);
    return o;
}

// 4 --------------------------------------------------------------------------
Outcome snr_ordering() {
    using namespace imaging;
    Outcome o;
    const auto clean = fixtures::synthetic_slice(1).image;
    int over_gaussian = 0, over_mean = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto noisy = add_noise(clean, SaltPepperNoise{0.05}, seed);
        const double med = snr(clean, median_filter(noisy, 5)).decibels;
        const double gau = snr(clean, gaussian_filter(noisy, 5, default_gaussian_sigma(5))).decibels;
        const double avg = snr(clean, mean_filter(noisy, 5)).decibels;
        over_gaussian += med > gau;
        over_mean += med > avg;
    }
    o.require(over_gaussian >= 18, "median > gaussian");
    o.require(over_mean >= 18, "median > mean");
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("median > gaussian in ") +
                std::to_string(over_gaussian) + "/20, median > mean in " + std::to_string(over_mean) + "/20";
    return o;
}

// 5 --------------------------------------------------------------------------
Outcome texture_oracle() {
    using texture::JointMatrix;
    Outcome o;
    const auto normalized = [](std::vector<double> c) {
        JointMatrix m(3, std::move(c));
        m.normalize();
        return m;
    };
    const JointMatrix hand[] = {normalized({4, 2, 1, 2, 6, 1, 1, 1, 2}), normalized({3, 1, 0, 2, 5, 1, 0, 4, 4}),
                                normalized({0, 0, 0, 1, 2, 0, 0, 3, 4})};
    double worst = 0.0;
    for (const auto& m : hand) {
        const auto ours = texture::features(m);
        const auto ref = oracle::texture_features(m.cells(), 3);
        for (std::size_t k = 0; k < texture::kFeatureCount; ++k) {
            worst = std::max(worst, std::abs(ours.values[k] - ref.f[k]));
        }
    }
    o.require(worst <= 1e-9, "hand matrices off by " + fmt("%.3g", worst));

    double worst_identity = 0.0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const std::size_t g = 2 + seed % 15;
        std::vector<double> cells(g * g);
        for (auto& c : cells) c = u(rng);
        JointMatrix m(g, cells);
        m.normalize();
        const auto f = texture::features(m);
        worst_identity = std::max(worst_identity, std::abs(f.f(2) - f.f(18)));
    }
    o.require(worst_identity <= 1e-9, "f2 vs f18");

    texture::QuantizedImage flat{imaging::GrayImage(8, 8, 5), imaging::BinaryMask(8, 8, true), 8};
    const auto f = texture::features(texture::glcm(flat, texture::Direction::Deg0, 1));
    o.require(f.f(1) == 1.0 && f.f(2) == 0.0 && f.f(9) == 0.0 && f.f(18) == 0.0, "constant image");
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("max oracle gap ") + fmt("%.2e", worst) +
                ", max |f2-f18| " + fmt("%.2e", worst_identity) + ", constant image exact";
    return o;
}

// 6 --------------------------------------------------------------------------
tabular::FeatureTable redundant_blobs() {
    // Two blobs in three informative columns plus three near-exact affine
    // copies of them.
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> g(0.0, 1.0);
    tabular::FeatureTable t({"i1", "i2", "i3", "r1", "r2", "r3"});
    for (int n = 0; n < 40; ++n) {
        const double c = n < 20 ? 0.0 : 6.0;
        const double a = c + g(rng), b = c + g(rng), d = c + g(rng);
        t.add_row("o" + std::to_string(n),
                  {a, b, d, 2 * a + 1 + 0.01 * g(rng), -b + 0.01 * g(rng), 0.5 * d - 3 + 0.01 * g(rng)});
    }
    return t;
}

Outcome clustering_indices() {
    using namespace clustering;
    Outcome o;
    const DataMatrix blobs(4, 2, {0, 0, 0, 1, 10, 0, 10, 1});
    ClusterAssignment truth;
    truth.k = 2;
    truth.labels = {0, 0, 1, 1};
    const double dunn = dunn_index(blobs, truth);
    const double sil = silhouette(blobs, truth);
    o.require(dunn == 10.0, "Dunn " + fmt("%.17g", dunn));
    o.require(std::abs(sil - 0.900) <= 1e-3, "silhouette " + fmt("%.6f", sil));

    std::size_t bounded = 0, monotone = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        std::mt19937_64 rng(seed);
        const std::size_t n = 6 + rng() % 60, d = 1 + rng() % 6;
        std::normal_distribution<double> g(0.0, 1.0);
        std::vector<double> v(n * d);
        for (auto& x : v) x = g(rng) + static_cast<double>(rng() % 3) * 4.0;
        const DataMatrix data(n, d, v);
        const auto a = kmeans(data, 2 + seed % 4, seed);
        const double s = silhouette(data, a);
        bounded += s >= -1.0 && s <= 1.0;
        bool mono = true;
        for (std::size_t i = 1; i < a.objective_history.size(); ++i) {
            mono = mono && a.objective_history[i] <= a.objective_history[i - 1];
        }
        monotone += mono;
    }
    o.require(bounded == 100, "silhouette bounds " + std::to_string(bounded) + "/100");
    o.require(monotone == 100, "monotone objective " + std::to_string(monotone) + "/100");

    const auto table = redundant_blobs();
    const auto reduct = softset::ssusqr(tabular::equal_width_discretize(table, 4));
    const auto names = softset::attribute_names(tabular::equal_width_discretize(table, 4), reduct.reduct);
    const auto rows = evaluate_subsets(table, {{"unreduced", table.columns()}, {"ssusqr", names}}, {});
    const double unreduced = rows[0].silhouette.value_or(-2.0);
    const double reduced = rows[2].silhouette.value_or(-2.0);
    o.require(reduced >= unreduced - 0.02, "reduced silhouette");
    o.require(names.size() < table.column_count(), "reduced feature count");
    o.detail += (o.detail.empty() ? "" : "; ") + std::string("Dunn 10, silhouette ") + fmt("%.4f", sil) +
                ", redundant set: " + std::to_string(names.size()) + "/6 features, silhouette " +
                fmt("%.4f", reduced) + " vs " + fmt("%.4f", unreduced);
    return o;
}

// 7 --------------------------------------------------------------------------
Outcome pipeline_determinism() {
    Outcome o;
    test_util::TempDir dir;
    pipeline::RunReport first;
    for (const char* run : {"a", "b"}) {
        auto cfg = pipeline::load_config(SOFTSEL_DATA_DIR "/pipeline.conf");
        cfg.output_dir = dir.file(run);
        auto report = pipeline::run_pipeline(cfg);
        if (std::string(run) == "a") first = std::move(report);
    }
    for (const char* name : {"feature_counts.csv", "evaluation.csv", "summary.txt"}) {
        const auto a = test_util::slurp(dir.file("a") / "report" / name);
        o.require(!a.empty() && a == test_util::slurp(dir.file("b") / "report" / name), std::string(name) + " differs");
    }
    o.require(first.feature_counts.size() == 5, "dataset count");
    for (const auto& row : first.feature_counts) {
        o.require(row.extracted == 19, row.dataset + " extracted");
        for (const auto& [method, n] : row.selected) o.require(n >= 1 && n <= 19, row.dataset + " " + method);
    }
    if (o.pass) o.detail = "byte-identical reports over two runs, 5 datasets x 19 extracted features";
    return o;
}

}  // namespace

int main() {
    const struct {
        const char* name;
        std::function<Outcome()> run;
    } criteria[] = {
        {"worked-example golden suite", worked_example_golden},
        {"significance values", significance_values},
        {"reduct oracle equivalence", oracle_equivalence},
        {"salt-and-pepper SNR ordering", snr_ordering},
        {"texture feature oracle", texture_oracle},
        {"clustering indices", clustering_indices},
        {"end-to-end determinism", pipeline_determinism},
    };
    int failed = 0;
    int index = 1;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", index++, c.name, o.detail.c_str());
    }
    std::printf("%d/7 criteria passed\n", 7 - failed);
    return failed == 0 ? 0 : 1;
}
