#include <softsel/fixtures.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace softsel::fixtures {

namespace {

const std::vector<std::vector<std::string>>& shapes_rows() {
    static const std::vector<std::vector<std::string>> rows = {
        {"Circle", "Large", "Red", "Good"},       {"Square", "Small", "Green", "Bad"},
        {"Triangle", "Large", "Blue", "Bad"},     {"Circle", "Small", "Blue", "Good"},
        {"Circle", "Large", "Red", "Average"},    {"Triangle", "Medium", "Blue", "Bad"},
        {"Triangle", "Small", "Green", "Bad"},    {"Square", "Small", "Green", "Average"},
    };
    return rows;
}

}  // namespace

tabular::CategoricalTable shapes_table() {
    std::vector<std::string> objects;
    for (std::size_t i = 1; i <= shapes_rows().size(); ++i) {
        objects.push_back(std::to_string(i));
    }
    return tabular::categorical_from_labels(std::move(objects), {"a1", "a2", "a3", "a4"}, shapes_rows());
}

std::string shapes_csv() {
    std::ostringstream out;
    out << "object_id,a1,a2,a3,a4\n";
    for (std::size_t i = 0; i < shapes_rows().size(); ++i) {
        out << i + 1;
        for (const auto& v : shapes_rows()[i]) {
            out << ',' << v;
        }
        out << '\n';
    }
    return out.str();
}

SyntheticSlice synthetic_slice(std::size_t index, std::uint64_t seed) {
    constexpr std::size_t kSize = 64;
    std::mt19937_64 rng(seed * 1000003ULL + index);
    std::uniform_real_distribution<double> jitter(-1.0, 1.0);
    std::normal_distribution<double> grain(0.0, 1.0);

    const double cy = 32.0 + 2.0 * jitter(rng);
    const double cx = 32.0 + 2.0 * jitter(rng);
    const double ry = 22.0 + 3.0 * jitter(rng);
    const double rx = 17.0 + 3.0 * jitter(rng);
    const double base = 115.0 + 10.0 * jitter(rng);
    const bool striped = index % 2 == 1;
    const double period = 6.0 + 2.0 * jitter(rng);
    const double angle = std::numbers::pi / 4.0 * (1.0 + 0.3 * jitter(rng));

    imaging::GrayImage img(kSize, kSize);
    for (std::size_t r = 0; r < kSize; ++r) {
        for (std::size_t c = 0; c < kSize; ++c) {
            const double y = (static_cast<double>(r) - cy) / ry;
            const double x = (static_cast<double>(c) - cx) / rx;
            double v = 0.0;
            if (x * x + y * y <= 1.0) {
                if (striped) {
                    const double t = static_cast<double>(r) * std::sin(angle) + static_cast<double>(c) * std::cos(angle);
                    v = base + 18.0 * std::sin(2.0 * std::numbers::pi * t / period) + 3.0 * grain(rng);
                } else {
                    v = base + 9.0 * grain(rng);
                }
            } else {
                v = 18.0 + 4.0 * grain(rng);
            }
            img.at(r, c) = static_cast<std::uint8_t>(std::clamp(std::round(v), 1.0, 254.0));
        }
    }
    char id[32];
    std::snprintf(id, sizeof id, "slice_%02zu", index);
    return {id, std::move(img), {static_cast<std::size_t>(std::lround(cy)), static_cast<std::size_t>(std::lround(cx))}};
}

imaging::GrayImage smooth_test_card(std::size_t size) {
    imaging::GrayImage img(size, size);
    const double s = static_cast<double>(size);
    for (std::size_t r = 0; r < size; ++r) {
        for (std::size_t c = 0; c < size; ++c) {
            const double y = static_cast<double>(r) / s;
            const double x = static_cast<double>(c) / s;
            double v = 60.0 + 80.0 * x + 40.0 * std::sin(std::numbers::pi * y);
            const double dy = y - 0.5, dx = x - 0.35;
            if (dx * dx + dy * dy < 0.04) {
                v = 190.0;
            }
            img.at(r, c) = static_cast<std::uint8_t>(std::clamp(std::round(v), 1.0, 254.0));
        }
    }
    return img;
}

std::vector<std::filesystem::path> write_fixture_set(const std::filesystem::path& dir, std::size_t count,
                                                     std::uint64_t seed) {
    std::filesystem::create_directories(dir);
    std::vector<std::filesystem::path> paths;
    for (std::size_t i = 0; i < count; ++i) {
        auto slice = synthetic_slice(i, seed);
        paths.push_back(dir / (slice.id + ".pgm"));
        imaging::write_pgm(slice.image, paths.back(), true);
    }
    return paths;
}

}  // namespace softsel::fixtures
