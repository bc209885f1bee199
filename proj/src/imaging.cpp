#include <softsel/imaging.hpp>

#include <softsel/error.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <fstream>
#include <iterator>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

namespace softsel::imaging {

GrayImage::GrayImage(std::size_t width, std::size_t height, std::uint8_t fill)
    : width_(width), height_(height) {
    if (width == 0 || height == 0) {
        throw InvalidArgument("image dimensions must be positive");
    }
    pixels_.assign(width * height, fill);
}

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    if (width == 0 || height == 0) {
        throw InvalidArgument("image dimensions must be positive");
    }
    if (pixels_.size() != width * height) {
        throw InvalidArgument("pixel count " + std::to_string(pixels_.size()) +
                              " does not match " + std::to_string(width) + "x" +
                              std::to_string(height));
    }
}

BinaryMask::BinaryMask(std::size_t width, std::size_t height, bool fill)
    : width_(width), height_(height), bits_(width * height, fill ? 1 : 0) {
    if (width == 0 || height == 0) {
        throw InvalidArgument("mask dimensions must be positive");
    }
}

std::size_t BinaryMask::count() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

// =============================================================================
// PGM
// =============================================================================

namespace {

// Reads the next whitespace-delimited header token, skipping '#' comments.
std::string next_token(std::istream& in) {
    std::string token;
    int ch = 0;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {
            }
            if (!token.empty()) {
                break;
            }
            continue;
        }
        if (std::isspace(ch)) {
            if (!token.empty()) {
                break;
            }
            continue;
        }
        token.push_back(static_cast<char>(ch));
    }
    return token;
}

std::size_t parse_count(const std::string& token, const char* what) {
    if (token.empty() || !std::all_of(token.begin(), token.end(), ::isdigit)) {
        throw FormatError(std::string("PGM: bad ") + what + " '" + token + "'");
    }
    try {
        return std::stoul(token);
    } catch (const std::exception&) {
        throw FormatError(std::string("PGM: ") + what + " out of range");
    }
}

}  // namespace

GrayImage read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    const std::string magic = next_token(in);
    if (magic != "P2" && magic != "P5") {
        throw FormatError("PGM: unsupported magic '" + magic + "' in " + path.string());
    }
    const auto width = parse_count(next_token(in), "width");
    const auto height = parse_count(next_token(in), "height");
    const auto maxval = parse_count(next_token(in), "maxval");
    if (width == 0 || height == 0) {
        throw FormatError("PGM: zero dimension in " + path.string());
    }
    if (maxval == 0 || maxval > 255) {
        throw FormatError("PGM: maxval " + std::to_string(maxval) + " not in [1,255]");
    }

    std::vector<std::uint8_t> pixels(width * height);
    if (magic == "P5") {
        // next_token consumed the single whitespace byte after maxval
        in.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
        if (in.gcount() != static_cast<std::streamsize>(pixels.size())) {
            throw FormatError("PGM: truncated raster in " + path.string());
        }
    } else {
        for (auto& px : pixels) {
            const auto token = next_token(in);
            if (token.empty()) {
                throw FormatError("PGM: truncated raster in " + path.string());
            }
            px = static_cast<std::uint8_t>(parse_count(token, "sample"));
        }
    }
    for (const auto px : pixels) {
        if (px > maxval) {
            throw FormatError("PGM: sample exceeds maxval in " + path.string());
        }
    }
    return GrayImage(width, height, std::move(pixels));
}

void write_pgm(const GrayImage& image, const std::filesystem::path& path, bool binary) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << (binary ? "P5" : "P2") << '\n' << image.width() << ' ' << image.height() << "\n255\n";
    if (binary) {
        out.write(reinterpret_cast<const char*>(image.pixels().data()),
                  static_cast<std::streamsize>(image.size()));
    } else {
        for (std::size_t r = 0; r < image.height(); ++r) {
            for (std::size_t c = 0; c < image.width(); ++c) {
                out << static_cast<int>(image.at(r, c)) << (c + 1 == image.width() ? '\n' : ' ');
            }
        }
    }
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

GrayImage mask_to_image(const BinaryMask& mask) {
    GrayImage out(mask.width(), mask.height());
    for (std::size_t r = 0; r < mask.height(); ++r) {
        for (std::size_t c = 0; c < mask.width(); ++c) {
            out.at(r, c) = mask.at(r, c) ? 255 : 0;
        }
    }
    return out;
}

BinaryMask image_to_mask(const GrayImage& image) {
    BinaryMask mask(image.width(), image.height());
    for (std::size_t r = 0; r < image.height(); ++r) {
        for (std::size_t c = 0; c < image.width(); ++c) {
            mask.set(r, c, image.at(r, c) > 0);
        }
    }
    return mask;
}

// =============================================================================
// Noise
// =============================================================================

namespace {

std::uint8_t clamp_round(double v) {
    return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

}  // namespace

GrayImage add_noise(const GrayImage& image, const NoiseKind& kind, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    GrayImage out = image;
    auto px = out.pixels();

    if (const auto* g = std::get_if<GaussianNoise>(&kind)) {
        if (!(g->sigma >= 0.0) || !std::isfinite(g->sigma)) {
            throw InvalidArgument("gaussian sigma must be finite and >= 0");
        }
        if (g->sigma == 0.0) {
            return out;
        }
        std::normal_distribution<double> noise(0.0, g->sigma);
        for (auto& v : px) {
            v = clamp_round(static_cast<double>(v) + noise(rng));
        }
        return out;
    }

    const auto& sp = std::get<SaltPepperNoise>(kind);
    if (!(sp.fraction >= 0.0 && sp.fraction <= 1.0)) {
        throw InvalidArgument("salt-and-pepper fraction must lie in [0,1]");
    }
    const auto flips = static_cast<std::size_t>(std::round(sp.fraction * static_cast<double>(px.size())));
    std::vector<std::size_t> order(px.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::bernoulli_distribution salt(0.5);
    for (std::size_t i = 0; i < flips; ++i) {
        auto& v = px[order[i]];
        std::uint8_t target = salt(rng) ? 255 : 0;
        if (v == target) {
            target = static_cast<std::uint8_t>(255 - target);
        }
        v = target;
    }
    return out;
}

// =============================================================================
// Filters
// =============================================================================

namespace {

void require_odd_window(std::size_t window) {
    if (window < 3 || window % 2 == 0) {
        throw InvalidArgument("filter window must be odd and >= 3, got " + std::to_string(window));
    }
}

std::size_t clamp_index(std::ptrdiff_t i, std::size_t n) {
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(n) - 1));
}

// Applies `reduce` to the edge-replicated window around every pixel.
template <typename Reduce>
GrayImage window_filter(const GrayImage& image, std::size_t window, Reduce reduce) {
    const auto half = static_cast<std::ptrdiff_t>(window / 2);
    GrayImage out(image.width(), image.height());
    std::vector<std::uint8_t> patch(window * window);
    for (std::size_t r = 0; r < image.height(); ++r) {
        for (std::size_t c = 0; c < image.width(); ++c) {
            std::size_t k = 0;
            for (std::ptrdiff_t dr = -half; dr <= half; ++dr) {
                const auto rr = clamp_index(static_cast<std::ptrdiff_t>(r) + dr, image.height());
                for (std::ptrdiff_t dc = -half; dc <= half; ++dc) {
                    const auto cc = clamp_index(static_cast<std::ptrdiff_t>(c) + dc, image.width());
                    patch[k++] = image.at(rr, cc);
                }
            }
            out.at(r, c) = reduce(patch);
        }
    }
    return out;
}

}  // namespace

GrayImage mean_filter(const GrayImage& image, std::size_t window) {
    require_odd_window(window);
    const double n = static_cast<double>(window * window);
    return window_filter(image, window, [n](const std::vector<std::uint8_t>& patch) {
        const auto sum = std::accumulate(patch.begin(), patch.end(), 0u);
        return clamp_round(static_cast<double>(sum) / n);
    });
}

std::vector<double> gaussian_kernel(std::size_t window, double sigma) {
    require_odd_window(window);
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw InvalidArgument("gaussian sigma must be positive");
    }
    const auto half = static_cast<std::ptrdiff_t>(window / 2);
    std::vector<double> kernel;
    kernel.reserve(window * window);
    for (std::ptrdiff_t dr = -half; dr <= half; ++dr) {
        for (std::ptrdiff_t dc = -half; dc <= half; ++dc) {
            kernel.push_back(std::exp(-static_cast<double>(dr * dr + dc * dc) / (2.0 * sigma * sigma)));
        }
    }
    const double total = std::accumulate(kernel.begin(), kernel.end(), 0.0);
    for (auto& w : kernel) {
        w /= total;
    }
    return kernel;
}

GrayImage gaussian_filter(const GrayImage& image, std::size_t window, double sigma) {
    const auto kernel = gaussian_kernel(window, sigma);
    return window_filter(image, window, [&kernel](const std::vector<std::uint8_t>& patch) {
        double acc = 0.0;
        for (std::size_t i = 0; i < patch.size(); ++i) {
            acc += kernel[i] * patch[i];
        }
        return clamp_round(acc);
    });
}

GrayImage median_filter(const GrayImage& image, std::size_t window) {
    require_odd_window(window);
    return window_filter(image, window, [](std::vector<std::uint8_t>& patch) {
        const auto mid = patch.begin() + static_cast<std::ptrdiff_t>(patch.size() / 2);
        std::nth_element(patch.begin(), mid, patch.end());
        return *mid;
    });
}

// =============================================================================
// SNR
// =============================================================================

SnrResult snr(const GrayImage& original, const GrayImage& processed) {
    if (original.width() != processed.width() || original.height() != processed.height()) {
        throw InvalidArgument("snr: image dimensions differ");
    }
    double signal = 0.0;
    double noise = 0.0;
    const auto s = original.pixels();
    const auto p = processed.pixels();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double si = s[i];
        const double diff = static_cast<double>(p[i]) - si;
        signal += si * si;
        noise += diff * diff;
    }
    if (noise == 0.0) {
        return {.infinite = true, .decibels = 0.0};
    }
    return {.infinite = false, .decibels = 10.0 * std::log10(signal / noise)};
}

// =============================================================================
// Segmentation
// =============================================================================

BinaryMask region_grow(const GrayImage& image, std::span<const Pixel> seeds, double threshold,
                       Connectivity connectivity) {
    if (seeds.empty()) {
        throw InvalidArgument("region_grow: no seeds");
    }
    if (!(threshold >= 0.0)) {
        throw InvalidArgument("region_grow: threshold must be >= 0");
    }
    for (const auto& s : seeds) {
        if (s.row >= image.height() || s.col >= image.width()) {
            throw InvalidArgument("region_grow: seed (" + std::to_string(s.row) + "," +
                                  std::to_string(s.col) + ") out of bounds");
        }
    }

    static constexpr std::ptrdiff_t kOffsets[8][2] = {
        {-1, 0}, {0, 1}, {1, 0}, {0, -1}, {-1, 1}, {1, 1}, {1, -1}, {-1, -1}};
    const std::size_t neighbours = connectivity == Connectivity::Eight ? 8 : 4;

    BinaryMask mask(image.width(), image.height());
    std::deque<Pixel> frontier;
    double sum = 0.0;
    std::size_t members = 0;
    for (const auto& s : seeds) {
        if (!mask.at(s.row, s.col)) {
            mask.set(s.row, s.col, true);
            sum += image.at(s.row, s.col);
            ++members;
            frontier.push_back(s);
        }
    }

    const auto h = static_cast<std::ptrdiff_t>(image.height());
    const auto w = static_cast<std::ptrdiff_t>(image.width());
    while (!frontier.empty()) {
        const Pixel p = frontier.front();
        frontier.pop_front();
        for (std::size_t n = 0; n < neighbours; ++n) {
            const auto r = static_cast<std::ptrdiff_t>(p.row) + kOffsets[n][0];
            const auto c = static_cast<std::ptrdiff_t>(p.col) + kOffsets[n][1];
            if (r < 0 || c < 0 || r >= h || c >= w) {
                continue;
            }
            const auto ur = static_cast<std::size_t>(r);
            const auto uc = static_cast<std::size_t>(c);
            if (mask.at(ur, uc)) {
                continue;
            }
            const double v = image.at(ur, uc);
            const double mean = sum / static_cast<double>(members);
            if (std::abs(v - mean) <= threshold) {
                mask.set(ur, uc, true);
                sum += v;
                ++members;
                frontier.push_back({ur, uc});
            }
        }
    }
    return mask;
}

GrayImage apply_mask(const GrayImage& image, const BinaryMask& mask) {
    if (!mask.matches(image)) {
        throw InvalidArgument("apply_mask: mask dimensions differ from image");
    }
    GrayImage out = image;
    for (std::size_t r = 0; r < image.height(); ++r) {
        for (std::size_t c = 0; c < image.width(); ++c) {
            if (!mask.at(r, c)) {
                out.at(r, c) = 0;
            }
        }
    }
    return out;
}

}  // namespace softsel::imaging
