#pragma once

/**
 * @file imaging.hpp
 * @brief 8-bit grayscale images: PGM I/O, noise injection, denoising filters,
 *        SNR scoring and region-growing segmentation.
 */

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

namespace softsel::imaging {

/// Row-major 8-bit grayscale image. Width and height are always positive.
class GrayImage {
public:
    GrayImage(std::size_t width, std::size_t height, std::uint8_t fill = 0);
    GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels);

    [[nodiscard]] std::size_t width() const { return width_; }
    [[nodiscard]] std::size_t height() const { return height_; }
    [[nodiscard]] std::size_t size() const { return pixels_.size(); }

    [[nodiscard]] std::uint8_t at(std::size_t row, std::size_t col) const {
        return pixels_[row * width_ + col];
    }
    std::uint8_t& at(std::size_t row, std::size_t col) { return pixels_[row * width_ + col]; }

    [[nodiscard]] std::span<const std::uint8_t> pixels() const { return pixels_; }
    [[nodiscard]] std::span<std::uint8_t> pixels() { return pixels_; }

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    std::size_t width_;
    std::size_t height_;
    std::vector<std::uint8_t> pixels_;
};

/// Per-pixel membership flags with the dimensions of the image they mask.
class BinaryMask {
public:
    BinaryMask(std::size_t width, std::size_t height, bool fill = false);

    static BinaryMask full(const GrayImage& image) {
        return BinaryMask(image.width(), image.height(), true);
    }

    [[nodiscard]] std::size_t width() const { return width_; }
    [[nodiscard]] std::size_t height() const { return height_; }
    [[nodiscard]] bool at(std::size_t row, std::size_t col) const {
        return bits_[row * width_ + col] != 0;
    }
    void set(std::size_t row, std::size_t col, bool value) {
        bits_[row * width_ + col] = value ? 1 : 0;
    }
    [[nodiscard]] std::size_t count() const;
    [[nodiscard]] bool matches(const GrayImage& image) const {
        return image.width() == width_ && image.height() == height_;
    }

    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
    std::size_t width_;
    std::size_t height_;
    std::vector<std::uint8_t> bits_;
};

// ---------------------------------------------------------------------------
// PGM
// ---------------------------------------------------------------------------

/// Reads a P2 or P5 PGM with maxval <= 255. Comments (`#`) in the header are
/// skipped. Throws IoError when the file cannot be opened, FormatError
/// otherwise.
GrayImage read_pgm(const std::filesystem::path& path);

/// Writes P5 when `binary` is set, P2 otherwise. maxval is always 255.
void write_pgm(const GrayImage& image, const std::filesystem::path& path, bool binary = true);

/// Renders a mask as a 0/255 image, handy for persisting segmentations.
GrayImage mask_to_image(const BinaryMask& mask);
/// Pixels > 0 are inside.
BinaryMask image_to_mask(const GrayImage& image);

// ---------------------------------------------------------------------------
// Noise
// ---------------------------------------------------------------------------

struct GaussianNoise {
    double sigma = 0.0;
};

/// Exactly round(fraction * K) distinct pixels are driven to 0 or 255. A
/// selected pixel that already holds the drawn extreme takes the opposite
/// one, so every selected pixel changes.
struct SaltPepperNoise {
    double fraction = 0.0;
};

using NoiseKind = std::variant<GaussianNoise, SaltPepperNoise>;

GrayImage add_noise(const GrayImage& image, const NoiseKind& kind, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Filters (edge replication, round half away from zero, clamp to [0,255])
// ---------------------------------------------------------------------------

GrayImage mean_filter(const GrayImage& image, std::size_t window);

/// Sampled Gaussian kernel of side `window`, renormalized to sum 1.
std::vector<double> gaussian_kernel(std::size_t window, double sigma);

/// `sigma <= 0` is rejected; use default_gaussian_sigma() for window/6.
GrayImage gaussian_filter(const GrayImage& image, std::size_t window, double sigma);
inline double default_gaussian_sigma(std::size_t window) { return static_cast<double>(window) / 6.0; }

GrayImage median_filter(const GrayImage& image, std::size_t window);

// ---------------------------------------------------------------------------
// SNR
// ---------------------------------------------------------------------------

struct SnrResult {
    bool infinite = false;  ///< processed == original: zero noise power
    double decibels = 0.0;  ///< valid only when !infinite
};

/// 10 log10( sum S^2 / sum (P - S)^2 ) over all pixels.
SnrResult snr(const GrayImage& original, const GrayImage& processed);

// ---------------------------------------------------------------------------
// Segmentation
// ---------------------------------------------------------------------------

struct Pixel {
    std::size_t row = 0;
    std::size_t col = 0;
    friend bool operator==(const Pixel&, const Pixel&) = default;
};

enum class Connectivity { Four = 4, Eight = 8 };

/// FIFO region growing. A neighbour joins when its intensity differs from the
/// current region mean by at most `threshold`. Neighbours are visited N, E,
/// S, W, then NE, SE, SW, NW (eight-connectivity only).
BinaryMask region_grow(const GrayImage& image, std::span<const Pixel> seeds, double threshold,
                       Connectivity connectivity);

/// Zeroes every pixel outside the mask.
GrayImage apply_mask(const GrayImage& image, const BinaryMask& mask);

}  // namespace softsel::imaging
