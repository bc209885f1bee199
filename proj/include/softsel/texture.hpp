#pragma once

/**
 * @file texture.hpp
 * @brief Gray-level co-occurrence (GLCM) and difference (GLDM) matrices and
 *        the 19 co-occurrence texture descriptors computed from them.
 */

#include <softsel/imaging.hpp>
#include <softsel/tabular.hpp>

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace softsel::texture {

/// Image rescaled to `levels` gray levels plus the pixels that take part in
/// pair counting.
struct QuantizedImage {
    imaging::GrayImage image;
    imaging::BinaryMask mask;
    std::size_t levels;
};

/// Maps v to floor(v * levels / 256). Pixels outside the mask are zeroed and
/// excluded from every later pair count. `levels` must lie in [2, 256].
QuantizedImage quantize(const imaging::GrayImage& image, const std::optional<imaging::BinaryMask>& mask,
                        std::size_t levels);

/// Dense G x G matrix of non-negative reals, row-major.
class JointMatrix {
public:
    explicit JointMatrix(std::size_t levels);
    JointMatrix(std::size_t levels, std::vector<double> cells);

    [[nodiscard]] std::size_t levels() const { return levels_; }
    [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return cells_[i * levels_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return cells_[i * levels_ + j]; }
    [[nodiscard]] const std::vector<double>& cells() const { return cells_; }
    [[nodiscard]] double total() const;

    /// Scales to unit mass. Throws EmptyMatrixError when the total is zero.
    void normalize();

    friend bool operator==(const JointMatrix&, const JointMatrix&) = default;

private:
    std::size_t levels_;
    std::vector<double> cells_;
};

enum class Direction { Deg0 = 0, Deg45 = 45, Deg90 = 90, Deg135 = 135 };

inline constexpr std::array<Direction, 4> kDirections = {Direction::Deg0, Direction::Deg45,
                                                         Direction::Deg90, Direction::Deg135};

struct Displacement {
    int dr = 0;
    int dc = 0;
    friend bool operator==(const Displacement&, const Displacement&) = default;
};

/// Offset of the second pixel relative to the first: 0:(0,d) 45:(-d,d)
/// 90:(-d,0) 135:(-d,-d).
Displacement offset(Direction direction, std::size_t distance);

struct CooccurrenceMatrix {
    JointMatrix p;
    Direction direction;
    std::size_t distance;
};

/// Cell (level, |level difference|). `displacements` lists every offset
/// that was aggregated.
struct DifferenceMatrix {
    JointMatrix p;
    std::vector<Displacement> displacements;
};

CooccurrenceMatrix glcm(const QuantizedImage& image, Direction direction, std::size_t distance,
                        bool symmetric = true);

DifferenceMatrix gldm(const QuantizedImage& image, Displacement displacement);
/// Aggregates the four orientation offsets at `distance`.
DifferenceMatrix gldm_all(const QuantizedImage& image, std::size_t distance);

inline constexpr std::size_t kFeatureCount = 19;

/// Column names f1..f19.
const std::array<std::string, kFeatureCount>& feature_names();
/// Human-readable descriptor names in the same order.
const std::array<std::string_view, kFeatureCount>& feature_labels();

struct FeatureVector {
    /// f1..f19 stored at indices 0..18.
    std::array<double, kFeatureCount> values{};
    /// Set when a zero denominator forced a fallback of 0 (f3, f12 or f14).
    bool degenerate = false;

    [[nodiscard]] double f(std::size_t one_based) const { return values.at(one_based - 1); }
};

/// Expects a normalized matrix. Logs are base 2 with 0 log 0 = 0.
FeatureVector features(const JointMatrix& p);
inline FeatureVector features(const CooccurrenceMatrix& m) { return features(m.p); }
inline FeatureVector features(const DifferenceMatrix& m) { return features(m.p); }

struct ImageSample {
    std::string id;
    imaging::GrayImage image;
    imaging::BinaryMask mask;
};

inline constexpr std::array<std::string_view, 5> kDatasetNames = {"glcm_0", "glcm_45", "glcm_90",
                                                                  "glcm_135", "gldm"};

/// One FeatureTable per dataset in kDatasetNames order, one row per sample in
/// input order. GLCMs are symmetric.
std::vector<tabular::FeatureTable> extract_dataset(const std::vector<ImageSample>& samples,
                                                   std::size_t levels, std::size_t distance);

}  // namespace softsel::texture
