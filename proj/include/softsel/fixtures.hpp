#pragma once

/**
 * @file fixtures.hpp
 * @brief Built-in data: the eight-object shapes table and synthetic CT-like
 *        slices standing in for clinical images.
 */

#include <softsel/imaging.hpp>
#include <softsel/tabular.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace softsel::fixtures {

/// Objects 1..8 over attributes a1 (shape), a2 (size), a3 (colour),
/// a4 (grade).
tabular::CategoricalTable shapes_table();

/// CSV text of shapes_table() in the load_categorical format.
std::string shapes_csv();

struct SyntheticSlice {
    std::string id;
    imaging::GrayImage image;
    /// Inside the textured body; a good region-growing seed.
    imaging::Pixel seed;
};

/// 64x64 slice: dark background and an elliptical body whose texture is
/// fine-grained for even `index` and striped for odd `index`. Deterministic
/// in (index, seed).
SyntheticSlice synthetic_slice(std::size_t index, std::uint64_t seed = 7);

/// Smooth 64x64 test card (gradients and plateaus, no pixel at 0 or 255)
/// used for denoising comparisons.
imaging::GrayImage smooth_test_card(std::size_t size = 64);

/// Writes `count` slices as P5 PGM files named slice_00.pgm, slice_01.pgm...
std::vector<std::filesystem::path> write_fixture_set(const std::filesystem::path& dir, std::size_t count = 10,
                                                     std::uint64_t seed = 7);

}  // namespace softsel::fixtures
