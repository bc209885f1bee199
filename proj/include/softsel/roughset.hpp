#pragma once

/**
 * @file roughset.hpp
 * @brief Rough-set baselines: unsupervised quick reduct (USQR) driven by mean
 *        dependency, and unsupervised relative reduct (URR).
 */

#include <softsel/ratio.hpp>
#include <softsel/reduct.hpp>
#include <softsel/tabular.hpp>

#include <cstddef>
#include <vector>

namespace softsel::roughset {

/// Union of U/IND(B) blocks wholly contained in a block of U/IND({y}),
/// returned as ascending object indices.
std::vector<std::size_t> positive_region(const tabular::CategoricalTable& table, const AttributeSet& b,
                                         std::size_t y);

/// gamma_B(y) = |POS_B(y)| / |U| for every y in A, plus their mean.
struct DependencyRecord {
    AttributeSet subset;
    std::vector<Ratio> gamma;
    /// Exact mean: sum of |POS| over (|A| * |U|).
    Ratio mean;
};

DependencyRecord dependency(const tabular::CategoricalTable& table, const AttributeSet& b);

inline double mean_dependency(const tabular::CategoricalTable& table, const AttributeSet& b) {
    return dependency(table, b).mean.value();
}

/// Greedy growth by mean dependency until it matches that of A. Ties go to
/// the lower attribute index.
ReductResult usqr(const tabular::CategoricalTable& table);

/// |U/IND(R \ {a})| / |U/IND(R)|. Throws InvalidArgument when a is not in R.
Ratio relative_dependency(const tabular::CategoricalTable& table, const AttributeSet& r, std::size_t a);

/// Starts from R = A and drops, in attribute order, every a whose relative
/// dependency is exactly one.
ReductResult urr(const tabular::CategoricalTable& table);

}  // namespace softsel::roughset
