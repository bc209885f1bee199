#pragma once

/**
 * @file softset.hpp
 * @brief Multi-soft-set decomposition of a categorical information system,
 *        the AND product, indiscernibility measures, attribute significance
 *        and the soft-set unsupervised quick reduct (SSUSQR).
 *
 * Objects and attributes are addressed by their zero-based index in the
 * CategoricalTable. An AttributeSet is kept sorted and duplicate-free.
 */

#include <softsel/ratio.hpp>
#include <softsel/reduct.hpp>
#include <softsel/tabular.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace softsel::softset {

using softsel::AttributeSet;

using Block = std::vector<std::size_t>;

/// Partition of U into disjoint non-empty blocks. Canonical form: members
/// ascending, blocks ordered by their smallest member.
class SoftPartition {
public:
    SoftPartition(std::size_t universe_size, AttributeSet source, std::vector<Block> blocks);

    /// Builds the canonical partition from one block label per object.
    static SoftPartition from_labels(AttributeSet source, const std::vector<std::size_t>& labels);

    [[nodiscard]] std::size_t universe_size() const { return universe_size_; }
    [[nodiscard]] const AttributeSet& source() const { return source_; }
    [[nodiscard]] const std::vector<Block>& blocks() const { return blocks_; }
    /// Block index of every object.
    [[nodiscard]] std::vector<std::size_t> labels() const;

    /// Equality of block structure; the source attributes are ignored.
    [[nodiscard]] bool same_blocks(const SoftPartition& other) const {
        return universe_size_ == other.universe_size_ && blocks_ == other.blocks_;
    }

private:
    std::size_t universe_size_;
    AttributeSet source_;
    std::vector<Block> blocks_;
};

/// One SoftPartition (F, a) per attribute, in attribute order.
struct MultiSoftSet {
    std::size_t universe_size = 0;
    std::vector<SoftPartition> partitions;
};

MultiSoftSet decompose(const tabular::CategoricalTable& table);

/// All non-empty pairwise block intersections. Throws InvalidArgument when
/// the universes differ.
SoftPartition and_product(const SoftPartition& p, const SoftPartition& q);

/// U/IND(attrs) as a left fold of and_product. The empty set yields the
/// single block U.
SoftPartition partition(const tabular::CategoricalTable& table, const AttributeSet& attrs);
SoftPartition partition(const MultiSoftSet& soft, const AttributeSet& attrs);

/// |U/IND(X)|: number of blocks.
inline std::size_t partition_cardinality(const SoftPartition& p) { return p.blocks().size(); }

/// |IND(X)| = sum of squared block sizes.
std::uint64_t ind_measure(const SoftPartition& p);

/// Sig(x) = 1 - |IND(A)| / |IND(A \ {x})| as an exact ratio. Requires
/// |A| >= 2.
Ratio significance(const tabular::CategoricalTable& table, std::size_t attribute);

/// Greedy: add the candidate maximizing |U/IND(R u {x})| until it equals
/// S_T(U). Ties go to higher significance, then lower attribute index.
ReductResult ssusqr(const tabular::CategoricalTable& table);

/// Every inclusion-minimal B with |U/IND(B)| == |U/IND(A)|, found by
/// exhaustive subset scan. Cardinalities come from grouping full value
/// tuples, independently of and_product. |A| must be <= 20.
std::vector<AttributeSet> enumerate_reducts(const tabular::CategoricalTable& table);

/// |U/IND(attrs)| by grouping value tuples directly.
std::size_t tuple_cardinality(const tabular::CategoricalTable& table, const AttributeSet& attrs);

/// Attribute names for display.
std::vector<std::string> attribute_names(const tabular::CategoricalTable& table, const AttributeSet& attrs);

}  // namespace softsel::softset
