#pragma once

#include <softsel/ratio.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace softsel {

/// Sorted, duplicate-free attribute indices.
using AttributeSet = std::vector<std::size_t>;

/// One candidate examined during a reduct search round.
struct CandidateRecord {
    std::size_t attribute = 0;
    /// |U/IND(.)| of the set under test: R u {x} for growth methods,
    /// R \ {x} for elimination.
    std::size_t cardinality = 0;
    /// Set only when a cardinality tie had to be broken.
    std::optional<Ratio> significance;
    /// Mean dependency (USQR) or relative dependency (URR).
    std::optional<Ratio> dependency;
};

struct RoundRecord {
    std::vector<CandidateRecord> candidates;
    /// Attribute added (growth) or removed (elimination); empty when an
    /// elimination round kept its attribute.
    std::optional<std::size_t> chosen;
    std::size_t cardinality_after = 0;
};

/// Outcome of a reduct search. `order` lists attributes in the order they
/// were added; elimination methods list the survivors in table order.
struct ReductResult {
    std::string method;
    AttributeSet reduct;
    std::vector<std::size_t> order;
    std::size_t target_cardinality = 0;  ///< |U/IND(A)|
    std::vector<RoundRecord> rounds;
};

}  // namespace softsel
