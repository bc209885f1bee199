#include <softsel/roughset.hpp>

#include <softsel/error.hpp>
#include <softsel/softset.hpp>

#include <algorithm>

namespace softsel::roughset {

using softset::partition;
using softset::partition_cardinality;
using tabular::CategoricalTable;

namespace {

void check_attributes(const CategoricalTable& table, const AttributeSet& attrs) {
    for (const auto a : attrs) {
        if (a >= table.attribute_count()) {
            throw InvalidArgument("unknown attribute index " + std::to_string(a));
        }
    }
}

AttributeSet normalized(AttributeSet set) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    return set;
}

std::size_t positive_count(const softset::SoftPartition& pb, const std::vector<std::size_t>& y_labels) {
    std::size_t count = 0;
    for (const auto& block : pb.blocks()) {
        const auto label = y_labels[block.front()];
        if (std::all_of(block.begin(), block.end(), [&](std::size_t u) { return y_labels[u] == label; })) {
            count += block.size();
        }
    }
    return count;
}

}  // namespace

std::vector<std::size_t> positive_region(const CategoricalTable& table, const AttributeSet& b, std::size_t y) {
    check_attributes(table, b);
    check_attributes(table, {y});
    const auto pb = partition(table, normalized(b));
    const auto y_labels = partition(table, {y}).labels();
    std::vector<std::size_t> out;
    for (const auto& block : pb.blocks()) {
        const auto label = y_labels[block.front()];
        if (std::all_of(block.begin(), block.end(), [&](std::size_t u) { return y_labels[u] == label; })) {
            out.insert(out.end(), block.begin(), block.end());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

DependencyRecord dependency(const CategoricalTable& table, const AttributeSet& b) {
    check_attributes(table, b);
    const auto soft = softset::decompose(table);
    DependencyRecord rec;
    rec.subset = normalized(b);
    const auto pb = partition(soft, rec.subset);
    const auto n = table.object_count();
    std::uint64_t total = 0;
    for (std::size_t y = 0; y < table.attribute_count(); ++y) {
        const auto pos = positive_count(pb, soft.partitions[y].labels());
        rec.gamma.push_back(Ratio{pos, n});
        total += pos;
    }
    rec.mean = table.attribute_count() == 0 ? Ratio{0, 1} : Ratio{total, table.attribute_count() * n};
    return rec;
}

ReductResult usqr(const CategoricalTable& table) {
    ReductResult result;
    result.method = "usqr";
    AttributeSet all(table.attribute_count());
    for (std::size_t a = 0; a < all.size(); ++a) {
        all[a] = a;
    }
    result.target_cardinality = partition_cardinality(partition(table, all));
    if (all.empty()) {
        return result;
    }
    const auto target = dependency(table, all).mean;

    Ratio current{0, 1};
    do {
        RoundRecord round;
        std::optional<CandidateRecord> best;
        for (const auto x : all) {
            if (std::binary_search(result.reduct.begin(), result.reduct.end(), x)) {
                continue;
            }
            auto trial = result.reduct;
            trial.insert(std::upper_bound(trial.begin(), trial.end(), x), x);
            CandidateRecord c{x, partition_cardinality(partition(table, trial)), std::nullopt,
                              dependency(table, trial).mean};
            if (!best || *c.dependency > *best->dependency) {
                best = c;
            }
            round.candidates.push_back(c);
        }
        const auto chosen = best->attribute;
        result.reduct.insert(std::upper_bound(result.reduct.begin(), result.reduct.end(), chosen), chosen);
        result.order.push_back(chosen);
        current = *best->dependency;
        round.chosen = chosen;
        round.cardinality_after = best->cardinality;
        result.rounds.push_back(std::move(round));
    } while (!(current == target));
    return result;
}

Ratio relative_dependency(const CategoricalTable& table, const AttributeSet& r, std::size_t a) {
    check_attributes(table, r);
    const auto set = normalized(r);
    if (!std::binary_search(set.begin(), set.end(), a)) {
        throw InvalidArgument("relative_dependency: attribute " + std::to_string(a) + " is not in R");
    }
    auto reduced = set;
    reduced.erase(std::find(reduced.begin(), reduced.end(), a));
    return Ratio{partition_cardinality(partition(table, reduced)), partition_cardinality(partition(table, set))};
}

ReductResult urr(const CategoricalTable& table) {
    ReductResult result;
    result.method = "urr";
    for (std::size_t a = 0; a < table.attribute_count(); ++a) {
        result.reduct.push_back(a);
    }
    result.target_cardinality = partition_cardinality(partition(table, result.reduct));

    for (std::size_t a = 0; a < table.attribute_count(); ++a) {
        const auto ratio = relative_dependency(table, result.reduct, a);
        RoundRecord round;
        round.candidates.push_back({a, ratio.numerator, std::nullopt, ratio});
        // exact integer comparison of the two cardinalities
        if (ratio.numerator == ratio.denominator) {
            result.reduct.erase(std::find(result.reduct.begin(), result.reduct.end(), a));
            round.chosen = a;
        }
        round.cardinality_after = partition_cardinality(partition(table, result.reduct));
        result.rounds.push_back(std::move(round));
    }
    result.order = result.reduct;
    return result;
}

}  // namespace softsel::roughset
