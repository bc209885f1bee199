#include <softsel/softset.hpp>

#include <softsel/error.hpp>

#include <algorithm>
#include <map>
#include <set>

namespace softsel::softset {

using tabular::CategoricalTable;

SoftPartition::SoftPartition(std::size_t universe_size, AttributeSet source, std::vector<Block> blocks)
    : universe_size_(universe_size), source_(std::move(source)), blocks_(std::move(blocks)) {
    std::sort(source_.begin(), source_.end());
    source_.erase(std::unique(source_.begin(), source_.end()), source_.end());

    std::vector<bool> seen(universe_size_, false);
    std::size_t covered = 0;
    for (auto& b : blocks_) {
        if (b.empty()) {
            throw InvalidArgument("SoftPartition: empty block");
        }
        std::sort(b.begin(), b.end());
        for (const auto u : b) {
            if (u >= universe_size_ || seen[u]) {
                throw InvalidArgument("SoftPartition: blocks overlap or leave the universe");
            }
            seen[u] = true;
            ++covered;
        }
    }
    if (covered != universe_size_) {
        throw InvalidArgument("SoftPartition: blocks do not cover the universe");
    }
    std::sort(blocks_.begin(), blocks_.end(), [](const Block& a, const Block& b) { return a.front() < b.front(); });
}

SoftPartition SoftPartition::from_labels(AttributeSet source, const std::vector<std::size_t>& labels) {
    // First appearance order of a label is the order of the block's smallest member.
    std::map<std::size_t, std::size_t> slot;
    std::vector<Block> blocks;
    for (std::size_t u = 0; u < labels.size(); ++u) {
        const auto [it, fresh] = slot.try_emplace(labels[u], blocks.size());
        if (fresh) {
            blocks.emplace_back();
        }
        blocks[it->second].push_back(u);
    }
    return SoftPartition(labels.size(), std::move(source), std::move(blocks));
}

std::vector<std::size_t> SoftPartition::labels() const {
    std::vector<std::size_t> out(universe_size_);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        for (const auto u : blocks_[b]) {
            out[u] = b;
        }
    }
    return out;
}

MultiSoftSet decompose(const CategoricalTable& table) {
    MultiSoftSet out;
    out.universe_size = table.object_count();
    out.partitions.reserve(table.attribute_count());
    std::vector<std::size_t> labels(table.object_count());
    for (std::size_t a = 0; a < table.attribute_count(); ++a) {
        for (std::size_t u = 0; u < table.object_count(); ++u) {
            labels[u] = table.code(u, a);
        }
        out.partitions.push_back(SoftPartition::from_labels({a}, labels));
    }
    return out;
}

SoftPartition and_product(const SoftPartition& p, const SoftPartition& q) {
    if (p.universe_size() != q.universe_size()) {
        throw InvalidArgument("and_product: partitions are over different universes");
    }
    const auto lp = p.labels();
    const auto lq = q.labels();
    const auto width = q.blocks().size();
    std::vector<std::size_t> joint(lp.size());
    for (std::size_t u = 0; u < lp.size(); ++u) {
        joint[u] = lp[u] * width + lq[u];
    }
    AttributeSet source = p.source();
    source.insert(source.end(), q.source().begin(), q.source().end());
    return SoftPartition::from_labels(std::move(source), joint);
}

SoftPartition partition(const MultiSoftSet& soft, const AttributeSet& attrs) {
    const auto n = soft.universe_size;
    SoftPartition acc = SoftPartition::from_labels({}, std::vector<std::size_t>(n, 0));
    for (const auto a : attrs) {
        if (a >= soft.partitions.size()) {
            throw InvalidArgument("partition: unknown attribute index " + std::to_string(a));
        }
        acc = and_product(acc, soft.partitions[a]);
    }
    return acc;
}

SoftPartition partition(const CategoricalTable& table, const AttributeSet& attrs) {
    for (const auto a : attrs) {
        if (a >= table.attribute_count()) {
            throw InvalidArgument("partition: unknown attribute index " + std::to_string(a));
        }
    }
    return partition(decompose(table), attrs);
}

std::uint64_t ind_measure(const SoftPartition& p) {
    std::uint64_t total = 0;
    for (const auto& b : p.blocks()) {
        total += static_cast<std::uint64_t>(b.size()) * b.size();
    }
    return total;
}

namespace {

AttributeSet all_attributes(std::size_t count) {
    AttributeSet out(count);
    for (std::size_t a = 0; a < count; ++a) {
        out[a] = a;
    }
    return out;
}

AttributeSet without(AttributeSet set, std::size_t attribute) {
    set.erase(std::remove(set.begin(), set.end(), attribute), set.end());
    return set;
}

AttributeSet with(AttributeSet set, std::size_t attribute) {
    set.insert(std::upper_bound(set.begin(), set.end(), attribute), attribute);
    return set;
}

Ratio significance_of(const MultiSoftSet& soft, std::size_t attribute, std::uint64_t full_measure) {
    const auto all = all_attributes(soft.partitions.size());
    const auto reduced = ind_measure(partition(soft, without(all, attribute)));
    // 1 - full/reduced; removing an attribute never refines, so full <= reduced
    return Ratio{reduced - full_measure, reduced};
}

}  // namespace

Ratio significance(const CategoricalTable& table, std::size_t attribute) {
    if (attribute >= table.attribute_count()) {
        throw InvalidArgument("significance: unknown attribute index " + std::to_string(attribute));
    }
    if (table.attribute_count() < 2) {
        throw InvalidArgument("significance: needs at least two attributes");
    }
    const auto soft = decompose(table);
    const auto full = ind_measure(partition(soft, all_attributes(table.attribute_count())));
    return significance_of(soft, attribute, full);
}

ReductResult ssusqr(const CategoricalTable& table) {
    const auto soft = decompose(table);
    const auto all = all_attributes(table.attribute_count());
    const auto full = partition(soft, all);

    ReductResult result;
    result.method = "ssusqr";
    result.target_cardinality = partition_cardinality(full);
    if (all.empty()) {
        return result;
    }
    std::optional<std::uint64_t> full_measure;

    SoftPartition current = partition(soft, {});
    do {
        RoundRecord round;
        std::size_t best = 0;
        for (const auto x : all) {
            if (std::binary_search(result.reduct.begin(), result.reduct.end(), x)) {
                continue;
            }
            const auto card = partition_cardinality(and_product(current, soft.partitions[x]));
            round.candidates.push_back({x, card, std::nullopt, std::nullopt});
            best = std::max(best, card);
        }

        std::vector<CandidateRecord*> tied;
        for (auto& c : round.candidates) {
            if (c.cardinality == best) {
                tied.push_back(&c);
            }
        }
        CandidateRecord* winner = tied.front();
        if (tied.size() > 1) {
            if (!full_measure) {
                full_measure = ind_measure(full);
            }
            for (auto* c : tied) {
                c->significance = significance_of(soft, c->attribute, *full_measure);
            }
            // strict comparison keeps the lowest attribute index among equals
            for (auto* c : tied) {
                if (*c->significance > *winner->significance) {
                    winner = c;
                }
            }
        }

        round.chosen = winner->attribute;
        const auto chosen = winner->attribute;
        current = and_product(current, soft.partitions[chosen]);
        round.cardinality_after = partition_cardinality(current);
        result.reduct = with(std::move(result.reduct), chosen);
        result.order.push_back(chosen);
        result.rounds.push_back(std::move(round));
    } while (partition_cardinality(current) != result.target_cardinality);
    return result;
}

std::size_t tuple_cardinality(const CategoricalTable& table, const AttributeSet& attrs) {
    std::set<std::vector<std::uint32_t>> tuples;
    std::vector<std::uint32_t> key(attrs.size());
    for (std::size_t u = 0; u < table.object_count(); ++u) {
        for (std::size_t i = 0; i < attrs.size(); ++i) {
            key[i] = table.code(u, attrs[i]);
        }
        tuples.insert(key);
    }
    return tuples.size();
}

namespace {

AttributeSet members(std::uint32_t mask, std::size_t m) {
    AttributeSet attrs;
    for (std::size_t a = 0; a < m; ++a) {
        if (mask & (1u << a)) {
            attrs.push_back(a);
        }
    }
    return attrs;
}

}  // namespace

std::vector<AttributeSet> enumerate_reducts(const CategoricalTable& table) {
    const auto m = table.attribute_count();
    if (m > 20) {
        throw InvalidArgument("enumerate_reducts: " + std::to_string(m) + " attributes exceeds the limit of 20");
    }
    const auto target = tuple_cardinality(table, all_attributes(m));
    const std::uint32_t subsets = 1u << m;
    std::vector<bool> valid(subsets, false);
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
        valid[mask] = tuple_cardinality(table, members(mask, m)) == target;
    }
    // Validity is upward closed, so a valid set is minimal exactly when no
    // single-attribute removal stays valid.
    std::vector<AttributeSet> minimal;
    for (std::uint32_t mask = 0; mask < subsets; ++mask) {
        if (!valid[mask]) {
            continue;
        }
        bool is_minimal = true;
        for (std::size_t a = 0; a < m && is_minimal; ++a) {
            if ((mask & (1u << a)) && valid[mask & ~(1u << a)]) {
                is_minimal = false;
            }
        }
        if (is_minimal) {
            minimal.push_back(members(mask, m));
        }
    }
    return minimal;
}

std::vector<std::string> attribute_names(const CategoricalTable& table, const AttributeSet& attrs) {
    std::vector<std::string> out;
    out.reserve(attrs.size());
    for (const auto a : attrs) {
        out.push_back(table.attributes().at(a));
    }
    return out;
}

}  // namespace softsel::softset
