#include <softsel/worked_example.hpp>

#include <softsel/fixtures.hpp>
#include <softsel/softset.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace softsel::worked_example {

std::string to_string(Status status) {
    switch (status) {
        case Status::Pass: return "PASS";
        case Status::Fail: return "FAIL";
        case Status::DiscrepancyDocumented: return "DISCREPANCY-DOCUMENTED";
    }
    return "FAIL";
}

bool Verdict::passed() const {
    return std::none_of(entries.begin(), entries.end(), [](const LedgerEntry& e) { return e.status == Status::Fail; });
}

namespace {

std::string format_blocks(const tabular::CategoricalTable& table, const softset::SoftPartition& p) {
    std::string out;
    for (const auto& block : p.blocks()) {
        out += out.empty() ? "{" : " {";
        for (std::size_t i = 0; i < block.size(); ++i) {
            out += (i ? "," : "") + table.objects()[block[i]];
        }
        out += "}";
    }
    return out;
}

std::string format_names(const std::vector<std::string>& names) {
    std::string out = "{";
    for (std::size_t i = 0; i < names.size(); ++i) {
        out += (i ? "," : "") + names[i];
    }
    return out + "}";
}

std::string format_ratio(const Ratio& r) {
    char buf[64];
    const auto red = r.reduced();
    std::snprintf(buf, sizeof buf, "%llu/%llu (%.6f)", static_cast<unsigned long long>(red.numerator),
                  static_cast<unsigned long long>(red.denominator), r.value());
    return buf;
}

void check(Verdict& v, std::string name, const std::string& expected, const std::string& actual) {
    v.entries.push_back({std::move(name), expected, actual, expected == actual ? Status::Pass : Status::Fail, {}});
}

}  // namespace

Verdict run_worked_example() {
    const auto table = fixtures::shapes_table();
    const auto soft = softset::decompose(table);
    Verdict v;

    const char* printed_blocks[] = {"{1,4,5} {2,8} {3,6,7}", "{1,3,5} {2,4,7,8} {6}", "{1,5} {2,7,8} {3,4,6}",
                                    "{1,4} {2,3,6,7} {5,8}"};
    for (std::size_t a = 0; a < 4; ++a) {
        check(v, "(F," + table.attributes()[a] + ") blocks", printed_blocks[a], format_blocks(table, soft.partitions[a]));
    }
    for (std::size_t a = 0; a < 4; ++a) {
        check(v, "|(F," + table.attributes()[a] + ")|", "3",
              std::to_string(softset::partition_cardinality(soft.partitions[a])));
    }

    const auto full = softset::partition(soft, {0, 1, 2, 3});
    check(v, "S_T(U) = F(a1 x a2 x a3 x a4)", "8", std::to_string(softset::partition_cardinality(full)));

    const auto a1a4 = softset::partition(soft, {0, 3});
    check(v, "F(a1 x a4) blocks", "{1,4} {2} {3,6,7} {5} {8}", format_blocks(table, a1a4));
    check(v, "F(a1 x a4)", "5", std::to_string(softset::partition_cardinality(a1a4)));
    check(v, "F(a2 x a4)", "7", std::to_string(softset::partition_cardinality(softset::partition(soft, {1, 3}))));
    check(v, "F(a3 x a4)", "6", std::to_string(softset::partition_cardinality(softset::partition(soft, {2, 3}))));
    check(v, "F(a1 x a2 x a4)", "8",
          std::to_string(softset::partition_cardinality(softset::partition(soft, {0, 1, 3}))));
    check(v, "F(a2 x a3 x a4)", "7",
          std::to_string(softset::partition_cardinality(softset::partition(soft, {1, 2, 3}))));

    // Significance against the printed values.
    const auto measure_without_a1 = softset::ind_measure(softset::partition(soft, {1, 2, 3}));
    v.entries.push_back({"|IND(A - {a1})| (Sig(a1) denominator)", "11 as printed (1 + 2x2 + 6x1)",
                         std::to_string(measure_without_a1),
                         measure_without_a1 == 10 ? Status::DiscrepancyDocumented : Status::Fail,
                         "blocks {2,7} plus six singletons give 4 + 6 = 10; 1 - 8/10 = 0.2 matches the printed result"});

    const struct {
        std::size_t attribute;
        double printed;
        Ratio expected;
    } sig_rows[] = {{0, 0.2, {1, 5}}, {1, 0.2, {1, 5}}, {2, 0.2, {0, 1}}, {3, 0.33, {1, 3}}};
    for (const auto& row : sig_rows) {
        const auto sig = softset::significance(table, row.attribute);
        const auto name = "Sig(" + table.attributes()[row.attribute] + ")";
        char printed[16];
        std::snprintf(printed, sizeof printed, "%.2f", row.printed);
        const bool matches_definition = sig == row.expected;
        const bool matches_print = std::abs(sig.value() - row.printed) < 0.005;
        LedgerEntry e{name, printed, format_ratio(sig), Status::Fail, {}};
        if (matches_definition && matches_print) {
            e.status = Status::Pass;
        } else if (matches_definition) {
            e.status = Status::DiscrepancyDocumented;
            e.note = "U/IND({a1,a2,a4}) is all singletons, so the measure is unchanged and Sig(a3) = 1 - 8/8 = 0";
        }
        v.entries.push_back(std::move(e));
    }

    const auto result = softset::ssusqr(table);
    check(v, "CORE (first selection)", "a4",
          result.order.empty() ? std::string("-") : table.attributes()[result.order.front()]);
    check(v, "SSUSQR reduct", "{a1,a2,a4}", format_names(softset::attribute_names(table, result.reduct)));
    check(v, "SSUSQR selection order", "{a4,a2,a1}", format_names(softset::attribute_names(table, result.order)));
    check(v, "|U/IND(reduct)| == S_T(U)", "8",
          std::to_string(softset::partition_cardinality(softset::partition(soft, result.reduct))));
    return v;
}

void print_ledger(const Verdict& verdict, std::ostream& out) {
    for (const auto& e : verdict.entries) {
        out << '[' << to_string(e.status) << "] " << e.check << ": expected " << e.expected << ", got " << e.actual
            << '\n';
        if (!e.note.empty()) {
            out << "    note: " << e.note << '\n';
        }
    }
    out << (verdict.passed() ? "worked example: PASS" : "worked example: FAIL") << '\n';
}

}  // namespace softsel::worked_example
