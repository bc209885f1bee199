#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace softsel::worked_example {

enum class Status { Pass, Fail, DiscrepancyDocumented };

std::string to_string(Status status);

struct LedgerEntry {
    std::string check;
    std::string expected;
    std::string actual;
    Status status = Status::Fail;
    std::string note;
};

struct Verdict {
    std::vector<LedgerEntry> entries;
    /// No entry failed. Documented discrepancies do not fail the verdict.
    [[nodiscard]] bool passed() const;
};

/// Replays the shapes-table reduct derivation step by step: per-attribute
/// partitions, S_T(U), pair and triple cardinalities, significance values
/// and the SSUSQR reduct with its selection order.
Verdict run_worked_example();

void print_ledger(const Verdict& verdict, std::ostream& out);

}  // namespace softsel::worked_example
