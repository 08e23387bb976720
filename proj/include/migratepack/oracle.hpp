#pragma once

#include "migratepack/binpack.hpp"

namespace migratepack {

struct OracleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TooLarge : OracleError {
    using OracleError::OracleError;
};

struct OracleResult {
    long opt_bins = 0;
    PackingState witness;
    Rational lin_value;
    LpSolution lin_witness;
};

// Exact minimum bin count by branch and bound over item-to-bin assignments:
// items processed in a fixed order, bins with equal residual capacity are
// interchangeable and only the first is branched on, and subtrees are cut
// when bins_used + ceil(remaining - free) cannot beat the incumbent.
// Throws TooLarge past `cap` items (default 18, see MIGRATEPACK_ORACLE_CAP).
long default_oracle_cap();
OracleResult brute_opt(const std::vector<Item>& items, long cap = default_oracle_cap());

// Exact LIN via full configuration enumeration over the distinct sizes
// (or a supplied rounded instance) plus the exact solver.
std::pair<Rational, LpSolution> brute_lin(const std::vector<Item>& items);
std::pair<Rational, LpSolution> brute_lin(const RoundedInstance& inst);

struct VerifyReport {
    bool ok = true;
    std::string violation;
};

// True iff every item is placed exactly once and every bin load is <= 1.
VerifyReport verify_packing(const std::vector<Item>& items, const PackingState& packing);

}  // namespace migratepack
