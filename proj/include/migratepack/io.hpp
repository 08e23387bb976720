#pragma once

#include <iosfwd>
#include <string>

#include "migratepack/online.hpp"

namespace migratepack {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadRange : IoError {
    using IoError::IoError;
};

// LP text format: first line "m n", then m rows of A as rationals ("p/q" or
// decimal strings, parsed exactly), then one line b. Serialization always
// emits "p/q" in lowest terms.
Lp read_lp(std::istream& in);
void write_lp(std::ostream& out, const Lp& lp);

// Solution files: one "index value" pair per line, sparse.
LpSolution read_solution(std::istream& in);
void write_solution(std::ostream& out, const LpSolution& x);

// Instance files: JSON Lines, one {"id": n, "size": "p/q"} object per item.
std::vector<Item> read_items_jsonl(std::istream& in);
void write_items_jsonl(std::ostream& out, const std::vector<Item>& items);

// Packing dumps: JSON object bin id -> [item ids].
PackingState read_packing_json(std::istream& in);
void write_packing_json(std::ostream& out, const PackingState& packing);

void write_trace_jsonl(std::ostream& out, const std::vector<TraceRecord>& trace);
std::vector<TraceRecord> read_trace_jsonl(std::istream& in);

// Deterministic item stream: `spec` is either
//   uniform:LO:HI[:DENOM]   sizes k/DENOM uniform in [LO, HI] (default 48)
//   fixed:s1,s2,...         the listed sizes, cycled if count exceeds them
// Identical (count, spec, seed) produce identical streams on any platform.
std::vector<Item> gen_items(long count, const std::string& spec, unsigned long long seed);

// Self-seeding xorshift-based generator; stable across platforms, unlike the
// distributions in <random>.
struct DeterministicRng {
    unsigned long long state;

    explicit DeterministicRng(unsigned long long seed);
    unsigned long long next_u64();
    // uniform integer in [0, bound) by rejection
    unsigned long long next_below(unsigned long long bound);
};

}  // namespace migratepack
