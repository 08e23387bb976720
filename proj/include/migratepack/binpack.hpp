#pragma once

#include "migratepack/improve.hpp"

namespace migratepack {

struct BinpackError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ExplosionGuard : BinpackError {
    using BinpackError::BinpackError;
};
struct SlotShortfall : BinpackError {
    using BinpackError::BinpackError;
};

struct Item {
    int id = 0;        // arrival index, unique, strictly increasing
    Rational size;     // in (0, 1]
};

inline bool operator<(const Item& a, const Item& b) { return a.id < b.id; }

// Ordering used everywhere a group or slot ranks items: size descending,
// ties by ascending id, so maxima are unique.
inline bool size_desc_id_asc(const Item& a, const Item& b) {
    if (a.size != b.size) return a.size > b.size;
    return a.id < b.id;
}

bool item_is_small(const Item& item, const Rational& eps);

struct SizeClass {
    int handle = 0;
    Rational size;
    long multiplicity = 0;
};

// One class per rounding group >= 1, sizes weakly decreasing in ladder order
// (ties can occur across a group boundary).
struct RoundedInstance {
    std::vector<SizeClass> classes;

    Rational size_of(int handle) const;
    long multiplicity_of(int handle) const;
};

// Multiset of size classes fitting one unit bin; canonical sparse counts
// sorted by handle.
struct Configuration {
    std::vector<std::pair<int, int>> counts;  // (class handle, count > 0)

    int count_of(int handle) const;
    int total_items() const;
    Rational load(const RoundedInstance& inst) const;
    bool empty() const { return counts.empty(); }

    auto operator<=>(const Configuration&) const = default;
};

std::string config_to_string(const Configuration& c);

// All non-empty count vectors with sum of sizes <= 1, sorted canonically.
// Throws ExplosionGuard once the count exceeds `cap`.
std::vector<Configuration> enumerate_configurations(const RoundedInstance& inst,
                                                    long cap = 1000000);

struct ConfigLp {
    Lp lp;                                  // one row per class, one column per configuration
    std::vector<int> class_handles;         // row -> handle
    std::vector<Configuration> columns;     // column -> configuration

    int column_index(const Configuration& c) const;
};

ConfigLp build_config_lp(const RoundedInstance& inst, long cap = 1000000);

// External, items-only view of a packing.
struct PackingState {
    std::map<int, std::vector<int>> bins;  // bin id -> item ids

    bool contains(int item_id) const;
};

enum class BinKind {
    Config,     // instantiates a configuration pattern
    Reservoir,  // dedicated bin of a single unrounded large item (R^0)
    Small,      // opened by FirstFit for small items only
};

// Internal bin with slot bookkeeping so a packing can be kept in
// correspondence with a rounding and an integral solution.
struct Bin {
    int id = 0;
    BinKind kind = BinKind::Config;
    Configuration pattern;                  // Config bins only
    std::map<int, std::vector<Item>> slots; // class handle -> items occupying slots
    std::vector<Item> smalls;

    Rational load() const;
    std::vector<int> item_ids() const;
};

struct Packing {
    std::map<int, Bin> bins;
    int next_id = 1;

    int open_bin(BinKind kind);
    PackingState to_state() const;
    int bin_count() const { return static_cast<int>(bins.size()); }
};

// Items placed into the lowest-id bin with enough residual capacity, opening
// a new bin only when none fits. `size_of` must cover every item already in
// the packing.
PackingState first_fit(const PackingState& packing, const std::map<int, Rational>& size_of,
                       const std::vector<Item>& arrivals);

// Builds the packing that corresponds to rounding classes and integral
// solution y: for each column with y_i = k, k bins with that pattern, slots
// filled per class in decreasing actual size (ties ascending id); every
// reservoir item gets its own bin. Throws SlotShortfall if y covers fewer
// items than a class holds.
Packing pack_from_solution(const RoundedInstance& inst,
                           const std::map<int, std::vector<Item>>& class_items,
                           const std::vector<Item>& reservoir_items, const ConfigLp& clp,
                           const IntegralSolution& y);

// Total size of items (excluding those listed in `exclude`) whose bin
// changed between the packings, under the maximum-overlap bin matching, so
// pure relabeling costs nothing.
Rational canonical_moved_size(const PackingState& before, const PackingState& after,
                              const std::map<int, Rational>& size_of,
                              const std::vector<int>& exclude = {});

// Total size of items (excluding `arriving`) whose bin changed, divided by
// s(arriving); bins are matched by a maximum-overlap assignment so pure
// relabeling costs nothing.
Rational migration_factor(const PackingState& before, const PackingState& after,
                          const Item& arriving, const std::map<int, Rational>& size_of);

struct MigrationRecord {
    int t = 0;
    Rational arriving_size;
    Rational moved_size;
    Rational factor;
};

struct MigrationLedger {
    std::vector<MigrationRecord> records;

    void add(int t, const Rational& arriving_size, const Rational& moved_size);
    Rational max_factor() const;
};

}  // namespace migratepack
