#pragma once

#include "migratepack/binpack.hpp"

namespace migratepack {

struct RoundingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PhaseError : RoundingError {
    using RoundingError::RoundingError;
};
struct TooFewItems : RoundingError {
    using RoundingError::RoundingError;
};

enum class GroupKind {
    Reservoir,  // R^0 proper: largest items, unrounded, one bin each
    SubLow,     // R^{1.5}: upper half of the split reservoir (creation phase)
    SubHigh,    // R^{2.5}: lower half of the split reservoir (creation phase)
    Rounded,    // an LP-backed rounding group with a stable class handle
};

struct Group {
    GroupKind kind = GroupKind::Rounded;
    int handle = 0;  // >= 1 for Rounded groups, 0 otherwise
    std::vector<Item> items;  // sorted size descending, ties ascending id

    bool lp_backed() const { return kind == GroupKind::Rounded; }
    bool empty() const { return items.empty(); }
    long size() const { return static_cast<long>(items.size()); }
    const Item& lambda() const;
    void insert_sorted(const Item& item);
    Item remove_front();
    void remove_by_id(int id);
};

// Ordered ladder of rounding groups. groups[0] is always the reservoir;
// subgroup nodes exist only while a creation phase is active. Fractional
// labels like 1.5/2.5 are positions in this list, not numeric keys.
struct RoundingState {
    std::vector<Group> groups;
    int next_handle = 1;

    RoundingState() { groups.push_back(Group{GroupKind::Reservoir, 0, {}}); }

    bool creation_active() const;
    long reservoir_count() const;  // reservoir plus both subgroups
    long large_count() const;
    int rounded_group_count() const;
    std::vector<int> rounded_positions() const;
    int position_of_kind(GroupKind kind) const;  // -1 if absent

    // One class per non-empty rounded group, in ladder order; reservoir and
    // subgroup items are excluded.
    RoundedInstance rounded_instance() const;
    std::map<int, std::vector<Item>> class_items() const;
    std::vector<Item> reservoir_items() const;

    // Property (D): every item of a group is at least as large as every item
    // of the following group.
    void check_order() const;
};

RoundedInstance round_instance(const RoundingState& r);

// Sort descending, give groups 1..m exactly floor(n/(m+1)) items each and
// park the remaining largest items in the reservoir. Throws TooFewItems when
// fewer than m+1 large items exist.
RoundingState offline_round(std::vector<Item> large_items, int m);

// Fractional and integral solutions keyed by configuration; the pairing
// invariant x <= y with equal supports is maintained by every operation.
struct ConfigSolutions {
    std::map<Configuration, Rational> x;
    std::map<Configuration, long> y;

    Rational x_norm() const;
    long y_norm() const;
    void add_x(const Configuration& c, const Rational& v);
    void add_y(const Configuration& c, long v);
};

struct DynamicState {
    RoundingState rounding;
    Packing packing;
    ConfigSolutions sol;
};

struct OpResult {
    DynamicState state;
    std::vector<Item> moved;  // items whose bin changed (never the arrival)
    int position = -1;        // ladder position the operation acted on
};

// Insertion step: the arriving item takes the slot of the largest item of
// the deepest group whose maximum still dominates it; the displaced maxima
// cascade one ladder position up, and the final one enters the reservoir in
// a fresh bin. x and y are unchanged.
OpResult insert_op(const DynamicState& s, const Item& item);

// Same cascade with the subgroup positions participating; only valid while
// a creation phase is active.
OpResult modified_insert_op(const DynamicState& s, const Item& item);

// Relabels groups j -> j+2 and splits the (even-sized) reservoir into the
// two subgroups. Pure bookkeeping, no item moves, no LP change.
DynamicState begin_creation_phase(const DynamicState& s);

// Moves the subgroup maxima into groups 1 and 2; both keep their own bins,
// which become singleton-configuration bins, and x and y grow by one on each
// of the two singleton columns.
OpResult creation_step(const DynamicState& s);

// Drops the exhausted subgroup nodes.
DynamicState end_creation_phase(const DynamicState& s);

// Frozen merge position for a whole union phase: the largest position j with
// |R^j| < |R^{j+1}|, or the last position when sizes are non-increasing.
int union_phase_target(const RoundingState& r);

// One union step at frozen position j: lambda_j replaces lambda_{j-2} in its
// bin (the bin's configuration is rewritten accordingly) and lambda_{j-2}
// opens a new singleton bin in group j-3. ||y||_1 grows by exactly one; x is
// repaired onto the two freshly backed columns so that feasibility, the
// pairing invariant, and equal supports all survive.
OpResult union_step(const DynamicState& s, int j);

struct CompactionResult {
    DynamicState state;
    std::vector<Item> displaced_smalls;  // from bins whose pattern became empty
    long bins_closed = 0;
};

// Removes emptied groups, rewrites configurations that still mention their
// dead class handles, and turns fully vacant pattern bins into small-item
// bins (or closes them when empty).
CompactionResult end_union_phase(const DynamicState& s);

struct PropertyReport {
    Rational a_constant;  // c with max group index = c / eps^2
    bool b_equal = false;
    Rational c_constant;  // d with |R^0| = d |R^1|
    bool d_monotone = false;
};

PropertyReport check_properties(const RoundingState& r, const Rational& eps);

// Embedding certificate: builds the canonical rounding with
// groups of 2K (reservoir 2K + (t mod 2K)) over all large items and verifies
// the current rounding embeds into it: smaller reservoir and no item outside
// the canonical reservoir rounded to a larger size.
bool embed_check(const RoundingState& r, const std::vector<Item>& large_items, long K);

// Exhaustive consistency check: ordering, correspondence between packing,
// rounding and (x, y), exact feasibility, capacity, pairing invariant.
// Returns human-readable violations; empty means consistent.
std::vector<std::string> verify_dynamic_state(const DynamicState& s);

}  // namespace migratepack
