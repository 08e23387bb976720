#pragma once

#include <functional>
#include <optional>

#include "migratepack/rounding.hpp"

namespace migratepack {

struct OnlineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadEpsilon : OnlineError {
    using OnlineError::OnlineError;
};
struct DivisibilityError : OnlineError {
    using OnlineError::OnlineError;
};

struct Params {
    Rational eps_user;
    Rational eps_internal;  // size classification scale: small iff < eps_internal/2
    long m = 0;             // number of rounding groups, always even
    Rational eps_bar;
    Rational delta_bar;     // LP approximation parameter, equals eps_bar
    Rational delta_cap;     // Delta = eps_bar + delta_bar + eps_bar*delta_bar
    bool pinned = false;

    // Fully derived parameters: eps_internal = eps_user/80,
    // eps_bar = delta_bar = 16 eps_internal, m = ceil(1/eps_internal^2)
    // rounded up to even; guarantees 2*Delta <= eps_user.
    static Params derive(const Rational& eps_user);

    // Desk-scale override: m pinned to a small even value,
    // eps_internal = eps_user, delta_bar = eps_bar = 1. All guarantee
    // formulas stay m-parametric.
    static Params desk(const Rational& eps_user, long pin_m);

    // Bootstrap exit threshold on S_t. The derived regime keeps the
    // conservative (m+2)(1/delta+4); with pinned parameters (delta = eps = 1)
    // the slack chain behind that constant is vacuous, so the desk regime
    // hands off as soon as the solution norms clear the prefix constant, and
    // the controller re-checks every enforced improve precondition at run
    // time.
    Rational bootstrap_threshold() const {
        if (pinned) return Rational(m + 1) * (Rational(1) / delta_bar + 2);
        return Rational(m + 2) * (Rational(1) / delta_bar + 4);
    }
    // Assembled per-arrival migration-factor budget: every bin the improve
    // distance budget can touch plus cascade and operation moves, each worth
    // at most one unit of size, over the minimum arrival size eps/2.
    Rational migration_budget() const;
};

enum class Phase { Bootstrap, InsertOnly, Creation, Union };
std::string phase_name(Phase p);

struct PhaseMachine {
    Phase phase = Phase::Bootstrap;
    long K = 0;           // arrivals per phase in the current cycle
    long step = 0;        // completed arrivals within the current phase
    long pair_index = 0;  // which (creation, union) pair, 1..m/2
    long cycle = 0;
    int frozen_union_j = -1;
};

struct TraceRecord {
    long t = 0;
    std::string op;
    int j = -1;
    std::vector<long> group_sizes;  // reservoir complex first, then rounded groups
    std::vector<Rational> lambda_sizes;
    Rational x_norm;
    long y_norm = 0;
    long r0 = 0;
};

struct ArrivalStats {
    long t = 0;
    Rational size;
    long bins = 0;
    long opt_lb = 0;
    long lin_lb = 0;
    Rational lin;
    Rational moved_size;
    Rational migration;
    Rational max_migration;
    long support = 0;
    std::string phase;
    Rational ratio_bound_factor;  // 1 + 2*Delta
    long ratio_bound_additive = 0;  // m
};

struct OnlineState {
    Params params;
    SolveMode inner_mode = SolveMode::Exact;
    bool record_trace = false;
    bool check_invariants = true;
    bool check_each_op = false;  // verify the full state after every rounding operation

    std::vector<Item> items;
    std::vector<Item> smalls;
    Rational total_size;  // S_t
    long large_count = 0;
    long tau = -1;  // t of the bootstrap handoff

    DynamicState dyn;
    PhaseMachine phase;
    MigrationLedger ledger;
    std::vector<TraceRecord> trace;
    std::vector<std::string> violations;  // hard invariant failures, with t
};

OnlineState make_online_state(const Params& params, SolveMode mode = SolveMode::Exact,
                              bool record_trace = false);

long derive_even_group_count(const Rational& eps_internal);

// Processes one arrival: FirstFit for small items; full offline recompute
// while bootstrapping; improve + insertion + creation/union afterwards.
// Migration, trace, stats and invariant checks are maintained per arrival.
ArrivalStats arrive(OnlineState& state, const Item& item);

// Rebuilds rounding, solutions and packing with m+1 equal groups right after
// the bootstrap exit condition fired; throws DivisibilityError when the
// large-item count is not divisible by m+1.
void handoff_bootstrap(OnlineState& state);

// Pure snapshot of the state after the most recent arrival.
ArrivalStats stats(const OnlineState& state);

}  // namespace migratepack
