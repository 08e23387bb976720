#pragma once

#include <utility>

#include "migratepack/simplex.hpp"

namespace migratepack {

struct ImproveError : LpError {
    using LpError::LpError;
};
struct AlphaTooLarge : ImproveError {
    using ImproveError::ImproveError;
};
struct BudgetTooSmall : ImproveError {
    using ImproveError::ImproveError;
};
struct PreconditionViolated : ImproveError {
    using ImproveError::ImproveError;
};

// alpha: improvement target; delta: approximation parameter in (0,1];
// var_factor: multiplier on the variable-part budget (1 for the exact-solver
// variants, 2 for the approximate-solver ones).
struct ImproveParams {
    Rational alpha;
    Rational delta;
    int var_factor = 1;

    void validate(bool integral_alpha) const;
};

// Sparse integral solution; pairs with a fractional solution under the
// invariant y_i >= x_i on a shared support.
struct IntegralSolution {
    std::map<int, long> values;

    long objective() const {
        long s = 0;
        for (const auto& [i, v] : values) s += v;
        return s;
    }
    long at(int i) const {
        auto it = values.find(i);
        return it == values.end() ? 0 : it->second;
    }
    void set(int i, long v) {
        if (v == 0)
            values.erase(i);
        else
            values[i] = v;
    }
    int support() const { return static_cast<int>(values.size()); }
};

bool integral_feasible(const Lp& lp, const IntegralSolution& y);
IntegralSolution ceil_of(const LpSolution& x);
long l1_distance(const IntegralSolution& a, const IntegralSolution& b);

// Convex-combination witness x'' = (1-beta) x' + beta x_opt with
// beta = alpha(1/delta+1)/||x'||_1. Requires ||x'||_1 = (1+delta) ||x_opt||_1
// and 0 < alpha <= delta * LIN.
LpSolution theorem1_witness(const Lp& lp, const LpSolution& x_prime, const LpSolution& x_opt,
                            const ImproveParams& p);

// Freeze x_fix, re-solve the uncovered remainder exactly, return
// x_fix + x_hat. Guarantees ||x''|| <= (1+delta) LIN - alpha and
// ||x'' - x'|| <= 2 alpha (1/delta + 1).
LpSolution improve_exact(const Lp& lp, const LpSolution& x_prime, const ImproveParams& p);

// Same with an inner (1+delta/2)-approximate solve and double variable part;
// keeps x' whenever the candidate is not strictly better.
LpSolution improve_approx(const Lp& lp, const LpSolution& x_prime, const ImproveParams& p,
                          SolveMode mode = SolveMode::Exact);

// Integral vector v in V(z) (0 <= v_i <= z_i) with
// ||v||_1 = min(floor(budget), sum_i floor(z_i)); components visited in
// decreasing floor(z_i), ties by ascending column index.
IntegralSolution choose_budgeted_integral(const std::map<int, Rational>& z,
                                          const Rational& budget);

// The maximal prefix of support columns, ordered by ascending value then
// ascending index, whose value sum stays within the threshold. The length
// depends only on the multiset of values.
std::vector<int> prefix_under_threshold(const IntegralSolution& y, const Rational& threshold);

// Improves (x', y') while keeping the total reduction of y' components below
// alpha(1/delta+2). Early exit when the slack vector already admits a full
// alpha reduction.
std::pair<LpSolution, IntegralSolution> improve_integral_min_reduction(
    const Lp& lp, const LpSolution& x_prime, const IntegralSolution& y_prime,
    const ImproveParams& p);

// Improves (x', y') while pruning small components so the shared support
// stays below delta * LIN.
std::pair<LpSolution, IntegralSolution> improve_integral_sparse(const Lp& lp,
                                                                const LpSolution& x_prime,
                                                                const IntegralSolution& y_prime,
                                                                const ImproveParams& p);

// The combined variant with approximate inner solve, fix-or-keep guard, and
// support reduction to rows+1; the workhorse of the online controller.
// extra_budget widens the zeroed-prefix threshold to
// (m+2)(1/delta+2) + extra_budget, admitting unit components created by a
// preceding creation or union operation.
std::pair<LpSolution, IntegralSolution> improve_paired(const Lp& lp, const LpSolution& x_prime,
                                                       const IntegralSolution& y_prime,
                                                       const ImproveParams& p, int extra_budget,
                                                       SolveMode mode = SolveMode::Exact);

// Transfers an approximate solution of the LP with rhs b' to one for rhs b''
// (same matrix) with distance at most (2/delta + 7) ||(b''-b')/c||_1 where
// c_i = max_j A_ij.
LpSolution sensitivity_transfer(const Lp& lp_old, const Lp& lp_new, const LpSolution& x_prime,
                                const Rational& delta);

}  // namespace migratepack
