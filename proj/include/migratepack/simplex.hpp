#pragma once

#include "migratepack/lp.hpp"

namespace migratepack {

enum class SolveMode {
    Exact,
    // Test-only: returns a feasible solution deliberately inflated to
    // objective (1+rho) * LIN, exercising call sites that must be robust
    // against any (1+rho)-approximate oracle.
    AdversarialInflate,
};

// Optimal basic feasible solution of the covering LP via two-phase primal
// simplex with Bland's rule on exact rationals. At most lp.rows non-zero
// entries. Throws InfeasibleRow when some all-zero row has b_i > 0.
LpSolution solve_exact(const Lp& lp);

// Contract: objective <= (1+rho) * LIN. Exact mode simply delegates to
// solve_exact, which satisfies every (1+rho) contract.
LpSolution solve_approx(const Lp& lp, const Rational& rho, SolveMode mode = SolveMode::Exact);

// Shrinks the support of a feasible solution to at most `cap` columns while
// preserving both A x and ||x||_1 exactly: translate along a kernel vector of
// the support columns of A augmented with the cost row until a component
// hits zero. Requires cap >= lp.rows + 1 (CapTooSmall otherwise).
LpSolution reduce_support(const Lp& lp, const LpSolution& x, int cap);

}  // namespace migratepack
