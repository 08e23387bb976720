#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "migratepack/rational.hpp"

namespace migratepack {

struct LpError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// A row is all-zero but its right hand side is positive.
struct InfeasibleRow : LpError {
    using LpError::LpError;
};
// reduce_support called with cap < m+1.
struct CapTooSmall : LpError {
    using LpError::LpError;
};

// Covering LP: min ||x||_1 subject to A x >= b, x >= 0, with A and b
// non-negative and the cost fixed to the all-ones vector.
struct Lp {
    int rows = 0;
    int cols = 0;
    std::vector<std::vector<Rational>> a;  // rows x cols
    std::vector<Rational> b;               // rows

    Lp() = default;
    Lp(int m, int n) : rows(m), cols(n), a(m, std::vector<Rational>(n, 0)), b(m, 0) {}

    // Throws LpError on negative entries or shape mismatch.
    void validate() const;
};

// Sparse non-negative solution vector; zero entries are absent by invariant.
struct LpSolution {
    std::map<int, Rational> values;

    Rational objective() const {
        Rational s = 0;
        for (const auto& [i, v] : values) s += v;
        return s;
    }
    Rational at(int i) const {
        auto it = values.find(i);
        return it == values.end() ? Rational(0) : it->second;
    }
    void set(int i, const Rational& v) {
        if (v == 0)
            values.erase(i);
        else
            values[i] = v;
    }
    int support() const { return static_cast<int>(values.size()); }
};

// A x for sparse x.
std::vector<Rational> lp_product(const Lp& lp, const LpSolution& x);

// A x >= b componentwise, exact.
bool lp_feasible(const Lp& lp, const LpSolution& x);

Rational l1_distance(const LpSolution& a, const LpSolution& b);

}  // namespace migratepack
