#include "migratepack/simplex.hpp"

#include <algorithm>
#include <cassert>

namespace migratepack {

namespace {

// Dense tableau over exact rationals. Variables are indexed
//   [0, n)        structural columns of A
//   [n, n+m)      surplus (A x - s = b)
//   [n+m, n+2m)   artificial, phase 1 only
// basis[i] is the variable basic in constraint row i; the rhs sits in
// column n+2m.
struct Tableau {
    int m, n;
    std::vector<std::vector<Rational>> t;
    std::vector<int> basis;

    explicit Tableau(const Lp& lp) : m(lp.rows), n(lp.cols) {
        t.assign(m, std::vector<Rational>(n + 2 * m + 1, Rational(0)));
        basis.resize(m);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) t[i][j] = lp.a[i][j];
            t[i][n + i] = -1;          // surplus
            t[i][n + m + i] = 1;       // artificial
            t[i][n + 2 * m] = lp.b[i]; // b >= 0, so artificials form a feasible basis
            basis[i] = n + m + i;
        }
    }

    int rhs_col() const { return n + 2 * m; }

    void pivot(int row, int col) {
        Rational p = t[row][col];
        assert(p != 0);
        for (auto& v : t[row]) v /= p;
        for (int i = 0; i < m; ++i) {
            if (i == row || t[i][col] == 0) continue;
            Rational f = t[i][col];
            for (size_t j = 0; j < t[i].size(); ++j) t[i][j] -= f * t[row][j];
        }
        basis[row] = col;
    }

    // Minimizes cost c over the current basis with Bland's rule. `ncols`
    // limits the eligible entering variables (phase 2 excludes artificials).
    void run(const std::vector<Rational>& cost, int ncols) {
        for (;;) {
            // reduced costs z_j = c_j - c_B B^-1 A_j, entering on z_j < 0
            int enter = -1;
            for (int j = 0; j < ncols; ++j) {
                Rational z = cost[j];
                for (int i = 0; i < m; ++i)
                    if (t[i][j] != 0 && cost[basis[i]] != 0) z -= cost[basis[i]] * t[i][j];
                if (z < 0) {
                    enter = j;
                    break;  // Bland: smallest index
                }
            }
            if (enter < 0) return;
            int leave = -1;
            Rational best;
            for (int i = 0; i < m; ++i) {
                if (t[i][enter] <= 0) continue;
                Rational ratio = t[i][rhs_col()] / t[i][enter];
                if (leave < 0 || ratio < best ||
                    (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) throw LpError("covering lp unbounded; inputs violate invariants");
            pivot(leave, enter);
        }
    }
};

}  // namespace

LpSolution solve_exact(const Lp& lp) {
    lp.validate();
    for (int i = 0; i < lp.rows; ++i) {
        bool all_zero = true;
        for (int j = 0; j < lp.cols; ++j)
            if (lp.a[i][j] != 0) {
                all_zero = false;
                break;
            }
        if (all_zero && lp.b[i] > 0)
            throw InfeasibleRow("row " + std::to_string(i) + " is all-zero with positive rhs");
    }

    Tableau tab(lp);
    int m = lp.rows, n = lp.cols;
    int total = n + 2 * m;

    // Phase 1: drive artificials to zero.
    std::vector<Rational> cost1(total, Rational(0));
    for (int j = n + m; j < total; ++j) cost1[j] = 1;
    tab.run(cost1, total);
    Rational w = 0;
    for (int i = 0; i < m; ++i)
        if (tab.basis[i] >= n + m) w += tab.t[i][tab.rhs_col()];
    if (w != 0) throw InfeasibleRow("phase 1 ended with positive artificial mass");

    // Pivot out artificials stuck in the basis at value zero.
    for (int i = 0; i < m; ++i) {
        if (tab.basis[i] < n + m) continue;
        int col = -1;
        for (int j = 0; j < n + m; ++j)
            if (tab.t[i][j] != 0) {
                col = j;
                break;
            }
        if (col >= 0) tab.pivot(i, col);
        // else: redundant row, harmless to leave in place at rhs 0
    }

    // Phase 2: minimize the all-ones cost on structural columns.
    std::vector<Rational> cost2(total, Rational(0));
    for (int j = 0; j < n; ++j) cost2[j] = 1;
    tab.run(cost2, n + m);

    LpSolution x;
    for (int i = 0; i < m; ++i)
        if (tab.basis[i] < n && tab.t[i][tab.rhs_col()] != 0)
            x.set(tab.basis[i], tab.t[i][tab.rhs_col()]);
    return x;
}

LpSolution solve_approx(const Lp& lp, const Rational& rho, SolveMode mode) {
    if (rho < 0) throw LpError("negative approximation ratio");
    LpSolution x = solve_exact(lp);
    if (mode == SolveMode::Exact || rho == 0 || x.values.empty()) return x;
    LpSolution inflated;
    Rational f = Rational(1) + rho;
    for (const auto& [j, v] : x.values) inflated.set(j, v * f);
    return inflated;
}

namespace {

// Non-trivial kernel vector of a (rows x cols) rational matrix with
// cols > rank, via Gaussian elimination. Returns empty when none exists.
std::vector<Rational> kernel_vector(std::vector<std::vector<Rational>> mat, int cols) {
    int rows = static_cast<int>(mat.size());
    std::vector<int> pivot_col_of_row;
    std::vector<bool> is_pivot(cols, false);
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (mat[i][c] != 0) {
                sel = i;
                break;
            }
        if (sel < 0) continue;
        std::swap(mat[sel], mat[r]);
        Rational p = mat[r][c];
        for (int j = 0; j < cols; ++j) mat[r][j] /= p;
        for (int i = 0; i < rows; ++i) {
            if (i == r || mat[i][c] == 0) continue;
            Rational f = mat[i][c];
            for (int j = 0; j < cols; ++j) mat[i][j] -= f * mat[r][j];
        }
        pivot_col_of_row.push_back(c);
        is_pivot[c] = true;
        ++r;
    }
    int free_col = -1;
    for (int c = 0; c < cols; ++c)
        if (!is_pivot[c]) {
            free_col = c;
            break;
        }
    if (free_col < 0) return {};
    std::vector<Rational> w(cols, Rational(0));
    w[free_col] = 1;
    for (int i = 0; i < r; ++i) w[pivot_col_of_row[i]] = -mat[i][free_col];
    return w;
}

}  // namespace

LpSolution reduce_support(const Lp& lp, const LpSolution& x, int cap) {
    lp.validate();
    if (cap < lp.rows + 1) throw CapTooSmall("cap must be at least rows+1");
    LpSolution cur = x;
    while (cur.support() > cap) {
        std::vector<int> sup;
        sup.reserve(cur.values.size());
        for (const auto& [j, v] : cur.values) sup.push_back(j);
        int k = static_cast<int>(sup.size());
        // support columns of A plus the all-ones cost row; k >= rows+2
        // guarantees a non-trivial kernel
        std::vector<std::vector<Rational>> mat(lp.rows + 1, std::vector<Rational>(k, Rational(0)));
        for (int c = 0; c < k; ++c) {
            for (int i = 0; i < lp.rows; ++i) mat[i][c] = lp.a[i][sup[c]];
            mat[lp.rows][c] = 1;
        }
        auto w = kernel_vector(std::move(mat), k);
        if (w.empty()) throw LpError("support reduction found no kernel vector");
        // pick a direction that has a blocking component, then step to the
        // first zero
        bool has_neg = false;
        for (const auto& v : w) has_neg |= (v < 0);
        if (!has_neg)
            for (auto& v : w) v = -v;
        Rational step;
        bool first = true;
        for (int c = 0; c < k; ++c) {
            if (w[c] >= 0) continue;
            Rational lim = cur.values.at(sup[c]) / (-w[c]);
            if (first || lim < step) {
                step = lim;
                first = false;
            }
        }
        for (int c = 0; c < k; ++c) {
            Rational nv = cur.at(sup[c]) + step * w[c];
            cur.set(sup[c], nv);
        }
    }
    return cur;
}

}  // namespace migratepack
