#include "migratepack/lp.hpp"

namespace migratepack {

void Lp::validate() const {
    if (rows <= 0 || cols <= 0) throw LpError("lp must have positive dimensions");
    if (static_cast<int>(a.size()) != rows || static_cast<int>(b.size()) != rows)
        throw LpError("lp row count mismatch");
    for (const auto& row : a) {
        if (static_cast<int>(row.size()) != cols) throw LpError("lp column count mismatch");
        for (const auto& v : row)
            if (v < 0) throw LpError("lp matrix entry negative");
    }
    for (const auto& v : b)
        if (v < 0) throw LpError("lp rhs entry negative");
}

std::vector<Rational> lp_product(const Lp& lp, const LpSolution& x) {
    std::vector<Rational> out(lp.rows, Rational(0));
    for (const auto& [j, v] : x.values) {
        if (j < 0 || j >= lp.cols) throw LpError("solution index out of range");
        for (int i = 0; i < lp.rows; ++i)
            if (lp.a[i][j] != 0) out[i] += lp.a[i][j] * v;
    }
    return out;
}

bool lp_feasible(const Lp& lp, const LpSolution& x) {
    for (const auto& [j, v] : x.values)
        if (v < 0) return false;
    auto ax = lp_product(lp, x);
    for (int i = 0; i < lp.rows; ++i)
        if (ax[i] < lp.b[i]) return false;
    return true;
}

Rational l1_distance(const LpSolution& a, const LpSolution& b) {
    Rational d = 0;
    auto ia = a.values.begin();
    auto ib = b.values.begin();
    while (ia != a.values.end() || ib != b.values.end()) {
        if (ib == b.values.end() || (ia != a.values.end() && ia->first < ib->first)) {
            d += abs(ia->second);
            ++ia;
        } else if (ia == a.values.end() || ib->first < ia->first) {
            d += abs(ib->second);
            ++ib;
        } else {
            d += abs(ia->second - ib->second);
            ++ia;
            ++ib;
        }
    }
    return d;
}

}  // namespace migratepack
