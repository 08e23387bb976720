#include "migratepack/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace migratepack {

long default_oracle_cap() {
    if (const char* env = std::getenv("MIGRATEPACK_ORACLE_CAP")) {
        long v = std::atol(env);
        if (v > 0) return v;
    }
    return 18;
}

namespace {

struct BruteSearch {
    std::vector<Item> items;  // size descending, ties ascending id
    Rational total_size;
    long best;
    std::vector<std::vector<int>> best_bins;
    std::vector<Rational> residual;          // per open bin
    std::vector<std::vector<int>> contents;  // per open bin

    void run(size_t k, const Rational& remaining) {
        long used = static_cast<long>(residual.size());
        if (k == items.size()) {
            if (used < best) {
                best = used;
                best_bins = contents;
            }
            return;
        }
        // lower bound: even with all free space used, the remainder forces
        // ceil(remaining - free) further bins
        Rational free_space = 0;
        for (const auto& r : residual) free_space += r;
        Rational deficit = remaining - free_space;
        long lb = used + (deficit > 0 ? rat_ceil(deficit) : 0);
        if (lb >= best) return;

        const Item& it = items[k];
        std::set<Rational> tried;  // bins with equal residual are interchangeable
        for (size_t b = 0; b < residual.size(); ++b) {
            if (residual[b] < it.size) continue;
            if (!tried.insert(residual[b]).second) continue;
            residual[b] -= it.size;
            contents[b].push_back(it.id);
            run(k + 1, remaining - it.size);
            contents[b].pop_back();
            residual[b] += it.size;
        }
        if (used + 1 < best) {
            residual.push_back(Rational(1) - it.size);
            contents.push_back({it.id});
            run(k + 1, remaining - it.size);
            contents.pop_back();
            residual.pop_back();
        }
    }
};

PackingState first_fit_decreasing(const std::vector<Item>& sorted_items) {
    PackingState st;
    std::vector<Rational> residual;
    for (const auto& it : sorted_items) {
        int target = -1;
        for (size_t b = 0; b < residual.size(); ++b)
            if (residual[b] >= it.size) {
                target = static_cast<int>(b);
                break;
            }
        if (target < 0) {
            target = static_cast<int>(residual.size());
            residual.push_back(Rational(1));
            st.bins[target + 1] = {};
        }
        st.bins[target + 1].push_back(it.id);
        residual[target] -= it.size;
    }
    return st;
}

}  // namespace

OracleResult brute_opt(const std::vector<Item>& items, long cap) {
    if (static_cast<long>(items.size()) > cap)
        throw TooLarge("instance exceeds the oracle item cap");
    for (const auto& it : items)
        if (it.size <= 0 || it.size > 1) throw OracleError("item size outside (0,1]");

    OracleResult res;
    if (items.empty()) {
        res.lin_value = 0;
        return res;
    }

    BruteSearch search;
    search.items = items;
    std::sort(search.items.begin(), search.items.end(), size_desc_id_asc);
    search.total_size = 0;
    for (const auto& it : search.items) search.total_size += it.size;

    PackingState ffd = first_fit_decreasing(search.items);
    search.best = static_cast<long>(ffd.bins.size());
    for (const auto& [id, c] : ffd.bins) search.best_bins.push_back(c);
    search.run(0, search.total_size);

    res.opt_bins = search.best;
    for (size_t b = 0; b < search.best_bins.size(); ++b)
        res.witness.bins[static_cast<int>(b) + 1] = search.best_bins[b];

    auto [lin, wit] = brute_lin(items);
    res.lin_value = lin;
    res.lin_witness = wit;
    return res;
}

std::pair<Rational, LpSolution> brute_lin(const std::vector<Item>& items) {
    if (items.empty()) return {Rational(0), LpSolution{}};
    // distinct sizes become classes, largest first
    std::map<Rational, long> mult;
    for (const auto& it : items) mult[it.size] += 1;
    RoundedInstance inst;
    int handle = 1;
    for (auto it = mult.rbegin(); it != mult.rend(); ++it)
        inst.classes.push_back(SizeClass{handle++, it->first, it->second});
    return brute_lin(inst);
}

std::pair<Rational, LpSolution> brute_lin(const RoundedInstance& inst) {
    ConfigLp clp = build_config_lp(inst);
    LpSolution x = solve_exact(clp.lp);
    return {x.objective(), x};
}

VerifyReport verify_packing(const std::vector<Item>& items, const PackingState& packing) {
    VerifyReport rep;
    std::map<int, Rational> size_of;
    for (const auto& it : items) size_of[it.id] = it.size;
    std::set<int> seen;
    for (const auto& [bin, ids] : packing.bins) {
        Rational load = 0;
        for (int id : ids) {
            auto it = size_of.find(id);
            if (it == size_of.end()) {
                rep.ok = false;
                rep.violation = "unknown item " + std::to_string(id);
                return rep;
            }
            if (!seen.insert(id).second) {
                rep.ok = false;
                rep.violation = "item placed twice: " + std::to_string(id);
                return rep;
            }
            load += it->second;
        }
        if (load > 1) {
            rep.ok = false;
            rep.violation = "bin over capacity: " + std::to_string(bin);
            return rep;
        }
    }
    if (seen.size() != items.size()) {
        rep.ok = false;
        rep.violation = "item missing from packing";
        return rep;
    }
    return rep;
}

}  // namespace migratepack
