#include "migratepack/rounding.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace migratepack {

const Item& Group::lambda() const {
    if (items.empty()) throw RoundingError("lambda of empty group");
    return items.front();
}

void Group::insert_sorted(const Item& item) {
    auto it = std::lower_bound(items.begin(), items.end(), item, size_desc_id_asc);
    items.insert(it, item);
}

Item Group::remove_front() {
    if (items.empty()) throw RoundingError("removing from empty group");
    Item out = items.front();
    items.erase(items.begin());
    return out;
}

void Group::remove_by_id(int id) {
    for (auto it = items.begin(); it != items.end(); ++it)
        if (it->id == id) {
            items.erase(it);
            return;
        }
    throw RoundingError("item not in group");
}

bool RoundingState::creation_active() const {
    return position_of_kind(GroupKind::SubLow) >= 0 || position_of_kind(GroupKind::SubHigh) >= 0;
}

long RoundingState::reservoir_count() const {
    long n = 0;
    for (const auto& g : groups)
        if (!g.lp_backed()) n += g.size();
    return n;
}

long RoundingState::large_count() const {
    long n = 0;
    for (const auto& g : groups) n += g.size();
    return n;
}

int RoundingState::rounded_group_count() const {
    int n = 0;
    for (const auto& g : groups)
        if (g.lp_backed()) ++n;
    return n;
}

std::vector<int> RoundingState::rounded_positions() const {
    std::vector<int> out;
    for (size_t p = 0; p < groups.size(); ++p)
        if (groups[p].lp_backed()) out.push_back(static_cast<int>(p));
    return out;
}

int RoundingState::position_of_kind(GroupKind kind) const {
    for (size_t p = 0; p < groups.size(); ++p)
        if (groups[p].kind == kind) return static_cast<int>(p);
    return -1;
}

RoundedInstance RoundingState::rounded_instance() const {
    RoundedInstance inst;
    for (const auto& g : groups)
        if (g.lp_backed() && !g.empty())
            inst.classes.push_back(SizeClass{g.handle, g.lambda().size, g.size()});
    return inst;
}

std::map<int, std::vector<Item>> RoundingState::class_items() const {
    std::map<int, std::vector<Item>> out;
    for (const auto& g : groups)
        if (g.lp_backed() && !g.empty()) out[g.handle] = g.items;
    return out;
}

std::vector<Item> RoundingState::reservoir_items() const {
    std::vector<Item> out;
    for (const auto& g : groups)
        if (!g.lp_backed())
            out.insert(out.end(), g.items.begin(), g.items.end());
    std::sort(out.begin(), out.end(), size_desc_id_asc);
    return out;
}

void RoundingState::check_order() const {
    if (groups.empty() || groups[0].kind != GroupKind::Reservoir)
        throw RoundingError("reservoir must sit at position 0");
    const Item* prev_min = nullptr;
    for (const auto& g : groups) {
        if (g.empty()) continue;
        if (prev_min && g.items.front().size > prev_min->size)
            throw RoundingError("property (D) violated between groups");
        prev_min = &g.items.back();
    }
}

RoundedInstance round_instance(const RoundingState& r) { return r.rounded_instance(); }

RoundingState offline_round(std::vector<Item> large_items, int m) {
    long n = static_cast<long>(large_items.size());
    if (n < m + 1) throw TooFewItems("need at least m+1 large items");
    std::sort(large_items.begin(), large_items.end(), size_desc_id_asc);
    long q = n / (m + 1);
    RoundingState r;
    long head = n - m * q;  // reservoir takes the largest remainder
    r.groups[0].items.assign(large_items.begin(), large_items.begin() + head);
    for (int g = 0; g < m; ++g) {
        Group grp;
        grp.kind = GroupKind::Rounded;
        grp.handle = r.next_handle++;
        grp.items.assign(large_items.begin() + head + g * q,
                         large_items.begin() + head + (g + 1) * q);
        r.groups.push_back(std::move(grp));
    }
    return r;
}

Rational ConfigSolutions::x_norm() const {
    Rational s = 0;
    for (const auto& [c, v] : x) s += v;
    return s;
}

long ConfigSolutions::y_norm() const {
    long s = 0;
    for (const auto& [c, v] : y) s += v;
    return s;
}

void ConfigSolutions::add_x(const Configuration& c, const Rational& v) {
    Rational nv = x[c] + v;
    if (nv < 0) throw RoundingError("x went negative on " + config_to_string(c));
    if (nv == 0)
        x.erase(c);
    else
        x[c] = nv;
}

void ConfigSolutions::add_y(const Configuration& c, long v) {
    long nv = y[c] + v;
    if (nv < 0) throw RoundingError("y went negative on " + config_to_string(c));
    if (nv == 0)
        y.erase(c);
    else
        y[c] = nv;
}

namespace {

int find_bin_of(const Packing& packing, int item_id) {
    for (const auto& [id, bin] : packing.bins) {
        for (const auto& [h, items] : bin.slots)
            for (const auto& it : items)
                if (it.id == item_id) return id;
        for (const auto& it : bin.smalls)
            if (it.id == item_id) return id;
    }
    throw RoundingError("item not packed: " + std::to_string(item_id));
}

void remove_large_from_bin(Packing& packing, int bin_id, int item_id) {
    Bin& bin = packing.bins.at(bin_id);
    for (auto& [h, items] : bin.slots)
        for (auto it = items.begin(); it != items.end(); ++it)
            if (it->id == item_id) {
                items.erase(it);
                if (items.empty()) bin.slots.erase(h);
                return;
            }
    throw RoundingError("large item not in expected bin");
}

// The ladder the cascade runs over: position 0 first, then every non-empty
// group in order.
std::vector<int> cascade_ladder(const RoundingState& r) {
    std::vector<int> ladder{0};
    for (size_t p = 1; p < r.groups.size(); ++p)
        if (!r.groups[p].empty()) ladder.push_back(static_cast<int>(p));
    return ladder;
}

OpResult run_insert(const DynamicState& in, const Item& item) {
    OpResult res{in, {}, 0};
    DynamicState& s = res.state;
    auto ladder = cascade_ladder(s.rounding);

    // deepest position whose maximum still dominates the arrival
    int jpos = 0;
    for (auto it = ladder.rbegin(); it != ladder.rend(); ++it) {
        int p = *it;
        if (p == 0 && s.rounding.groups[0].empty()) continue;
        if (s.rounding.groups[p].lambda().size >= item.size) {
            jpos = p;
            break;
        }
    }
    res.position = jpos;

    if (jpos == 0) {
        s.rounding.groups[0].insert_sorted(item);
        int bin = s.packing.open_bin(BinKind::Reservoir);
        s.packing.bins[bin].slots[0].push_back(item);
        return res;
    }

    // chain = ladder positions up to jpos
    std::vector<int> chain;
    for (int p : ladder)
        if (p <= jpos) chain.push_back(p);
    int r = static_cast<int>(chain.size()) - 1;  // chain[0] == 0, chain[r] == jpos

    // snapshot the maxima and their bins before any move
    std::vector<Item> lam(r + 1, Item{});
    std::vector<int> lam_bin(r + 1, -1);
    for (int k = 1; k <= r; ++k) {
        lam[k] = s.rounding.groups[chain[k]].lambda();
        lam_bin[k] = find_bin_of(s.packing, lam[k].id);
    }
    for (int k = 1; k <= r; ++k) {
        s.rounding.groups[chain[k]].remove_by_id(lam[k].id);
        remove_large_from_bin(s.packing, lam_bin[k], lam[k].id);
    }

    auto place = [&](const Item& moved, int pos, int bin_id) {
        Group& g = s.rounding.groups[pos];
        g.insert_sorted(moved);
        Bin& bin = s.packing.bins.at(bin_id);
        bin.slots[g.lp_backed() ? g.handle : 0].push_back(moved);
    };

    // the arrival takes the deepest vacated slot
    place(item, chain[r], lam_bin[r]);
    // each maximum steps one ladder position up
    for (int k = r; k >= 2; --k) place(lam[k], chain[k - 1], lam_bin[k - 1]);
    // the final one enters the reservoir in a fresh bin
    {
        s.rounding.groups[0].insert_sorted(lam[1]);
        int bin = s.packing.open_bin(BinKind::Reservoir);
        s.packing.bins[bin].slots[0].push_back(lam[1]);
    }
    for (int k = 1; k <= r; ++k) res.moved.push_back(lam[k]);
    return res;
}

Rational coverage_of(const ConfigSolutions& sol, int handle, bool integral) {
    Rational cov = 0;
    if (integral) {
        for (const auto& [c, v] : sol.y) cov += Rational(c.count_of(handle)) * v;
    } else {
        for (const auto& [c, v] : sol.x) cov += Rational(c.count_of(handle)) * v;
    }
    return cov;
}

Configuration swap_class(const Configuration& c, int from_handle, int to_handle) {
    std::map<int, int> counts(c.counts.begin(), c.counts.end());
    auto it = counts.find(from_handle);
    if (it == counts.end() || it->second <= 0)
        throw RoundingError("configuration has no slot of the class to swap out");
    if (--it->second == 0) counts.erase(it);
    counts[to_handle] += 1;
    Configuration out;
    for (const auto& [h, n] : counts) out.counts.emplace_back(h, n);
    return out;
}

Configuration singleton_config(int handle) { return Configuration{{{handle, 1}}}; }

}  // namespace

OpResult insert_op(const DynamicState& s, const Item& item) { return run_insert(s, item); }

OpResult modified_insert_op(const DynamicState& s, const Item& item) {
    if (!s.rounding.creation_active())
        throw PhaseError("modified insertion requires an active creation phase");
    return run_insert(s, item);
}

DynamicState begin_creation_phase(const DynamicState& in) {
    DynamicState s = in;
    RoundingState& r = s.rounding;
    if (r.creation_active()) throw PhaseError("creation phase already active");
    Group& res = r.groups[0];
    if (res.size() % 2 != 0) throw PhaseError("reservoir must have even size at phase entry");
    long k = res.size() / 2;
    if (k == 0) throw PhaseError("reservoir empty at creation phase entry");

    Group sub_low{GroupKind::SubLow, 0, {}};
    Group sub_high{GroupKind::SubHigh, 0, {}};
    sub_low.items.assign(res.items.begin(), res.items.begin() + k);
    sub_high.items.assign(res.items.begin() + k, res.items.end());
    res.items.clear();

    Group g1{GroupKind::Rounded, r.next_handle++, {}};
    Group g2{GroupKind::Rounded, r.next_handle++, {}};
    // ladder becomes [R0, G1, R1.5, G2, R2.5, old groups...]
    std::vector<Group> ladder;
    ladder.push_back(r.groups[0]);
    ladder.push_back(std::move(g1));
    ladder.push_back(std::move(sub_low));
    ladder.push_back(std::move(g2));
    ladder.push_back(std::move(sub_high));
    for (size_t p = 1; p < r.groups.size(); ++p) ladder.push_back(r.groups[p]);
    r.groups = std::move(ladder);
    return s;
}

OpResult creation_step(const DynamicState& in) {
    OpResult res{in, {}, -1};
    DynamicState& s = res.state;
    RoundingState& r = s.rounding;
    int p_low = r.position_of_kind(GroupKind::SubLow);
    int p_high = r.position_of_kind(GroupKind::SubHigh);
    if (p_low < 0 || p_high < 0) throw PhaseError("creation step without subgroups");
    if (r.groups[p_low].empty() || r.groups[p_high].empty())
        throw PhaseError("creation step with exhausted subgroups");
    int p_g1 = p_low - 1;
    int p_g2 = p_high - 1;
    if (p_g1 < 1 || !r.groups[p_g1].lp_backed() || !r.groups[p_g2].lp_backed())
        throw PhaseError("creation ladder is malformed");
    res.position = p_low;

    for (auto [from, to] : {std::pair{p_low, p_g1}, std::pair{p_high, p_g2}}) {
        Item moved = r.groups[from].remove_front();
        Group& dst = r.groups[to];
        dst.insert_sorted(moved);
        // the item keeps its bin; the bin becomes a singleton-pattern bin
        int bin_id = find_bin_of(s.packing, moved.id);
        Bin& bin = s.packing.bins.at(bin_id);
        bin.slots.erase(0);
        bin.kind = BinKind::Config;
        bin.pattern = singleton_config(dst.handle);
        bin.slots[dst.handle].push_back(moved);
        s.sol.add_x(bin.pattern, Rational(1));
        s.sol.add_y(bin.pattern, 1);
    }
    return res;
}

DynamicState end_creation_phase(const DynamicState& in) {
    DynamicState s = in;
    RoundingState& r = s.rounding;
    int p_low = r.position_of_kind(GroupKind::SubLow);
    int p_high = r.position_of_kind(GroupKind::SubHigh);
    if (p_low < 0 || p_high < 0) throw PhaseError("no creation phase to end");
    if (!r.groups[p_low].empty() || !r.groups[p_high].empty())
        throw PhaseError("creation phase ended with items left in subgroups");
    std::vector<Group> ladder;
    for (auto& g : r.groups)
        if (g.kind != GroupKind::SubLow && g.kind != GroupKind::SubHigh)
            ladder.push_back(std::move(g));
    r.groups = std::move(ladder);
    return s;
}

int union_phase_target(const RoundingState& r) {
    if (r.creation_active()) throw PhaseError("union target during creation phase");
    int last = static_cast<int>(r.groups.size()) - 1;
    int j = -1;
    for (int p = 1; p + 1 <= last; ++p)
        if (r.groups[p].size() < r.groups[p + 1].size()) j = p;
    if (j < 0) j = last;
    if (j < 3) throw PhaseError("union target below position 3");
    return j;
}

OpResult union_step(const DynamicState& in, int j) {
    OpResult res{in, {}, j};
    DynamicState& s = res.state;
    RoundingState& r = s.rounding;
    if (j < 3 || j >= static_cast<int>(r.groups.size()))
        throw PhaseError("union position out of range");
    for (int p = j - 3; p <= j; ++p)
        if (!r.groups[p].lp_backed() || r.groups[p].empty())
            throw PhaseError("union step needs four live rounded groups");

    Group& gj = r.groups[j];
    Group& gj1 = r.groups[j - 1];
    Group& gj2 = r.groups[j - 2];
    Group& gj3 = r.groups[j - 3];

    Item lam_j = gj.lambda();
    Item lam_j2 = gj2.lambda();
    int bin_j = find_bin_of(s.packing, lam_j.id);
    int bin_j2 = find_bin_of(s.packing, lam_j2.id);

    // lambda_j replaces lambda_{j-2}; the host bin's configuration swaps one
    // class-(j-2) slot for a class-(j-1) slot
    gj.remove_by_id(lam_j.id);
    gj2.remove_by_id(lam_j2.id);
    remove_large_from_bin(s.packing, bin_j, lam_j.id);
    remove_large_from_bin(s.packing, bin_j2, lam_j2.id);

    Bin& host = s.packing.bins.at(bin_j2);
    Configuration p_old = host.pattern;
    Configuration p_new = swap_class(p_old, gj2.handle, gj1.handle);
    host.pattern = p_new;
    gj1.insert_sorted(lam_j);
    host.slots[gj1.handle].push_back(lam_j);

    gj3.insert_sorted(lam_j2);
    int fresh = s.packing.open_bin(BinKind::Config);
    Configuration single = singleton_config(gj3.handle);
    s.packing.bins[fresh].pattern = single;
    s.packing.bins[fresh].slots[gj3.handle].push_back(lam_j2);

    res.moved.push_back(lam_j);
    res.moved.push_back(lam_j2);

    // integral side mirrors the two bins exactly
    s.sol.add_y(p_old, -1);
    s.sol.add_y(p_new, 1);
    s.sol.add_y(single, 1);

    // Fractional side: transfer what x has on the rewritten column, then top
    // up the two raised classes on the freshly backed columns. Increases are
    // confined to p_new and the singleton, so x <= y and the shared support
    // survive; the transfer is coverage-neutral except -t on class j-2
    // (whose demand dropped) and +t on class j-1.
    Rational xp = s.sol.x.count(p_old) ? s.sol.x.at(p_old) : Rational(0);
    bool y_keeps_old = s.sol.y.count(p_old) > 0;
    Rational t;
    if (!y_keeps_old)
        t = xp;
    else
        t = (xp > 1) ? Rational(1) : xp / 2;  // keep x positive where y stays positive
    if (t > 0) {
        s.sol.add_x(p_old, -t);
        s.sol.add_x(p_new, t);
    }
    Rational need1 = Rational(gj1.size()) - coverage_of(s.sol, gj1.handle, false);
    Rational u = need1 > 0 ? need1 / p_new.count_of(gj1.handle) : Rational(0);
    if (u > 0) s.sol.add_x(p_new, u);
    Rational need3 = Rational(gj3.size()) - coverage_of(s.sol, gj3.handle, false);
    Rational sigma = need3 > 0 ? need3 : Rational(0);
    // mirror y's +1 in full whenever the singleton headroom allows: keeping
    // ||y|| - ||x|| stationary keeps the per-arrival reduction budget, and
    // with it the migration, independent of how long the run has been going
    if (u + sigma < 1) sigma = Rational(1) - u;
    if (sigma > 0) s.sol.add_x(single, sigma);
    return res;
}

CompactionResult end_union_phase(const DynamicState& in) {
    CompactionResult out{in, {}, 0};
    DynamicState& s = out.state;
    RoundingState& r = s.rounding;

    std::set<int> dead;  // handles of emptied groups
    std::vector<Group> live;
    for (auto& g : r.groups) {
        if (g.lp_backed() && g.empty())
            dead.insert(g.handle);
        else
            live.push_back(std::move(g));
    }
    r.groups = std::move(live);
    if (dead.empty()) return out;

    auto strip = [&](const Configuration& c) {
        Configuration stripped;
        for (const auto& [h, n] : c.counts)
            if (!dead.count(h)) stripped.counts.emplace_back(h, n);
        return stripped;
    };

    ConfigSolutions rebuilt;
    for (const auto& [c, v] : s.sol.x) {
        Configuration sc = strip(c);
        if (!sc.empty()) rebuilt.add_x(sc, v);
    }
    for (const auto& [c, v] : s.sol.y) {
        Configuration sc = strip(c);
        if (!sc.empty()) rebuilt.add_y(sc, v);
    }
    s.sol = std::move(rebuilt);

    std::vector<int> to_close;
    for (auto& [id, bin] : s.packing.bins) {
        if (bin.kind != BinKind::Config) continue;
        for (int h : dead) {
            auto it = bin.slots.find(h);
            if (it != bin.slots.end()) {
                if (!it->second.empty())
                    throw RoundingError("dead class still has packed items");
                bin.slots.erase(it);
            }
        }
        Configuration sc = strip(bin.pattern);
        bin.pattern = sc;
        if (sc.empty()) {
            // nothing large can ever live here again; keep it for smalls or drop it
            if (bin.smalls.empty()) {
                to_close.push_back(id);
            } else {
                bin.kind = BinKind::Small;
            }
        }
    }
    for (int id : to_close) {
        s.packing.bins.erase(id);
        ++out.bins_closed;
    }
    return out;
}

PropertyReport check_properties(const RoundingState& r, const Rational& eps) {
    PropertyReport rep;
    if (eps <= 0) throw RoundingError("eps must be positive");
    auto positions = r.rounded_positions();
    rep.a_constant = Rational(static_cast<long>(positions.size())) * eps * eps;
    rep.b_equal = true;
    for (size_t k = 2; k < positions.size(); ++k)
        if (r.groups[positions[k]].size() != r.groups[positions[1]].size()) rep.b_equal = false;
    if (!positions.empty() && r.groups[positions[0]].size() > 0)
        rep.c_constant =
            Rational(r.reservoir_count()) / Rational(r.groups[positions[0]].size());
    rep.d_monotone = true;
    const Group* prev = nullptr;
    for (const auto& g : r.groups) {
        if (g.empty()) continue;
        if (prev && g.lambda().size > prev->items.back().size) rep.d_monotone = false;
        prev = &g;
    }
    return rep;
}

bool embed_check(const RoundingState& r, const std::vector<Item>& large_items, long K) {
    if (K <= 0) throw RoundingError("embed_check requires K > 0");
    long t = static_cast<long>(large_items.size());
    if (t != r.large_count()) throw RoundingError("embed_check item count mismatch");
    std::vector<Item> sorted = large_items;
    std::sort(sorted.begin(), sorted.end(), size_desc_id_asc);

    long canon_res = 2 * K + (t % (2 * K));
    if (r.reservoir_count() > canon_res) return false;

    // canonical rounded size by rank: blocks of 2K after the reservoir,
    // rounded to the block maximum
    std::map<int, long> rank_of;
    for (long i = 0; i < t; ++i) rank_of[sorted[i].id] = i;
    auto canonical_size = [&](long rank) -> Rational {
        long off = rank - canon_res;
        long block_start = canon_res + (off / (2 * K)) * (2 * K);
        return sorted[block_start].size;
    };

    for (const auto& g : r.groups) {
        if (g.empty()) continue;
        if (!g.lp_backed()) {
            // reservoir-complex items must all live inside the canonical reservoir
            for (const auto& it : g.items)
                if (rank_of.at(it.id) >= canon_res) return false;
            continue;
        }
        Rational rounded = g.lambda().size;
        for (const auto& it : g.items) {
            long rank = rank_of.at(it.id);
            if (rank < canon_res) continue;  // outside the comparison set
            if (rounded > canonical_size(rank)) return false;
        }
    }
    return true;
}

std::vector<std::string> verify_dynamic_state(const DynamicState& s) {
    std::vector<std::string> bad;
    auto fail = [&](const std::string& msg) { bad.push_back(msg); };

    try {
        s.rounding.check_order();
    } catch (const std::exception& e) {
        fail(e.what());
    }

    RoundedInstance inst = s.rounding.rounded_instance();

    auto canonical = [](const Configuration& c) {
        for (size_t k = 1; k < c.counts.size(); ++k)
            if (c.counts[k - 1].first >= c.counts[k].first) return false;
        for (const auto& [h, n] : c.counts)
            if (n <= 0) return false;
        return true;
    };
    for (const auto& [c, v] : s.sol.y)
        if (!canonical(c)) fail("non-canonical configuration key: " + config_to_string(c));

    // pairing invariant
    for (const auto& [c, v] : s.sol.x) {
        auto it = s.sol.y.find(c);
        if (it == s.sol.y.end())
            fail("x has support outside y on " + config_to_string(c));
        else if (Rational(it->second) < v)
            fail("x exceeds y on " + config_to_string(c));
        if (v <= 0) fail("non-positive x entry stored");
    }
    for (const auto& [c, v] : s.sol.y) {
        if (v <= 0) fail("non-positive y entry stored");
        if (!s.sol.x.count(c)) fail("y has support outside x on " + config_to_string(c));
    }

    // exact feasibility of both solutions and fit of every used column
    for (const auto& cls : inst.classes) {
        Rational covx = coverage_of(s.sol, cls.handle, false);
        Rational covy = coverage_of(s.sol, cls.handle, true);
        if (covx < cls.multiplicity)
            fail("x does not cover class #" + std::to_string(cls.handle));
        if (covy < cls.multiplicity)
            fail("y does not cover class #" + std::to_string(cls.handle));
    }
    for (const auto& [c, v] : s.sol.y) {
        // slots of emptied classes are vacuous between a union step and the
        // phase-end compaction; only live classes contribute load
        Rational load = 0;
        for (const auto& [h, n] : c.counts)
            for (const auto& cls : inst.classes)
                if (cls.handle == h) load += cls.size * n;
        if (load > 1) fail("configuration overflows a bin: " + config_to_string(c));
    }

    // packing correspondence
    std::map<Configuration, long> pattern_count;
    std::set<int> placed;
    for (const auto& [id, bin] : s.packing.bins) {
        if (bin.load() > 1) fail("bin over capacity: " + std::to_string(id));
        for (const auto& [h, items] : bin.slots)
            for (const auto& it : items)
                if (!placed.insert(it.id).second)
                    fail("item packed twice: " + std::to_string(it.id));
        for (const auto& it : bin.smalls)
            if (!placed.insert(it.id).second)
                fail("item packed twice: " + std::to_string(it.id));

        switch (bin.kind) {
            case BinKind::Config: {
                if (bin.pattern.empty()) fail("config bin with empty pattern");
                pattern_count[bin.pattern] += 1;
                for (const auto& [h, items] : bin.slots) {
                    if (static_cast<int>(items.size()) > bin.pattern.count_of(h))
                        fail("slot occupancy exceeds pattern in bin " + std::to_string(id));
                }
                break;
            }
            case BinKind::Reservoir: {
                long occupants = 0;
                for (const auto& [h, items] : bin.slots) {
                    if (h != 0) fail("reservoir bin with class slots");
                    occupants += static_cast<long>(items.size());
                }
                if (occupants != 1) fail("reservoir bin must hold exactly one large item");
                break;
            }
            case BinKind::Small: {
                if (!bin.slots.empty()) fail("small bin with large items");
                break;
            }
        }
    }
    for (const auto& [c, n] : pattern_count)
        if (s.sol.y.find(c) == s.sol.y.end() || s.sol.y.at(c) != n)
            fail("bin pattern counts disagree with y on " + config_to_string(c));
    for (const auto& [c, n] : s.sol.y)
        if (!pattern_count.count(c) || pattern_count.at(c) != n)
            fail("y counts a pattern with no matching bins: " + config_to_string(c));

    // every rounded item occupies a slot of its own class; reservoir items
    // sit in reservoir bins
    for (size_t p = 0; p < s.rounding.groups.size(); ++p) {
        const Group& g = s.rounding.groups[p];
        for (const auto& it : g.items) {
            int bin_id;
            try {
                bin_id = find_bin_of(s.packing, it.id);
            } catch (const std::exception&) {
                fail("rounding item unpacked: " + std::to_string(it.id));
                continue;
            }
            const Bin& bin = s.packing.bins.at(bin_id);
            if (g.lp_backed()) {
                bool in_slot = false;
                auto sit = bin.slots.find(g.handle);
                if (sit != bin.slots.end())
                    for (const auto& m : sit->second) in_slot |= (m.id == it.id);
                if (!in_slot)
                    fail("item " + std::to_string(it.id) + " not in a slot of its class");
            } else if (bin.kind != BinKind::Reservoir) {
                fail("reservoir item outside a reservoir bin: " + std::to_string(it.id));
            }
        }
    }
    return bad;
}

}  // namespace migratepack
