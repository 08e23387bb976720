#include "migratepack/online.hpp"

#include <algorithm>
#include <set>

namespace migratepack {

long derive_even_group_count(const Rational& eps_internal) {
    Rational inv = Rational(1) / (eps_internal * eps_internal);
    long m = rat_ceil(inv);
    if (m % 2 != 0) m += 1;
    return m;
}

Params Params::derive(const Rational& eps_user) {
    if (eps_user <= 0 || eps_user > make_rat(1, 2))
        throw BadEpsilon("eps must lie in (0, 1/2]");
    Params p;
    p.eps_user = eps_user;
    p.eps_internal = eps_user / 80;
    p.eps_bar = 16 * p.eps_internal;
    p.delta_bar = p.eps_bar;
    p.m = derive_even_group_count(p.eps_internal);
    p.delta_cap = p.eps_bar + p.delta_bar + p.eps_bar * p.delta_bar;
    if (2 * p.delta_cap > eps_user)
        throw BadEpsilon("internal rescaling failed to meet the 2*Delta <= eps target");
    return p;
}

Params Params::desk(const Rational& eps_user, long pin_m) {
    if (eps_user <= 0 || eps_user > make_rat(1, 2))
        throw BadEpsilon("eps must lie in (0, 1/2]");
    if (pin_m < 4 || pin_m % 2 != 0) throw BadEpsilon("pinned m must be an even value >= 4");
    Params p;
    p.eps_user = eps_user;
    p.eps_internal = eps_user;
    p.eps_bar = 1;
    p.delta_bar = 1;
    p.m = pin_m;
    p.delta_cap = p.eps_bar + p.delta_bar + p.eps_bar * p.delta_bar;
    p.pinned = true;
    return p;
}

Rational Params::migration_budget() const {
    // worst-case improve call: alpha = 2, prefix threshold with the +2 slack
    Rational inv_delta = Rational(1) / delta_bar;
    Rational alpha = 2;
    Rational l_max = Rational(m + 2) * (inv_delta + 2) + 2;
    Rational d8 = l_max                                              // zeroed prefix
                  + (2 * alpha * (inv_delta + 1) + l_max + m + 1)    // ceiling of the rebuilt part
                  + (2 * alpha * (inv_delta + 2) + m + 1);           // final d reduction
    Rational cascade = Rational(m + 3);  // one item per ladder position
    Rational op_moves = 2;               // union moves two items
    return (d8 + cascade + op_moves) * 2 / eps_internal;
}

std::string phase_name(Phase p) {
    switch (p) {
        case Phase::Bootstrap: return "bootstrap";
        case Phase::InsertOnly: return "insert";
        case Phase::Creation: return "creation";
        case Phase::Union: return "union";
    }
    return "?";
}

OnlineState make_online_state(const Params& params, SolveMode mode, bool record_trace) {
    OnlineState st;
    st.params = params;
    st.inner_mode = mode;
    st.record_trace = record_trace;
    st.total_size = 0;
    return st;
}

namespace {

std::map<int, Rational> size_map(const OnlineState& st) {
    std::map<int, Rational> out;
    for (const auto& it : st.items) out[it.id] = it.size;
    return out;
}

std::vector<Item> large_items(const OnlineState& st) {
    std::vector<Item> out;
    for (const auto& it : st.items)
        if (!item_is_small(it, st.params.eps_internal)) out.push_back(it);
    return out;
}

void push_trace(OnlineState& st, const std::string& op, int j) {
    if (!st.record_trace) return;
    TraceRecord r;
    r.t = static_cast<long>(st.items.size());
    r.op = op;
    r.j = j;
    r.group_sizes.push_back(st.dyn.rounding.reservoir_count());
    for (const auto& g : st.dyn.rounding.groups)
        if (g.lp_backed()) {
            r.group_sizes.push_back(g.size());
            r.lambda_sizes.push_back(g.empty() ? Rational(0) : g.lambda().size);
        }
    r.x_norm = st.dyn.sol.x_norm();
    r.y_norm = st.dyn.sol.y_norm();
    r.r0 = st.dyn.rounding.reservoir_count();
    st.trace.push_back(std::move(r));
}

// Snap every fractional value up to the 1/kXGrid grid (capped at its integral
// partner). Keeps feasibility, the pairing invariant and the support intact
// while bounding the denominators that otherwise compound across the
// per-arrival rescalings of x.
constexpr long kXGrid = 4096;

void quantize_x(ConfigSolutions& sol) {
    for (auto& [c, v] : sol.x) {
        if (v.get_den() <= kXGrid) continue;
        mpz_class scaled_num = v.get_num() * kXGrid;
        mpz_class q;
        mpz_cdiv_q(q.get_mpz_t(), scaled_num.get_mpz_t(), v.get_den().get_mpz_t());
        Rational snapped(q);
        snapped /= kXGrid;
        Rational cap(sol.y.at(c));
        v = snapped < cap ? snapped : cap;
    }
}

void place_smalls_firstfit(Packing& packing, const std::vector<Item>& arrivals) {
    std::map<int, Rational> residual;
    for (const auto& [id, bin] : packing.bins) residual[id] = Rational(1) - bin.load();
    for (const auto& item : arrivals) {
        int target = -1;
        for (const auto& [id, res] : residual)
            if (res >= item.size) {
                target = id;
                break;
            }
        if (target < 0) {
            target = packing.open_bin(BinKind::Small);
            residual[target] = 1;
        }
        packing.bins[target].smalls.push_back(item);
        residual[target] -= item.size;
    }
}

// Rebuild the packing so the per-pattern bin counts equal new_y. Bins
// released from shrunk patterns keep their contents whenever they can be
// relabeled to a pattern that needs bins; only what genuinely cannot stay is
// emptied and refilled class by class.
void repack_to(OnlineState& st, const std::map<Configuration, long>& new_y,
               std::map<int, Rational>& moved, std::vector<Item>& displaced_smalls) {
    Packing& pk = st.dyn.packing;
    std::map<Configuration, std::vector<int>> have;
    for (const auto& [id, bin] : pk.bins)
        if (bin.kind == BinKind::Config) have[bin.pattern].push_back(id);

    // released: surplus bins per pattern; keep the fullest (ties: lowest id)
    std::vector<int> released;
    for (const auto& [pattern, ids] : have) {
        auto it = new_y.find(pattern);
        long want = it == new_y.end() ? 0 : it->second;
        if (static_cast<long>(ids.size()) <= want) continue;
        std::vector<int> order = ids;
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return pk.bins.at(a).load() > pk.bins.at(b).load();
        });
        released.insert(released.end(), order.begin() + want, order.end());
    }
    std::sort(released.begin(), released.end());

    // how much content a released bin keeps if relabeled to `pattern`
    auto kept_size = [&](const Bin& bin, const Configuration& pattern) {
        Rational kept = 0;
        for (const auto& [h, items] : bin.slots) {
            int cap = pattern.count_of(h);
            for (int k = 0; k < cap && k < static_cast<int>(items.size()); ++k)
                kept += items[k].size;
        }
        return kept;
    };

    std::vector<Item> displaced_large;
    // relabel released bins onto patterns that need additional bins, keeping
    // the largest-overlap contents in place; only the surplus items per class
    // are displaced
    std::vector<std::pair<Configuration, long>> opens;
    for (const auto& [pattern, want] : new_y) {
        auto it = have.find(pattern);
        long cur = it == have.end() ? 0 : std::min<long>(it->second.size(), want);
        if (want > cur) opens.emplace_back(pattern, want - cur);
    }
    for (auto& [pattern, need] : opens) {
        while (need > 0 && !released.empty()) {
            auto best = released.begin();
            Rational best_kept = kept_size(pk.bins.at(*best), pattern);
            for (auto it = std::next(released.begin()); it != released.end(); ++it) {
                Rational k = kept_size(pk.bins.at(*it), pattern);
                if (k > best_kept) {
                    best = it;
                    best_kept = k;
                }
            }
            Bin& bin = pk.bins.at(*best);
            std::map<int, std::vector<Item>> new_slots;
            for (auto& [h, items] : bin.slots) {
                std::sort(items.begin(), items.end(), size_desc_id_asc);
                int cap = pattern.count_of(h);
                for (int k = 0; k < static_cast<int>(items.size()); ++k) {
                    if (k < cap)
                        new_slots[h].push_back(items[k]);
                    else
                        displaced_large.push_back(items[k]);
                }
            }
            bin.slots = std::move(new_slots);
            bin.pattern = pattern;
            --need;
            released.erase(best);
        }
    }
    for (int id : released) {
        Bin& bin = pk.bins.at(id);
        for (auto& [h, items] : bin.slots)
            displaced_large.insert(displaced_large.end(), items.begin(), items.end());
        displaced_smalls.insert(displaced_smalls.end(), bin.smalls.begin(),
                                bin.smalls.end());
        pk.bins.erase(id);
    }
    for (const auto& [pattern, need] : opens) {
        for (long k = 0; k < need; ++k) {
            int id = pk.open_bin(BinKind::Config);
            pk.bins[id].pattern = pattern;
        }
    }

    std::map<int, int> handle_of_item;
    for (const auto& g : st.dyn.rounding.groups)
        if (g.lp_backed())
            for (const auto& it : g.items) handle_of_item[it.id] = g.handle;

    std::map<int, std::vector<Item>> by_class;
    for (const auto& it : displaced_large) {
        auto hit = handle_of_item.find(it.id);
        if (hit == handle_of_item.end())
            throw OnlineError("displaced item is not in any rounded group");
        by_class[hit->second].push_back(it);
    }
    for (auto& [h, items] : by_class) {
        std::sort(items.begin(), items.end(), size_desc_id_asc);
        size_t next = 0;
        for (auto& [id, bin] : pk.bins) {
            if (bin.kind != BinKind::Config || next >= items.size()) continue;
            int cap = bin.pattern.count_of(h);
            int occ = static_cast<int>(bin.slots.count(h) ? bin.slots.at(h).size() : 0);
            while (occ < cap && next < items.size()) {
                // small items riding on a bin that gets repacked make way and
                // are re-placed by first fit afterwards
                if (!bin.smalls.empty() && bin.load() + items[next].size > 1) {
                    displaced_smalls.insert(displaced_smalls.end(), bin.smalls.begin(),
                                            bin.smalls.end());
                    bin.smalls.clear();
                }
                bin.slots[h].push_back(items[next]);
                moved[items[next].id] = items[next].size;
                ++next;
                ++occ;
            }
        }
        if (next < items.size())
            throw OnlineError("repack ran out of slots for class " + std::to_string(h));
    }
}

void improve_and_repack(OnlineState& st, long alpha, std::map<int, Rational>& moved,
                        std::vector<Item>& displaced_smalls) {
    RoundedInstance inst = st.dyn.rounding.rounded_instance();
    ConfigLp clp = build_config_lp(inst);
    LpSolution x;
    IntegralSolution y;
    for (const auto& [c, v] : st.dyn.sol.x) {
        int idx = clp.column_index(c);
        if (idx < 0) throw OnlineError("x uses a non-enumerated configuration");
        x.set(idx, v);
    }
    for (const auto& [c, v] : st.dyn.sol.y) {
        int idx = clp.column_index(c);
        if (idx < 0) throw OnlineError("y uses a non-enumerated configuration");
        y.set(idx, v);
    }
    ImproveParams p{Rational(alpha), st.params.delta_bar, 2};
    auto [x2, y2] = improve_paired(clp.lp, x, y, p, 2, st.inner_mode);

    ConfigSolutions ns;
    for (const auto& [i, v] : x2.values) ns.x[clp.columns[i]] = v;
    for (const auto& [i, v] : y2.values) ns.y[clp.columns[i]] = v;
    repack_to(st, ns.y, moved, displaced_smalls);
    st.dyn.sol = std::move(ns);
}

void bootstrap_rebuild(OnlineState& st, const Item& arriving, Rational& lump_moved) {
    PackingState before = st.dyn.packing.to_state();
    std::vector<Item> larges = large_items(st);

    DynamicState d;
    if (static_cast<long>(larges.size()) <= st.params.m) {
        std::sort(larges.begin(), larges.end(), size_desc_id_asc);
        d.rounding.groups[0].items = larges;
    } else {
        d.rounding = offline_round(larges, static_cast<int>(st.params.m));
    }
    RoundedInstance inst = d.rounding.rounded_instance();
    if (!inst.classes.empty()) {
        ConfigLp clp = build_config_lp(inst);
        LpSolution x = solve_approx(clp.lp, st.params.delta_bar, st.inner_mode);
        IntegralSolution y = ceil_of(x);
        d.packing = pack_from_solution(inst, d.rounding.class_items(),
                                       d.rounding.reservoir_items(), clp, y);
        for (const auto& [i, v] : x.values) d.sol.x[clp.columns[i]] = v;
        for (const auto& [i, v] : y.values) d.sol.y[clp.columns[i]] = v;
    } else {
        for (const auto& it : d.rounding.reservoir_items()) {
            int id = d.packing.open_bin(BinKind::Reservoir);
            d.packing.bins[id].slots[0].push_back(it);
        }
    }
    place_smalls_firstfit(d.packing, st.smalls);
    st.dyn = std::move(d);

    PackingState after = st.dyn.packing.to_state();
    lump_moved = canonical_moved_size(before, after, size_map(st), {arriving.id});
}

void advance_phase(OnlineState& st, std::vector<Item>& displaced_smalls) {
    PhaseMachine& ph = st.phase;
    ph.step += 1;
    if (ph.step < ph.K) return;
    ph.step = 0;
    switch (ph.phase) {
        case Phase::Bootstrap:
            throw OnlineError("phase machine advanced while bootstrapping");
        case Phase::InsertOnly:
            ph.phase = Phase::Creation;
            ph.pair_index = 1;
            st.dyn = begin_creation_phase(st.dyn);
            push_trace(st, "begin_creation", -1);
            break;
        case Phase::Creation: {
            st.dyn = end_creation_phase(st.dyn);
            ph.phase = Phase::Union;
            ph.frozen_union_j = union_phase_target(st.dyn.rounding);
            push_trace(st, "begin_union", ph.frozen_union_j);
            break;
        }
        case Phase::Union: {
            CompactionResult comp = end_union_phase(st.dyn);
            st.dyn = std::move(comp.state);
            displaced_smalls.insert(displaced_smalls.end(), comp.displaced_smalls.begin(),
                                    comp.displaced_smalls.end());
            push_trace(st, "compact", -1);
            if (ph.pair_index == st.params.m / 2) {
                ph.cycle += 1;
                ph.K *= 2;
                ph.pair_index = 0;
                ph.phase = Phase::InsertOnly;
            } else {
                ph.pair_index += 1;
                ph.phase = Phase::Creation;
                st.dyn = begin_creation_phase(st.dyn);
                push_trace(st, "begin_creation", -1);
            }
            break;
        }
    }
}

void run_checks(OnlineState& st, const ArrivalStats& s, long k_embed) {
    auto note = [&](const std::string& msg) {
        st.violations.push_back("t=" + std::to_string(s.t) + ": " + msg);
    };
    for (const auto& msg : verify_dynamic_state(st.dyn)) note(msg);

    // every arrived item packed exactly once
    {
        std::set<int> placed;
        bool dup = false;
        for (const auto& [id, bin] : st.dyn.packing.bins)
            for (int i : bin.item_ids()) dup |= !placed.insert(i).second;
        if (dup) note("an item is packed twice");
        if (placed.size() != st.items.size()) note("packed item count mismatch");
    }

    const Params& p = st.params;
    Rational optlb(s.opt_lb);
    Rational bins(s.bins);
    if (bins > (Rational(1) + 2 * p.delta_cap) * optlb + p.m)
        note("property (1) violated: bins exceed (1+2D)OPT+m");
    // during the bootstrap the offline guarantee carries the +m additive;
    // the strict form is the induction invariant from the handoff on
    Rational additive = st.phase.phase == Phase::Bootstrap ? Rational(p.m) : Rational(0);
    if (st.dyn.sol.x_norm() + st.dyn.rounding.reservoir_count() >
        (Rational(1) + p.delta_cap) * optlb + additive)
        note("property (2) violated: ||x||+|R0| exceeds (1+D)OPT");
    if (Rational(s.support) > p.delta_cap * optlb + p.m)
        note("property (4) violated: support exceeds D*OPT+m");

    if (st.phase.phase != Phase::Bootstrap && k_embed > 0) {
        if (!embed_check(st.dyn.rounding, large_items(st), k_embed))
            note("embedding certificate failed");
    }
    if (!st.ledger.records.empty()) {
        const auto& rec = st.ledger.records.back();
        if (st.phase.phase == Phase::Bootstrap || s.t == st.tau) {
            if (rec.factor > (2 / p.eps_internal) * st.total_size)
                note("bootstrap migration exceeds (2/eps) S_t");
        } else if (rec.factor > p.migration_budget()) {
            note("migration factor exceeds the assembled budget");
        }
    }
}

}  // namespace

ArrivalStats stats(const OnlineState& st) {
    ArrivalStats s;
    s.t = static_cast<long>(st.items.size());
    if (s.t == 0) return s;
    s.size = st.items.back().size;
    s.bins = st.dyn.packing.bin_count();
    RoundedInstance inst = st.dyn.rounding.rounded_instance();
    if (!inst.classes.empty()) {
        ConfigLp clp = build_config_lp(inst);
        LpSolution x = solve_exact(clp.lp);
        s.lin = x.objective();
    }
    s.lin_lb = rat_ceil(s.lin);
    s.opt_lb = std::max(rat_ceil(st.total_size), s.lin_lb);
    s.support = static_cast<long>(st.dyn.sol.y.size());
    s.phase = phase_name(st.phase.phase);
    s.ratio_bound_factor = Rational(1) + 2 * st.params.delta_cap;
    s.ratio_bound_additive = st.params.m;
    if (!st.ledger.records.empty() && st.ledger.records.back().t == s.t) {
        s.moved_size = st.ledger.records.back().moved_size;
        s.migration = st.ledger.records.back().factor;
    }
    s.max_migration = st.ledger.max_factor();
    return s;
}

void handoff_bootstrap(OnlineState& st) {
    if (st.phase.phase != Phase::Bootstrap) throw OnlineError("handoff outside bootstrap");
    long n = st.large_count;
    if (n % (st.params.m + 1) != 0)
        throw DivisibilityError("large-item count not divisible by m+1 at handoff");
    long K = n / (st.params.m + 1);
    if (K <= 0) throw OnlineError("handoff with no items");
    // the preceding rebuild produced m+1 equal groups; verify rather than trust
    for (const auto& g : st.dyn.rounding.groups)
        if (g.size() != K) throw OnlineError("handoff rounding groups are not equal");
    st.tau = static_cast<long>(st.items.size());
    st.phase.phase = Phase::InsertOnly;
    st.phase.K = K;
    st.phase.step = 0;
    st.phase.pair_index = 0;
    st.phase.cycle = 1;
}

ArrivalStats arrive(OnlineState& st, const Item& item) {
    if (!st.items.empty() && item.id <= st.items.back().id)
        throw OnlineError("item ids must strictly increase with arrival order");
    if (item.size <= 0 || item.size > 1) throw OnlineError("item size outside (0,1]");
    st.items.push_back(item);
    st.total_size += item.size;
    long t = static_cast<long>(st.items.size());
    long k_before = st.phase.K;

    std::map<int, Rational> moved;
    Rational lump_moved = 0;
    std::vector<Item> displaced_smalls;
    std::string processed_phase = phase_name(st.phase.phase);

    if (item_is_small(item, st.params.eps_internal)) {
        st.smalls.push_back(item);
        place_smalls_firstfit(st.dyn.packing, {item});
        push_trace(st, "arrive_small", -1);
    } else {
        st.large_count += 1;
        if (st.phase.phase == Phase::Bootstrap) {
            bootstrap_rebuild(st, item, lump_moved);
            push_trace(st, "bootstrap", -1);
            if (st.total_size > st.params.bootstrap_threshold() &&
                st.large_count >= st.params.m + 1 &&
                st.large_count % (st.params.m + 1) == 0) {
                handoff_bootstrap(st);
                push_trace(st, "handoff", -1);
            }
        } else {
            auto op_check = [&](const char* what) {
                if (!st.check_each_op) return;
                auto bad = verify_dynamic_state(st.dyn);
                if (!bad.empty())
                    st.violations.push_back("t=" + std::to_string(t) + " after " + what +
                                            ": " + bad.front());
            };
            long alpha = st.phase.phase == Phase::Union ? 2 : 1;
            improve_and_repack(st, alpha, moved, displaced_smalls);
            push_trace(st, "improve", -1);
            op_check("improve");
            OpResult op = st.phase.phase == Phase::Creation ? modified_insert_op(st.dyn, item)
                                                            : insert_op(st.dyn, item);
            st.dyn = std::move(op.state);
            for (const auto& it : op.moved) moved[it.id] = it.size;
            push_trace(st, st.phase.phase == Phase::Creation ? "modified_insert" : "insert",
                       op.position);
            op_check("insert");
            if (st.phase.phase == Phase::Creation) {
                OpResult cr = creation_step(st.dyn);
                st.dyn = std::move(cr.state);
                for (const auto& it : cr.moved) moved[it.id] = it.size;
                push_trace(st, "create", cr.position);
                op_check("create");
            } else if (st.phase.phase == Phase::Union) {
                OpResult un = union_step(st.dyn, st.phase.frozen_union_j);
                st.dyn = std::move(un.state);
                for (const auto& it : un.moved) moved[it.id] = it.size;
                push_trace(st, "union", un.position);
                op_check("union");
            }
            advance_phase(st, displaced_smalls);
        }
        quantize_x(st.dyn.sol);
    }

    if (!displaced_smalls.empty()) {
        std::sort(displaced_smalls.begin(), displaced_smalls.end());
        for (const auto& it : displaced_smalls) moved[it.id] = it.size;
        place_smalls_firstfit(st.dyn.packing, displaced_smalls);
    }

    Rational moved_size = lump_moved;
    for (const auto& [id, sz] : moved)
        if (id != item.id) moved_size += sz;
    st.ledger.add(static_cast<int>(t), item.size, moved_size);

    ArrivalStats s = stats(st);
    s.phase = processed_phase;
    if (st.check_invariants) {
        long k_embed = k_before > 0 ? k_before : st.phase.K;
        run_checks(st, s, k_embed);
    }
    return s;
}

}  // namespace migratepack
