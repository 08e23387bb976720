#include "migratepack/binpack.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace migratepack {

bool item_is_small(const Item& item, const Rational& eps) {
    if (eps <= 0 || eps > make_rat(1, 2)) throw BinpackError("eps must lie in (0, 1/2]");
    return item.size < eps / 2;
}

Rational RoundedInstance::size_of(int handle) const {
    for (const auto& c : classes)
        if (c.handle == handle) return c.size;
    throw BinpackError("unknown class handle");
}

long RoundedInstance::multiplicity_of(int handle) const {
    for (const auto& c : classes)
        if (c.handle == handle) return c.multiplicity;
    throw BinpackError("unknown class handle");
}

int Configuration::count_of(int handle) const {
    for (const auto& [h, n] : counts)
        if (h == handle) return n;
    return 0;
}

int Configuration::total_items() const {
    int s = 0;
    for (const auto& [h, n] : counts) s += n;
    return s;
}

Rational Configuration::load(const RoundedInstance& inst) const {
    Rational s = 0;
    for (const auto& [h, n] : counts) s += inst.size_of(h) * n;
    return s;
}

std::string config_to_string(const Configuration& c) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [h, n] : c.counts) {
        if (!first) os << ",";
        os << n << "x#" << h;
        first = false;
    }
    os << "}";
    return os.str();
}

namespace {

void enumerate_rec(const RoundedInstance& inst, size_t k, const Rational& remaining,
                   std::vector<std::pair<int, int>>& partial, long cap,
                   std::vector<Configuration>& out) {
    if (k == inst.classes.size()) {
        if (!partial.empty()) {
            if (static_cast<long>(out.size()) >= cap)
                throw ExplosionGuard("configuration count exceeds cap");
            Configuration c{partial};
            // classes are visited in ladder order, which is not handle order
            // once creation phases have allocated fresh handles up front
            std::sort(c.counts.begin(), c.counts.end());
            out.push_back(std::move(c));
        }
        return;
    }
    const auto& cls = inst.classes[k];
    if (cls.size <= 0) throw BinpackError("class size must be positive");
    long max_count = rat_floor(remaining / cls.size);
    for (long n = 0; n <= max_count; ++n) {
        if (n > 0) partial.emplace_back(cls.handle, static_cast<int>(n));
        enumerate_rec(inst, k + 1, remaining - cls.size * static_cast<long>(n), partial, cap, out);
        if (n > 0) partial.pop_back();
    }
}

}  // namespace

std::vector<Configuration> enumerate_configurations(const RoundedInstance& inst, long cap) {
    std::vector<Configuration> out;
    std::vector<std::pair<int, int>> partial;
    enumerate_rec(inst, 0, Rational(1), partial, cap, out);
    std::sort(out.begin(), out.end());
    return out;
}

int ConfigLp::column_index(const Configuration& c) const {
    auto it = std::lower_bound(columns.begin(), columns.end(), c);
    if (it == columns.end() || !(*it == c)) return -1;
    return static_cast<int>(it - columns.begin());
}

ConfigLp build_config_lp(const RoundedInstance& inst, long cap) {
    if (inst.classes.empty()) throw BinpackError("cannot build config lp for empty instance");
    ConfigLp out;
    out.columns = enumerate_configurations(inst, cap);
    out.lp = Lp(static_cast<int>(inst.classes.size()), static_cast<int>(out.columns.size()));
    for (int i = 0; i < out.lp.rows; ++i) {
        out.class_handles.push_back(inst.classes[i].handle);
        out.lp.b[i] = inst.classes[i].multiplicity;
        for (int j = 0; j < out.lp.cols; ++j)
            out.lp.a[i][j] = out.columns[j].count_of(inst.classes[i].handle);
    }
    return out;
}

bool PackingState::contains(int item_id) const {
    for (const auto& [bin, ids] : bins)
        if (std::find(ids.begin(), ids.end(), item_id) != ids.end()) return true;
    return false;
}

Rational Bin::load() const {
    Rational s = 0;
    for (const auto& [h, items] : slots)
        for (const auto& it : items) s += it.size;
    for (const auto& it : smalls) s += it.size;
    return s;
}

std::vector<int> Bin::item_ids() const {
    std::vector<int> ids;
    for (const auto& [h, items] : slots)
        for (const auto& it : items) ids.push_back(it.id);
    for (const auto& it : smalls) ids.push_back(it.id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

int Packing::open_bin(BinKind kind) {
    int id = next_id++;
    Bin b;
    b.id = id;
    b.kind = kind;
    bins.emplace(id, std::move(b));
    return id;
}

PackingState Packing::to_state() const {
    PackingState st;
    for (const auto& [id, bin] : bins) st.bins[id] = bin.item_ids();
    return st;
}

PackingState first_fit(const PackingState& packing, const std::map<int, Rational>& size_of,
                       const std::vector<Item>& arrivals) {
    PackingState out = packing;
    std::map<int, Rational> residual;
    int max_id = 0;
    for (const auto& [bin, ids] : out.bins) {
        Rational load = 0;
        for (int id : ids) {
            auto it = size_of.find(id);
            if (it == size_of.end()) throw BinpackError("missing size for packed item");
            load += it->second;
        }
        residual[bin] = Rational(1) - load;
        max_id = std::max(max_id, bin);
    }
    for (const auto& item : arrivals) {
        int target = -1;
        for (auto& [bin, res] : residual)
            if (res >= item.size) {
                target = bin;
                break;
            }
        if (target < 0) {
            target = ++max_id;
            residual[target] = 1;
            out.bins[target] = {};
        }
        out.bins[target].push_back(item.id);
        residual[target] -= item.size;
    }
    return out;
}

Packing pack_from_solution(const RoundedInstance& inst,
                           const std::map<int, std::vector<Item>>& class_items,
                           const std::vector<Item>& reservoir_items, const ConfigLp& clp,
                           const IntegralSolution& y) {
    // slot coverage per class must reach the class multiplicity
    for (int r = 0; r < clp.lp.rows; ++r) {
        long covered = 0;
        for (const auto& [col, count] : y.values) covered += clp.lp.a[r][col].get_num().get_si() * count;
        if (covered < inst.classes[r].multiplicity)
            throw SlotShortfall("solution covers fewer slots than items in class " +
                                std::to_string(clp.class_handles[r]));
    }

    Packing packing;
    // bins in column order so the layout is deterministic
    std::vector<int> bin_ids;
    for (const auto& [col, count] : y.values) {
        for (long k = 0; k < count; ++k) {
            int id = packing.open_bin(BinKind::Config);
            packing.bins[id].pattern = clp.columns[col];
            bin_ids.push_back(id);
        }
    }
    // fill slots class by class, items in decreasing actual size, ties by id
    for (const auto& cls : inst.classes) {
        std::vector<Item> items;
        auto it = class_items.find(cls.handle);
        if (it != class_items.end()) items = it->second;
        std::sort(items.begin(), items.end(), size_desc_id_asc);
        size_t next = 0;
        for (int id : bin_ids) {
            Bin& bin = packing.bins[id];
            int want = bin.pattern.count_of(cls.handle);
            for (int s = 0; s < want && next < items.size(); ++s)
                bin.slots[cls.handle].push_back(items[next++]);
            if (next == items.size()) break;
        }
        if (next != items.size()) throw SlotShortfall("internal slot fill shortfall");
    }
    for (const auto& item : reservoir_items) {
        int id = packing.open_bin(BinKind::Reservoir);
        packing.bins[id].slots[0].push_back(item);
    }
    return packing;
}

namespace {

// Max-weight perfect matching on an n x n rational weight matrix (Hungarian
// algorithm with potentials, minimizing negated weights).
std::vector<int> max_weight_assignment(const std::vector<std::vector<Rational>>& w) {
    int n = static_cast<int>(w.size());
    if (n == 0) return {};
    Rational big = 1;
    for (const auto& row : w)
        for (const auto& v : row) big += abs(v);

    std::vector<std::vector<Rational>> cost(n + 1, std::vector<Rational>(n + 1, Rational(0)));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) cost[i][j] = -w[i - 1][j - 1];

    std::vector<Rational> u(n + 1, Rational(0)), v(n + 1, Rational(0));
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<Rational> minv(n + 1, big);
        std::vector<bool> used(n + 1, false);
        do {
            used[j0] = true;
            int i0 = p[j0], j1 = -1;
            Rational delta = big;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                Rational cur = cost[i0][j] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> match(n, -1);  // row -> column
    for (int j = 1; j <= n; ++j)
        if (p[j] > 0) match[p[j] - 1] = j - 1;
    return match;
}

}  // namespace

Rational canonical_moved_size(const PackingState& before, const PackingState& after,
                              const std::map<int, Rational>& size_of,
                              const std::vector<int>& exclude) {
    std::set<int> skip(exclude.begin(), exclude.end());
    auto contents = [&](const std::vector<int>& ids) {
        std::vector<int> out;
        for (int id : ids)
            if (!skip.count(id)) out.push_back(id);
        std::sort(out.begin(), out.end());
        return out;
    };

    // Distinct item ids make bins with identical content matchable greedily:
    // such a bin has zero overlap with every other bin of the counterpart
    // packing, so pairing them off first loses nothing.
    std::map<std::vector<int>, std::vector<int>> old_by_content;
    for (const auto& [id, items] : before.bins) old_by_content[contents(items)].push_back(id);
    std::vector<std::vector<int>> old_rest, new_rest;
    for (const auto& [id, items] : after.bins) {
        auto c = contents(items);
        auto it = old_by_content.find(c);
        if (it != old_by_content.end() && !it->second.empty()) {
            it->second.pop_back();
            if (it->second.empty()) old_by_content.erase(it);
        } else {
            new_rest.push_back(c);
        }
    }
    for (const auto& [c, ids] : old_by_content)
        for (size_t k = 0; k < ids.size(); ++k) old_rest.push_back(c);

    std::set<int> old_items;
    for (const auto& c : old_rest) old_items.insert(c.begin(), c.end());
    Rational total_common = 0;
    for (const auto& c : new_rest)
        for (int id : c)
            if (old_items.count(id)) total_common += size_of.at(id);
    if (old_rest.empty() || new_rest.empty()) return total_common;

    int n = static_cast<int>(std::max(old_rest.size(), new_rest.size()));
    std::vector<std::vector<Rational>> w(n, std::vector<Rational>(n, Rational(0)));
    for (size_t i = 0; i < old_rest.size(); ++i) {
        std::set<int> members(old_rest[i].begin(), old_rest[i].end());
        for (size_t j = 0; j < new_rest.size(); ++j) {
            Rational overlap = 0;
            for (int id : new_rest[j])
                if (members.count(id)) overlap += size_of.at(id);
            w[i][j] = overlap;
        }
    }
    auto match = max_weight_assignment(w);
    Rational kept = 0;
    for (int i = 0; i < n; ++i)
        if (match[i] >= 0) kept += w[i][match[i]];
    return total_common - kept;
}

Rational migration_factor(const PackingState& before, const PackingState& after,
                          const Item& arriving, const std::map<int, Rational>& size_of) {
    if (before.contains(arriving.id)) throw BinpackError("arriving item already packed");
    if (!after.contains(arriving.id)) throw BinpackError("arriving item missing from new packing");
    if (arriving.size <= 0) throw BinpackError("arriving size must be positive");
    return canonical_moved_size(before, after, size_of, {arriving.id}) / arriving.size;
}

void MigrationLedger::add(int t, const Rational& arriving_size, const Rational& moved_size) {
    MigrationRecord r;
    r.t = t;
    r.arriving_size = arriving_size;
    r.moved_size = moved_size;
    r.factor = arriving_size > 0 ? moved_size / arriving_size : Rational(0);
    records.push_back(r);
}

Rational MigrationLedger::max_factor() const {
    Rational m = 0;
    for (const auto& r : records) m = std::max(m, r.factor);
    return m;
}

}  // namespace migratepack
