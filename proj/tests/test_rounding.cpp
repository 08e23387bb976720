#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "state_helpers.hpp"

using namespace migratepack;
using namespace migratepack::testhelpers;

namespace {

std::vector<Item> items_desc(const std::vector<Rational>& sizes, int first_id = 1) {
    std::vector<Item> out;
    int id = first_id;
    for (const auto& s : sizes) out.push_back(Item{id++, s});
    return out;
}

}  // namespace

TEST_CASE("round instance: sizes come from group maxima, reservoir excluded") {
    DynamicState s = state_from_groups({{make_rat(9, 10)}, {make_rat(4, 5), make_rat(7, 10)}});
    RoundedInstance inst = round_instance(s.rounding);
    REQUIRE(inst.classes.size() == 1);
    CHECK(inst.classes[0].size == make_rat(4, 5));
    CHECK(inst.classes[0].multiplicity == 2);
}

TEST_CASE("round instance: equal sizes across a boundary stay valid") {
    DynamicState s = state_from_groups(
        {{make_rat(9, 10)}, {make_rat(1, 2), make_rat(1, 2)}, {make_rat(1, 2), make_rat(2, 5)}});
    s.rounding.check_order();
    RoundedInstance inst = round_instance(s.rounding);
    REQUIRE(inst.classes.size() == 2);
    CHECK(inst.classes[0].size == inst.classes[1].size);
    CHECK(check_properties(s.rounding, make_rat(1, 2)).d_monotone);
}

TEST_CASE("offline round splits") {
    // n = m+1: singleton groups
    auto r1 = offline_round(items_desc({make_rat(9, 10), make_rat(4, 5), make_rat(7, 10)}), 2);
    CHECK(r1.groups[0].size() == 1);
    CHECK(r1.groups[1].size() == 1);
    CHECK(r1.groups[2].size() == 1);

    // n = 7, m = 2: reservoir 3, groups 2 and 2, largest items in front
    std::vector<Rational> seven;
    for (int k = 0; k < 7; ++k) seven.push_back(make_rat(90 - k, 100));
    auto r2 = offline_round(items_desc(seven), 2);
    CHECK(r2.groups[0].size() == 3);
    CHECK(r2.groups[1].size() == 2);
    CHECK(r2.groups[2].size() == 2);
    CHECK(r2.groups[0].lambda().size == make_rat(90, 100));
    r2.check_order();
    auto rep = check_properties(r2, make_rat(1, 2));
    CHECK(rep.b_equal);
    CHECK(rep.c_constant == make_rat(3, 2));
    CHECK(rep.d_monotone);

    // n = 3(m+1): every group 3, d = 1
    std::vector<Rational> nine;
    for (int k = 0; k < 9; ++k) nine.push_back(make_rat(80 - k, 100));
    auto r3 = offline_round(items_desc(nine), 2);
    for (const auto& g : r3.groups) CHECK(g.size() == 3);
    CHECK(check_properties(r3, make_rat(1, 2)).c_constant == 1);

    CHECK_THROWS_AS(offline_round(items_desc({make_rat(1, 2)}), 2), TooFewItems);
}

TEST_CASE("insertion cascade: hand trace") {
    DynamicState s = state_from_groups({{make_rat(9, 10)},
                                        {make_rat(4, 5), make_rat(7, 10)},
                                        {make_rat(1, 2), make_rat(2, 5)}});
    require_consistent(s, "setup");
    long bins_before = s.packing.bin_count();
    Item arrival{100, make_rat(3, 5)};
    OpResult r = insert_op(s, arrival);
    require_consistent(r.state, "after insert");

    const RoundingState& rr = r.state.rounding;
    CHECK(r.position == 1);
    CHECK(rr.groups[0].size() == 2);  // 0.9 and the cascaded 0.8
    CHECK(rr.groups[0].lambda().size == make_rat(9, 10));
    CHECK(rr.groups[1].lambda().size == make_rat(7, 10));  // class size dropped
    CHECK(rr.groups[1].size() == 2);
    CHECK(rr.groups[2].size() == 2);
    // x and y untouched, one fresh reservoir bin
    CHECK(r.state.sol.y_norm() == s.sol.y_norm());
    CHECK(r.state.sol.x_norm() == s.sol.x_norm());
    CHECK(r.state.packing.bin_count() == bins_before + 1);
    REQUIRE(r.moved.size() == 1);
    CHECK(r.moved[0].size == make_rat(4, 5));
}

TEST_CASE("insertion: an oversized arrival goes straight to the reservoir") {
    DynamicState s = state_from_groups({{make_rat(9, 10)},
                                        {make_rat(4, 5), make_rat(7, 10)},
                                        {make_rat(1, 2), make_rat(2, 5)}});
    OpResult r = insert_op(s, Item{100, make_rat(19, 20)});
    require_consistent(r.state, "after insert");
    CHECK(r.position == 0);
    CHECK(r.moved.empty());
    CHECK(r.state.rounding.groups[0].size() == 2);
    CHECK(r.state.rounding.groups[1].size() == 2);
}

TEST_CASE("insertion: a minimal arrival lands in the last group") {
    DynamicState s = state_from_groups({{make_rat(9, 10)},
                                        {make_rat(4, 5), make_rat(7, 10)},
                                        {make_rat(1, 2), make_rat(2, 5)}});
    OpResult r = insert_op(s, Item{100, make_rat(1, 4)});
    require_consistent(r.state, "after insert");
    CHECK(r.position == 2);
    CHECK(r.moved.size() == 2);  // both group maxima cascade
    CHECK(r.state.rounding.groups[0].size() == 2);
}

TEST_CASE("creation phase: split, two steps, singleton columns merge") {
    DynamicState s = state_from_groups({{make_rat(45, 100), make_rat(44, 100),
                                         make_rat(35, 100), make_rat(34, 100)},
                                        {make_rat(3, 10), make_rat(28, 100)}});
    require_consistent(s, "setup");
    DynamicState c = begin_creation_phase(s);
    REQUIRE(c.rounding.creation_active());
    CHECK(c.rounding.groups[0].empty());
    CHECK(c.rounding.groups[2].kind == GroupKind::SubLow);
    CHECK(c.rounding.groups[2].size() == 2);
    CHECK(c.rounding.groups[4].kind == GroupKind::SubHigh);
    CHECK(c.rounding.groups[4].size() == 2);
    // pure bookkeeping: no LP change, still consistent
    require_consistent(c, "after split");
    CHECK(c.sol.y_norm() == s.sol.y_norm());

    long y0 = c.sol.y_norm();
    Rational x0 = c.sol.x_norm();
    OpResult step1 = creation_step(c);
    require_consistent(step1.state, "create step 1");
    CHECK(step1.moved.empty());  // moved items keep their bins
    const RoundingState& r1 = step1.state.rounding;
    CHECK(r1.groups[1].size() == 1);
    CHECK(r1.groups[1].lambda().size == make_rat(45, 100));
    CHECK(r1.groups[3].size() == 1);
    CHECK(r1.groups[3].lambda().size == make_rat(35, 100));
    CHECK(step1.state.sol.y_norm() == y0 + 2);
    CHECK(step1.state.sol.x_norm() == x0 + 2);

    OpResult step2 = creation_step(step1.state);
    require_consistent(step2.state, "create step 2");
    const RoundingState& r2 = step2.state.rounding;
    CHECK(r2.groups[1].size() == 2);
    CHECK(r2.groups[1].lambda().size == make_rat(45, 100));  // rounded up to the max
    // the singleton column is incremented, not duplicated
    Configuration single{{{r2.groups[1].handle, 1}}};
    CHECK(step2.state.sol.y.at(single) == 2);

    CHECK_THROWS_AS(creation_step(step2.state), PhaseError);  // subgroups exhausted
    DynamicState done = end_creation_phase(step2.state);
    require_consistent(done, "after end_creation");
    CHECK_FALSE(done.rounding.creation_active());
}

TEST_CASE("modified insertion requires an active creation phase") {
    DynamicState s = state_from_groups({{make_rat(9, 10)}, {make_rat(1, 2), make_rat(2, 5)}});
    CHECK_THROWS_AS(modified_insert_op(s, Item{50, make_rat(1, 2)}), PhaseError);
}

TEST_CASE("modified insertion cascades through the subgroup ladder") {
    DynamicState s = state_from_groups({{make_rat(45, 100), make_rat(44, 100),
                                         make_rat(35, 100), make_rat(34, 100)},
                                        {make_rat(3, 10), make_rat(28, 100)}});
    DynamicState c = begin_creation_phase(s);
    // a small arrival lands in the deepest group, every class keeps its size
    long old_last = c.rounding.groups.back().size();
    OpResult r = modified_insert_op(c, Item{60, make_rat(27, 100)});
    require_consistent(r.state, "after modified insert");
    CHECK(r.state.rounding.groups.back().size() == old_last);  // swap, not growth
    CHECK(r.state.rounding.reservoir_count() == 5);            // complex gained one
    CHECK(r.state.sol.y_norm() == c.sol.y_norm());
}

TEST_CASE("union target rule") {
    DynamicState all_equal = equal_group_state(4, 2, *[] {
        static DeterministicRng rng(77);
        return &rng;
    }());
    CHECK(union_phase_target(all_equal.rounding) ==
          static_cast<int>(all_equal.rounding.groups.size()) - 1);

    // an ascent forces the largest such position
    DynamicState mix = state_from_groups({{make_rat(95, 100)},
                                          {make_rat(9, 10)},
                                          {make_rat(8, 10)},
                                          {make_rat(7, 10)},
                                          {make_rat(6, 10), make_rat(59, 100)},
                                          {make_rat(55, 100), make_rat(54, 100)}});
    CHECK(union_phase_target(mix.rounding) == 3);
}

TEST_CASE("union step: exact bookkeeping") {
    DynamicState s = state_from_groups({{make_rat(95, 100)},
                                        {make_rat(52, 100), make_rat(51, 100)},
                                        {make_rat(42, 100), make_rat(41, 100)},
                                        {make_rat(32, 100), make_rat(31, 100)},
                                        {make_rat(22, 100), make_rat(21, 100)}});
    require_consistent(s, "setup");
    int j = union_phase_target(s.rounding);
    CHECK(j == 4);
    long y0 = s.sol.y_norm();
    Rational x0 = s.sol.x_norm();
    OpResult r = union_step(s, j);
    require_consistent(r.state, "after union");
    const RoundingState& rr = r.state.rounding;
    CHECK(rr.groups[1].size() == 3);
    CHECK(rr.groups[2].size() == 1);
    CHECK(rr.groups[3].size() == 3);
    CHECK(rr.groups[4].size() == 1);
    CHECK(r.state.sol.y_norm() == y0 + 1);
    CHECK(r.state.sol.x_norm() <= x0 + 1);
    CHECK(r.moved.size() == 2);
    // shrunk groups now round to their former second-largest
    CHECK(rr.groups[2].lambda().size == make_rat(41, 100));
    CHECK(rr.groups[4].lambda().size == make_rat(21, 100));
}

TEST_CASE("full cycle doubles every group and matches consistency throughout") {
    DeterministicRng rng(123);
    for (long K : {1L, 2L}) {
        DynamicState s = equal_group_state(4, K, rng);
        require_consistent(s, "initial");
        ItemSource source(900 + K, 1000);
        CycleTrace cycle = run_rounding_cycle(std::move(s), 4, K, source);
        auto positions = cycle.state.rounding.rounded_positions();
        CHECK(positions.size() == 4);
        CHECK(cycle.state.rounding.reservoir_count() == 2 * K);
        for (int p : positions) CHECK(cycle.state.rounding.groups[p].size() == 2 * K);
    }
}

TEST_CASE("embedding certificate: fresh equal groups pass") {
    DeterministicRng rng(55);
    DynamicState s = equal_group_state(4, 3, rng);
    std::vector<Item> all;
    for (const auto& g : s.rounding.groups)
        all.insert(all.end(), g.items.begin(), g.items.end());
    CHECK(embed_check(s.rounding, all, 3));
}

TEST_CASE("embedding certificate: corrupted order fails") {
    DeterministicRng rng(56);
    DynamicState s = equal_group_state(4, 3, rng);
    std::vector<Item> all;
    for (const auto& g : s.rounding.groups)
        all.insert(all.end(), g.items.begin(), g.items.end());
    // swap the largest of the deepest group into group 1, breaking (D)
    Item big = s.rounding.groups[1].lambda();
    Item small = s.rounding.groups.back().lambda();
    s.rounding.groups[1].remove_by_id(big.id);
    s.rounding.groups.back().remove_by_id(small.id);
    s.rounding.groups[1].insert_sorted(small);
    s.rounding.groups.back().insert_sorted(big);
    CHECK_FALSE(embed_check(s.rounding, all, 3));
}
