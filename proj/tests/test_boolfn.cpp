#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <stdexcept>

#include "dclc/boolfn.hpp"

using namespace dclc::boolfn;

TEST_CASE("truth tables round-trip through strings") {
    const auto fn = BooleanFunction::from_string(2, "0111");
    CHECK(fn.arity() == 2);
    CHECK(fn.to_string() == "0111");
    CHECK(fn.evaluate_index(0) == 0);
    CHECK(fn.evaluate_index(1) == 1);
    CHECK(fn.evaluate_index(2) == 1);
    CHECK(fn.evaluate_index(3) == 1);
    CHECK(fn.evaluate({0, 0}) == 0);
    CHECK(fn.evaluate({0, 1}) == 1);
    CHECK(fn.evaluate({1, 0}) == 1);
    CHECK(fn.evaluate({1, 1}) == 1);

    CHECK_THROWS_AS(BooleanFunction::from_string(2, "012"),
                    std::invalid_argument);
    CHECK_THROWS_AS(BooleanFunction::from_string(2, "01010"),
                    std::invalid_argument);
}

TEST_CASE("index convention is most-significant-bit first") {
    // Table index of (a1, a2) is 2*a1 + a2, so "0010" is the indicator of
    // the argument pair (1, 0).
    const auto fn = BooleanFunction::from_string(2, "0010");
    CHECK(fn.evaluate({1, 0}) == 1);
    CHECK(fn.evaluate({0, 1}) == 0);

    const auto f3 = BooleanFunction::from_string(3, "00000001");
    CHECK(f3.evaluate({1, 1, 1}) == 1);
    CHECK(f3.evaluate_index(0b111) == 1);
    CHECK(f3.evaluate_index(0b110) == 0);
}

TEST_CASE("structural predicates") {
    CHECK(named_function("const0").is_constant());
    CHECK(named_function("const1").is_constant());
    CHECK_FALSE(named_function("AND").is_constant());

    CHECK(named_function("XOR").is_balanced());
    CHECK(named_function("XNOR").is_balanced());
    CHECK_FALSE(named_function("OR").is_balanced());

    // Projections onto either argument and their complements.
    CHECK(BooleanFunction::from_string(2, "0011").is_single_bit());
    CHECK(BooleanFunction::from_string(2, "1100").is_single_bit());
    CHECK(BooleanFunction::from_string(2, "0101").is_single_bit());
    CHECK(BooleanFunction::from_string(2, "1010").is_single_bit());
    CHECK_FALSE(named_function("XOR").is_single_bit());
    CHECK_FALSE(named_function("const0").is_single_bit());

    CHECK(named_function("AND").is_symmetric());
    CHECK(named_function("OR").is_symmetric());
    CHECK(named_function("XOR").is_symmetric());
    CHECK_FALSE(BooleanFunction::from_string(2, "0011").is_symmetric());

    const auto c = classify_function(named_function("XOR"));
    CHECK(c.balanced);
    CHECK(c.symmetric);
    CHECK_FALSE(c.constant);
    CHECK_FALSE(c.single_bit);
}

TEST_CASE("named aliases and unknown names") {
    CHECK(named_function("and").to_string() == "0001");
    CHECK(named_function("OR").to_string() == "0111");
    CHECK(named_function("xor").to_string() == "0110");
    CHECK(named_function("XNOR").to_string() == "1001");
    CHECK(named_function("NOR").to_string() == "1000");
    CHECK(named_function("NAND").to_string() == "1110");
    CHECK_THROWS_AS(named_function("IMPLIES"), std::invalid_argument);
}

TEST_CASE("task evaluation composes inner then outer") {
    const auto task = make_task(named_function("OR"), named_function("XOR"));
    CHECK(task.n == 2);
    // x = 10, y = 01: f(1,0)=1, f(0,1)=1, OR(1,1)=1.
    CHECK(evaluate_task(task, 0b10, 0b01) == 1);
    // x = 11, y = 11: f(1,1)=0 twice, OR(0,0)=0.
    CHECK(evaluate_task(task, 0b11, 0b11) == 0);
    // x = 00, y = 00 gives 0 as well.
    CHECK(evaluate_task(task, 0b00, 0b00) == 0);
    CHECK_THROWS_AS(evaluate_task(task, 4, 0), std::invalid_argument);

    const auto t3 = make_task(BooleanFunction::from_string(3, "01111111"),
                              named_function("AND"));
    CHECK(t3.n == 3);
    // x = 101, y = 110: f pairs are (1,1),(0,1),(1,0) -> 1,0,0 -> OR3 = 1.
    CHECK(evaluate_task(t3, 0b101, 0b110) == 1);
    CHECK(evaluate_task(t3, 0b000, 0b000) == 0);

    CHECK_THROWS_AS(make_task(named_function("OR"),
                              BooleanFunction::from_string(3, "00000001")),
                    std::invalid_argument);
}

TEST_CASE("output ratios of reference tasks") {
    const auto or_xor = make_task(named_function("OR"), named_function("XOR"));
    CHECK(output_ratio(or_xor) == std::pair<int, int>{4, 12});

    const auto xor_xor = make_task(named_function("XOR"), named_function("XOR"));
    CHECK(output_ratio(xor_xor) == std::pair<int, int>{8, 8});

    const auto const1_and =
        make_task(named_function("const1"), named_function("AND"));
    CHECK(output_ratio(const1_and) == std::pair<int, int>{0, 16});
}

TEST_CASE("quadruple-group scan shape and reference values") {
    const auto or_xor = make_task(named_function("OR"), named_function("XOR"));
    const auto scan = quad_group_scan(or_xor);
    CHECK(scan.groups.size() == 36);  // C(4,2)^2
    CHECK(scan.has_one_three);
    for (const auto& g : scan.groups) {
        CHECK(g.zeros + g.ones == 4);
        CHECK(g.x0 < g.x1);
        CHECK(g.y0 < g.y1);
    }

    const auto const0 =
        make_task(named_function("const0"), named_function("AND"));
    CHECK_FALSE(quad_group_scan(const0).has_one_three);
}

TEST_CASE("every one of the 256 two-bit tasks is generated once") {
    const auto tasks = all_two_bit_tasks();
    CHECK(tasks.size() == 256);
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& t : tasks) {
        CHECK(t.n == 2);
        seen.insert({t.outer.to_string(), t.inner.to_string()});
    }
    CHECK(seen.size() == 256);
}

TEST_CASE("triviality criteria on frozen examples") {
    // Constant or single-bit layers are always trivial.
    CHECK(matches_triviality_criteria(
        make_task(named_function("const1"), named_function("AND"))));
    CHECK(matches_triviality_criteria(
        make_task(named_function("OR"), BooleanFunction::from_string(2, "0011"))));
    // Fold-regrouping case: F = AND with both arguments negated composed
    // with NOR regroups per party.
    CHECK(matches_triviality_criteria(
        make_task(named_function("AND"), named_function("NOR"))));
    CHECK(matches_triviality_criteria(
        make_task(named_function("XOR"), named_function("XOR"))));
    // Composing AND with itself collapses to "all four bits are 1", which
    // each party can summarize in one bit.
    CHECK(matches_triviality_criteria(
        make_task(named_function("AND"), named_function("AND"))));
    // Reference nontrivial tasks.
    CHECK_FALSE(matches_triviality_criteria(
        make_task(named_function("OR"), named_function("XOR"))));
    CHECK_FALSE(matches_triviality_criteria(
        make_task(named_function("AND"), named_function("OR"))));
}

TEST_CASE("task literals parse and format") {
    const auto t1 = parse_task_literal("F:OR,f:XOR");
    CHECK(t1.outer.to_string() == "0111");
    CHECK(t1.inner.to_string() == "0110");
    CHECK(format_task_literal(t1) == "F:0111,f:0110");

    const auto t2 = parse_task_literal("F:0111,f:0110");
    CHECK(t2 == t1);

    // Hex outer tables cover n > 2.
    const auto t3 = parse_task_literal("F:7F,f:AND");
    CHECK(t3.n == 3);
    CHECK(t3.outer.to_string() == "01111111");

    const auto t4 = parse_task_literal(format_task_literal(t3));
    CHECK(t4 == t3);

    CHECK_THROWS_AS(parse_task_literal("OR,XOR"), std::invalid_argument);
    CHECK_THROWS_AS(parse_task_literal("F:OR"), std::invalid_argument);
    CHECK_THROWS_AS(parse_task_literal("F:OR,f:012"), std::invalid_argument);
}
