#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "dclc/boolfn.hpp"
#include "dclc/classical.hpp"
#include "dclc/nogo.hpp"
#include "dclc/polygon.hpp"

using namespace dclc;
using nogo::Feasibility;

namespace {

boolfn::DualLayerTask task_of(const std::string& outer,
                              const std::string& inner) {
    return boolfn::make_task(boolfn::named_function(outer),
                             boolfn::named_function(inner));
}

}  // namespace

TEST_CASE("feasibility names") {
    CHECK(std::string(nogo::feasibility_name(Feasibility::Feasible)) ==
          "feasible");
    CHECK(std::string(nogo::feasibility_name(Feasibility::Infeasible)) ==
          "infeasible");
    CHECK(std::string(nogo::feasibility_name(Feasibility::Indeterminate)) ==
          "indeterminate");
}

TEST_CASE("decoding problem validation") {
    const auto model = polygon::build_polygon(5);
    nogo::DecodingProblem bad;
    bad.states.push_back(polygon::product_state(model.pure_states[0],
                                                model.pure_states[0]));
    CHECK_THROWS_AS(nogo::perfect_decoding_feasible(
                        model, polygon::Composition::TypeI, bad),
                    std::invalid_argument);
    bad.targets = {2};
    CHECK_THROWS_AS(nogo::perfect_decoding_feasible(
                        model, polygon::Composition::TypeI, bad),
                    std::invalid_argument);
}

TEST_CASE("separable witness problems are feasible in both compositions") {
    // Ask the decoder to distinguish vertex 0 from the most distant vertex:
    // the extreme effect pair does this exactly, in both compositions.
    for (int n : {4, 5, 6, 7}) {
        const auto model = polygon::build_polygon(n);
        const int d = (n % 2 == 0) ? n / 2 : (n + 1) / 2;
        nogo::DecodingProblem problem;
        problem.states.push_back(polygon::product_state(model.pure_states[0],
                                                        model.pure_states[0]));
        problem.states.push_back(polygon::product_state(model.pure_states[d],
                                                        model.pure_states[d]));
        problem.targets = {1, 0};
        for (auto comp :
             {polygon::Composition::TypeI, polygon::Composition::TypeII}) {
            CHECK(nogo::perfect_decoding_feasible(model, comp, problem) ==
                  Feasibility::Feasible);
        }
    }
}

TEST_CASE("contradictory targets are infeasible") {
    const auto model = polygon::build_polygon(5);
    const auto state = polygon::product_state(model.pure_states[1],
                                              model.pure_states[3]);
    nogo::DecodingProblem problem;
    problem.states = {state, state};
    problem.targets = {0, 1};
    for (auto comp :
         {polygon::Composition::TypeI, polygon::Composition::TypeII}) {
        CHECK(nogo::perfect_decoding_feasible(model, comp, problem) ==
              Feasibility::Infeasible);
    }
}

TEST_CASE("single-task sweeps on the square: nontrivial is blocked") {
    const auto task = task_of("OR", "XOR");
    for (auto comp :
         {polygon::Composition::TypeI, polygon::Composition::TypeII}) {
        const auto report = nogo::verify_no_go(4, comp, task, 2);
        REQUIRE(report.tasks.size() == 1);
        const auto& t = report.tasks[0];
        CHECK_FALSE(t.task_trivial);
        CHECK(t.assignments_checked > 0);
        CHECK(t.feasible == 0);
        CHECK(t.indeterminate == 0);
        CHECK(report.all_nontrivial_infeasible);
        CHECK(report.total_indeterminate == 0);
        CHECK(t.max_agreement > 0.5);
        CHECK(t.max_agreement < 1.0 - 1e-6);
    }
}

TEST_CASE("single-task sweeps on the square: trivial has a witness") {
    const auto task = task_of("XOR", "XOR");
    for (auto comp :
         {polygon::Composition::TypeI, polygon::Composition::TypeII}) {
        const auto report = nogo::verify_no_go(4, comp, task, 2);
        REQUIRE(report.tasks.size() == 1);
        const auto& t = report.tasks[0];
        CHECK(t.task_trivial);
        CHECK(t.feasible > 0);
        CHECK(t.indeterminate == 0);
        CHECK(t.max_agreement == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("sweep guards") {
    CHECK_THROWS_AS(nogo::verify_no_go(3, polygon::Composition::TypeI,
                                       std::nullopt, 1),
                    std::domain_error);
    CHECK_THROWS_AS(nogo::verify_no_go(10, polygon::Composition::TypeI,
                                       std::nullopt, 1),
                    std::domain_error);
    CHECK_THROWS_AS(nogo::verify_odd_type1_positivity(4), std::domain_error);
    CHECK_THROWS_AS(nogo::verify_type2_click_table(6), std::domain_error);
    CHECK_THROWS_AS(nogo::verify_even_formulas(5), std::domain_error);
    CHECK_THROWS_AS(nogo::verify_even_condition_tables(7), std::domain_error);
}

TEST_CASE("odd positivity margins") {
    CHECK(nogo::verify_odd_type1_positivity(5) > 1e-6);
    CHECK(nogo::verify_odd_type1_positivity(7) > 1e-6);
}

TEST_CASE("odd click table") {
    CHECK(nogo::verify_type2_click_table(5));
    CHECK(nogo::verify_type2_click_table(7));
}

TEST_CASE("even sector formulas and condition tables") {
    CHECK(nogo::verify_even_formulas(4) < 1e-9);
    CHECK(nogo::verify_even_formulas(6) < 1e-9);
    CHECK(nogo::verify_even_condition_tables(4));
    CHECK(nogo::verify_even_condition_tables(6));
}

TEST_CASE("feasibility is invariant under local symmetry conjugation") {
    CHECK(nogo::symmetry_reduction_spot_check(5, polygon::Composition::TypeI,
                                              11, 6));
    CHECK(nogo::symmetry_reduction_spot_check(4, polygon::Composition::TypeII,
                                              12, 6));
}

TEST_CASE("canonical strategy for the harness") {
    const auto strat =
        nogo::canonical_polygon_strategy(5, polygon::Composition::TypeI,
                                         task_of("OR", "XOR"));
    CHECK(strat.agreement > 0.5);
    CHECK(strat.agreement < 1.0);
    double mean = 0.0;
    for (int x = 0; x < 4; ++x) {
        for (int y = 0; y < 4; ++y) {
            CHECK(strat.success[x][y] >= -1e-9);
            CHECK(strat.success[x][y] <= 1.0 + 1e-9);
            mean += strat.success[x][y];
        }
    }
    CHECK(mean / 16.0 == doctest::Approx(strat.agreement).epsilon(1e-6));

    // The canonical encoding is deliberately fixed (input index -> vertex),
    // so even a trivial task keeps a nontrivial decoding gap when its target
    // pattern is not decodable from that layout.
    const auto trivial =
        nogo::canonical_polygon_strategy(5, polygon::Composition::TypeI,
                                         task_of("XOR", "XOR"));
    CHECK(trivial.agreement > 0.5);
    CHECK(trivial.agreement <= 1.0);

    // An all-ones target is decoded exactly by the unit effect, so the
    // optimizer must reach agreement 1 there.
    const auto unit =
        nogo::canonical_polygon_strategy(5, polygon::Composition::TypeI,
                                         task_of("const1", "AND"));
    CHECK(unit.agreement == doctest::Approx(1.0).epsilon(1e-9));
    for (int x = 0; x < 4; ++x) {
        for (int y = 0; y < 4; ++y) {
            CHECK(unit.success[x][y] == doctest::Approx(1.0).epsilon(1e-9));
        }
    }

    CHECK_THROWS_AS(
        nogo::canonical_polygon_strategy(
            5, polygon::Composition::TypeI,
            boolfn::make_task(boolfn::BooleanFunction::from_string(3,
                                                                   "00000001"),
                              boolfn::named_function("XOR"))),
        std::invalid_argument);
}
