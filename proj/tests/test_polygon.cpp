#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dclc/polygon.hpp"

using namespace dclc::polygon;

namespace {

constexpr double kTol = 1e-12;

bool mats_close(const Mat3& a, const Mat3& b, double tol = kTol) {
    for (int i = 0; i < 9; ++i) {
        if (std::abs(a[i] - b[i]) > tol) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("construction guards and basic geometry") {
    CHECK_THROWS_AS(build_polygon(2), std::domain_error);
    CHECK_THROWS_AS(build_polygon(0), std::domain_error);

    const auto m4 = build_polygon(4);
    CHECK(m4.parity == Parity::Even);
    CHECK(m4.radius == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-14));
    CHECK(m4.pure_states.size() == 4);
    CHECK(m4.effects.size() == 4);
    CHECK(m4.complement_effects.size() == 4);
    CHECK(m4.transforms.size() == 8);

    const auto m5 = build_polygon(5);
    CHECK(m5.parity == Parity::Odd);
    CHECK(m5.radius ==
          doctest::Approx(std::sqrt(1.0 / std::cos(std::numbers::pi / 5)))
              .epsilon(1e-14));
}

TEST_CASE("effects respond to states inside the unit interval") {
    for (int n = 3; n <= 12; ++n) {
        const auto model = build_polygon(n);
        for (int j = 0; j < n; ++j) {
            // Self-click is exactly 1 for odd polygons; even effects click
            // exactly on the two adjacent vertices.
            if (model.parity == Parity::Odd) {
                CHECK(probability(model.effects[j], model.pure_states[j]) ==
                      doctest::Approx(1.0).epsilon(1e-13));
            } else {
                CHECK(probability(model.effects[j], model.pure_states[j]) ==
                      doctest::Approx(1.0).epsilon(1e-13));
                CHECK(probability(model.effects[j],
                                  model.pure_states[(j + n - 1) % n]) ==
                      doctest::Approx(1.0).epsilon(1e-13));
            }
            for (int i = 0; i < n; ++i) {
                const double p =
                    probability(model.effects[j], model.pure_states[i]);
                CHECK(p >= -kTol);
                CHECK(p <= 1.0 + kTol);
                const double pc = probability(model.complement_effects[j],
                                              model.pure_states[i]);
                CHECK(p + pc == doctest::Approx(1.0).epsilon(1e-13));
            }
            CHECK(probability(model.effects[j], model.zero) ==
                  doctest::Approx(0.0));
        }
    }
}

TEST_CASE("dihedral transforms form a closed group") {
    for (int n : {3, 4, 5, 6, 7, 8}) {
        const auto model = build_polygon(n);
        for (const auto& a : model.transforms) {
            for (const auto& b : model.transforms) {
                const auto& c = compose(model, a, b);
                CHECK(c.steps == ((a.steps + a.sign * b.steps) % n + n) % n);
                CHECK(c.sign == a.sign * b.sign);
                Mat3 prod{};
                for (int r = 0; r < 3; ++r)
                    for (int col = 0; col < 3; ++col) {
                        double acc = 0;
                        for (int k = 0; k < 3; ++k)
                            acc += a.matrix[3 * r + k] * b.matrix[3 * k + col];
                        prod[3 * r + col] = acc;
                    }
                CHECK(mats_close(prod, c.matrix, 1e-12));
            }
        }
    }
}

TEST_CASE("transforms permute the vertex set and fix the unit effect") {
    for (int n : {3, 4, 5, 6}) {
        const auto model = build_polygon(n);
        for (const auto& t : model.transforms) {
            for (int i = 0; i < n; ++i) {
                const auto moved = apply_transform(t, model.pure_states[i]);
                bool found = false;
                for (int j = 0; j < n && !found; ++j) {
                    found = std::abs(moved[0] - model.pure_states[j][0]) < 1e-9 &&
                            std::abs(moved[1] - model.pure_states[j][1]) < 1e-9 &&
                            std::abs(moved[2] - model.pure_states[j][2]) < 1e-9;
                }
                CHECK(found);
            }
            // Orthogonal in the first two coordinates and trivial on the
            // third: u . (T s) = u . s for every state.
            const auto moved_unit = apply_transform(t, model.unit);
            CHECK(moved_unit[2] == doctest::Approx(1.0));
        }
    }
}

TEST_CASE("pairing of product objects factorizes") {
    const auto model = build_polygon(5);
    const auto& s0 = model.pure_states[0];
    const auto& s3 = model.pure_states[3];
    const auto& e1 = model.effects[1];
    const auto& e4 = model.effects[4];
    const double direct = pairing(product_effect(e1, e4), product_state(s0, s3));
    CHECK(direct ==
          doctest::Approx(probability(e1, s0) * probability(e4, s3))
              .epsilon(1e-13));
}

TEST_CASE("swap transposes and local transforms act on each side") {
    const auto model = build_polygon(6);
    const auto omega = entangled_state(6, 2, 1, +1, +1);
    const auto swapped = swap_sides(omega);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            CHECK(swapped[3 * r + c] == omega[3 * c + r]);

    // Rotation pairs shift the entangled indices additively in each sector.
    for (int n : {5, 6}) {
        const auto poly = build_polygon(n);
        const auto& rot_a = transform_at(poly, 2, +1);
        const auto& rot_b = transform_at(poly, 3, +1);
        for (int p : {+1, -1}) {
            for (int q : {+1, -1}) {
                for (int k = 0; k < n; ++k) {
                    for (int l = 0; l < n; ++l) {
                        const auto base = entangled_state(n, k, l, p, q);
                        const auto moved =
                            local_transform_bipartite(rot_a, rot_b, base);
                        const auto expected = entangled_state(
                            n, (k + 2) % n, (l + 3) % n, p, q);
                        CHECK(mats_close(moved, expected, 1e-12));
                    }
                }
            }
        }
    }
}

TEST_CASE("entangled closed-form families deduplicate to 2n members") {
    for (int n = 3; n <= 9; ++n) {
        const auto base = build_polygon(n);
        const auto type1 = build_bipartite(base, Composition::TypeI);
        CHECK(type1.entangled_states.size() == 2 * static_cast<std::size_t>(n));
        CHECK(type1.entangled_effects.empty());
        CHECK(type1.product_states.size() == static_cast<std::size_t>(n * n));
        CHECK(type1.product_effects.size() ==
              static_cast<std::size_t>((2 * n + 2) * (2 * n + 2)));

        const auto type2 = build_bipartite(base, Composition::TypeII);
        CHECK(type2.entangled_effects.size() ==
              2 * static_cast<std::size_t>(n));
        CHECK(type2.entangled_states.empty());
        if (base.parity == Parity::Even) {
            CHECK(type2.clubbed_effects.size() ==
                  static_cast<std::size_t>(2 * n * n));
        } else {
            CHECK(type2.clubbed_effects.empty());
        }
    }
}

TEST_CASE("both compositions pass the consistency sweep") {
    for (int n = 3; n <= 12; ++n) {
        const auto base = build_polygon(n);
        CHECK(consistency_check(build_bipartite(base, Composition::TypeI)));
        CHECK(consistency_check(build_bipartite(base, Composition::TypeII)));
    }
}

TEST_CASE("a corrupted effect fails the consistency sweep") {
    const auto base = build_polygon(5);
    auto model = build_bipartite(base, Composition::TypeI);
    model.product_effects[3][0] += 10.0;
    CHECK_FALSE(consistency_check(model));

    auto model2 = build_bipartite(base, Composition::TypeII);
    model2.entangled_effects[0][8] += 10.0;
    CHECK_FALSE(consistency_check(model2));
}

TEST_CASE("frozen even-square values") {
    // n = 4: the paired effect on the entangled family peaks at exactly 1.
    const auto m4 = build_polygon(4);
    const auto club = clubbed_effect(m4, 0, 0);
    CHECK(pairing(club, entangled_state(4, 0, 0, +1, +1)) ==
          doctest::Approx(1.0).epsilon(1e-13));
    CHECK(pairing(club, entangled_state(4, 1, 0, +1, +1)) ==
          doctest::Approx(1.0).epsilon(1e-13));
    // The paired complement restores the unit on every product state.
    const auto comp = clubbed_effect_complement(m4, 2, 3);
    const auto direct = clubbed_effect(m4, 2, 3);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const auto st = product_state(m4.pure_states[i], m4.pure_states[j]);
            CHECK(pairing(direct, st) + pairing(comp, st) ==
                  doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("frozen odd-pentagon values") {
    // n = 5: the reference entangled effect clicks exactly on equal vertex
    // pairs and vanishes exactly at relative offsets 2 and 3.
    const auto m5 = build_polygon(5);
    const auto e00 = entangled_effect(5, 0, 0, +1, +1);
    for (int k = 0; k < 5; ++k) {
        for (int s = 0; s < 5; ++s) {
            const double p = pairing(
                e00, product_state(m5.pure_states[k], m5.pure_states[s]));
            const int offset = ((k - s) % 5 + 5) % 5;
            if (offset == 0) {
                CHECK(p == doctest::Approx(1.0).epsilon(1e-13));
            } else if (offset == 2 || offset == 3) {
                CHECK(std::abs(p) < 1e-13);
            } else {
                CHECK(p > 1e-3);
                CHECK(p < 1.0 - 1e-3);
            }
        }
    }
}

TEST_CASE("entangled argument validation") {
    CHECK_THROWS_AS(entangled_state(5, 5, 0, +1, +1), std::domain_error);
    CHECK_THROWS_AS(entangled_state(5, 0, -1, +1, +1), std::domain_error);
    CHECK_THROWS_AS(entangled_state(5, 0, 0, 2, 1), std::domain_error);
    CHECK_THROWS_AS(entangled_effect(2, 0, 0, 1, 1), std::domain_error);
    CHECK_THROWS_AS(clubbed_effect(build_polygon(4), 4, 0), std::domain_error);
}
