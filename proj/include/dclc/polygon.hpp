#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

// Regular-polygon state spaces: single systems (states, effects, dihedral
// transformations) and the two extreme bipartite compositions — entangled
// states with product effects, and product states with entangled effects.

namespace dclc::polygon {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<double, 9>;  // row-major 3x3

enum class Parity { Odd, Even };
enum class Composition { TypeI, TypeII };

// One dihedral symmetry: rotation by 2*pi*k/n when sign = +1, reflection
// otherwise.  The matrix acts on states from the left.
struct Transform {
    int steps = 0;   // k in 0..n-1
    int sign = +1;   // +1 rotation, -1 reflection
    Mat3 matrix{};
};

struct PolygonModel {
    int n = 0;
    Parity parity = Parity::Odd;
    double radius = 0.0;                    // sqrt(sec(pi/n))
    Vec3 unit{0.0, 0.0, 1.0};
    Vec3 zero{0.0, 0.0, 0.0};
    std::vector<Vec3> pure_states;          // n vertices
    std::vector<Vec3> effects;              // n extreme effects
    std::vector<Vec3> complement_effects;   // unit - effect, index aligned
    std::vector<Transform> transforms;      // 2n: rotations then reflections
};

// Throws std::domain_error when n < 3.
PolygonModel build_polygon(int n);

double probability(const Vec3& effect, const Vec3& state);

Vec3 apply_transform(const Transform& t, const Vec3& state);

// Group law ((k,p) then acting after (l,q)) = (k + p*l mod n, p*q); the
// returned element is looked up from the model so composition provably stays
// inside the 2n-element set.
const Transform& compose(const PolygonModel& model, const Transform& first,
                         const Transform& second);

const Transform& transform_at(const PolygonModel& model, int steps, int sign);

// ===== Bipartite representation: 3x3 matrices, pairing Tr(E^T * Omega) =====

Mat3 product_state(const Vec3& state_a, const Vec3& state_b);
Mat3 product_effect(const Vec3& effect_a, const Vec3& effect_b);
double pairing(const Mat3& effect, const Mat3& state);

// Closed forms for the maximally entangled family; p, q in {+1, -1}.
// Out-of-range k, l or invalid signs throw std::domain_error.
Mat3 entangled_state(int n, int k, int l, int p, int q);
Mat3 entangled_effect(int n, int k, int l, int p, int q);

// Local dihedral action and the (global) side swap.
Mat3 local_transform_bipartite(const Transform& alice, const Transform& bob,
                               const Mat3& omega);
Mat3 swap_sides(const Mat3& omega);

// Even-gon paired effects: e_i (x) e_j + complement pair, and the mixed
// complement version.
Mat3 clubbed_effect(const PolygonModel& model, int i, int j);
Mat3 clubbed_effect_complement(const PolygonModel& model, int i, int j);

struct BipartiteModel {
    PolygonModel base;
    Composition composition = Composition::TypeI;
    std::vector<Mat3> product_states;       // n^2 vertex pairs
    std::vector<Mat3> entangled_states;     // TypeI: deduplicated orbit
    std::vector<Mat3> product_effects;      // all pairs over {u, e_i, comp}
    std::vector<Mat3> entangled_effects;    // TypeII: deduplicated orbit
    std::vector<Mat3> clubbed_effects;      // TypeII, even n only
};

BipartiteModel build_bipartite(const PolygonModel& base, Composition comp);

// TypeI: every product effect on every state lies in [0,1]; TypeII: every
// effect on every product state lies in [0,1].  Tolerance 1e-12.
bool consistency_check(const BipartiteModel& model);

const char* composition_name(Composition comp);
const char* parity_name(Parity parity);

}  // namespace dclc::polygon
