#include "dclc/polygon.hpp"

#include <cmath>
#include <numbers>

namespace dclc::polygon {

namespace {

constexpr double kConsistencyTol = 1e-12;
constexpr double kDedupeTol = 1e-9;

Mat3 rotation_form(double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return Mat3{c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0};
}

Mat3 reflection_form(double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return Mat3{c, s, 0.0, s, -c, 0.0, 0.0, 0.0, 1.0};
}

Mat3 mat3_mul(const Mat3& a, const Mat3& b) {
    Mat3 out{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) {
            double acc = 0.0;
            for (int k = 0; k < 3; ++k) acc += a[3 * r + k] * b[3 * k + c];
            out[3 * r + c] = acc;
        }
    return out;
}

Mat3 transpose(const Mat3& m) {
    Mat3 out{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out[3 * r + c] = m[3 * c + r];
    return out;
}

bool nearly_equal(const Mat3& a, const Mat3& b) {
    for (int i = 0; i < 9; ++i) {
        if (std::abs(a[i] - b[i]) > kDedupeTol) return false;
    }
    return true;
}

void append_if_new(std::vector<Mat3>& list, const Mat3& candidate) {
    for (const Mat3& m : list) {
        if (nearly_equal(m, candidate)) return;
    }
    list.push_back(candidate);
}

void check_entangled_args(int n, int k, int l, int p, int q) {
    if (n < 3) throw std::domain_error("polygon needs at least 3 vertices");
    if (k < 0 || k >= n || l < 0 || l >= n) {
        throw std::domain_error("entangled index out of range");
    }
    if ((p != 1 && p != -1) || (q != 1 && q != -1)) {
        throw std::domain_error("sector signs must be +1 or -1");
    }
}

Mat3 entangled_form(int n, int k, int l, int p, int q) {
    check_entangled_args(n, k, l, p, q);
    const double step = 2.0 * std::numbers::pi / n;
    double angle = (p == q) ? step * (k - l) : step * (k + l);
    if (n % 2 == 0) angle -= p * std::numbers::pi / n;
    return (p == q) ? rotation_form(angle) : reflection_form(angle);
}

bool in_unit_interval(double p) {
    return p >= -kConsistencyTol && p <= 1.0 + kConsistencyTol;
}

}  // namespace

PolygonModel build_polygon(int n) {
    if (n < 3) throw std::domain_error("polygon needs at least 3 vertices");

    PolygonModel model;
    model.n = n;
    model.parity = (n % 2 == 0) ? Parity::Even : Parity::Odd;
    const double pi = std::numbers::pi;
    model.radius = std::sqrt(1.0 / std::cos(pi / n));
    const double r = model.radius;
    const double r2 = r * r;

    model.pure_states.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double angle = 2.0 * pi * i / n;
        model.pure_states.push_back(
            Vec3{r * std::cos(angle), r * std::sin(angle), 1.0});
    }

    model.effects.reserve(n);
    model.complement_effects.reserve(n);
    for (int j = 0; j < n; ++j) {
        Vec3 e{};
        if (model.parity == Parity::Even) {
            const double angle = (2 * j - 1) * pi / n;
            e = Vec3{0.5 * r * std::cos(angle), 0.5 * r * std::sin(angle),
                     0.5};
        } else {
            const double angle = 2.0 * pi * j / n;
            const double scale = 1.0 / (1.0 + r2);
            e = Vec3{scale * r * std::cos(angle), scale * r * std::sin(angle),
                     scale};
        }
        model.effects.push_back(e);
        model.complement_effects.push_back(
            Vec3{model.unit[0] - e[0], model.unit[1] - e[1],
                 model.unit[2] - e[2]});
    }

    model.transforms.reserve(2 * n);
    for (int sign : {+1, -1}) {
        for (int k = 0; k < n; ++k) {
            Transform t;
            t.steps = k;
            t.sign = sign;
            const double angle = 2.0 * pi * k / n;
            t.matrix = (sign > 0) ? rotation_form(angle)
                                  : reflection_form(angle);
            model.transforms.push_back(t);
        }
    }
    return model;
}

double probability(const Vec3& effect, const Vec3& state) {
    return effect[0] * state[0] + effect[1] * state[1] + effect[2] * state[2];
}

Vec3 apply_transform(const Transform& t, const Vec3& state) {
    Vec3 out{};
    for (int r = 0; r < 3; ++r) {
        out[r] = t.matrix[3 * r + 0] * state[0] +
                 t.matrix[3 * r + 1] * state[1] +
                 t.matrix[3 * r + 2] * state[2];
    }
    return out;
}

const Transform& transform_at(const PolygonModel& model, int steps, int sign) {
    const int n = model.n;
    const int k = ((steps % n) + n) % n;
    if (sign != 1 && sign != -1) {
        throw std::domain_error("transform sign must be +1 or -1");
    }
    return model.transforms[(sign > 0 ? 0 : n) + k];
}

const Transform& compose(const PolygonModel& model, const Transform& first,
                         const Transform& second) {
    const int steps = first.steps + first.sign * second.steps;
    return transform_at(model, steps, first.sign * second.sign);
}

Mat3 product_state(const Vec3& state_a, const Vec3& state_b) {
    Mat3 out{};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out[3 * r + c] = state_a[r] * state_b[c];
    return out;
}

Mat3 product_effect(const Vec3& effect_a, const Vec3& effect_b) {
    return product_state(effect_a, effect_b);
}

double pairing(const Mat3& effect, const Mat3& state) {
    double acc = 0.0;
    for (int i = 0; i < 9; ++i) acc += effect[i] * state[i];
    return acc;
}

Mat3 entangled_state(int n, int k, int l, int p, int q) {
    return entangled_form(n, k, l, p, q);
}

Mat3 entangled_effect(int n, int k, int l, int p, int q) {
    Mat3 m = entangled_form(n, k, l, p, q);
    const double r2 = 1.0 / std::cos(std::numbers::pi / n);
    const double scale = (n % 2 == 0) ? 0.5 : 1.0 / (1.0 + r2);
    for (double& v : m) v *= scale;
    return m;
}

Mat3 local_transform_bipartite(const Transform& alice, const Transform& bob,
                               const Mat3& omega) {
    return mat3_mul(alice.matrix, mat3_mul(omega, transpose(bob.matrix)));
}

Mat3 swap_sides(const Mat3& omega) { return transpose(omega); }

Mat3 clubbed_effect(const PolygonModel& model, int i, int j) {
    const int n = model.n;
    if (i < 0 || i >= n || j < 0 || j >= n) {
        throw std::domain_error("clubbed effect index out of range");
    }
    const Mat3 direct =
        product_effect(model.effects[i], model.effects[j]);
    const Mat3 complement = product_effect(model.complement_effects[i],
                                           model.complement_effects[j]);
    Mat3 out{};
    for (int v = 0; v < 9; ++v) out[v] = direct[v] + complement[v];
    return out;
}

Mat3 clubbed_effect_complement(const PolygonModel& model, int i, int j) {
    const int n = model.n;
    if (i < 0 || i >= n || j < 0 || j >= n) {
        throw std::domain_error("clubbed effect index out of range");
    }
    const Mat3 mixed =
        product_effect(model.effects[i], model.complement_effects[j]);
    const Mat3 swapped = product_effect(model.complement_effects[i],
                                        model.effects[j]);
    Mat3 out{};
    for (int v = 0; v < 9; ++v) out[v] = mixed[v] + swapped[v];
    return out;
}

BipartiteModel build_bipartite(const PolygonModel& base, Composition comp) {
    BipartiteModel model;
    model.base = base;
    model.composition = comp;
    const int n = base.n;

    model.product_states.reserve(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            model.product_states.push_back(
                product_state(base.pure_states[i], base.pure_states[j]));

    std::vector<Vec3> generators;
    generators.push_back(base.zero);
    generators.push_back(base.unit);
    for (const Vec3& e : base.effects) generators.push_back(e);
    for (const Vec3& e : base.complement_effects) generators.push_back(e);
    model.product_effects.reserve(generators.size() * generators.size());
    for (const Vec3& ga : generators)
        for (const Vec3& gb : generators)
            model.product_effects.push_back(product_effect(ga, gb));

    if (comp == Composition::TypeI) {
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int p : {+1, -1})
                    for (int q : {+1, -1})
                        append_if_new(model.entangled_states,
                                      entangled_state(n, k, l, p, q));
    } else {
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int p : {+1, -1})
                    for (int q : {+1, -1})
                        append_if_new(model.entangled_effects,
                                      entangled_effect(n, k, l, p, q));
        if (base.parity == Parity::Even) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    model.clubbed_effects.push_back(clubbed_effect(base, i, j));
                    model.clubbed_effects.push_back(
                        clubbed_effect_complement(base, i, j));
                }
        }
    }
    return model;
}

bool consistency_check(const BipartiteModel& model) {
    if (model.composition == Composition::TypeI) {
        for (const Mat3& effect : model.product_effects) {
            for (const Mat3& state : model.product_states) {
                if (!in_unit_interval(pairing(effect, state))) return false;
            }
            for (const Mat3& state : model.entangled_states) {
                if (!in_unit_interval(pairing(effect, state))) return false;
            }
        }
        return true;
    }
    auto states_ok = [&](const Mat3& effect) {
        for (const Mat3& state : model.product_states) {
            if (!in_unit_interval(pairing(effect, state))) return false;
        }
        return true;
    };
    for (const Mat3& effect : model.product_effects) {
        if (!states_ok(effect)) return false;
    }
    for (const Mat3& effect : model.entangled_effects) {
        if (!states_ok(effect)) return false;
    }
    for (const Mat3& effect : model.clubbed_effects) {
        if (!states_ok(effect)) return false;
    }
    return true;
}

const char* composition_name(Composition comp) {
    return comp == Composition::TypeI ? "type1" : "type2";
}

const char* parity_name(Parity parity) {
    return parity == Parity::Odd ? "odd" : "even";
}

}  // namespace dclc::polygon
