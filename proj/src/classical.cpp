#include "dclc/classical.hpp"

#include <numeric>
#include <stdexcept>

namespace dclc::classical {

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) { num = -num; den = -den; }
    const long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
}

std::string Rational::to_string() const {
    return std::to_string(num) + "/" + std::to_string(den);
}

namespace {

// 16-bit truth table of the task over input pairs, bit index 4*x + y.
std::uint16_t task_table(const boolfn::DualLayerTask& task) {
    if (task.n != 2)
        throw std::invalid_argument("classical search is defined for n = 2");
    std::uint16_t t = 0;
    for (std::uint32_t x = 0; x < 4; ++x)
        for (std::uint32_t y = 0; y < 4; ++y)
            if (boolfn::evaluate_task(task, x, y))
                t |= static_cast<std::uint16_t>(1u << (4 * x + y));
    return t;
}

int success_count(std::uint16_t table, const ClassicalStrategy& s) {
    int correct = 0;
    for (std::uint32_t x = 0; x < 4; ++x)
        for (std::uint32_t y = 0; y < 4; ++y) {
            const int out = s.decode[2 * s.encode_a[x] + s.encode_b[y]];
            const int want = (table >> (4 * x + y)) & 1;
            if (out == want) ++correct;
        }
    return correct;
}

ClassicalStrategy strategy_from_masks(std::uint32_t ea, std::uint32_t eb,
                                      std::uint32_t d) {
    ClassicalStrategy s;
    for (int i = 0; i < 4; ++i) {
        s.encode_a[i] = (ea >> i) & 1u;
        s.encode_b[i] = (eb >> i) & 1u;
        s.decode[i] = (d >> i) & 1u;
    }
    return s;
}

bool depends_only_on_x(std::uint16_t table) {
    for (std::uint32_t x = 0; x < 4; ++x) {
        const int first = (table >> (4 * x)) & 1;
        for (std::uint32_t y = 1; y < 4; ++y)
            if (((table >> (4 * x + y)) & 1) != first) return false;
    }
    return true;
}

bool depends_only_on_y(std::uint16_t table) {
    for (std::uint32_t y = 0; y < 4; ++y) {
        const int first = (table >> y) & 1;
        for (std::uint32_t x = 1; x < 4; ++x)
            if (((table >> (4 * x + y)) & 1) != first) return false;
    }
    return true;
}

}  // namespace

Rational strategy_success(const boolfn::DualLayerTask& task,
                          const ClassicalStrategy& strategy) {
    for (auto v : strategy.encode_a)
        if (v > 1) throw std::invalid_argument("encoder output must be a bit");
    for (auto v : strategy.encode_b)
        if (v > 1) throw std::invalid_argument("encoder output must be a bit");
    for (auto v : strategy.decode)
        if (v > 1) throw std::invalid_argument("decoder output must be a bit");
    return Rational(success_count(task_table(task), strategy), 16);
}

TrivialityResult classify_triviality(const boolfn::DualLayerTask& task) {
    const std::uint16_t table = task_table(task);
    TrivialityResult result;

    if (table == 0 || table == 0xffff) {
        result.verdict = Verdict::TrivialNoComm;
        const std::uint8_t c = table ? 1 : 0;
        result.witness = ClassicalStrategy{{0, 0, 0, 0}, {0, 0, 0, 0}, {c, c, c, c}};
        return result;
    }
    if (depends_only_on_x(table)) {
        result.verdict = Verdict::TrivialOneWayA;
        ClassicalStrategy s;
        for (std::uint32_t x = 0; x < 4; ++x)
            s.encode_a[x] = static_cast<std::uint8_t>((table >> (4 * x)) & 1);
        s.encode_b = {0, 0, 0, 0};
        s.decode = {0, 0, 1, 1};  // echo Alice's message
        result.witness = s;
        return result;
    }
    if (depends_only_on_y(table)) {
        result.verdict = Verdict::TrivialOneWayB;
        ClassicalStrategy s;
        for (std::uint32_t y = 0; y < 4; ++y)
            s.encode_b[y] = static_cast<std::uint8_t>((table >> y) & 1);
        s.encode_a = {0, 0, 0, 0};
        s.decode = {0, 1, 0, 1};  // echo Bob's message
        result.witness = s;
        return result;
    }
    for (std::uint32_t ea = 0; ea < 16; ++ea)
        for (std::uint32_t eb = 0; eb < 16; ++eb) {
            // Check the four decoder cells for consistency; that subsumes the
            // 16 decoder choices.
            std::array<int, 4> cell_value{-1, -1, -1, -1};
            bool ok = true;
            for (std::uint32_t x = 0; x < 4 && ok; ++x)
                for (std::uint32_t y = 0; y < 4 && ok; ++y) {
                    const int cell = 2 * ((ea >> x) & 1) + ((eb >> y) & 1);
                    const int want = (table >> (4 * x + y)) & 1;
                    if (cell_value[cell] < 0) cell_value[cell] = want;
                    else if (cell_value[cell] != want) ok = false;
                }
            if (!ok) continue;
            std::uint32_t d = 0;
            for (int c = 0; c < 4; ++c)
                if (cell_value[c] == 1) d |= 1u << c;
            result.verdict = Verdict::TrivialTwoWay;
            result.witness = strategy_from_masks(ea, eb, d);
            return result;
        }
    result.verdict = Verdict::Nontrivial;
    return result;
}

CensusCounts census() {
    CensusCounts counts;
    for (const auto& task : boolfn::all_two_bit_tasks()) {
        ++counts.total;
        switch (classify_triviality(task).verdict) {
            case Verdict::TrivialNoComm: ++counts.no_comm; ++counts.trivial; break;
            case Verdict::TrivialOneWayA:
            case Verdict::TrivialOneWayB: ++counts.one_way; ++counts.trivial; break;
            case Verdict::TrivialTwoWay: ++counts.two_way; ++counts.trivial; break;
            case Verdict::Nontrivial: ++counts.nontrivial; break;
        }
    }
    return counts;
}

BestStrategy max_classical_success(const boolfn::DualLayerTask& task) {
    const std::uint16_t table = task_table(task);
    int best = -1;
    ClassicalStrategy best_strategy;
    for (std::uint32_t ea = 0; ea < 16; ++ea)
        for (std::uint32_t eb = 0; eb < 16; ++eb)
            for (std::uint32_t d = 0; d < 16; ++d) {
                const ClassicalStrategy s = strategy_from_masks(ea, eb, d);
                const int count = success_count(table, s);
                if (count > best) {
                    best = count;
                    best_strategy = s;
                }
            }
    return BestStrategy{Rational(best, 16), best_strategy};
}

bool verify_triviality_equivalence() {
    for (const auto& task : boolfn::all_two_bit_tasks()) {
        const bool predicted = boolfn::matches_triviality_criteria(task);
        const bool trivial =
            classify_triviality(task).verdict != Verdict::Nontrivial;
        if (predicted != trivial) return false;
    }
    return true;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::TrivialNoComm: return "trivial_no_comm";
        case Verdict::TrivialOneWayA: return "trivial_one_way_a";
        case Verdict::TrivialOneWayB: return "trivial_one_way_b";
        case Verdict::TrivialTwoWay: return "trivial_two_way";
        case Verdict::Nontrivial: return "nontrivial";
    }
    return "unknown";
}

}  // namespace dclc::classical
