#include "dclc/boolfn.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <numeric>
#include <stdexcept>

namespace dclc::boolfn {

namespace {

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

int log2_exact(std::size_t v) {
    int k = 0;
    while ((std::size_t{1} << k) < v) ++k;
    return k;
}

}  // namespace

BooleanFunction::BooleanFunction(int arity, std::vector<std::uint8_t> table)
    : arity_(arity), table_(std::move(table)) {
    if (arity < 1 || arity > 20)
        throw std::invalid_argument("boolean function arity out of range");
    if (table_.size() != (std::size_t{1} << arity))
        throw std::invalid_argument("truth table size does not match arity");
    for (auto v : table_)
        if (v > 1) throw std::invalid_argument("truth table entries must be bits");
}

BooleanFunction BooleanFunction::from_string(int arity, const std::string& bits) {
    std::vector<std::uint8_t> table;
    table.reserve(bits.size());
    for (char c : bits) {
        if (c != '0' && c != '1')
            throw std::invalid_argument("truth table string must be binary");
        table.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return BooleanFunction(arity, std::move(table));
}

int BooleanFunction::evaluate(const std::vector<int>& args) const {
    if (static_cast<int>(args.size()) != arity_)
        throw std::invalid_argument("argument count does not match arity");
    std::uint32_t index = 0;
    for (int a : args) {
        if (a != 0 && a != 1) throw std::invalid_argument("arguments must be bits");
        index = (index << 1) | static_cast<std::uint32_t>(a);
    }
    return table_[index];
}

bool BooleanFunction::is_constant() const {
    return std::all_of(table_.begin(), table_.end(),
                       [&](std::uint8_t v) { return v == table_[0]; });
}

bool BooleanFunction::is_balanced() const {
    auto ones = std::accumulate(table_.begin(), table_.end(), std::size_t{0});
    return ones * 2 == table_.size();
}

bool BooleanFunction::is_single_bit() const {
    for (int pos = 0; pos < arity_; ++pos) {
        const std::uint32_t mask = std::uint32_t{1} << (arity_ - 1 - pos);
        bool direct = true, negated = true;
        for (std::uint32_t idx = 0; idx < table_.size(); ++idx) {
            const int bit = (idx & mask) ? 1 : 0;
            if (table_[idx] != bit) direct = false;
            if (table_[idx] != (1 - bit)) negated = false;
        }
        if (direct || negated) return true;
    }
    return false;
}

bool BooleanFunction::is_symmetric() const {
    // Permutation invariance == the value depends only on the argument weight.
    std::array<int, 32> value_for_weight;
    value_for_weight.fill(-1);
    for (std::uint32_t idx = 0; idx < table_.size(); ++idx) {
        const int w = std::popcount(idx);
        if (value_for_weight[w] < 0) value_for_weight[w] = table_[idx];
        else if (value_for_weight[w] != table_[idx]) return false;
    }
    return true;
}

std::string BooleanFunction::to_string() const {
    std::string out;
    out.reserve(table_.size());
    for (auto v : table_) out.push_back(static_cast<char>('0' + v));
    return out;
}

FunctionClassification classify_function(const BooleanFunction& fn) {
    return FunctionClassification{fn.is_constant(), fn.is_balanced(),
                                  fn.is_single_bit(), fn.is_symmetric()};
}

BooleanFunction named_function(const std::string& alias) {
    std::string key;
    for (char c : alias) key.push_back(static_cast<char>(std::toupper(c)));
    static const std::vector<std::pair<std::string, std::string>> table = {
        {"AND", "0001"},  {"OR", "0111"},     {"XOR", "0110"},
        {"XNOR", "1001"}, {"NOR", "1000"},    {"NAND", "1110"},
        {"CONST0", "0000"}, {"CONST1", "1111"},
    };
    for (const auto& [name, bits] : table)
        if (name == key) return BooleanFunction::from_string(2, bits);
    throw std::invalid_argument("unknown function alias: " + alias);
}

DualLayerTask make_task(BooleanFunction outer, BooleanFunction inner) {
    if (inner.arity() != 2)
        throw std::invalid_argument("inner function must have arity 2");
    DualLayerTask task;
    task.n = outer.arity();
    task.outer = std::move(outer);
    task.inner = std::move(inner);
    return task;
}

int evaluate_task(const DualLayerTask& task, std::uint32_t x, std::uint32_t y) {
    const int n = task.n;
    if (x >= (std::uint32_t{1} << n) || y >= (std::uint32_t{1} << n))
        throw std::invalid_argument("input string does not fit n bits");
    std::uint32_t z = 0;
    for (int i = n - 1; i >= 0; --i) {
        const std::uint32_t xi = (x >> i) & 1u;
        const std::uint32_t yi = (y >> i) & 1u;
        z = (z << 1) | static_cast<std::uint32_t>(
                           task.inner.evaluate_index((xi << 1) | yi));
    }
    return task.outer.evaluate_index(z);
}

std::pair<int, int> output_ratio(const DualLayerTask& task) {
    const std::uint32_t count = std::uint32_t{1} << task.n;
    int zeros = 0, ones = 0;
    for (std::uint32_t x = 0; x < count; ++x)
        for (std::uint32_t y = 0; y < count; ++y)
            (evaluate_task(task, x, y) ? ones : zeros) += 1;
    return {zeros, ones};
}

QuadGroupScan quad_group_scan(const DualLayerTask& task) {
    const std::uint32_t count = std::uint32_t{1} << task.n;
    QuadGroupScan scan;
    for (std::uint32_t x0 = 0; x0 < count; ++x0)
        for (std::uint32_t x1 = x0 + 1; x1 < count; ++x1)
            for (std::uint32_t y0 = 0; y0 < count; ++y0)
                for (std::uint32_t y1 = y0 + 1; y1 < count; ++y1) {
                    QuadGroup g{x0, x1, y0, y1, 0, 0};
                    for (std::uint32_t x : {x0, x1})
                        for (std::uint32_t y : {y0, y1})
                            (evaluate_task(task, x, y) ? g.ones : g.zeros) += 1;
                    if ((g.zeros == 1 && g.ones == 3) ||
                        (g.zeros == 3 && g.ones == 1))
                        scan.has_one_three = true;
                    scan.groups.push_back(g);
                }
    return scan;
}

std::vector<DualLayerTask> all_two_bit_tasks() {
    std::vector<DualLayerTask> tasks;
    tasks.reserve(256);
    for (std::uint32_t fo = 0; fo < 16; ++fo)
        for (std::uint32_t fi = 0; fi < 16; ++fi) {
            std::vector<std::uint8_t> outer(4), inner(4);
            for (int i = 0; i < 4; ++i) {
                outer[i] = (fo >> (3 - i)) & 1u;
                inner[i] = (fi >> (3 - i)) & 1u;
            }
            tasks.push_back(make_task(BooleanFunction(2, std::move(outer)),
                                      BooleanFunction(2, std::move(inner))));
        }
    return tasks;
}

namespace {

// The four associative+commutative non-constant binary operations.
int star_apply(int op, int a, int b) {
    switch (op) {
        case 0: return a & b;
        case 1: return a | b;
        case 2: return a ^ b;
        default: return 1 ^ a ^ b;  // XNOR
    }
}

bool outer_matches_chain(const BooleanFunction& outer, int op, int s) {
    const int n = outer.arity();
    const std::uint32_t count = std::uint32_t{1} << n;
    for (std::uint32_t z = 0; z < count; ++z) {
        int acc = ((z >> (n - 1)) & 1u) ^ s;
        for (int i = 1; i < n; ++i)
            acc = star_apply(op, acc, static_cast<int>((z >> (n - 1 - i)) & 1u) ^ s);
        if (acc != outer.evaluate_index(z)) return false;
    }
    return true;
}

bool inner_matches_chain(const BooleanFunction& inner, int op, int s) {
    for (int c1 = 0; c1 < 2; ++c1)
        for (int c2 = 0; c2 < 2; ++c2) {
            bool ok = true;
            for (int a = 0; a < 2 && ok; ++a)
                for (int b = 0; b < 2 && ok; ++b)
                    ok = inner.evaluate_index(static_cast<std::uint32_t>(
                             (a << 1) | b)) == (star_apply(op, a ^ c1, b ^ c2) ^ s);
            if (ok) return true;
        }
    return false;
}

}  // namespace

bool matches_triviality_criteria(const DualLayerTask& task) {
    if (task.outer.is_constant() || task.inner.is_constant()) return true;
    if (task.outer.is_single_bit() || task.inner.is_single_bit()) return true;
    for (int op = 0; op < 4; ++op)
        for (int s = 0; s < 2; ++s)
            if (outer_matches_chain(task.outer, op, s) &&
                inner_matches_chain(task.inner, op, s))
                return true;
    return false;
}

namespace {

BooleanFunction parse_function_field(const std::string& text, bool inner) {
    if (text.empty()) throw std::invalid_argument("empty function field");
    const bool binary = std::all_of(text.begin(), text.end(), [](char c) {
        return c == '0' || c == '1';
    });
    if (binary && is_power_of_two(text.size()) && text.size() >= 4) {
        const int arity = log2_exact(text.size());
        if (inner && arity != 2)
            throw std::invalid_argument("inner function table must have 4 entries");
        return BooleanFunction::from_string(arity, text);
    }
    const bool hex = std::all_of(text.begin(), text.end(), [](char c) {
        return std::isxdigit(static_cast<unsigned char>(c));
    });
    if (hex && is_power_of_two(text.size() * 4)) {
        std::string bits;
        for (char c : text) {
            const int v = std::isdigit(static_cast<unsigned char>(c))
                              ? c - '0'
                              : std::tolower(static_cast<unsigned char>(c)) - 'a' + 10;
            for (int i = 3; i >= 0; --i) bits.push_back(((v >> i) & 1) ? '1' : '0');
        }
        const int arity = log2_exact(bits.size());
        if (inner && arity != 2)
            throw std::invalid_argument("inner function table must have 4 entries");
        return BooleanFunction::from_string(arity, bits);
    }
    return named_function(text);
}

}  // namespace

DualLayerTask parse_task_literal(const std::string& literal) {
    const auto comma = literal.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("task literal must look like F:<spec>,f:<spec>");
    const std::string first = literal.substr(0, comma);
    const std::string second = literal.substr(comma + 1);
    if (first.rfind("F:", 0) != 0 || second.rfind("f:", 0) != 0)
        throw std::invalid_argument("task literal must look like F:<spec>,f:<spec>");
    BooleanFunction outer = parse_function_field(first.substr(2), false);
    BooleanFunction inner = parse_function_field(second.substr(2), true);
    return make_task(std::move(outer), std::move(inner));
}

std::string format_task_literal(const DualLayerTask& task) {
    return "F:" + task.outer.to_string() + ",f:" + task.inner.to_string();
}

}  // namespace dclc::boolfn
