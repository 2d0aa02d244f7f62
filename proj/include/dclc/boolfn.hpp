#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

// Boolean functions and dual-layer tasks.
//
// Bit convention used everywhere in this library: strings are read
// most-significant-bit-first, so the truth-table index of (a1, ..., ak) is
// sum a_i * 2^(k-i).  For arity 2 that is 2*a1 + a2.

namespace dclc::boolfn {

class BooleanFunction {
public:
    BooleanFunction() = default;

    // table.size() must be 2^arity, entries in {0,1}.
    BooleanFunction(int arity, std::vector<std::uint8_t> table);

    // Table given as a bit string, leftmost character = index 0.
    static BooleanFunction from_string(int arity, const std::string& bits);

    int arity() const { return arity_; }
    const std::vector<std::uint8_t>& table() const { return table_; }

    // index holds the packed arguments, MSB-first.
    int evaluate_index(std::uint32_t index) const { return table_[index]; }
    int evaluate(const std::vector<int>& args) const;

    bool is_constant() const;
    bool is_balanced() const;
    // True iff the output equals one fixed argument or its complement.
    bool is_single_bit() const;
    // True iff the table is invariant under every argument permutation.
    bool is_symmetric() const;

    std::string to_string() const;

    bool operator==(const BooleanFunction& other) const = default;

private:
    int arity_ = 0;
    std::vector<std::uint8_t> table_;
};

struct FunctionClassification {
    bool constant = false;
    bool balanced = false;
    bool single_bit = false;
    bool symmetric = false;
};

FunctionClassification classify_function(const BooleanFunction& fn);

// The arity-2 named functions, table strings indexed 00,01,10,11.
BooleanFunction named_function(const std::string& alias);

// A dual-layer task (F, f): the decoder must output
// F(f(x1,y1), ..., f(xn,yn)) from limited messages about x and y.
struct DualLayerTask {
    int n = 2;
    BooleanFunction outer;  // arity n
    BooleanFunction inner;  // arity 2

    bool operator==(const DualLayerTask& other) const = default;
};

DualLayerTask make_task(BooleanFunction outer, BooleanFunction inner);

// x, y are n-bit strings packed MSB-first.
int evaluate_task(const DualLayerTask& task, std::uint32_t x, std::uint32_t y);

// (count of output 0, count of output 1) over all 4^n input pairs.
std::pair<int, int> output_ratio(const DualLayerTask& task);

// One quadruple group: two distinct x-strings crossed with two distinct
// y-strings, evaluated on the four combinations.
struct QuadGroup {
    std::uint32_t x0, x1, y0, y1;
    int zeros = 0, ones = 0;
};

struct QuadGroupScan {
    std::vector<QuadGroup> groups;   // all C(4,2)^2 = 36 groups for n = 2
    bool has_one_three = false;      // some group splits 1:3 or 3:1
};

QuadGroupScan quad_group_scan(const DualLayerTask& task);

// All 16 * 16 = 256 tasks for n = 2, outer table index major.
std::vector<DualLayerTask> all_two_bit_tasks();

// Sufficient triviality criteria, valid for every n:
//   (i)  F or f constant;
//   (ii) F or f a single-bit function;
//   (iii) there are an associative+commutative op * in {AND,OR,XOR,XNOR} and
//         flags s, c1, c2 with F(z) = *_i (z_i ^ s) and
//         f(a,b) = ((a^c1) * (b^c2)) ^ s, so the fold regroups per party.
// For n = 2 the disjunction is exact (equivalent to the exhaustive verdict).
bool matches_triviality_criteria(const DualLayerTask& task);

// Task literals: "F:<alias|bits|hex>,f:<alias|bits>", e.g. "F:OR,f:XOR" or
// "F:0111,f:0110".  Bit strings are table entries left-to-right from index 0;
// hex is accepted for outer tables whose length is a multiple of 4 bits.
DualLayerTask parse_task_literal(const std::string& literal);
std::string format_task_literal(const DualLayerTask& task);

}  // namespace dclc::boolfn
