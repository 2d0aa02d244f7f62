#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "dclc/boolfn.hpp"

// Classical one-bit strategies for two-bit dual-layer tasks and the
// exhaustive triviality census.  Message alphabet is {0,1}: each encoder maps
// its four possible input strings to one bit, the decoder maps the message
// pair to the output bit.

namespace dclc::classical {

// Exact success fractions; denominators stay tiny (16 for n = 2).
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d);

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational&) const = default;
    bool operator<(const Rational& other) const {
        return num * other.den < other.num * den;
    }
    std::string to_string() const;
};

struct ClassicalStrategy {
    std::array<std::uint8_t, 4> encode_a{};  // message per x in {00,01,10,11}
    std::array<std::uint8_t, 4> encode_b{};  // message per y
    std::array<std::uint8_t, 4> decode{};    // output per (mA,mB), index 2*mA+mB
};

// Fraction of the 16 input pairs answered correctly.
Rational strategy_success(const boolfn::DualLayerTask& task,
                          const ClassicalStrategy& strategy);

enum class Verdict {
    TrivialNoComm,    // a constant decoder succeeds on every input pair
    TrivialOneWayA,   // a decoder reading only Alice's message suffices
    TrivialOneWayB,   // a decoder reading only Bob's message suffices
    TrivialTwoWay,    // some full strategy is perfect, neither restriction is
    Nontrivial,
};

struct TrivialityResult {
    Verdict verdict = Verdict::Nontrivial;
    std::optional<ClassicalStrategy> witness;  // a perfect strategy when trivial
};

// Exhaustive search over the 16*16*16 deterministic strategies, with the
// no-communication and one-way decoder classes searched as restrictions.
TrivialityResult classify_triviality(const boolfn::DualLayerTask& task);

struct CensusCounts {
    int total = 0;
    int trivial = 0;
    int no_comm = 0;
    int one_way = 0;
    int two_way = 0;
    int nontrivial = 0;
};

CensusCounts census();

struct BestStrategy {
    Rational success;
    ClassicalStrategy strategy;
};

// Maximum over all 4096 deterministic strategies (ties broken by first hit).
BestStrategy max_classical_success(const boolfn::DualLayerTask& task);

// True iff matches_triviality_criteria agrees with the exhaustive verdict on
// every one of the 256 two-bit tasks.
bool verify_triviality_equivalence();

const char* verdict_name(Verdict v);

}  // namespace dclc::classical
