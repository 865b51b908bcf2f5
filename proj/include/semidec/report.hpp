#pragma once

#include "semidec/binomial.hpp"
#include "semidec/decompose.hpp"
#include "semidec/fibers.hpp"
#include "semidec/int_matrix.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace semidec {

/// Machine-readable result of one CLI invocation. All integer data is
/// serialized as decimal strings (exactness contract); generator and
/// parameter indices are 1-based in JSON. Reports round-trip losslessly
/// through to_json/from_json.
struct Report {
    struct Block {
        std::vector<std::size_t> generators;
        std::optional<IntMatrix> matrix;   // diagonal block D_i
        std::optional<IntMatrix> kernel;   // block kernel basis, local coords
        std::vector<Binomial> markov;      // local coords
        std::optional<bool> unique;
        std::optional<bool> complete_intersection;
        std::optional<bool> gluing;
        bool operator==(const Block&) const = default;
    };

    struct Gluing {
        std::vector<std::size_t> part1, part2;
        IntVec degree;
        IntVec witness1, witness2;
        std::size_t block_id = 0;
        bool operator==(const Gluing&) const = default;
    };

    struct Fiber {
        IntVec degree;
        std::string complex;  // "nabla" or "delta"
        std::vector<IntVec> monomials;        // nabla vertices
        std::vector<std::size_t> indices;     // delta vertices
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        std::vector<std::vector<std::size_t>> components;
        bool connected = true;
        bool operator==(const Fiber&) const = default;
    };

    struct Reparam {
        std::size_t parameter_count = 0;
        std::vector<std::pair<std::size_t, std::size_t>> block_parameters;
        std::vector<std::size_t> generator_block;
        std::vector<IntVec> exponents;
        bool operator==(const Reparam&) const = default;
    };

    struct Bench {
        int repeat = 1;
        std::int64_t timeout_ms = 0;
        std::vector<std::int64_t> decomposed_us;
        std::vector<std::int64_t> whole_us;  // -1 marks a timed-out run
        std::int64_t decomposed_median_us = -1;
        std::int64_t whole_median_us = -1;
        bool whole_timed_out = false;
        bool bases_agree = true;
        bool operator==(const Bench&) const = default;
    };

    std::string command;
    IntMatrix input;
    IntVec moduli;
    std::vector<std::string> notes;

    std::optional<bool> pointed;
    IntVec pointed_witness;

    std::optional<std::string> mode;
    std::optional<bool> decomposable;
    std::vector<std::size_t> q_image;
    std::optional<IntMatrix> transform_p;
    std::optional<IntMatrix> diagonal_d;
    std::vector<Block> blocks;
    std::vector<std::size_t> free_generators;
    std::optional<bool> direct_disagrees_with_kernel;

    std::vector<Binomial> markov;
    std::vector<IntVec> betti;
    std::vector<std::pair<IntVec, std::size_t>> degree_multiplicity;

    std::optional<bool> unique;
    std::optional<bool> complete_intersection;
    std::optional<bool> gluing;
    std::optional<Gluing> gluing_certificate;

    std::optional<Fiber> fiber;
    std::optional<Reparam> reparam;
    std::optional<Bench> bench;

    std::int64_t total_us = -1;  // -1 = suppressed (--no-timings)

    nlohmann::ordered_json to_json() const;
    static Report from_json(const nlohmann::ordered_json& j);
    std::string to_json_string() const;
    static Report from_json_string(const std::string& s);

    bool operator==(const Report&) const = default;
};

/// JSON error object written when a command fails in JSON mode.
nlohmann::ordered_json error_json(const std::string& kind, const std::string& message);

} // namespace semidec
