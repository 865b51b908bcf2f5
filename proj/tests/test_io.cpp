#include "semidec/io.hpp"

#include "semidec/errors.hpp"
#include "semidec/report.hpp"

#include <doctest.h>

#include <sstream>

using namespace semidec;

TEST_CASE("parse_mat happy paths") {
    std::istringstream a("2 3\n1 0 -1\n0 2 4\n");
    IntMatrix m = parse_mat(a);
    CHECK(m == IntMatrix{{1, 0, -1}, {0, 2, 4}});

    std::istringstream b("1 1\n7");
    CHECK(parse_mat(b) == IntMatrix{{7}});

    std::istringstream c("2 2    1\t2\n\n3 4");
    CHECK(parse_mat(c) == IntMatrix{{1, 2}, {3, 4}});
}

TEST_CASE("parse_mat big integers survive") {
    std::istringstream s("1 2 123456789012345678901234567890 -1");
    IntMatrix m = parse_mat(s);
    CHECK(m.at(0, 0) == Int("123456789012345678901234567890"));
}

TEST_CASE("parse_mat diagnostics carry line and column") {
    std::istringstream missing("2 2\n1 2 3");
    CHECK_THROWS_AS(parse_mat(missing), parse_error);

    std::istringstream bad("2 2\n1 x\n3 4");
    try {
        parse_mat(bad);
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 3);
    }

    std::istringstream trailing("1 1\n5 6");
    CHECK_THROWS_AS(parse_mat(trailing), parse_error);

    std::istringstream negdim("-2 2\n");
    CHECK_THROWS_AS(parse_mat(negdim), parse_error);
}

TEST_CASE("parse_mat golden corpus file") {
    IntMatrix m = parse_mat_file(std::string(DATA_DIR) + "/bpg_bin.mat");
    CHECK(m.rows() == 32);
    CHECK(m.cols() == 32);
    CHECK(m.at(0, 0) == 1);
    CHECK(m.at(0, 16) == 1);
    CHECK(m.at(16, 0) == 1);
    CHECK(m.at(16, 8) == 1);
}

TEST_CASE("moduli file") {
    std::istringstream s("2 2 3");
    CHECK(parse_moduli(s) == IntVec{2, 3});
    std::istringstream bad("1 0");
    CHECK_THROWS_AS(parse_moduli(bad), parse_error);
    std::istringstream trailing("1 2 9");
    CHECK_THROWS_AS(parse_moduli(trailing), parse_error);
}

TEST_CASE("write_mat then parse_mat is the identity") {
    IntMatrix m{{1, -2, 3}, {0, 5, -6}};
    std::ostringstream out;
    write_mat(out, m);
    std::istringstream in(out.str());
    CHECK(parse_mat(in) == m);
}

TEST_CASE("report JSON round-trip") {
    Report r;
    r.command = "decompose";
    r.input = IntMatrix{{1, 1}, {0, 2}};
    r.moduli = IntVec{5};
    r.notes = {"example"};
    r.pointed = true;
    r.mode = "kernel";
    r.decomposable = true;
    r.q_image = {0, 1};
    r.transform_p = IntMatrix::identity(2);
    r.diagonal_d = IntMatrix{{1, 0}, {0, 2}};
    Report::Block b;
    b.generators = {0, 1};
    b.matrix = IntMatrix{{1, 0}, {0, 2}};
    b.markov = {Binomial(IntVec{2, -1})};
    b.unique = true;
    r.blocks.push_back(b);
    r.free_generators = {};
    r.markov = {Binomial(IntVec{2, -1})};
    r.betti = {IntVec{2, 0}};
    r.degree_multiplicity = {{IntVec{2, 0}, 1}};
    r.unique = true;
    r.complete_intersection = false;
    Report::Gluing g;
    g.part1 = {0};
    g.part2 = {1};
    g.degree = IntVec{6};
    g.witness1 = IntVec{3, 0};
    g.witness2 = IntVec{0, 2};
    r.gluing_certificate = g;
    r.total_us = 1234;

    Report back = Report::from_json_string(r.to_json_string());
    CHECK(back == r);
}

TEST_CASE("report with fiber, reparam and bench sections round-trips") {
    Report r;
    r.command = "fiber";
    r.input = IntMatrix{{2, 3}};
    Report::Fiber f;
    f.degree = IntVec{6};
    f.complex = "nabla";
    f.monomials = {IntVec{0, 2}, IntVec{3, 0}};
    f.edges = {};
    f.components = {{0}, {1}};
    f.connected = false;
    r.fiber = f;
    Report::Reparam rp;
    rp.parameter_count = 2;
    rp.block_parameters = {{0, 2}};
    rp.generator_block = {0, 0};
    rp.exponents = {IntVec{1, 0}, IntVec{0, 1}};
    r.reparam = rp;
    Report::Bench bench;
    bench.repeat = 3;
    bench.timeout_ms = 1000;
    bench.decomposed_us = {10, 12, 11};
    bench.whole_us = {100, -1, 90};
    bench.decomposed_median_us = 11;
    bench.whole_median_us = 95;
    bench.whole_timed_out = true;
    r.bench = bench;

    Report back = Report::from_json_string(r.to_json_string());
    CHECK(back == r);
    CHECK(r.to_json_string() == back.to_json_string());
}

TEST_CASE("integers serialize as decimal strings") {
    Report r;
    r.command = "decompose";
    r.input = IntMatrix(1, 1);
    r.input.at(0, 0) = Int("99999999999999999999999999999999999");
    auto j = r.to_json();
    CHECK(j["input"]["entries"][0][0].get<std::string>() ==
          "99999999999999999999999999999999999");
    CHECK(Report::from_json(j).input.at(0, 0) ==
          Int("99999999999999999999999999999999999"));
}
