#include "semidec/decompose.hpp"

#include "semidec/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace semidec;

namespace {

const IntMatrix kExample36{{-1, -4, 12, 4, -3, -2, 8},
                           {-4, -4, -9, -3, 0, -8, -6},
                           {7, 8, 12, 4, 1, 14, 8},
                           {7, 16, 6, 2, 9, 14, 4},
                           {-1, -4, -3, -1, -3, -2, -2}};

IntMatrix bpg_bin() {
    IntMatrix a(32, 32);
    for (std::size_t i = 0; i < 16; ++i) {
        a.at(i, i) = 1;
        a.at(i, 16 + i) = 1;
    }
    for (std::size_t i = 16; i < 24; ++i) {
        a.at(i, i - 16) = 1;
        a.at(i, i - 8) = 1;
    }
    for (std::size_t i = 24; i < 32; ++i) {
        a.at(i, i - 8) = 1;
        a.at(i, i) = 1;
    }
    return a;
}

void check_diagonalization_contract(const IntMatrix& l, const Decomposition& dec) {
    CHECK(abs(dec.p.determinant()) == 1);
    CHECK(dec.q.apply_to_columns(dec.p * l) == dec.d);
    CHECK(row_lattice_equal(dec.q.apply_to_columns(l), dec.d));
    CHECK(is_hnf_diagonal(dec.d));

    // blocks and free generators partition the columns
    std::vector<bool> seen(l.cols(), false);
    for (const auto& b : dec.blocks)
        for (std::size_t g : b.generators) {
            CHECK_FALSE(seen[g]);
            seen[g] = true;
        }
    for (std::size_t g : dec.free_generators) {
        CHECK_FALSE(seen[g]);
        seen[g] = true;
    }
    for (bool s : seen) CHECK(s);

    // refinement maximality: no block splits further, and re-running on a
    // block returns it unchanged as a single component
    for (const auto& b : dec.blocks) {
        Decomposition again = hnf_diagonalize(b.matrix);
        CHECK(again.blocks.size() == 1);
        CHECK(again.free_generators.empty());
        CHECK(again.blocks[0].matrix == b.matrix);
    }
}

} // namespace

TEST_CASE("worked 5x7 diagonalization golden values") {
    Decomposition dec = hnf_diagonalize(kExample36);
    CHECK(dec.decomposable);
    REQUIRE(dec.blocks.size() == 2);
    CHECK(dec.blocks[0].generators == std::vector<std::size_t>{0, 1, 4, 5});
    CHECK(dec.blocks[0].matrix == IntMatrix{{1, 0, -1, 2}, {0, 4, 4, 0}});
    CHECK(dec.blocks[1].generators == std::vector<std::size_t>{2, 3, 6});
    CHECK(dec.blocks[1].matrix == IntMatrix{{3, 1, 2}});
    CHECK(dec.free_generators.empty());

    // Q exchanges columns 3,4 with columns 5,6
    Permutation expected_q({0, 1, 4, 5, 2, 3, 6});
    CHECK(dec.q == expected_q);
    IntMatrix expected_q_matrix{{1, 0, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0, 0},
                                {0, 0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 0, 1, 0},
                                {0, 0, 1, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0, 0},
                                {0, 0, 0, 0, 0, 0, 1}};
    CHECK(dec.q.column_matrix() == expected_q_matrix);

    IntMatrix expected_d{{1, 0, -1, 2, 0, 0, 0},
                         {0, 4, 4, 0, 0, 0, 0},
                         {0, 0, 0, 0, 3, 1, 2},
                         {0, 0, 0, 0, 0, 0, 0},
                         {0, 0, 0, 0, 0, 0, 0}};
    CHECK(dec.d == expected_d);
    check_diagonalization_contract(kExample36, dec);
}

TEST_CASE("irreducible and degenerate inputs") {
    Decomposition one = hnf_diagonalize(IntMatrix{{1, 1}});
    CHECK_FALSE(one.decomposable);
    CHECK(one.blocks.size() == 1);
    CHECK(one.blocks[0].generators == std::vector<std::size_t>{0, 1});

    Decomposition zero = hnf_diagonalize(IntMatrix(2, 3));
    CHECK(zero.decomposable);
    CHECK(zero.blocks.empty());
    CHECK(zero.free_generators == std::vector<std::size_t>{0, 1, 2});

    Decomposition single = hnf_diagonalize(IntMatrix(1, 1));
    CHECK_FALSE(single.decomposable);  // one trivial summand only
}

TEST_CASE("is_hnf_diagonal") {
    IntMatrix good{{1, 0, -1, 2, 0, 0, 0},
                   {0, 4, 4, 0, 0, 0, 0},
                   {0, 0, 0, 0, 3, 1, 2},
                   {0, 0, 0, 0, 0, 0, 0},
                   {0, 0, 0, 0, 0, 0, 0}};
    CHECK(is_hnf_diagonal(good));

    IntMatrix interleaved{{1, 0, 0, 0, -1, 2, 0},
                          {0, 4, 0, 0, 4, 0, 0},
                          {0, 0, 3, 1, 0, 0, 2},
                          {0, 0, 0, 0, 0, 0, 0},
                          {0, 0, 0, 0, 0, 0, 0}};
    CHECK_FALSE(is_hnf_diagonal(interleaved));

    CHECK(is_hnf_diagonal(IntMatrix::identity(3)));
    CHECK_FALSE(is_hnf_diagonal(IntMatrix{{0, 0}, {1, 1}}));  // zero row on top
    CHECK_FALSE(is_hnf_diagonal(IntMatrix{{0, 1}}));          // zero column on the left
    CHECK_FALSE(is_hnf_diagonal(IntMatrix{{2, 0}, {1, 3}}));  // not echelon
}

TEST_CASE("semigroup decomposition of the 32-generator binary model") {
    SemigroupPresentation p(bpg_bin());
    IntMatrix d1{{1, 0, 0, -1}, {0, 1, 0, 1}, {0, 0, 1, 1}};

    Decomposition direct = decompose_semigroup(p, DecomposeMode::direct);
    CHECK(direct.decomposable);
    REQUIRE(direct.blocks.size() == 8);
    for (std::size_t b = 0; b < 8; ++b) {
        CHECK(direct.blocks[b].generators ==
              std::vector<std::size_t>{b, b + 8, b + 16, b + 24});
        CHECK(direct.blocks[b].matrix == d1);
    }
    CHECK(direct.free_generators.empty());
    check_diagonalization_contract(p.matrix(), direct);

    Decomposition kernel = decompose_semigroup(p, DecomposeMode::kernel);
    CHECK(kernel.decomposable);
    REQUIRE(kernel.blocks.size() == 8);
    for (std::size_t b = 0; b < 8; ++b)
        CHECK(kernel.blocks[b].generators == direct.blocks[b].generators);
}

TEST_CASE("kernel-mode decomposition of the 5x7 variety example") {
    SemigroupPresentation p(kExample36);
    Decomposition dec = decompose_semigroup(p);
    CHECK(dec.decomposable);
    REQUIRE(dec.blocks.size() == 2);
    CHECK(dec.blocks[0].generators == std::vector<std::size_t>{0, 1, 4, 5});
    CHECK(dec.blocks[1].generators == std::vector<std::size_t>{2, 3, 6});

    // the summands in original coordinates: S = <A_1> + <A_2> with
    IntMatrix summand1{{-1, -4, -3, -2},
                       {-4, -4, 0, -8},
                       {7, 8, 1, 14},
                       {7, 16, 9, 14},
                       {-1, -4, -3, -2}};
    IntMatrix summand2{{12, 4, 8}, {-9, -3, -6}, {12, 4, 8}, {6, 2, 4}, {-3, -1, -2}};
    CHECK(p.matrix().submatrix(0, 5, dec.blocks[0].generators) == summand1);
    CHECK(p.matrix().submatrix(0, 5, dec.blocks[1].generators) == summand2);

    // kernel-product property: the embedded block kernels span ker S
    LatticeBasis ker = kernel_with_torsion(p);
    std::size_t total_rows = 0;
    for (const auto& b : dec.blocks) total_rows += b.matrix.rows();
    IntMatrix stacked(total_rows, p.num_generators());
    std::size_t r = 0;
    for (const auto& b : dec.blocks)
        for (std::size_t i = 0; i < b.matrix.rows(); ++i, ++r)
            for (std::size_t k = 0; k < b.generators.size(); ++k)
                stacked.at(r, b.generators[k]) = b.matrix.at(i, k);
    CHECK(row_lattice_equal(stacked, ker.basis()));
}

TEST_CASE("identity semigroup splits into three free summands") {
    SemigroupPresentation p(IntMatrix::identity(3));
    Decomposition dec = decompose_semigroup(p);
    CHECK(dec.decomposable);
    CHECK(dec.blocks.empty());
    CHECK(dec.free_generators == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("direct mode is only a sufficient condition") {
    SemigroupPresentation p(IntMatrix{{1, 1}, {0, 2}});
    Decomposition direct = decompose_semigroup(p, DecomposeMode::direct);
    CHECK_FALSE(direct.decomposable);  // generator lattice is irreducible

    Decomposition kernel = decompose_semigroup(p, DecomposeMode::kernel);
    CHECK(kernel.decomposable);  // zero kernel: two free summands
    CHECK(kernel.free_generators.size() == 2);
}

TEST_CASE("direct mode refuses torsion") {
    SemigroupPresentation p(IntMatrix{{1, 1}}, IntVec{2});
    CHECK_THROWS_AS(decompose_semigroup(p, DecomposeMode::direct), math_error);
    CHECK_THROWS_AS(nice_generators(p), math_error);
    CHECK_THROWS_AS(reparametrize(p), math_error);
}

TEST_CASE("nice generators of the 5x7 example") {
    SemigroupPresentation p(kExample36);
    IntMatrix nice = nice_generators(p);
    IntMatrix expected{{1, 0, -1, 2, 0, 0, 0},
                       {0, 4, 4, 0, 0, 0, 0},
                       {0, 0, 0, 0, 3, 1, 2},
                       {0, 0, 0, 0, 0, 0, 0},
                       {0, 0, 0, 0, 0, 0, 0}};
    CHECK(nice == expected);

    // same relations: kernel of D pulled back along Q equals kernel of A
    Decomposition dec = hnf_diagonalize(p.matrix());
    LatticeBasis kd = integer_kernel(dec.q.inverse().apply_to_columns(nice));
    CHECK(kd == integer_kernel(p.matrix()));

    CHECK(nice_generators(SemigroupPresentation(IntMatrix::identity(4))) ==
          IntMatrix::identity(4));
}

TEST_CASE("nice generators of the binary model: eight diagonal copies") {
    SemigroupPresentation p(bpg_bin());
    IntMatrix nice = nice_generators(p);
    CHECK(rank(nice) == 24);
    Decomposition dec = hnf_diagonalize(p.matrix());
    CHECK(row_lattice_equal(nice, dec.q.apply_to_columns(p.matrix())));
    std::size_t nonzero_rows = 0;
    while (nonzero_rows < 32 && !nice.row_is_zero(nonzero_rows)) ++nonzero_rows;
    CHECK(nonzero_rows == 24);
    IntMatrix d1{{1, 0, 0, -1}, {0, 1, 0, 1}, {0, 0, 1, 1}};
    for (std::size_t b = 0; b < 8; ++b)
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                CHECK(nice.at(3 * b + i, 4 * b + j) == d1.at(i, j));
}

TEST_CASE("reparametrization of the 5x7 example") {
    SemigroupPresentation p(kExample36);
    Parametrization par = reparametrize(p);
    REQUIRE(par.parameter_count == 3);
    // x1=q1, x2=q2^4, x3=q3^3, x4=q3, x5=q1^-1 q2^4, x6=q1^2, x7=q3^2
    CHECK(par.exponents[0] == IntVec{1, 0, 0});
    CHECK(par.exponents[1] == IntVec{0, 4, 0});
    CHECK(par.exponents[2] == IntVec{0, 0, 3});
    CHECK(par.exponents[3] == IntVec{0, 0, 1});
    CHECK(par.exponents[4] == IntVec{-1, 4, 0});
    CHECK(par.exponents[5] == IntVec{2, 0, 0});
    CHECK(par.exponents[6] == IntVec{0, 0, 2});
    CHECK(par.generator_block == std::vector<std::size_t>{0, 0, 1, 1, 0, 0, 1});
    CHECK(par.block_parameters ==
          std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}, {2, 3}});
}

TEST_CASE("reparametrization of an identity presentation is trivial") {
    Parametrization par = reparametrize(SemigroupPresentation(IntMatrix::identity(3)));
    CHECK(par.parameter_count == 3);
    for (std::size_t j = 0; j < 3; ++j) {
        IntVec e(3);
        e[j] = 1;
        CHECK(par.exponents[j] == e);
    }
}

TEST_CASE("reparametrization of the first binary-model block") {
    IntMatrix d1{{1, 0, 0, -1}, {0, 1, 0, 1}, {0, 0, 1, 1}};
    SemigroupPresentation p(d1);
    Parametrization par = reparametrize(p);
    REQUIRE(par.parameter_count == 3);
    CHECK(par.exponents[0] == IntVec{1, 0, 0});
    CHECK(par.exponents[1] == IntVec{0, 1, 0});
    CHECK(par.exponents[2] == IntVec{0, 0, 1});
    CHECK(par.exponents[3] == IntVec{-1, 1, 1});
}

TEST_CASE("random diagonalization invariants") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 50; ++trial) {
        IntMatrix l = oracle::random_matrix(rng, 1 + trial % 4, 2 + trial % 5, -4, 4);
        Decomposition dec = hnf_diagonalize(l);
        check_diagonalization_contract(l, dec);
    }
}

TEST_CASE("planted kernel blocks are recovered through unimodular mixing") {
    std::mt19937_64 rng(5150);
    for (int trial = 0; trial < 30; ++trial) {
        // two planted connected kernel blocks, mixed and shuffled
        IntMatrix k1 = hnf(oracle::random_matrix(rng, 2, 3, -3, 3)).h;
        IntMatrix k2 = hnf(oracle::random_matrix(rng, 1, 2, -3, 3)).h;
        if (hnf_diagonalize(k1).num_summands() != 1) continue;
        if (hnf_diagonalize(k2).num_summands() != 1) continue;

        IntMatrix planted(3, 5);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 3; ++j) planted.at(i, j) = k1.at(i, j);
        for (std::size_t j = 0; j < 2; ++j) planted.at(2, 3 + j) = k2.at(0, j);

        Permutation shuffle(oracle::random_permutation(rng, 5));
        IntMatrix mixed =
            oracle::random_unimodular(rng, 3, 12) * shuffle.apply_to_columns(planted);

        Decomposition dec = hnf_diagonalize(mixed);
        REQUIRE(dec.blocks.size() == 2);
        CHECK(dec.free_generators.empty());

        // the recovered column sets must be the planted ones (shuffled)
        std::vector<std::size_t> want1, want2;
        Permutation inv = shuffle.inverse();
        for (std::size_t j = 0; j < 3; ++j) want1.push_back(inv.image(j));
        for (std::size_t j = 3; j < 5; ++j) want2.push_back(inv.image(j));
        std::sort(want1.begin(), want1.end());
        std::sort(want2.begin(), want2.end());
        bool match = (dec.blocks[0].generators == want1 && dec.blocks[1].generators == want2) ||
                     (dec.blocks[0].generators == want2 && dec.blocks[1].generators == want1);
        CHECK(match);
    }
}
