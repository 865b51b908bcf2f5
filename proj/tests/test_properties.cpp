#include "semidec/decompose.hpp"
#include "semidec/errors.hpp"
#include "semidec/fibers.hpp"
#include "semidec/toric.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <functional>
#include <map>
#include <numeric>
#include <set>

using namespace semidec;

namespace {

std::set<Binomial> as_set(const std::vector<Binomial>& v) { return {v.begin(), v.end()}; }

std::map<IntVec, std::size_t> degree_histogram(const MarkovBasis& m) {
    std::map<IntVec, std::size_t> h;
    for (const auto& d : m.sdegrees) ++h[d];
    return h;
}

} // namespace

TEST_CASE("markov basis agrees with the exhaustive fiber-graph oracle") {
    std::mt19937_64 rng(1001);
    int done = 0;
    while (done < 30) {
        SemigroupPresentation p = oracle::random_pointed(rng, 2, 3 + done % 3, -3, 3);
        PointednessResult pt = is_pointed(p);
        LatticeBasis k = kernel_with_torsion(p);
        auto gens = lattice_ideal_gens(k);
        MarkovBasis mine = minimal_markov(gens, p);

        std::vector<IntVec> cand;
        for (const auto& g : gens) cand.push_back(sdegree(g.plus(), p));
        auto oracle_basis = oracle::markov_by_fibers(cand, p, pt.functional);
        CHECK(as_set(mine.binomials) == as_set(oracle_basis));

        // per-degree counts equal components - 1
        for (const auto& [deg, count] : degree_histogram(mine))
            CHECK(count == oracle::degree_count(deg, p, pt.functional));
        ++done;
    }
}

TEST_CASE("generation soundness: outputs generate the lattice ideal") {
    std::mt19937_64 rng(2002);
    for (int done = 0; done < 15;) {
        SemigroupPresentation p = oracle::random_pointed(rng, 2, 4, -3, 3);
        LatticeBasis k = kernel_with_torsion(p);
        if (k.rank() == 0) continue;
        ++done;
        auto gens = lattice_ideal_gens(k);
        MarkovBasis mb = minimal_markov(gens, p);

        TermOrder order = TermOrder::grevlex(positive_grading(k));
        auto gb_markov = buchberger(mb.binomials, order);
        for (const auto& g : gens) CHECK(reduces_to_zero(g, gb_markov, order));
        auto gb_gens = buchberger(gens, order);
        for (const auto& b : mb.binomials) CHECK(reduces_to_zero(b, gb_gens, order));

        // every output exponent vector lies in the kernel lattice and is
        // homogeneous under the moduli
        for (const auto& b : mb.binomials) {
            CHECK(k.contains(b.vector()));
            CHECK(is_homogeneous(b, p));
        }
    }
}

TEST_CASE("markov split over planted decomposable instances") {
    std::mt19937_64 rng(3003);
    for (int done = 0; done < 12;) {
        SemigroupPresentation b1 = oracle::random_irreducible_block(rng, 2, 3, -2, 2);
        SemigroupPresentation b2 = oracle::random_irreducible_block(rng, 1, 2 + done % 2, -2, 2);
        auto planted = oracle::plant_decomposable(rng, {b1, b2});
        const SemigroupPresentation& p = planted.presentation;
        if (!is_pointed(p).pointed) continue;
        ++done;

        Decomposition dec = decompose_semigroup(p);
        REQUIRE(dec.blocks.size() == 2);
        CHECK(dec.free_generators.empty());

        // recovered partition equals the planted one
        std::set<std::set<std::size_t>> got, want;
        for (const auto& blk : dec.blocks)
            got.insert({blk.generators.begin(), blk.generators.end()});
        for (const auto& part : planted.partition)
            want.insert({part.begin(), part.end()});
        CHECK(got == want);

        // Markov split: whole equals the embedded union of block bases
        MarkovBasis whole = minimal_markov(p);
        MarkovBasis assembled = assemble_decomposed(p, dec, per_block_markov(p, dec));
        CHECK(as_set(whole.binomials) == as_set(assembled.binomials));

        // Betti(S) is the union of the embedded block Betti degrees
        CHECK(betti_degrees(whole) == betti_degrees(assembled));
    }
}

TEST_CASE("uniqueness and complete intersection propagate through blocks") {
    std::mt19937_64 rng(4004);
    for (int done = 0; done < 10;) {
        SemigroupPresentation b1 = oracle::random_irreducible_block(rng, 2, 3, -2, 2);
        SemigroupPresentation b2 = oracle::random_irreducible_block(rng, 2, 3, -2, 2);
        auto planted = oracle::plant_decomposable(rng, {b1, b2});
        const SemigroupPresentation& p = planted.presentation;
        if (!is_pointed(p).pointed) continue;
        ++done;

        Decomposition dec = decompose_semigroup(p);
        auto per_block = per_block_markov(p, dec);
        MarkovBasis whole = minimal_markov(p);

        bool all_unique = true, all_ci = true;
        for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
            SemigroupPresentation sub = p.restrict_to(dec.blocks[b].generators);
            LatticeBasis kb = LatticeBasis::from_spanning_rows(dec.blocks[b].matrix);
            all_unique = all_unique && is_unique_markov(per_block[b], sub);
            all_ci = all_ci && is_complete_intersection(per_block[b], kb);
        }
        CHECK(is_unique_markov(whole, p) == all_unique);
        CHECK(is_complete_intersection(whole, kernel_with_torsion(p)) == all_ci);
    }
}

TEST_CASE("graver bases split over product lattices") {
    std::mt19937_64 rng(5005);
    for (int done = 0; done < 10;) {
        SemigroupPresentation b1 = oracle::random_pointed(rng, 2, 3, -2, 2);
        SemigroupPresentation b2 = oracle::random_pointed(rng, 1, 2, -2, 2);
        LatticeBasis k1 = kernel_with_torsion(b1);
        LatticeBasis k2 = kernel_with_torsion(b2);
        if (k1.rank() == 0 || k2.rank() == 0) continue;

        const std::size_t n1 = b1.num_generators(), n2 = b2.num_generators();
        IntMatrix prod(k1.rank() + k2.rank(), n1 + n2);
        for (std::size_t i = 0; i < k1.rank(); ++i)
            for (std::size_t j = 0; j < n1; ++j) prod.at(i, j) = k1.basis().at(i, j);
        for (std::size_t i = 0; i < k2.rank(); ++i)
            for (std::size_t j = 0; j < n2; ++j)
                prod.at(k1.rank() + i, n1 + j) = k2.basis().at(i, j);

        std::vector<Binomial> g1, g2, gp;
        try {
            g1 = graver_basis(k1, Int(16));
            g2 = graver_basis(k2, Int(16));
            gp = graver_basis(LatticeBasis::from_spanning_rows(prod), Int(16));
        } catch (const math_error&) {
            continue;
        }
        ++done;

        std::set<Binomial> want;
        std::vector<std::size_t> pos1(n1), pos2(n2);
        for (std::size_t j = 0; j < n1; ++j) pos1[j] = j;
        for (std::size_t j = 0; j < n2; ++j) pos2[j] = n1 + j;
        for (const auto& b : g1) want.insert(b.embed(n1 + n2, pos1));
        for (const auto& b : g2) want.insert(b.embed(n1 + n2, pos2));
        CHECK(as_set(gp) == want);
    }
}

TEST_CASE("combinatorial characterization agrees with the kernel route") {
    std::mt19937_64 rng(6006);
    int done = 0;
    while (done < 25) {
        SemigroupPresentation p = oracle::random_pointed(rng, 2, 3 + done % 5, -2, 2);
        MarkovBasis mb = minimal_markov(p);
        Decomposition dec = decompose_semigroup(p);
        auto part = combinatorial_decomposable(p, mb);
        CHECK(part.has_value() == dec.decomposable);
        if (part) {
            // bipartition is a union of kernel-route summands
            std::set<std::size_t> c1(part->first.begin(), part->first.end());
            for (const auto& summand : dec.generator_partition()) {
                bool inside = c1.count(summand[0]) > 0;
                for (std::size_t g : summand) CHECK(c1.count(g) == (inside ? 1u : 0u));
            }
        }
        ++done;
    }
}

TEST_CASE("uniqueness criterion matches exhaustive basis enumeration") {
    std::mt19937_64 rng(7007);
    int done = 0;
    while (done < 20) {
        SemigroupPresentation p = oracle::random_pointed(rng, 2, 3, -2, 2);
        PointednessResult pt = is_pointed(p);
        MarkovBasis mb = minimal_markov(p);
        if (mb.size() == 0) {
            CHECK(is_unique_markov(mb, p));
            ++done;
            continue;
        }
        std::size_t total_choices = 1;
        for (const auto& deg : betti_degrees(mb))
            total_choices *= oracle::minimal_choices_at_degree(deg, p, pt.functional);
        CHECK(is_unique_markov(mb, p) == (total_choices == 1));
        ++done;
    }
}

TEST_CASE("markov bases connect every sampled fiber by their moves") {
    // the defining property: adding/subtracting basis vectors walks
    // between any two monomials of the same degree
    std::mt19937_64 rng(4321);
    int done = 0;
    while (done < 12) {
        SemigroupPresentation p = oracle::random_pointed(rng, 2, 3 + done % 3, -2, 2);
        PointednessResult pt = is_pointed(p);
        MarkovBasis mb = minimal_markov(p);

        // all degrees realized by small exponent vectors
        std::set<IntVec> degrees;
        std::uniform_int_distribution<long> c(0, 2);
        for (int s = 0; s < 40; ++s) {
            IntVec e(p.num_generators());
            for (auto& x : e) x = c(rng);
            degrees.insert(sdegree(e, p));
        }

        for (const IntVec& m : degrees) {
            auto fib = oracle::fiber_by_enumeration(m, p, pt.functional);
            if (fib.size() < 2) continue;
            std::vector<std::size_t> parent(fib.size());
            std::iota(parent.begin(), parent.end(), 0);
            std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
                while (parent[a] != a) a = parent[a] = parent[parent[a]];
                return a;
            };
            for (std::size_t i = 0; i < fib.size(); ++i)
                for (std::size_t j = i + 1; j < fib.size(); ++j) {
                    IntVec diff = sub_vec(fib[i], fib[j]);
                    for (const auto& b : mb.binomials)
                        if (diff == b.vector() || neg_vec(diff) == b.vector()) {
                            parent[find(i)] = find(j);
                            break;
                        }
                }
            std::size_t root = find(0);
            bool connected = true;
            for (std::size_t v = 1; v < fib.size(); ++v)
                connected = connected && find(v) == root;
            CHECK(connected);
        }
        ++done;
    }
}

TEST_CASE("fiber complexes are disconnected exactly at Betti degrees") {
    std::mt19937_64 rng(1111);
    int done = 0;
    while (done < 10) {
        SemigroupPresentation p = oracle::random_pointed(rng, 2, 3 + done % 2, -2, 2);
        PointednessResult pt = is_pointed(p);
        MarkovBasis mb = minimal_markov(p);
        auto betti = betti_degrees(mb);
        std::set<IntVec> betti_set(betti.begin(), betti.end());

        for (const auto& deg : betti) {
            CHECK_FALSE(nabla(deg, p, pt.functional).connected());
            CHECK_FALSE(delta(deg, p).connected());
        }

        // random degrees outside the Betti set have connected complexes
        std::uniform_int_distribution<long> c(0, 3);
        for (int s = 0; s < 50; ++s) {
            IntVec e(p.num_generators());
            for (auto& x : e) x = c(rng);
            IntVec m = sdegree(e, p);
            if (betti_set.count(m)) continue;
            FiberComplex fc = nabla(m, p, pt.functional);
            CHECK(fc.connected());
        }
        ++done;
    }
}

TEST_CASE("double decomposition is idempotent") {
    std::mt19937_64 rng(8008);
    for (int done = 0; done < 10;) {
        SemigroupPresentation p = oracle::random_pointed(rng, 2, 4, -3, 3);
        Decomposition dec = decompose_semigroup(p);
        if (dec.blocks.empty()) continue;
        ++done;
        for (const auto& blk : dec.blocks) {
            Decomposition again = hnf_diagonalize(blk.matrix);
            CHECK(again.blocks.size() == 1);
            CHECK_FALSE(again.decomposable);
        }
    }
}

TEST_CASE("gluing propagation over planted instances") {
    std::mt19937_64 rng(9009);
    // a <2,3>-like block forces a gluing of the whole semigroup
    SemigroupPresentation glue_block(IntMatrix{{2, 3}});
    SemigroupPresentation other(IntMatrix{{1, 0}, {0, 1}});
    auto planted = oracle::plant_decomposable(rng, {glue_block, other});
    auto cert = detect_gluing(planted.presentation);
    REQUIRE(cert.has_value());
    CHECK(sdegree(cert->witness1, planted.presentation) == cert->degree);

    // all-free blocks cannot glue
    SemigroupPresentation all_free(IntMatrix::identity(3));
    CHECK_FALSE(detect_gluing(all_free).has_value());
}
