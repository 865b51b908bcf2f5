#include "semidec/toric.hpp"

#include "semidec/errors.hpp"
#include "semidec/fibers.hpp"
#include "semidec/simplex.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace semidec {

Binomial::Binomial(IntVec v) : v_(std::move(v)) {
    for (const Int& x : v_) {
        if (x == 0) continue;
        if (x < 0)
            for (Int& y : v_) y = -y;
        break;
    }
}

IntVec Binomial::plus() const {
    IntVec p(v_.size());
    for (std::size_t i = 0; i < v_.size(); ++i)
        if (v_[i] > 0) p[i] = v_[i];
    return p;
}

IntVec Binomial::minus() const {
    IntVec m(v_.size());
    for (std::size_t i = 0; i < v_.size(); ++i)
        if (v_[i] < 0) m[i] = -v_[i];
    return m;
}

std::vector<std::size_t> Binomial::support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < v_.size(); ++i)
        if (v_[i] != 0) s.push_back(i);
    return s;
}

Binomial Binomial::embed(std::size_t dim, const std::vector<std::size_t>& positions) const {
    if (positions.size() != v_.size())
        throw math_error("embed: position count mismatch");
    IntVec w(dim);
    for (std::size_t k = 0; k < v_.size(); ++k) {
        if (positions[k] >= dim) throw math_error("embed: position out of range");
        w[positions[k]] = v_[k];
    }
    return Binomial(std::move(w));
}

namespace {

void append_monomial(std::ostringstream& os, const IntVec& e,
                     const std::vector<std::string>& labels, bool negative) {
    bool any = false;
    for (std::size_t i = 0; i < e.size(); ++i) {
        Int v = negative ? Int(-e[i]) : e[i];
        if (v <= 0) continue;
        if (any) os << '*';
        if (labels.empty())
            os << 'x' << (i + 1);
        else
            os << labels[i];
        if (v > 1) os << '^' << v;
        any = true;
    }
    if (!any) os << '1';
}

} // namespace

std::string Binomial::to_string(const std::vector<std::string>& labels) const {
    std::ostringstream os;
    append_monomial(os, v_, labels, false);
    os << " - ";
    append_monomial(os, v_, labels, true);
    return os.str();
}

std::string monomial_to_string(const IntVec& exponent,
                               const std::vector<std::string>& labels) {
    std::ostringstream os;
    append_monomial(os, exponent, labels, false);
    return os.str();
}

IntVec sdegree(const IntVec& exponent, const SemigroupPresentation& p) {
    for (const Int& e : exponent)
        if (e < 0) throw math_error("sdegree of a negative exponent");
    return p.reduce_degree(p.matrix().apply(exponent));
}

bool is_homogeneous(const Binomial& b, const SemigroupPresentation& p) {
    return sdegree(b.plus(), p) == sdegree(b.minus(), p);
}

TermOrder::TermOrder(Kind kind, std::vector<std::size_t> priority, IntVec weights)
    : kind_(kind), priority_(std::move(priority)), weights_(std::move(weights)) {
    if (priority_.size() != weights_.size())
        throw math_error("term order: priority/weight size mismatch");
    for (const Int& w : weights_)
        if (w <= 0) throw math_error("term order weights must be strictly positive");
}

TermOrder TermOrder::grevlex(IntVec weights) {
    std::vector<std::size_t> prio(weights.size());
    for (std::size_t i = 0; i < prio.size(); ++i) prio[i] = i;
    return TermOrder(Kind::grevlex, std::move(prio), std::move(weights));
}

Int TermOrder::weighted_degree(const IntVec& u) const {
    Int d = 0;
    for (std::size_t i = 0; i < u.size(); ++i) d += weights_[i] * u[i];
    return d;
}

int TermOrder::compare(const IntVec& u, const IntVec& v) const {
    if (kind_ != Kind::lex) {
        Int du = weighted_degree(u), dv = weighted_degree(v);
        if (du != dv) return du < dv ? -1 : 1;
    }
    if (kind_ == Kind::grevlex) {
        // scan from the cheapest variable: larger exponent there means smaller
        for (std::size_t k = priority_.size(); k-- > 0;) {
            std::size_t var = priority_[k];
            if (u[var] != v[var]) return u[var] > v[var] ? -1 : 1;
        }
        return 0;
    }
    for (std::size_t var : priority_) {
        if (u[var] != v[var]) return u[var] > v[var] ? 1 : -1;
    }
    return 0;
}

TermOrder TermOrder::with_cheapest(std::size_t var) const {
    std::vector<std::size_t> prio;
    for (std::size_t v : priority_)
        if (v != var) prio.push_back(v);
    prio.push_back(var);
    return TermOrder(kind_, std::move(prio), weights_);
}

namespace {

bool divides(const IntVec& a, const IntVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

bool coprime(const IntVec& a, const IntVec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

IntVec lcm_vec(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

bool gb_is_zero(const OrientedBinomial& p) { return p.lead == p.tail; }

std::optional<OrientedBinomial> orient(IntVec u, IntVec v, const TermOrder& order) {
    int c = order.compare(u, v);
    if (c == 0) return std::nullopt;
    if (c > 0) return OrientedBinomial{std::move(u), std::move(v)};
    return OrientedBinomial{std::move(v), std::move(u)};
}

void check_deadline(const Deadline& deadline) {
    if (deadline && std::chrono::steady_clock::now() > *deadline)
        throw timeout_error("computation exceeded its deadline");
}

} // namespace

OrientedBinomial normal_form(OrientedBinomial p, const std::vector<OrientedBinomial>& gb,
                             const TermOrder& order) {
    if (gb_is_zero(p)) return p;
    for (;;) {
        bool hit = false;
        for (const auto& g : gb) {
            if (!divides(g.lead, p.lead)) continue;
            for (std::size_t i = 0; i < p.lead.size(); ++i)
                p.lead[i] += g.tail[i] - g.lead[i];
            int c = order.compare(p.lead, p.tail);
            if (c == 0) return p;  // reduced to zero
            if (c < 0) std::swap(p.lead, p.tail);
            hit = true;
            break;
        }
        if (!hit) break;
    }
    for (;;) {
        bool hit = false;
        for (const auto& g : gb) {
            if (!divides(g.lead, p.tail)) continue;
            for (std::size_t i = 0; i < p.tail.size(); ++i)
                p.tail[i] += g.tail[i] - g.lead[i];
            hit = true;
            break;
        }
        if (!hit) break;
    }
    return p;
}

bool reduces_to_zero(const Binomial& b, const std::vector<OrientedBinomial>& gb,
                     const TermOrder& order) {
    auto p = orient(b.plus(), b.minus(), order);
    if (!p) return true;
    return gb_is_zero(normal_form(*p, gb, order));
}

std::vector<OrientedBinomial> buchberger(const std::vector<OrientedBinomial>& gens,
                                         const TermOrder& order,
                                         const Deadline& deadline) {
    std::vector<OrientedBinomial> g;
    for (const auto& raw : gens) {
        auto ob = orient(raw.lead, raw.tail, order);
        if (!ob) continue;
        if (std::find(g.begin(), g.end(), *ob) == g.end()) g.push_back(*ob);
    }

    struct Pair {
        std::size_t i, j;
        IntVec lcm;
        Int wdeg;
    };
    std::vector<Pair> pairs;
    auto push_pairs = [&](std::size_t k) {
        for (std::size_t i = 0; i < k; ++i) {
            IntVec l = lcm_vec(g[i].lead, g[k].lead);
            pairs.push_back({i, k, l, order.weighted_degree(l)});
        }
    };
    for (std::size_t k = 1; k < g.size(); ++k) push_pairs(k);

    while (!pairs.empty()) {
        check_deadline(deadline);
        std::size_t best = 0;
        for (std::size_t t = 1; t < pairs.size(); ++t) {
            const Pair &a = pairs[t], &b = pairs[best];
            int c;
            if (a.wdeg != b.wdeg)
                c = a.wdeg < b.wdeg ? -1 : 1;
            else
                c = order.compare(a.lcm, b.lcm);
            if (c < 0 || (c == 0 && (a.i < b.i || (a.i == b.i && a.j < b.j))))
                best = t;
        }
        Pair pr = pairs[best];
        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));

        if (coprime(g[pr.i].lead, g[pr.j].lead)) continue;

        IntVec u = pr.lcm, v = pr.lcm;
        for (std::size_t t = 0; t < u.size(); ++t) {
            u[t] += g[pr.i].tail[t] - g[pr.i].lead[t];
            v[t] += g[pr.j].tail[t] - g[pr.j].lead[t];
        }
        auto s = orient(std::move(u), std::move(v), order);
        if (!s) continue;
        OrientedBinomial nf = normal_form(*s, g, order);
        if (gb_is_zero(nf)) continue;
        g.push_back(nf);
        push_pairs(g.size() - 1);
    }

    // minimal: drop elements whose lead is divisible by another lead
    std::vector<bool> alive(g.size(), true);
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (i == j || !alive[j]) continue;
            if (divides(g[j].lead, g[i].lead) && (g[j].lead != g[i].lead || j < i)) {
                alive[i] = false;
                break;
            }
        }
    }
    std::vector<OrientedBinomial> kept;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (alive[i]) kept.push_back(g[i]);

    // reduced: normalize every tail against the minimal set
    for (auto& e : kept) {
        for (;;) {
            bool hit = false;
            for (const auto& other : kept) {
                if (&other == &e) continue;
                if (!divides(other.lead, e.tail)) continue;
                for (std::size_t t = 0; t < e.tail.size(); ++t)
                    e.tail[t] += other.tail[t] - other.lead[t];
                hit = true;
                break;
            }
            if (!hit) break;
        }
    }
    std::sort(kept.begin(), kept.end(),
              [&](const OrientedBinomial& a, const OrientedBinomial& b) {
                  int c = order.compare(a.lead, b.lead);
                  if (c != 0) return c < 0;
                  return order.compare(a.tail, b.tail) < 0;
              });
    return kept;
}

std::vector<OrientedBinomial> buchberger(const std::vector<Binomial>& gens,
                                         const TermOrder& order,
                                         const Deadline& deadline) {
    std::vector<OrientedBinomial> raw;
    for (const auto& b : gens)
        if (!b.is_zero()) raw.push_back({b.plus(), b.minus()});
    return buchberger(raw, order, deadline);
}

IntVec positive_grading(const LatticeBasis& k) {
    const std::size_t n = k.ambient_dim();
    IntVec w(n, Int(1));
    if (k.rank() == 0) return w;

    // weights u = 1 + s with s >= 0 and K u = 0
    std::vector<std::vector<Rat>> rows(k.rank(), std::vector<Rat>(n));
    std::vector<Rat> rhs(k.rank());
    for (std::size_t i = 0; i < k.rank(); ++i) {
        Rat sum = 0;
        for (std::size_t j = 0; j < n; ++j) {
            rows[i][j] = Rat(k.basis().at(i, j));
            sum += rows[i][j];
        }
        rhs[i] = -sum;
    }
    auto s = feasible_point(rows, rhs);
    if (!s)
        throw math_error("lattice is not pointed: no strictly positive grading exists");
    Int d = 1;
    for (const Rat& si : *s)
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), si.get_den().get_mpz_t());
    for (std::size_t j = 0; j < n; ++j)
        w[j] = Rat(Rat(d) * (Rat(1) + (*s)[j])).get_num();
    return w;
}

std::vector<Binomial> lattice_ideal_gens(const LatticeBasis& k, const Deadline& deadline) {
    if (k.rank() == 0) return {};
    const std::size_t n = k.ambient_dim();
    IntVec weights = positive_grading(k);
    TermOrder base = TermOrder::grevlex(weights);

    std::vector<OrientedBinomial> gens;
    for (std::size_t i = 0; i < k.rank(); ++i) {
        Binomial b(k.basis().row(i));
        gens.push_back({b.plus(), b.minus()});
    }

    for (std::size_t var = 0; var < n; ++var) {
        TermOrder order = base.with_cheapest(var);
        std::vector<OrientedBinomial> gb = buchberger(gens, order, deadline);
        for (auto& g : gb) {
            Int t = std::min(g.lead[var], g.tail[var]);
            if (t > 0) {
                g.lead[var] -= t;
                g.tail[var] -= t;
            }
        }
        gens = std::move(gb);
    }

    std::set<Binomial> out;
    for (const auto& g : gens) {
        Binomial b(sub_vec(g.lead, g.tail));
        if (!b.is_zero()) out.insert(b);
    }
    return {out.begin(), out.end()};
}

namespace {

std::vector<IntVec> distinct_degrees(const std::vector<IntVec>& degrees) {
    std::vector<IntVec> d = degrees;
    std::sort(d.begin(), d.end(),
              [](const IntVec& a, const IntVec& b) { return lex_compare(a, b) < 0; });
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d;
}

} // namespace

MarkovBasis minimal_markov(const std::vector<Binomial>& gens,
                           const SemigroupPresentation& p, const Deadline& deadline) {
    PointednessResult pt = is_pointed(p);
    if (!pt.pointed)
        throw math_error("presentation is not pointed; kernel witness " +
                         vec_to_string(pt.witness));

    std::vector<IntVec> candidates;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        candidates.push_back(sdegree(g.plus(), p));
    }

    MarkovBasis out;
    out.minimal = true;
    for (const IntVec& m : distinct_degrees(candidates)) {
        check_deadline(deadline);
        FiberComplex fc = nabla(m, p, pt.functional);
        if (fc.components.size() < 2) continue;

        // one representative monomial per component: the lex-largest
        std::vector<IntVec> reps;
        for (const auto& comp : fc.components) {
            const IntVec* best = &fc.vertices[comp[0]];
            for (std::size_t v : comp)
                if (lex_compare(fc.vertices[v], *best) > 0) best = &fc.vertices[v];
            reps.push_back(*best);
        }
        std::sort(reps.begin(), reps.end(),
                  [](const IntVec& a, const IntVec& b) { return lex_compare(a, b) > 0; });
        const IntVec& center = reps.front();
        for (std::size_t r = 1; r < reps.size(); ++r) {
            out.binomials.emplace_back(sub_vec(reps[r], center));
            out.sdegrees.push_back(m);
            out.block_ids.push_back(-1);
        }
    }
    return out;
}

MarkovBasis minimal_markov(const SemigroupPresentation& p, const Deadline& deadline) {
    PointednessResult pt = is_pointed(p);
    if (!pt.pointed)
        throw math_error("presentation is not pointed; kernel witness " +
                         vec_to_string(pt.witness));
    LatticeBasis k = kernel_with_torsion(p);
    return minimal_markov(lattice_ideal_gens(k, deadline), p, deadline);
}

std::vector<IntVec> betti_degrees(const MarkovBasis& m) {
    if (!m.minimal)
        throw math_error("betti_degrees requires a minimal Markov basis");
    return distinct_degrees(m.sdegrees);
}

bool is_unique_markov(const MarkovBasis& m, const SemigroupPresentation& p) {
    PointednessResult pt = is_pointed(p);
    if (!pt.pointed)
        throw math_error("uniqueness check requires a pointed presentation; witness " +
                         vec_to_string(pt.witness));
    for (const IntVec& deg : betti_degrees(m)) {
        FiberComplex fc = nabla(deg, p, pt.functional);
        if (fc.components.size() != 2) return false;
        if (fc.components[0].size() != 1 || fc.components[1].size() != 1) return false;
    }
    return true;
}

bool is_complete_intersection(const MarkovBasis& m, const LatticeBasis& k) {
    if (!m.minimal)
        throw math_error("complete intersection test requires a minimal Markov basis");
    return m.size() == k.rank();
}

namespace {

// sign-compatible divisibility: u+ <= v+ and u- <= v-
bool graver_reduces(const IntVec& u, const IntVec& v) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] > 0 && u[i] > v[i]) return false;
        if (u[i] < 0 && u[i] < v[i]) return false;
    }
    return true;
}

} // namespace

std::vector<Binomial> graver_basis(const LatticeBasis& k, std::optional<Int> degree_cap) {
    if (k.rank() == 0) return {};
    positive_grading(k);  // pointedness guard; completion diverges otherwise

    Int cap = 0;
    if (degree_cap) {
        cap = *degree_cap;
    } else {
        for (std::size_t i = 0; i < k.rank(); ++i)
            cap = std::max(cap, one_norm(k.basis().row(i)));
        cap *= 2;
    }

    std::vector<IntVec> g;
    for (std::size_t i = 0; i < k.rank(); ++i) {
        IntVec b = k.basis().row(i);
        if (one_norm(b) > cap)
            throw math_error("graver completion exceeded the 1-norm cap " +
                             cap.get_str());
        g.push_back(b);
        g.push_back(neg_vec(b));
    }

    auto reduce = [&](IntVec v) {
        for (;;) {
            if (is_zero_vec(v)) return v;
            bool hit = false;
            for (const auto& u : g) {
                if (graver_reduces(u, v)) {
                    v = sub_vec(v, u);
                    hit = true;
                    break;
                }
            }
            if (!hit) return v;
        }
    };

    std::vector<std::pair<std::size_t, std::size_t>> queue;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) queue.emplace_back(i, j);

    for (std::size_t head = 0; head < queue.size(); ++head) {
        auto [i, j] = queue[head];
        IntVec s = reduce(add_vec(g[i], g[j]));
        if (is_zero_vec(s)) continue;
        if (one_norm(s) > cap)
            throw math_error("graver completion exceeded the 1-norm cap " + cap.get_str());
        std::size_t idx = g.size();
        g.push_back(s);
        for (std::size_t t = 0; t < idx; ++t) queue.emplace_back(t, idx);
    }

    std::set<Binomial> out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        bool primitive = true;
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (i == j) continue;
            if (graver_reduces(g[j], g[i])) {
                primitive = false;
                break;
            }
        }
        if (primitive) out.insert(Binomial(g[i]));
    }
    return {out.begin(), out.end()};
}

std::vector<MarkovBasis> per_block_markov(const SemigroupPresentation& p,
                                          const Decomposition& dec,
                                          const Deadline& deadline) {
    const std::size_t count = dec.blocks.size();
    std::vector<MarkovBasis> out(count);

    auto run_block = [&](std::size_t b) {
        const auto& block = dec.blocks[b];
        SemigroupPresentation sub = p.restrict_to(block.generators);
        LatticeBasis k = dec.mode == DecomposeMode::kernel
                             ? LatticeBasis::from_spanning_rows(block.matrix)
                             : kernel_with_torsion(sub);
        MarkovBasis mb = minimal_markov(lattice_ideal_gens(k, deadline), sub, deadline);
        for (auto& id : mb.block_ids) id = static_cast<int>(b);
        out[b] = std::move(mb);
    };

    std::size_t workers = 1;
    if (const char* env = std::getenv("SEMIDEC_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 1) workers = static_cast<std::size_t>(v);
    }
    if (workers <= 1 || count <= 1) {
        for (std::size_t b = 0; b < count; ++b) run_block(b);
        return out;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t b = next.fetch_add(1);
            if (b >= count) return;
            try {
                run_block(b);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < std::min(workers, count); ++t)
        pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return out;
}

MarkovBasis assemble_decomposed(const SemigroupPresentation& p, const Decomposition& dec,
                                const std::vector<MarkovBasis>& per_block) {
    if (per_block.size() != dec.blocks.size())
        throw math_error("assemble: one basis per block required");
    const std::size_t n = p.num_generators();
    std::vector<bool> used(n, false);
    for (const auto& b : dec.blocks)
        for (std::size_t gidx : b.generators) {
            if (gidx >= n || used[gidx])
                throw math_error("assemble: block index sets overlap");
            used[gidx] = true;
        }

    MarkovBasis out;
    out.minimal = true;
    for (std::size_t b = 0; b < per_block.size(); ++b) {
        if (!per_block[b].minimal) out.minimal = false;
        for (const auto& bin : per_block[b].binomials) {
            Binomial embedded = bin.embed(n, dec.blocks[b].generators);
            out.sdegrees.push_back(sdegree(embedded.plus(), p));
            out.binomials.push_back(std::move(embedded));
            out.block_ids.push_back(static_cast<int>(b));
        }
    }
    return out;
}

} // namespace semidec
