#include "semidec/bench.hpp"
#include "semidec/decompose.hpp"
#include "semidec/errors.hpp"
#include "semidec/fibers.hpp"
#include "semidec/io.hpp"
#include "semidec/report.hpp"
#include "semidec/toric.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <map>
#include <iostream>
#include <sstream>

using namespace semidec;

namespace {

struct CommonArgs {
    std::string mat_path;
    std::string moduli_path;
    std::string json_path;
    bool no_timings = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("mat", args.mat_path, "matrix file (rows cols, then entries)")
        ->required();
    cmd->add_option("--moduli", args.moduli_path,
                    "torsion moduli file for the last rows");
    cmd->add_option("--json", args.json_path, "write the JSON report here ('-' = stdout)");
    cmd->add_flag("--no-timings", args.no_timings, "omit timing fields from the report");
}

SemigroupPresentation load_presentation(const CommonArgs& args) {
    IntMatrix a = parse_mat_file(args.mat_path);
    IntVec moduli;
    if (!args.moduli_path.empty()) moduli = parse_moduli_file(args.moduli_path);
    return SemigroupPresentation(std::move(a), std::move(moduli));
}

bool json_to_stdout(const CommonArgs& args) { return args.json_path == "-"; }

void emit(const CommonArgs& args, const Report& report, const std::string& human) {
    if (!json_to_stdout(args)) std::cout << human;
    if (args.json_path.empty()) return;
    if (json_to_stdout(args)) {
        std::cout << report.to_json_string();
    } else {
        std::ofstream out(args.json_path);
        out << report.to_json_string();
    }
}

void emit_error(const CommonArgs& args, const std::string& kind, const std::string& msg) {
    std::cerr << "error: " << msg << "\n";
    if (args.json_path.empty()) return;
    std::string payload = error_json(kind, msg).dump(2) + "\n";
    if (json_to_stdout(args)) {
        std::cout << payload;
    } else {
        std::ofstream out(args.json_path);
        out << payload;
    }
}

std::string indices_to_string(const std::vector<std::size_t>& v) {
    std::ostringstream os;
    os << '{';
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << v[i] + 1;
    }
    os << '}';
    return os.str();
}

class Timer {
public:
    std::int64_t elapsed_us() const {
        return std::chrono::duration_cast<std::chrono::microseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void fill_decomposition(Report& report, const Decomposition& dec, bool with_kernel) {
    report.mode = dec.mode == DecomposeMode::kernel ? "kernel" : "direct";
    report.decomposable = dec.decomposable;
    report.q_image.clear();
    for (std::size_t j = 0; j < dec.q.size(); ++j) report.q_image.push_back(dec.q.image(j));
    report.transform_p = dec.p;
    report.diagonal_d = dec.d;
    report.blocks.clear();
    for (const auto& b : dec.blocks) {
        Report::Block rb;
        rb.generators = b.generators;
        rb.matrix = b.matrix;
        if (with_kernel && dec.mode == DecomposeMode::kernel) rb.kernel = b.matrix;
        report.blocks.push_back(std::move(rb));
    }
    report.free_generators = dec.free_generators;
}

int run_decompose(const CommonArgs& args, const std::string& mode_name) {
    Timer timer;
    SemigroupPresentation p = load_presentation(args);
    DecomposeMode mode =
        mode_name == "direct" ? DecomposeMode::direct : DecomposeMode::kernel;

    Report report;
    report.command = "decompose";
    report.input = p.matrix();
    report.moduli = p.moduli();

    PointednessResult pt = is_pointed(p);
    report.pointed = pt.pointed;
    if (!pt.pointed) report.pointed_witness = pt.witness;

    Decomposition dec = decompose_semigroup(p, mode);
    fill_decomposition(report, dec, true);

    std::ostringstream human;
    human << "input: " << p.matrix().rows() << "x" << p.matrix().cols()
          << " generator matrix, " << (p.torsion_free() ? "torsion free" : "with torsion")
          << "\n";
    human << "mode: " << *report.mode << "\n";
    human << "pointed: " << (pt.pointed ? "yes" : "no") << "\n";
    if (!pt.pointed)
        human << "  kernel witness: " << vec_to_string(pt.witness) << "\n";
    human << "decomposable: " << (dec.decomposable ? "yes" : "no") << "\n";
    human << "summands: " << dec.num_summands() << " (" << dec.blocks.size()
          << " with relations, " << dec.free_generators.size() << " free)\n";
    for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
        human << "block " << b + 1 << ": generators "
              << indices_to_string(dec.blocks[b].generators) << "\n";
        human << dec.blocks[b].matrix;
    }
    if (!dec.free_generators.empty())
        human << "free generators (zero ideal): "
              << indices_to_string(dec.free_generators) << "\n";

    if (mode == DecomposeMode::direct) {
        Decomposition kernel_dec = decompose_semigroup(p, DecomposeMode::kernel);
        if (kernel_dec.decomposable != dec.decomposable) {
            report.direct_disagrees_with_kernel = true;
            report.notes.push_back(
                "direct mode is sufficient but not necessary: the kernel route "
                "reports a different decomposability verdict");
            human << "note: kernel mode disagrees (decomposable: "
                  << (kernel_dec.decomposable ? "yes" : "no")
                  << "); direct mode is only a sufficient condition\n";
        }
    }

    if (!args.no_timings) report.total_us = timer.elapsed_us();
    emit(args, report, human.str());
    return 0;
}

int run_markov(const CommonArgs& args, bool whole) {
    Timer timer;
    SemigroupPresentation p = load_presentation(args);

    Report report;
    report.command = "markov";
    report.input = p.matrix();
    report.moduli = p.moduli();
    PointednessResult pt = is_pointed(p);
    if (!pt.pointed)
        throw math_error("presentation is not pointed; kernel witness " +
                         vec_to_string(pt.witness));
    report.pointed = true;

    MarkovBasis basis;
    std::ostringstream human;
    if (whole) {
        report.mode = "whole";
        basis = minimal_markov(p);
    } else {
        report.mode = "per-block";
        Decomposition dec = decompose_semigroup(p, DecomposeMode::kernel);
        auto per_block = per_block_markov(p, dec);
        basis = assemble_decomposed(p, dec, per_block);
        fill_decomposition(report, dec, true);
        report.mode = "per-block";
        for (std::size_t b = 0; b < per_block.size(); ++b)
            report.blocks[b].markov = per_block[b].binomials;
    }
    report.markov = basis.binomials;
    report.betti = betti_degrees(basis);
    std::map<IntVec, std::size_t> hist;
    for (const auto& d : basis.sdegrees) ++hist[d];
    for (const auto& [deg, count] : hist) report.degree_multiplicity.emplace_back(deg, count);

    human << "minimal Markov basis (" << basis.size() << " binomials):\n";
    for (std::size_t i = 0; i < basis.size(); ++i) {
        human << "  " << basis.binomials[i].to_string(p.labels());
        if (basis.block_ids[i] >= 0) human << "   [block " << basis.block_ids[i] + 1 << "]";
        human << "\n";
    }
    human << "Betti degrees (" << report.betti.size() << "):\n";
    for (const auto& [deg, count] : report.degree_multiplicity)
        human << "  " << vec_to_string(deg) << "  x" << count << "\n";

    if (!args.no_timings) report.total_us = timer.elapsed_us();
    emit(args, report, human.str());
    return 0;
}

int run_check(const CommonArgs& args, bool want_unique, bool want_ci, bool want_gluing) {
    Timer timer;
    if (!want_unique && !want_ci && !want_gluing)
        want_unique = want_ci = want_gluing = true;
    SemigroupPresentation p = load_presentation(args);

    Report report;
    report.command = "check";
    report.input = p.matrix();
    report.moduli = p.moduli();
    PointednessResult pt = is_pointed(p);
    if (!pt.pointed)
        throw math_error("presentation is not pointed; kernel witness " +
                         vec_to_string(pt.witness));
    report.pointed = true;

    Decomposition dec = decompose_semigroup(p, DecomposeMode::kernel);
    fill_decomposition(report, dec, true);
    auto per_block = per_block_markov(p, dec);
    for (std::size_t b = 0; b < per_block.size(); ++b)
        report.blocks[b].markov = per_block[b].binomials;

    std::ostringstream human;
    human << "summands: " << dec.num_summands() << " (" << dec.blocks.size()
          << " with relations, " << dec.free_generators.size() << " free)\n";

    bool all_unique = true, all_ci = true, any_gluing = false;
    std::optional<GluingCertificate> cert;
    for (std::size_t b = 0; b < dec.blocks.size(); ++b) {
        SemigroupPresentation sub = p.restrict_to(dec.blocks[b].generators);
        LatticeBasis kb = LatticeBasis::from_spanning_rows(dec.blocks[b].matrix);
        human << "block " << b + 1 << " " << indices_to_string(dec.blocks[b].generators)
              << ":";
        if (want_unique) {
            bool u = is_unique_markov(per_block[b], sub);
            report.blocks[b].unique = u;
            all_unique = all_unique && u;
            human << " unique=" << (u ? "yes" : "no");
        }
        if (want_ci) {
            bool ci = is_complete_intersection(per_block[b], kb);
            report.blocks[b].complete_intersection = ci;
            all_ci = all_ci && ci;
            human << " ci=" << (ci ? "yes" : "no");
        }
        if (want_gluing) {
            auto block_cert = detect_block_gluing(p, dec, b);
            report.blocks[b].gluing = block_cert.has_value();
            if (block_cert && !cert) cert = block_cert;
            any_gluing = any_gluing || block_cert.has_value();
            human << " gluing=" << (block_cert ? "yes" : "no");
        }
        human << "\n";
    }
    // free generators are trivial summands: unique and complete
    // intersection vacuously, never a gluing

    if (want_unique) {
        report.unique = all_unique;
        human << "unique Markov basis: " << (all_unique ? "yes" : "no") << "\n";
    }
    if (want_ci) {
        report.complete_intersection = all_ci;
        human << "complete intersection: " << (all_ci ? "yes" : "no") << "\n";
    }
    if (want_gluing) {
        report.gluing = any_gluing;
        human << "gluing: " << (any_gluing ? "yes" : "no") << "\n";
        if (cert) {
            Report::Gluing g;
            g.part1 = cert->part1;
            g.part2 = cert->part2;
            g.degree = cert->degree;
            g.witness1 = cert->witness1;
            g.witness2 = cert->witness2;
            g.block_id = cert->block_id;
            report.gluing_certificate = g;
            human << "  block " << cert->block_id + 1 << " is the gluing of "
                  << indices_to_string(cert->part1) << " and "
                  << indices_to_string(cert->part2) << " with degree "
                  << vec_to_string(cert->degree) << "\n";
        }
    }

    if (!args.no_timings) report.total_us = timer.elapsed_us();
    emit(args, report, human.str());
    return 0;
}

int run_fiber(const CommonArgs& args, const std::string& degree_str,
              const std::string& complex_kind) {
    Timer timer;
    SemigroupPresentation p = load_presentation(args);

    IntVec degree;
    {
        std::istringstream ds(degree_str);
        std::string tok;
        while (ds >> tok) degree.emplace_back(tok);
        if (degree.size() != p.matrix().rows())
            throw math_error("degree has " + std::to_string(degree.size()) +
                             " entries, expected " + std::to_string(p.matrix().rows()));
    }

    Report report;
    report.command = "fiber";
    report.input = p.matrix();
    report.moduli = p.moduli();
    PointednessResult pt = is_pointed(p);
    if (!pt.pointed)
        throw math_error("presentation is not pointed; kernel witness " +
                         vec_to_string(pt.witness));
    report.pointed = true;

    Report::Fiber f;
    f.degree = p.reduce_degree(degree);
    f.complex = complex_kind;
    std::ostringstream human;
    if (complex_kind == "nabla") {
        FiberComplex fc = nabla(degree, p);
        f.monomials = fc.vertices;
        f.edges = fc.edges;
        f.components = fc.components;
        f.connected = fc.connected();
        human << "fiber of " << vec_to_string(f.degree) << ": " << fc.vertices.size()
              << " monomials\n";
        for (const auto& v : fc.vertices)
            human << "  " << monomial_to_string(v, p.labels()) << "\n";
        human << "components: " << fc.components.size() << " => "
              << (fc.connected() ? "connected" : "disconnected") << "\n";
    } else {
        DeltaComplex dcx = delta(degree, p);
        f.indices = dcx.vertices;
        f.edges = dcx.edges;
        f.components = dcx.components;
        f.connected = dcx.connected();
        human << "vertex set of the index complex at " << vec_to_string(f.degree) << ": "
              << indices_to_string(dcx.vertices) << "\n";
        human << "components: " << dcx.components.size() << " => "
              << (dcx.connected() ? "connected" : "disconnected") << "\n";
    }
    report.fiber = std::move(f);

    if (!args.no_timings) report.total_us = timer.elapsed_us();
    emit(args, report, human.str());
    return 0;
}

int run_reparam(const CommonArgs& args) {
    Timer timer;
    SemigroupPresentation p = load_presentation(args);

    Report report;
    report.command = "reparam";
    report.input = p.matrix();
    report.moduli = p.moduli();

    Parametrization par = reparametrize(p);
    Report::Reparam rp;
    rp.parameter_count = par.parameter_count;
    rp.block_parameters = par.block_parameters;
    rp.generator_block = par.generator_block;
    rp.exponents = par.exponents;
    report.reparam = std::move(rp);

    std::ostringstream human;
    human << "nice reparametrization with " << par.parameter_count << " parameters:\n";
    for (std::size_t j = 0; j < p.num_generators(); ++j) {
        human << "  x" << j + 1 << " = ";
        bool any = false;
        for (std::size_t k = 0; k < par.parameter_count; ++k) {
            const Int& e = par.exponents[j][k];
            if (e == 0) continue;
            if (any) human << " * ";
            human << "q" << k + 1;
            if (e != 1) human << "^" << e;
            any = true;
        }
        if (!any) human << "1";
        human << "\n";
    }

    if (!args.no_timings) report.total_us = timer.elapsed_us();
    emit(args, report, human.str());
    return 0;
}

int run_bench(const CommonArgs& args, int repeat, std::int64_t timeout_ms) {
    SemigroupPresentation p = load_presentation(args);

    Report report;
    report.command = "bench";
    report.input = p.matrix();
    report.moduli = p.moduli();

    BenchResult res = run_benchmark(p, repeat, std::chrono::milliseconds(timeout_ms));
    Report::Bench b;
    b.repeat = repeat;
    b.timeout_ms = timeout_ms;
    b.decomposed_us = res.decomposed_us;
    b.whole_us = res.whole_us;
    b.decomposed_median_us = res.decomposed_median_us;
    b.whole_median_us = res.whole_median_us;
    b.whole_timed_out = res.whole_timed_out;
    b.bases_agree = res.bases_agree;
    report.bench = std::move(b);

    std::ostringstream human;
    human << "decomposed path: median " << res.decomposed_median_us << " us over "
          << repeat << " runs\n";
    if (res.whole_timed_out)
        human << "whole-matrix path: timed out after " << timeout_ms << " ms\n";
    else
        human << "whole-matrix path: median " << res.whole_median_us << " us\n";
    if (res.whole_timed_out)
        human << "verdict: decomposed path finished, whole-matrix path did not\n";
    else if (res.decomposed_median_us < res.whole_median_us)
        human << "verdict: decomposed path is faster ("
              << static_cast<double>(res.whole_median_us) /
                     static_cast<double>(std::max<std::int64_t>(res.decomposed_median_us, 1))
              << "x)\n";
    else
        human << "verdict: whole-matrix path was not slower on this input\n";
    if (!res.bases_agree) human << "warning: the two paths produced different bases\n";

    emit(args, report, human.str());
    return 0;
}

int run_report_roundtrip(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "cannot open " << path << "\n";
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    Report r = Report::from_json_string(buf.str());
    if (r.to_json_string() != buf.str()) {
        std::cerr << "report does not round-trip\n";
        return 1;
    }
    std::cout << "roundtrip ok\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"decomposition of finitely generated commutative semigroups and "
                 "their toric ideals via HNF-diagonalization of the kernel lattice"};
    app.require_subcommand(1);

    CommonArgs dec_args;
    std::string mode = "kernel";
    auto* cmd_dec = app.add_subcommand("decompose",
                                       "decompose a semigroup into irreducible summands");
    add_common(cmd_dec, dec_args);
    cmd_dec->add_option("--mode", mode, "kernel (default) or direct")
        ->check(CLI::IsMember({"kernel", "direct"}));

    CommonArgs markov_args;
    bool per_block = false, whole = false;
    auto* cmd_markov =
        app.add_subcommand("markov", "minimal Markov basis and Betti degrees");
    add_common(cmd_markov, markov_args);
    auto* opt_pb = cmd_markov->add_flag("--per-block", per_block,
                                        "compute per block and assemble (default)");
    cmd_markov->add_flag("--whole", whole, "compute on the whole matrix")
        ->excludes(opt_pb);

    CommonArgs check_args;
    bool want_unique = false, want_ci = false, want_gluing = false;
    auto* cmd_check = app.add_subcommand(
        "check", "uniqueness, complete intersection and gluing verdicts");
    add_common(cmd_check, check_args);
    cmd_check->add_flag("--unique", want_unique, "uniqueness of the Markov basis");
    cmd_check->add_flag("--ci", want_ci, "complete intersection");
    cmd_check->add_flag("--gluing", want_gluing, "gluing detection");

    CommonArgs fiber_args;
    std::string degree_str, complex_kind = "nabla";
    auto* cmd_fiber = app.add_subcommand("fiber", "fiber and fiber complex of a degree");
    add_common(cmd_fiber, fiber_args);
    cmd_fiber->add_option("--degree", degree_str, "degree vector, e.g. \"1 0 2\"")
        ->required();
    cmd_fiber->add_option("--complex", complex_kind, "nabla (default) or delta")
        ->check(CLI::IsMember({"nabla", "delta"}));

    CommonArgs reparam_args;
    auto* cmd_reparam =
        app.add_subcommand("reparam", "nice monomial reparametrization (torsion free)");
    add_common(cmd_reparam, reparam_args);

    CommonArgs bench_args;
    int repeat = 3;
    std::int64_t timeout_ms = 60000;
    auto* cmd_bench = app.add_subcommand(
        "bench", "time the decomposed Markov computation against the whole matrix");
    add_common(cmd_bench, bench_args);
    cmd_bench->add_option("--repeat", repeat, "repetitions (default 3)")
        ->check(CLI::PositiveNumber);
    cmd_bench->add_option("--timeout-ms", timeout_ms,
                          "whole-matrix deadline in milliseconds (default 60000)");

    std::string roundtrip_path;
    auto* cmd_rt = app.add_subcommand("report-roundtrip",
                                      "verify that a JSON report parses and re-serializes "
                                      "byte-identically");
    cmd_rt->add_option("json", roundtrip_path, "report file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // usage problems are input errors
    }

    const CommonArgs* active = &dec_args;
    if (cmd_markov->parsed()) active = &markov_args;
    if (cmd_check->parsed()) active = &check_args;
    if (cmd_fiber->parsed()) active = &fiber_args;
    if (cmd_reparam->parsed()) active = &reparam_args;
    if (cmd_bench->parsed()) active = &bench_args;

    try {
        if (cmd_dec->parsed()) return run_decompose(dec_args, mode);
        if (cmd_markov->parsed()) return run_markov(markov_args, whole);
        if (cmd_check->parsed())
            return run_check(check_args, want_unique, want_ci, want_gluing);
        if (cmd_fiber->parsed()) return run_fiber(fiber_args, degree_str, complex_kind);
        if (cmd_reparam->parsed()) return run_reparam(reparam_args);
        if (cmd_bench->parsed()) return run_bench(bench_args, repeat, timeout_ms);
        if (cmd_rt->parsed()) return run_report_roundtrip(roundtrip_path);
    } catch (const parse_error& e) {
        emit_error(*active, "parse", e.what());
        return 2;
    } catch (const math_error& e) {
        emit_error(*active, "math", e.what());
        return 1;
    } catch (const timeout_error& e) {
        emit_error(*active, "timeout", e.what());
        return 1;
    }
    return 0;
}
