#include "semidec/report.hpp"

#include "semidec/errors.hpp"

namespace semidec {

using json = nlohmann::ordered_json;

namespace {

// integers as decimal strings, indices 1-based
json enc_int(const Int& v) { return v.get_str(); }
json enc_index(std::size_t i) { return std::to_string(i + 1); }

json enc_vec(const IntVec& v) {
    json a = json::array();
    for (const Int& x : v) a.push_back(enc_int(x));
    return a;
}

json enc_indices(const std::vector<std::size_t>& v) {
    json a = json::array();
    for (std::size_t x : v) a.push_back(enc_index(x));
    return a;
}

json enc_matrix(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(enc_vec(m.row(i)));
    return json{{"rows", std::to_string(m.rows())},
                {"cols", std::to_string(m.cols())},
                {"entries", rows}};
}

Int dec_int(const json& j) { return Int(j.get<std::string>()); }

std::size_t dec_index(const json& j) {
    Int v = dec_int(j);
    return v.get_ui() - 1;
}

IntVec dec_vec(const json& j) {
    IntVec v;
    for (const auto& x : j) v.push_back(dec_int(x));
    return v;
}

std::vector<std::size_t> dec_indices(const json& j) {
    std::vector<std::size_t> v;
    for (const auto& x : j) v.push_back(dec_index(x));
    return v;
}

IntMatrix dec_matrix(const json& j) {
    std::size_t rows = Int(j.at("rows").get<std::string>()).get_ui();
    std::size_t cols = Int(j.at("cols").get<std::string>()).get_ui();
    IntMatrix m(rows, cols);
    const json& entries = j.at("entries");
    for (std::size_t i = 0; i < rows; ++i) {
        IntVec r = dec_vec(entries.at(i));
        m.set_row(i, r);
    }
    return m;
}

json enc_binomials(const std::vector<Binomial>& bs) {
    json a = json::array();
    for (const auto& b : bs) a.push_back(enc_vec(b.vector()));
    return a;
}

std::vector<Binomial> dec_binomials(const json& j) {
    std::vector<Binomial> out;
    for (const auto& x : j) out.emplace_back(dec_vec(x));
    return out;
}

json enc_vecs(const std::vector<IntVec>& vs) {
    json a = json::array();
    for (const auto& v : vs) a.push_back(enc_vec(v));
    return a;
}

std::vector<IntVec> dec_vecs(const json& j) {
    std::vector<IntVec> out;
    for (const auto& x : j) out.push_back(dec_vec(x));
    return out;
}

json enc_edges(const std::vector<std::pair<std::size_t, std::size_t>>& es) {
    json a = json::array();
    for (auto [u, v] : es) a.push_back(json::array({enc_index(u), enc_index(v)}));
    return a;
}

std::vector<std::pair<std::size_t, std::size_t>> dec_edges(const json& j) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (const auto& e : j) out.emplace_back(dec_index(e.at(0)), dec_index(e.at(1)));
    return out;
}

} // namespace

json Report::to_json() const {
    json j;
    j["schema"] = "semidec-report-v1";
    j["command"] = command;
    j["input"] = enc_matrix(input);
    if (!moduli.empty()) j["moduli"] = enc_vec(moduli);
    if (!notes.empty()) j["notes"] = notes;

    if (pointed) j["pointed"] = *pointed;
    if (!pointed_witness.empty()) j["pointed_witness"] = enc_vec(pointed_witness);

    if (mode) j["mode"] = *mode;
    if (decomposable) j["decomposable"] = *decomposable;
    if (!q_image.empty()) j["q"] = enc_indices(q_image);
    if (transform_p) j["p"] = enc_matrix(*transform_p);
    if (diagonal_d) j["d"] = enc_matrix(*diagonal_d);
    if (!blocks.empty()) {
        json arr = json::array();
        for (const auto& b : blocks) {
            json bj;
            bj["generators"] = enc_indices(b.generators);
            if (b.matrix) bj["matrix"] = enc_matrix(*b.matrix);
            if (b.kernel) bj["kernel"] = enc_matrix(*b.kernel);
            if (!b.markov.empty()) bj["markov"] = enc_binomials(b.markov);
            if (b.unique) bj["unique"] = *b.unique;
            if (b.complete_intersection)
                bj["complete_intersection"] = *b.complete_intersection;
            if (b.gluing) bj["gluing"] = *b.gluing;
            arr.push_back(std::move(bj));
        }
        j["blocks"] = std::move(arr);
    }
    if (!free_generators.empty()) j["free_generators"] = enc_indices(free_generators);
    if (direct_disagrees_with_kernel)
        j["direct_disagrees_with_kernel"] = *direct_disagrees_with_kernel;

    if (!markov.empty()) j["markov"] = enc_binomials(markov);
    if (!betti.empty()) j["betti"] = enc_vecs(betti);
    if (!degree_multiplicity.empty()) {
        json arr = json::array();
        for (const auto& [deg, count] : degree_multiplicity)
            arr.push_back(json{{"degree", enc_vec(deg)},
                               {"count", std::to_string(count)}});
        j["degree_multiplicity"] = std::move(arr);
    }

    if (unique) j["unique"] = *unique;
    if (complete_intersection) j["complete_intersection"] = *complete_intersection;
    if (gluing) j["gluing"] = *gluing;
    if (gluing_certificate) {
        const auto& g = *gluing_certificate;
        j["gluing_certificate"] = json{
            {"part1", enc_indices(g.part1)},   {"part2", enc_indices(g.part2)},
            {"degree", enc_vec(g.degree)},     {"witness1", enc_vec(g.witness1)},
            {"witness2", enc_vec(g.witness2)}, {"block", enc_index(g.block_id)}};
    }

    if (fiber) {
        json f;
        f["degree"] = enc_vec(fiber->degree);
        f["complex"] = fiber->complex;
        if (fiber->complex == "nabla") f["monomials"] = enc_vecs(fiber->monomials);
        if (fiber->complex == "delta") f["indices"] = enc_indices(fiber->indices);
        f["edges"] = enc_edges(fiber->edges);
        json comps = json::array();
        for (const auto& c : fiber->components) comps.push_back(enc_indices(c));
        f["components"] = std::move(comps);
        f["connected"] = fiber->connected;
        j["fiber"] = std::move(f);
    }

    if (reparam) {
        json r;
        r["parameter_count"] = std::to_string(reparam->parameter_count);
        json ranges = json::array();
        for (auto [a, b] : reparam->block_parameters)
            ranges.push_back(json::array({enc_index(a), std::to_string(b)}));
        r["block_parameters"] = std::move(ranges);
        r["generator_block"] = enc_indices(reparam->generator_block);
        r["exponents"] = enc_vecs(reparam->exponents);
        j["reparam"] = std::move(r);
    }

    if (bench) {
        json b;
        b["repeat"] = std::to_string(bench->repeat);
        b["timeout_ms"] = std::to_string(bench->timeout_ms);
        json du = json::array(), wu = json::array();
        for (auto v : bench->decomposed_us) du.push_back(std::to_string(v));
        for (auto v : bench->whole_us) wu.push_back(std::to_string(v));
        b["decomposed_us"] = std::move(du);
        b["whole_us"] = std::move(wu);
        b["decomposed_median_us"] = std::to_string(bench->decomposed_median_us);
        b["whole_median_us"] = std::to_string(bench->whole_median_us);
        b["whole_timed_out"] = bench->whole_timed_out;
        b["bases_agree"] = bench->bases_agree;
        j["bench"] = std::move(b);
    }

    if (total_us >= 0) j["total_us"] = std::to_string(total_us);
    return j;
}

Report Report::from_json(const json& j) {
    Report r;
    r.command = j.at("command").get<std::string>();
    r.input = dec_matrix(j.at("input"));
    if (j.contains("moduli")) r.moduli = dec_vec(j["moduli"]);
    if (j.contains("notes")) r.notes = j["notes"].get<std::vector<std::string>>();

    if (j.contains("pointed")) r.pointed = j["pointed"].get<bool>();
    if (j.contains("pointed_witness")) r.pointed_witness = dec_vec(j["pointed_witness"]);

    if (j.contains("mode")) r.mode = j["mode"].get<std::string>();
    if (j.contains("decomposable")) r.decomposable = j["decomposable"].get<bool>();
    if (j.contains("q")) r.q_image = dec_indices(j["q"]);
    if (j.contains("p")) r.transform_p = dec_matrix(j["p"]);
    if (j.contains("d")) r.diagonal_d = dec_matrix(j["d"]);
    if (j.contains("blocks")) {
        for (const auto& bj : j["blocks"]) {
            Block b;
            b.generators = dec_indices(bj.at("generators"));
            if (bj.contains("matrix")) b.matrix = dec_matrix(bj["matrix"]);
            if (bj.contains("kernel")) b.kernel = dec_matrix(bj["kernel"]);
            if (bj.contains("markov")) b.markov = dec_binomials(bj["markov"]);
            if (bj.contains("unique")) b.unique = bj["unique"].get<bool>();
            if (bj.contains("complete_intersection"))
                b.complete_intersection = bj["complete_intersection"].get<bool>();
            if (bj.contains("gluing")) b.gluing = bj["gluing"].get<bool>();
            r.blocks.push_back(std::move(b));
        }
    }
    if (j.contains("free_generators")) r.free_generators = dec_indices(j["free_generators"]);
    if (j.contains("direct_disagrees_with_kernel"))
        r.direct_disagrees_with_kernel = j["direct_disagrees_with_kernel"].get<bool>();

    if (j.contains("markov")) r.markov = dec_binomials(j["markov"]);
    if (j.contains("betti")) r.betti = dec_vecs(j["betti"]);
    if (j.contains("degree_multiplicity")) {
        for (const auto& e : j["degree_multiplicity"])
            r.degree_multiplicity.emplace_back(
                dec_vec(e.at("degree")), Int(e.at("count").get<std::string>()).get_ui());
    }

    if (j.contains("unique")) r.unique = j["unique"].get<bool>();
    if (j.contains("complete_intersection"))
        r.complete_intersection = j["complete_intersection"].get<bool>();
    if (j.contains("gluing")) r.gluing = j["gluing"].get<bool>();
    if (j.contains("gluing_certificate")) {
        const auto& g = j["gluing_certificate"];
        Gluing gc;
        gc.part1 = dec_indices(g.at("part1"));
        gc.part2 = dec_indices(g.at("part2"));
        gc.degree = dec_vec(g.at("degree"));
        gc.witness1 = dec_vec(g.at("witness1"));
        gc.witness2 = dec_vec(g.at("witness2"));
        gc.block_id = dec_index(g.at("block"));
        r.gluing_certificate = std::move(gc);
    }

    if (j.contains("fiber")) {
        const auto& f = j["fiber"];
        Fiber fb;
        fb.degree = dec_vec(f.at("degree"));
        fb.complex = f.at("complex").get<std::string>();
        if (f.contains("monomials")) fb.monomials = dec_vecs(f["monomials"]);
        if (f.contains("indices")) fb.indices = dec_indices(f["indices"]);
        fb.edges = dec_edges(f.at("edges"));
        for (const auto& c : f.at("components")) fb.components.push_back(dec_indices(c));
        fb.connected = f.at("connected").get<bool>();
        r.fiber = std::move(fb);
    }

    if (j.contains("reparam")) {
        const auto& rp = j["reparam"];
        Reparam re;
        re.parameter_count = Int(rp.at("parameter_count").get<std::string>()).get_ui();
        for (const auto& e : rp.at("block_parameters"))
            re.block_parameters.emplace_back(
                dec_index(e.at(0)), Int(e.at(1).get<std::string>()).get_ui());
        re.generator_block = dec_indices(rp.at("generator_block"));
        re.exponents = dec_vecs(rp.at("exponents"));
        r.reparam = std::move(re);
    }

    if (j.contains("bench")) {
        const auto& bj = j["bench"];
        Bench b;
        b.repeat = static_cast<int>(Int(bj.at("repeat").get<std::string>()).get_si());
        b.timeout_ms = Int(bj.at("timeout_ms").get<std::string>()).get_si();
        for (const auto& v : bj.at("decomposed_us"))
            b.decomposed_us.push_back(Int(v.get<std::string>()).get_si());
        for (const auto& v : bj.at("whole_us"))
            b.whole_us.push_back(Int(v.get<std::string>()).get_si());
        b.decomposed_median_us = Int(bj.at("decomposed_median_us").get<std::string>()).get_si();
        b.whole_median_us = Int(bj.at("whole_median_us").get<std::string>()).get_si();
        b.whole_timed_out = bj.at("whole_timed_out").get<bool>();
        b.bases_agree = bj.at("bases_agree").get<bool>();
        r.bench = std::move(b);
    }

    if (j.contains("total_us")) r.total_us = Int(j["total_us"].get<std::string>()).get_si();
    return r;
}

std::string Report::to_json_string() const { return to_json().dump(2) + "\n"; }

Report Report::from_json_string(const std::string& s) {
    return from_json(json::parse(s));
}

json error_json(const std::string& kind, const std::string& message) {
    return json{{"schema", "semidec-report-v1"},
                {"error", json{{"kind", kind}, {"message", message}}}};
}

} // namespace semidec
