// afx: exact mixed volumes, equality certificates, and toric Lefschetz
// kernels over the rationals. JSON in, JSON out, zero floats anywhere.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "afx/io.hpp"
#include "afx/selftest.hpp"

namespace {

using afx::Json;

// handlers throw this when the report and exit code are already decided
struct cli_abort {
    int code;
    Json report;
};

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw afx::input_error("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw afx::input_error(path + ": " + e.what());
    }
}

// flat "key: value" rendering for --format text
void render_text(const Json& j, std::ostream& out, const std::string& key) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) render_text(v, out, key.empty() ? k : key + "." + k);
        return;
    }
    if (j.is_array()) {
        bool scalars = true;
        for (const auto& v : j)
            if (v.is_object() || v.is_array()) scalars = false;
        if (!scalars) {
            std::size_t i = 0;
            for (const auto& v : j) render_text(v, out, key + "[" + std::to_string(i++) + "]");
            return;
        }
    }
    out << key << ": ";
    if (j.is_string())
        out << j.get<std::string>();
    else if (j.is_null())
        out << "-";
    else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            out << (i ? " " : "") << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
    } else
        out << j.dump();
    out << "\n";
}

struct Emitter {
    std::string format = "json";
    std::string output_path;

    void emit(const Json& report) const {
        std::ofstream file;
        std::ostream* out = &std::cout;
        if (!output_path.empty()) {
            file.open(output_path);
            if (!file) throw afx::input_error("cannot write " + output_path);
            out = &file;
        }
        if (format == "json")
            *out << report.dump() << "\n";
        else
            render_text(report, *out, "");
    }
};

void attach_warnings(Json& report, const std::vector<std::string>& warnings) {
    if (!warnings.empty()) report["warnings"] = warnings;
}

afx::Engine parse_engine(const std::string& name) {
    if (name == "polarization") return afx::Engine::polarization;
    if (name == "recursion") return afx::Engine::recursion;
    return afx::Engine::both;
}

std::vector<afx::VPolytope> bodies_from_json(const Json& j,
                                             std::vector<std::string>* warnings) {
    if (!j.is_object() || !j.contains("ambient_dim") || !j.contains("bodies"))
        throw afx::input_error("bodies: expected {\"ambient_dim\": n, \"bodies\": [..]}");
    auto bodies = afx::polytope_list_from_json(j["bodies"], warnings, "bodies");
    if (!j["ambient_dim"].is_number_integer())
        throw afx::input_error("bodies: ambient_dim must be an integer");
    const auto n = j["ambient_dim"].get<std::size_t>();
    for (const auto& b : bodies)
        if (b.ambient_dim() != n)
            throw afx::input_error("bodies: polytope does not live in the declared dimension");
    return bodies;
}

afx::IntVector parse_direction(const std::string& csv) {
    afx::IntVector u;
    std::string token;
    std::istringstream in(csv);
    while (std::getline(in, token, ',')) {
        try {
            u.push_back(afx::Integer(token));
        } catch (const std::exception&) {
            throw afx::input_error("direction: expected comma-separated integers, got \"" +
                                   token + "\"");
        }
    }
    if (u.empty()) throw afx::input_error("direction: empty");
    return u;
}

Json cmd_volume(const std::string& input) {
    std::vector<std::string> warnings;
    afx::VPolytope p = afx::polytope_from_json(load_json(input), &warnings);
    Json report;
    report["volume"] = afx::rational_string(afx::volume(p));
    attach_warnings(report, warnings);
    return report;
}

Json cmd_mixedvol(const std::string& input, const std::string& engine_name) {
    std::vector<std::string> warnings;
    Json in = load_json(input);
    auto bodies = bodies_from_json(in, &warnings);
    afx::Engine engine = parse_engine(engine_name);
    afx::Rational v;
    try {
        v = afx::mixed_volume(bodies, engine);
    } catch (const afx::internal_error& e) {
        // engine cross-check failed: dump the canonical instance so the
        // disagreement can be replayed directly
        Json err;
        err["error_kind"] = "internal_error";
        err["message"] = e.what();
        Json repro;
        repro["ambient_dim"] = bodies.empty() ? 0 : bodies[0].ambient_dim();
        Json arr = Json::array();
        for (const auto& b : bodies) arr.push_back(afx::polytope_to_json(b));
        repro["bodies"] = std::move(arr);
        err["reproducer"] = std::move(repro);
        throw cli_abort{4, std::move(err)};
    }
    Json report;
    report["mixed_volume"] = afx::rational_string(v);
    if (engine == afx::Engine::both) report["engines_agree"] = true;
    attach_warnings(report, warnings);
    return report;
}

Json cmd_supercritical(const std::string& input) {
    std::vector<std::string> warnings;
    afx::Collection c = afx::collection_from_json(load_json(input), &warnings);
    Json report = afx::supercritical_to_json(afx::supercritical(c));
    attach_warnings(report, warnings);
    return report;
}

Json cmd_extreme_dirs(const std::string& input, const std::string& direction) {
    std::vector<std::string> warnings;
    afx::ToricInstance inst = afx::toric_instance_from_json(load_json(input), &warnings);
    Json report;
    if (!direction.empty()) {
        report = afx::extreme_report_to_json(
            afx::extreme_direction(parse_direction(direction), inst.collection));
    } else {
        auto reports = afx::extreme_facet_normals(inst.q, inst.collection);
        std::size_t extreme = 0;
        Json arr = Json::array();
        for (const auto& r : reports) {
            if (r.is_extreme) ++extreme;
            arr.push_back(afx::extreme_report_to_json(r));
        }
        report["count"] = reports.size();
        report["extreme_count"] = extreme;
        report["normals"] = std::move(arr);
    }
    attach_warnings(report, warnings);
    return report;
}

Json cmd_af_check(const std::string& m_path, const std::string& n_path,
                  const std::string& c_path) {
    std::vector<std::string> warnings;
    afx::VPolytope m = afx::polytope_from_json(load_json(m_path), &warnings);
    afx::VPolytope n = afx::polytope_from_json(load_json(n_path), &warnings);
    afx::Collection c = afx::collection_from_json(load_json(c_path), &warnings);
    Json report = afx::verdict_to_json(afx::af_equality_certificate(m, n, c));
    attach_warnings(report, warnings);
    return report;
}

Json cmd_kt_check(const std::string& a_path, const std::string& b_path,
                  std::optional<std::size_t> k) {
    std::vector<std::string> warnings;
    afx::VPolytope a = afx::polytope_from_json(load_json(a_path), &warnings);
    afx::VPolytope b = afx::polytope_from_json(load_json(b_path), &warnings);
    afx::KTReport rep = k ? afx::kt_equality(a, b, *k) : afx::kt_sequence(a, b);
    Json report = afx::kt_report_to_json(rep);
    attach_warnings(report, warnings);
    return report;
}

Json cmd_toric_kernel(const std::string& input, bool verbose) {
    std::vector<std::string> warnings;
    afx::ToricInstance inst = afx::toric_instance_from_json(load_json(input), &warnings);
    afx::ToricModel model = afx::delzant_check(inst.q);
    Json report = afx::kernel_report_to_json(afx::kernel_vs_eff(model, inst.collection), verbose);
    attach_warnings(report, warnings);
    return report;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact mixed volumes, extremal certificates, and toric Lefschetz kernels"};
    app.require_subcommand(1);
    app.fallthrough();

    Emitter emitter;
    app.add_option("--format", emitter.format, "report format")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--output", emitter.output_path, "write the report to a file");

    std::string in1, in2, in3, engine = "both", direction;
    bool verbose = false;
    std::size_t k_value = 0;

    auto* volume = app.add_subcommand("volume", "lattice volume of one polytope");
    volume->add_option("input", in1, "polytope file")->required();

    auto* mixedvol = app.add_subcommand("mixedvol", "mixed volume of n bodies in R^n");
    mixedvol->add_option("input", in1, "bodies file")->required();
    mixedvol->add_option("--engine", engine, "polarization, recursion, or both")
        ->check(CLI::IsMember({"polarization", "recursion", "both"}));

    auto* super = app.add_subcommand("supercritical", "dimension table of a collection");
    super->add_option("input", in1, "collection file")->required();

    auto* extreme = app.add_subcommand("extreme-dirs", "extreme facet normals of Q");
    extreme->add_option("input", in1, "instance file {Q, collection}")->required();
    extreme->add_option("--direction", direction, "test one direction, e.g. 1,1,0");

    auto* af = app.add_subcommand("af-check", "equality analysis for V(M,N,collection)");
    af->add_option("M", in1, "first body")->required();
    af->add_option("N", in2, "second body")->required();
    af->add_option("collection", in3, "collection file")->required();

    auto* kt = app.add_subcommand("kt-check", "quadratic slack sequence of two bodies");
    kt->add_option("A", in1, "first body")->required();
    kt->add_option("B", in2, "second body")->required();
    auto* k_opt = kt->add_option("--k", k_value, "analyze the k-th slack");

    auto* toric = app.add_subcommand("toric-kernel", "Lefschetz kernel vs exceptional classes");
    toric->add_option("input", in1, "instance file {Q, collection}")->required();
    toric->add_flag("--verbose", verbose, "include the matrix and kernel basis");

    auto* self = app.add_subcommand("selftest", "run the embedded fixture corpus");
    (void)self;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        Json report;
        if (volume->parsed())
            report = cmd_volume(in1);
        else if (mixedvol->parsed())
            report = cmd_mixedvol(in1, engine);
        else if (super->parsed())
            report = cmd_supercritical(in1);
        else if (extreme->parsed())
            report = cmd_extreme_dirs(in1, direction);
        else if (af->parsed())
            report = cmd_af_check(in1, in2, in3);
        else if (kt->parsed())
            report = cmd_kt_check(in1, in2,
                                  k_opt->count() ? std::optional<std::size_t>(k_value)
                                                 : std::nullopt);
        else if (toric->parsed())
            report = cmd_toric_kernel(in1, verbose);
        else if (self->parsed())
            return afx::selftest(std::cout);
        emitter.emit(report);
        return 0;
    } catch (const cli_abort& abort) {
        emitter.emit(abort.report);
        return abort.code;
    } catch (const afx::input_error& e) {
        emitter.emit(Json{{"error_kind", "input_error"}, {"message", e.what()}});
        return 2;
    } catch (const afx::precondition_error& e) {
        emitter.emit(Json{{"error_kind", "precondition_error"}, {"message", e.what()}});
        return 3;
    } catch (const afx::internal_error& e) {
        emitter.emit(Json{{"error_kind", "internal_error"}, {"message", e.what()}});
        return 4;
    } catch (const std::exception& e) {
        emitter.emit(Json{{"error_kind", "internal_error"}, {"message", e.what()}});
        return 4;
    }
}
