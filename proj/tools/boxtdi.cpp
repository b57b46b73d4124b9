// Command-line front end: property checks, instance generation, dilation
// profiles and witness extraction.  Reports are JSON on stdout.
//
// Exit codes: 0 property holds, 1 refuted, 2 indeterminate, 64 usage error,
// 65 malformed input or unsupported input, 70 internal failure.

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "boxtdi/certify.hpp"
#include "boxtdi/instances.hpp"
#include "boxtdi/io.hpp"
#include "boxtdi/matprops.hpp"
#include "boxtdi/report.hpp"

using namespace boxtdi;
using nlohmann::json;

namespace {

enum Exit { holds = 0, refuted = 1, indeterminate = 2, usage = 64, data_error = 65, internal = 70 };

struct Options {
    std::string property;
    std::string input = "-";
    std::string output;
    std::string format = "json";
    std::string name;
    int route = 6;
    long window = 4;
    long kmax = 4;
    long bound = 64;
    std::size_t samples = 64;
    std::uint64_t seed = 1;
    bool cross_check = false;
    bool timing = false;
};

std::string read_input(const std::string& path)
{
    if (path == "-") {
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot open '" + path + "'");
    return std::string(std::istreambuf_iterator<char>(in), {});
}

std::string sha256(const std::string& data)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream out;
    for (unsigned int i = 0; i < len; ++i)
        out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return "sha256:" + out.str();
}

const char* verdict_name(int code)
{
    switch (code) {
    case holds: return "holds";
    case refuted: return "refuted";
    default: return "indeterminate";
    }
}

class Runner {
public:
    Runner(std::string command, const Options& opt) : command_(std::move(command)), opt_(opt) {}

    int matcheck()
    {
        const std::string text = read_input(opt_.input);
        const RatMatrix m = parse_matrix(text);
        return timed(text, [&](json& cert) {
            if (opt_.property == "unimodular") {
                const bool ok = is_unimodular(m);
                cert["unimodular"] = ok;
                if (!ok) {
                    for_each_maximal_minor(m, [&](const MaximalMinor& minor) {
                        if (minor.det == 0 || abs(minor.det) == 1)
                            return true;
                        cert["minor"] = minor_json(minor);
                        return false;
                    });
                }
                return ok ? holds : refuted;
            }
            if (opt_.property == "equimodular") {
                auto v = is_equimodular(m, static_cast<EquimodularRoute>(opt_.route));
                cert = certificate_json(v);
                return v.is_equimodular ? holds : refuted;
            }
            if (opt_.property == "tu") {
                auto v = is_totally_unimodular(m);
                cert = certificate_json(v);
                return v.is_tu ? holds : refuted;
            }
            auto v = is_totally_equimodular(m);
            cert = certificate_json(v);
            return v.holds ? holds : refuted;
        });
    }

    int polycheck()
    {
        const std::string text = read_input(opt_.input);
        const HPolyhedron p = parse_polyhedron(text);
        return timed(text, [&](json& cert) {
            if (opt_.property == "box-tdi") {
                auto c = is_box_tdi(p, opt_.cross_check);
                cert = certificate_json(c);
                return c.verdict ? holds : refuted;
            }
            if (opt_.property == "box-integer") {
                auto v = is_box_integer(p, opt_.window);
                cert = certificate_json(v);
                if (!v.box_integer)
                    return refuted;
                return v.exact ? holds : indeterminate;
            }
            if (opt_.property == "fully-box-integer") {
                auto c = is_box_tdi(p);
                const bool integer = is_integer(p);
                cert = {{"box_tdi", certificate_json(c)}, {"integer", integer}};
                return c.verdict && integer ? holds : refuted;
            }
            if (opt_.property == "box-property") {
                auto v = cone_box_property(p, opt_.samples, opt_.window, opt_.seed);
                cert = certificate_json(v);
                return v.holds ? indeterminate : refuted;
            }
            auto prof = dilation_profile(p, opt_.kmax, opt_.window);
            cert = certificate_json(prof);
            return holds;
        });
    }

    int profile()
    {
        const std::string text = read_input(opt_.input);
        const HPolyhedron p = parse_polyhedron(text);
        return timed(text, [&](json& cert) {
            cert = certificate_json(dilation_profile(p, opt_.kmax, opt_.window));
            return holds;
        });
    }

    int witness()
    {
        const std::string text = read_input(opt_.input);
        const HPolyhedron p = parse_polyhedron(text);
        return timed(text, [&](json& cert) {
            auto c = is_box_tdi(p);
            if (c.verdict) {
                cert = {{"box_tdi", true}, {"witness", nullptr}};
                return holds;
            }
            auto w = extract_fractional_witness(p, *c.refutation, opt_.bound);
            cert = {{"box_tdi", false},
                    {"refutation", certificate_json(c)["refutation"]},
                    {"witness", certificate_json(w)}};
            return refuted;
        });
    }

private:
    template <typename F>
    int timed(const std::string& text, F&& body)
    {
        json cert;
        const auto start = std::chrono::steady_clock::now();
        const int code = body(cert);
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        json report{{"schema", 1},
                    {"command", command_},
                    {"input_digest", sha256(text)},
                    {"verdict", verdict_name(code)},
                    {"certificate", cert}};
        if (opt_.timing)
            report["timing"] = {{"seconds", seconds}};
        if (opt_.format == "json") {
            std::cout << report.dump(2) << '\n';
        } else {
            std::cout << "command: " << command_ << '\n'
                      << "verdict: " << verdict_name(code) << '\n'
                      << "certificate:\n"
                      << cert.dump(2) << '\n';
            if (opt_.timing)
                std::cout << "seconds: " << seconds << '\n';
        }
        return code;
    }

    std::string command_;
    const Options& opt_;
};

void write_output(const Options& opt, const std::string& content)
{
    if (opt.output.empty() || opt.output == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(opt.output, std::ios::binary);
    if (!out)
        throw std::invalid_argument("cannot write '" + opt.output + "'");
    out << content;
}

int generate(const Options& opt)
{
    const bool as_json = opt.format == "json";
    auto emit_h = [&](const HPolyhedron& p) {
        write_output(opt, as_json ? h_polyhedron_json(p).dump(2) + "\n" : format_h_polyhedron(p));
    };
    if (opt.name == "k4-circuit-cone") {
        VPolyhedron v = circuit_cone(complete_graph(4)).generators;
        write_output(opt, as_json ? v_polyhedron_json(v).dump(2) + "\n" : format_v_polyhedron(v));
    } else if (opt.name == "stable-set") {
        emit_h(stable_set_polytope(parse_graph(read_input(opt.input))));
    } else if (opt.name == "covering") {
        emit_h(covering_polyhedron(parse_clutter(read_input(opt.input))));
    } else {
        emit_h(named_polyhedron(opt.name));
    }
    return holds;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Box-TDI and box-integrality certificates for rational polyhedra", "boxtdi"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", opt.format, "Output format")
            ->check(CLI::IsMember({"json", "text"}));
        sub->add_flag("--timing", opt.timing, "Add wall-clock time to the report");
        sub->add_option("file", opt.input, "Input file, - for stdin");
    };

    auto* matcheck = app.add_subcommand("matcheck", "Check a matrix property");
    matcheck->add_option("--property", opt.property)
        ->required()
        ->check(CLI::IsMember({"unimodular", "equimodular", "tu", "tem"}));
    matcheck->add_option("--route", opt.route, "Equimodularity test (1-6)")->check(CLI::Range(1, 6));
    add_common(matcheck);

    auto* polycheck = app.add_subcommand("polycheck", "Check a polyhedron property");
    polycheck->add_option("--property", opt.property)
        ->required()
        ->check(CLI::IsMember({"box-tdi", "box-integer", "fully-box-integer", "profile", "box-property"}));
    polycheck->add_option("--window", opt.window, "Search radius for unbounded inputs")
        ->check(CLI::NonNegativeNumber);
    polycheck->add_option("--kmax", opt.kmax, "Number of dilations to profile")->check(CLI::PositiveNumber);
    polycheck->add_option("--samples", opt.samples, "Random points for the box property");
    polycheck->add_option("--seed", opt.seed, "Random seed for the box property");
    polycheck->add_flag("--cross-check", opt.cross_check, "Also test lin(F) bases");
    add_common(polycheck);

    auto* profile = app.add_subcommand("profile", "Box-integrality of the integer dilations");
    profile->add_option("--kmax", opt.kmax)->check(CLI::PositiveNumber);
    profile->add_option("--window", opt.window)->check(CLI::NonNegativeNumber);
    add_common(profile);

    auto* witness = app.add_subcommand("witness", "Fractional vertex of a dilation cut by a box");
    witness->add_option("--bound", opt.bound, "Largest multiple of the minimal integer dilation")
        ->check(CLI::PositiveNumber);
    add_common(witness);

    auto* gen = app.add_subcommand("gen", "Write a named instance");
    gen->add_option("name", opt.name, "Instance name, or stable-set / covering with an input file")
        ->required();
    gen->add_option("input", opt.input, "Graph or clutter file for stable-set / covering");
    gen->add_option("-o,--output", opt.output, "Output file (default stdout)");
    gen->add_option("--format", opt.format)->check(CLI::IsMember({"json", "text"}));
    opt.format = "json";

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return usage;
    }

    std::string command;
    for (int i = 1; i < argc; ++i)
        command += (i > 1 ? " " : "") + std::string(argv[i]);

    try {
        Runner run(command, opt);
        if (*matcheck)
            return run.matcheck();
        if (*polycheck)
            return run.polycheck();
        if (*profile)
            return run.profile();
        if (*witness)
            return run.witness();
        if (gen->parsed() && !gen->count("--format"))
            opt.format = "text";
        return generate(opt);
    } catch (const ParseError& e) {
        if (e.line() > 0)
            std::cerr << "error: line " << e.line() << ", column " << e.column() << ": " << e.what() << '\n';
        else
            std::cerr << "error: " << e.what() << '\n';
        return data_error;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return data_error;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return internal;
    }
}
