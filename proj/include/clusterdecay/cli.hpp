#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "clusterdecay/analysis.hpp"
#include "clusterdecay/cluster_state.hpp"
#include "clusterdecay/errors.hpp"
#include "clusterdecay/negativity.hpp"

namespace cdecay {

using ordered_json = nlohmann::ordered_json;

struct RunConfig {
    std::string command;
    int n = 2;
    std::string graph = "chain";
    std::string mask = "none";
    std::string measures;  // comma list; empty selects the canonical set
    std::string measure;   // single measure for esd
    std::string p_range = "0:1:201";
    double tol = 1e-6;
    std::string format = "csv";
    std::string out;  // file path ("" = stdout); directory for figures
};

namespace cli_detail {

inline std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string fmt_tol(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

inline std::string fmt_threshold(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

inline std::string csv_quote(const std::string& field) {
    if (field.find(',') == std::string::npos) return field;
    return '"' + field + '"';
}

inline std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

inline int parse_int(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    int value = 0;
    try {
        value = std::stoi(text, &used);
    } catch (const std::exception&) {
        throw ParseError("expected an integer for " + what + ": '" + text + "'");
    }
    if (used != text.size())
        throw ParseError("trailing characters in " + what + ": '" + text + "'");
    return value;
}

inline double parse_double(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double value = 0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ParseError("expected a number for " + what + ": '" + text + "'");
    }
    if (used != text.size())
        throw ParseError("trailing characters in " + what + ": '" + text + "'");
    return value;
}

// "chain", "none"/"" (edgeless), or comma-joined "i-j" pairs like "1-2,2-3".
inline ClusterSpec parse_graph(int n, const std::string& text) {
    if (text == "chain") return ClusterSpec::linear_chain(n);
    std::vector<std::pair<int, int>> edges;
    if (!(text.empty() || text == "none")) {
        for (const std::string& part : split(text, ',')) {
            const auto ends = split(part, '-');
            if (ends.size() != 2)
                throw ParseError("edge must look like i-j: '" + part + "'");
            edges.emplace_back(parse_int(ends[0], "edge endpoint"),
                               parse_int(ends[1], "edge endpoint"));
        }
    }
    return ClusterSpec(n, std::move(edges));
}

// "none"/"" or ascending comma list like "1,3".
inline RepresentationMask parse_mask(const std::string& text) {
    if (text.empty() || text == "none") return RepresentationMask();
    std::vector<int> qs;
    for (const std::string& part : split(text, ','))
        qs.push_back(parse_int(part, "mask qubit"));
    return RepresentationMask(std::move(qs));
}

inline std::vector<Measure> parse_measures(const std::string& text, int n) {
    if (text.empty()) return canonical_measures(n);
    std::vector<Measure> out;
    for (const std::string& part : split(text, ','))
        out.push_back(Measure::parse(part));
    return out;
}

// "start:stop:steps", both ends included.
inline std::vector<double> parse_p_range(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3)
        throw ParseError("p range must look like start:stop:steps: '" + text + "'");
    const double start = parse_double(parts[0], "p range start");
    const double stop = parse_double(parts[1], "p range stop");
    const int steps = parse_int(parts[2], "p range steps");
    return linspace(start, stop, steps);
}

inline void write_json(std::ostream& os, const ordered_json& j) { os << j.dump(2) << '\n'; }

inline void with_output(const std::string& path, std::ostream& fallback,
                        const std::function<void(std::ostream&)>& fn) {
    if (path.empty()) {
        fn(fallback);
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open output file: " + path);
    fn(file);
    file.flush();
    if (!file.good()) throw IoError("failed writing output file: " + path);
}

inline ordered_json config_echo(const RunConfig& cfg) {
    ordered_json j;
    j["command"] = cfg.command;
    j["n"] = cfg.n;
    j["graph"] = cfg.graph;
    j["mask"] = cfg.mask;
    return j;
}

inline void cmd_build(const RunConfig& cfg, std::ostream& os) {
    const ClusterSpec spec = parse_graph(cfg.n, cfg.graph);
    const RepresentationMask mask = parse_mask(cfg.mask);
    const StateVector st = apply_hadamards(build_cluster(spec), mask);

    const auto bitstring = [&](std::size_t b) {
        std::string s(spec.n, '0');
        for (int q = 1; q <= spec.n; ++q)
            if (qubit_bit(b, q, spec.n)) s[q - 1] = '1';
        return s;
    };

    if (cfg.format == "json") {
        ordered_json j;
        j["config"] = config_echo(cfg);
        j["config"]["format"] = cfg.format;
        j["amplitudes"] = ordered_json::array();
        for (std::size_t b = 0; b < st.amps.size(); ++b)
            j["amplitudes"].push_back({{"index", b},
                                       {"bitstring", bitstring(b)},
                                       {"re", st.amps[b].real()},
                                       {"im", st.amps[b].imag()}});
        write_json(os, j);
        return;
    }
    os << "index,bitstring,re,im\n";
    for (std::size_t b = 0; b < st.amps.size(); ++b)
        os << b << ',' << bitstring(b) << ',' << fmt12(st.amps[b].real()) << ','
           << fmt12(st.amps[b].imag()) << '\n';
}

inline void cmd_curve(const RunConfig& cfg, std::ostream& os) {
    const ClusterSpec spec = parse_graph(cfg.n, cfg.graph);
    const RepresentationMask mask = parse_mask(cfg.mask);
    const std::vector<Measure> measures = parse_measures(cfg.measures, cfg.n);
    const std::vector<double> grid = parse_p_range(cfg.p_range);
    const DecayCurve curve = decay_curve(spec, mask, measures, grid);

    if (cfg.format == "json") {
        ordered_json j;
        j["config"] = config_echo(cfg);
        j["config"]["measures"] = ordered_json::array();
        for (const Measure& m : measures) j["config"]["measures"].push_back(m.name());
        j["config"]["p_range"] = cfg.p_range;
        j["config"]["format"] = cfg.format;
        j["grid"] = curve.grid;
        j["series"] = ordered_json::object();
        for (std::size_t mi = 0; mi < measures.size(); ++mi)
            j["series"][measures[mi].name()] = curve.values[mi];
        write_json(os, j);
        return;
    }
    os << 'p';
    for (const Measure& m : measures) os << ',' << m.name();
    os << '\n';
    for (std::size_t gi = 0; gi < curve.grid.size(); ++gi) {
        os << fmt12(curve.grid[gi]);
        for (std::size_t mi = 0; mi < measures.size(); ++mi)
            os << ',' << fmt12(curve.values[mi][gi]);
        os << '\n';
    }
}

inline void cmd_esd(const RunConfig& cfg, std::ostream& os) {
    const ClusterSpec spec = parse_graph(cfg.n, cfg.graph);
    const RepresentationMask mask = parse_mask(cfg.mask);
    const Measure measure = Measure::parse(cfg.measure);
    const EsdResult res = esd_threshold(spec, mask, measure, cfg.tol);

    if (cfg.format == "json") {
        ordered_json j;
        j["config"] = config_echo(cfg);
        j["config"]["measure"] = measure.name();
        j["config"]["tolerance"] = cfg.tol;
        j["config"]["format"] = cfg.format;
        j["verdict"] = res.esd ? "esd" : "no_esd";
        if (res.esd)
            j["threshold"] = res.threshold;
        else
            j["threshold"] = nullptr;
        j["tolerance"] = res.tolerance;
        j["warning"] = res.warning;
        write_json(os, j);
        return;
    }
    if (!res.esd) {
        os << "no_esd\n";
        return;
    }
    os << "esd," << fmt_threshold(res.threshold) << ',' << fmt_tol(res.tolerance);
    if (res.warning) os << ",warning";
    os << '\n';
}

inline void cmd_classify(const RunConfig& cfg, std::ostream& os) {
    const ClusterSpec spec = parse_graph(cfg.n, cfg.graph);
    const std::vector<RepClass> classes = classify_representations(spec);

    // Digest sample points: p = 0, 0.25, 0.5, 0.75, 1 on the canonical grid.
    const std::vector<std::size_t> digest_idx = {0, 50, 100, 150, 200};

    if (cfg.format == "json") {
        ordered_json j;
        j["config"]["command"] = cfg.command;
        j["config"]["n"] = cfg.n;
        j["config"]["graph"] = cfg.graph;
        j["config"]["format"] = cfg.format;
        j["digest_p"] = ordered_json::array();
        for (std::size_t gi : digest_idx) j["digest_p"].push_back(canonical_grid()[gi]);
        j["classes"] = ordered_json::array();
        for (std::size_t ci = 0; ci < classes.size(); ++ci) {
            const RepClass& cls = classes[ci];
            ordered_json cj;
            cj["index"] = ci;
            cj["representative"] = cls.representative().label();
            cj["members"] = ordered_json::array();
            for (const RepresentationMask& m : cls.members) cj["members"].push_back(m.label());
            cj["size"] = cls.members.size();
            cj["signature_digest"] = ordered_json::object();
            for (std::size_t mi = 0; mi < cls.signature.measures.size(); ++mi) {
                ordered_json vals = ordered_json::array();
                for (std::size_t gi : digest_idx)
                    vals.push_back(cls.signature.values[mi][gi]);
                cj["signature_digest"][cls.signature.measures[mi].name()] = vals;
            }
            j["classes"].push_back(std::move(cj));
        }
        write_json(os, j);
        return;
    }
    os << "class,member,is_representative\n";
    for (std::size_t ci = 0; ci < classes.size(); ++ci)
        for (std::size_t k = 0; k < classes[ci].members.size(); ++k)
            os << ci << ',' << csv_quote(classes[ci].members[k].label()) << ','
               << (k == 0 ? 1 : 0) << '\n';
}

struct FigureColumn {
    std::string label;
    RepresentationMask mask;
    Measure measure;
};

inline void write_figure_file(const std::filesystem::path& path, const ClusterSpec& spec,
                              const std::vector<FigureColumn>& columns) {
    // One curve evaluation per distinct mask; columns then pick their series.
    std::map<unsigned, std::vector<Measure>> wanted;
    for (const FigureColumn& col : columns) wanted[col.mask.bits()].push_back(col.measure);
    std::map<unsigned, DecayCurve> curves;
    for (const auto& [bits, measures] : wanted)
        curves.emplace(bits, decay_curve(spec, RepresentationMask::from_bits(bits),
                                         measures, canonical_grid()));

    const auto series_for = [&](const FigureColumn& col) -> const std::vector<double>& {
        const DecayCurve& curve = curves.at(col.mask.bits());
        for (std::size_t mi = 0; mi < curve.measures.size(); ++mi)
            if (curve.measures[mi] == col.measure) return curve.values[mi];
        throw InvalidState("figure column lost its series");
    };

    std::ostringstream body;
    body << 'p';
    for (const FigureColumn& col : columns) body << ',' << col.label;
    body << '\n';
    const std::vector<double>& grid = canonical_grid();
    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        body << fmt12(grid[gi]);
        for (const FigureColumn& col : columns) body << ',' << fmt12(series_for(col)[gi]);
        body << '\n';
    }

    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot open output file: " + path.string());
    file << body.str();
    file.flush();
    if (!file.good()) throw IoError("failed writing output file: " + path.string());
}

inline void cmd_figures(const RunConfig& cfg) {
    namespace fs = std::filesystem;
    const fs::path dir = cfg.out.empty() ? fs::path(".") : fs::path(cfg.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory: " + dir.string());

    const auto M = [](const char* name) { return Measure::parse(name); };
    const auto mask = [](std::vector<int> qs) { return RepresentationMask(std::move(qs)); };

    // Two-qubit negativity decay: basic representation vs the GHZ one.
    write_figure_file(dir / "fig1.csv", ClusterSpec::linear_chain(2),
                      {{"N1_basic", mask({}), M("N1")},
                       {"N1_ghz", mask({2}), M("N1")}});

    // Three-qubit single-qubit negativities: the five distinct decays.
    const ClusterSpec chain3 = ClusterSpec::linear_chain(3);
    write_figure_file(dir / "fig2_left.csv", chain3,
                      {{"N1_ghz", mask({1, 3}), M("N1")},
                       {"N1_rep3", mask({3}), M("N1")},
                       {"N2_rep3", mask({3}), M("N2")},
                       {"N2_basic", mask({}), M("N2")},
                       {"N1_basic", mask({}), M("N1")}});

    // Three-qubit tri-partite negativity for the same three representations.
    write_figure_file(dir / "fig2_right.csv", chain3,
                      {{"N3part_ghz", mask({1, 3}), M("N3part")},
                       {"N3part_rep3", mask({3}), M("N3part")},
                       {"N3part_basic", mask({}), M("N3part")}});

    // Four-qubit single- and two-qubit negativities for the five inequivalent
    // representations.
    const ClusterSpec chain4 = ClusterSpec::linear_chain(4);
    const std::vector<RepresentationMask> reps = {mask({}), mask({1, 3}), mask({1}),
                                                  mask({1, 2, 3}), mask({2, 3})};
    std::vector<FigureColumn> left, right;
    for (std::size_t k = 0; k < reps.size(); ++k) {
        const std::string suffix = "_rep" + std::to_string(k + 1);
        for (const char* m : {"N1", "N2", "N3", "N4"})
            left.push_back({m + suffix, reps[k], M(m)});
        for (const char* m : {"N12", "N13", "N14", "N23", "N24", "N34"})
            right.push_back({m + suffix, reps[k], M(m)});
    }
    write_figure_file(dir / "fig3_left.csv", chain4, left);
    write_figure_file(dir / "fig3_right.csv", chain4, right);
}

}  // namespace cli_detail

// Parse the argument list and run one subcommand, writing results to `out`
// (or the --out file) and diagnostics to `err`. Exit codes: 0 success,
// 2 usage/parse failure, 3 domain error, 4 I/O failure.
inline int run_command(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"negativity decay of cluster-state representations under dephasing"};
    app.require_subcommand(1);

    const auto add_state_flags = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "qubit count (2..6)")->required();
        sub->add_option("--graph", cfg.graph,
                        "edge list 'i-j,k-l', 'chain', or 'none' (default chain)");
        sub->add_option("--mask", cfg.mask,
                        "Hadamard mask as comma list, or 'none' (default none)");
    };
    const auto add_io_flags = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "output format (default csv)")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", cfg.out, "output file (default stdout)");
    };

    CLI::App* build = app.add_subcommand("build", "print representation state amplitudes");
    add_state_flags(build);
    add_io_flags(build);

    CLI::App* curve = app.add_subcommand("curve", "negativity decay curve over a p grid");
    add_state_flags(curve);
    curve->add_option("--measures", cfg.measures,
                      "comma list of measures, e.g. N1,N12,N3part "
                      "(default: canonical subset measures)");
    curve->add_option("--p", cfg.p_range, "p grid start:stop:steps (default 0:1:201)");
    add_io_flags(curve);

    CLI::App* esd = app.add_subcommand("esd", "entanglement sudden death threshold");
    add_state_flags(esd);
    esd->add_option("--measure", cfg.measure, "measure name, e.g. N1")->required();
    esd->add_option("--tol", cfg.tol, "bisection tolerance (default 1e-6)");
    add_io_flags(esd);

    CLI::App* classify =
        app.add_subcommand("classify", "partition all Hadamard masks into decay classes");
    classify->add_option("--n", cfg.n, "qubit count (2..6)")->required();
    classify->add_option("--graph", cfg.graph,
                         "edge list 'i-j,k-l', 'chain', or 'none' (default chain)");
    add_io_flags(classify);

    CLI::App* figures =
        app.add_subcommand("figures", "write fig1/fig2/fig3 CSV data files");
    figures->add_option("--out", cfg.out, "output directory (default .)");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("clusterdecay");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    try {
        using namespace cli_detail;
        if (cfg.command == "build")
            with_output(cfg.out, out, [&](std::ostream& os) { cmd_build(cfg, os); });
        else if (cfg.command == "curve")
            with_output(cfg.out, out, [&](std::ostream& os) { cmd_curve(cfg, os); });
        else if (cfg.command == "esd")
            with_output(cfg.out, out, [&](std::ostream& os) { cmd_esd(cfg, os); });
        else if (cfg.command == "classify")
            with_output(cfg.out, out, [&](std::ostream& os) { cmd_classify(cfg, os); });
        else
            cmd_figures(cfg);
    } catch (const cdecay::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return 4;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

}  // namespace cdecay
