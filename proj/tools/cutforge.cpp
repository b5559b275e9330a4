#include <cutforge/cutforge.hpp>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

using namespace cutforge;
using io::json;

namespace {

struct Options {
    std::string example;
    std::string input;
    std::string grammar_file;
    std::string out;
    std::string format = "text";
    std::string generator = "forgetful";
    std::size_t max_cuts = 1;
    std::optional<std::size_t> grammar_index;
    std::size_t k = 5;
};

struct Source {
    SigmaOneSequent sequent;
    InstanceLists instances;
    std::optional<Proof> proof;
};

Source load_source(const Options& o) {
    if (!o.example.empty() && !o.input.empty()) throw InputError("give either --example or --input, not both");
    if (!o.example.empty()) {
        Example ex = generate_example(o.example);
        return {ex.sequent, ex.instances, ex.proof};
    }
    if (o.input.empty()) throw InputError("an input is required: --example name:n or --input file.json");
    json j = io::read_json_file(o.input);
    try {
        auto f = io::instance_file_from_json(j);
        return {f.sequent, f.instances, std::nullopt};
    } catch (const InputError& e) {
        throw InputError(o.input + ": " + e.what());
    }
}

std::vector<Term> terms_of(const Source& s) { return extract_terms(s.sequent, s.instances); }

void emit(const Options& o, const std::string& text, const json& j) {
    std::string body = o.format == "json" ? j.dump(2) + "\n" : text;
    if (o.out.empty()) std::cout << body;
    else io::write_text_file(o.out, body);
}

TreeGrammar choose_grammar(const Options& o, const Source& s) {
    if (!o.grammar_file.empty()) {
        json j = io::read_json_file(o.grammar_file);
        try {
            return io::grammar_from_json(j);
        } catch (const InputError& e) {
            throw InputError(o.grammar_file + ": " + e.what());
        }
    }
    auto gs = minimal_grammars(terms_of(s), o.max_cuts);
    std::size_t i = o.grammar_index.value_or(0);
    if (i >= gs.size())
        throw InputError("grammar index " + std::to_string(i) + " out of range (" + std::to_string(gs.size()) +
                         " minimal grammars)");
    spdlog::debug("using grammar {} of {}: {}", i, gs.size(), render(gs[i]));
    return gs[i];
}

SchematicEHS load_shs(const Options& o) {
    Source s = load_source(o);
    return build_shs(s.sequent, choose_grammar(o, s));
}

Proof load_proof(const Options& o) {
    if (!o.example.empty()) return load_source(o).proof.value();
    if (o.input.empty()) throw InputError("a proof is required: --input proof.json or --example name:n");
    json j = io::read_json_file(o.input);
    try {
        return io::proof_from_json(j);
    } catch (const InputError& e) {
        throw InputError(o.input + ": " + e.what());
    }
}

std::vector<TreeGrammar> grammar_list(const Options& o, const std::vector<Term>& T) {
    if (o.max_cuts <= 1) return find_grammars(T);
    return minimal_grammars(T, o.max_cuts);
}

std::string grammar_lines(const std::vector<TreeGrammar>& gs, std::size_t limit) {
    std::string out;
    for (std::size_t i = 0; i < gs.size() && i < limit; ++i)
        out += "[" + std::to_string(i) + "] size " + std::to_string(gs[i].size()) + ": " + render(gs[i]) + "\n";
    return out;
}

int run(const std::string& cmd, const Options& o) {
    if (cmd == "extract-terms") {
        Source s = load_source(o);
        auto T = terms_of(s);
        std::string text;
        for (const auto& t : T) text += render(t) + "\n";
        text += std::to_string(T.size()) + " terms (" + std::to_string(raw_instance_count(s.sequent, s.instances)) +
                " instances)\n";
        emit(o, text, json{{"terms", io::to_json(T)}, {"count", T.size()},
                           {"raw", raw_instance_count(s.sequent, s.instances)}});
    } else if (cmd == "grammars" || cmd == "show-grammars") {
        auto T = terms_of(load_source(o));
        auto gs = grammar_list(o, T);
        std::size_t limit = cmd == "grammars" ? gs.size() : o.k;
        std::vector<TreeGrammar> shown(gs.begin(), gs.begin() + static_cast<std::ptrdiff_t>(std::min(limit, gs.size())));
        std::string text = std::to_string(gs.size()) + " grammars\n" + grammar_lines(gs, limit);
        emit(o, text, json{{"count", gs.size()}, {"grammars", io::to_json(shown)}});
    } else if (cmd == "shs") {
        SchematicEHS h = load_shs(o);
        emit(o, render(h) + "\n", io::to_json(h));
    } else if (cmd == "canonical") {
        SchematicEHS h = load_shs(o);
        auto C = canonical_solution(h);
        std::string text;
        for (std::size_t i = 0; i < C.size(); ++i) text += "C" + std::to_string(i + 1) + " = " + render(C[i]) + "\n";
        json j = io::to_json(ExtendedHerbrandSequent{h, C});
        emit(o, text, j);
    } else if (cmd == "minimize") {
        SchematicEHS h = load_shs(o);
        SfOptions sopt;
        sopt.generator = generator_from_name(o.generator);
        SfCache cache;
        SfnResult r = sfn(h, sopt, &cache);
        std::string text;
        for (std::size_t i = 0; i < r.levels.size(); ++i) {
            text += "level " + std::to_string(i + 1) + " (" + h.alpha(i) + ")\n";
            text += "  canonical: " + render(to_formula(r.levels[i].canonical)) + "\n";
            text += "  minimized: " + render(r.levels[i].formula) + "\n";
        }
        emit(o, text, io::to_json(r.ehs));
    } else if (cmd == "build") {
        ExtendedHerbrandSequent H;
        if (!o.example.empty()) {
            SchematicEHS h = load_shs(o);
            SfOptions sopt;
            sopt.generator = generator_from_name(o.generator);
            H = sfn(h, sopt).ehs;
        } else {
            if (o.input.empty()) throw InputError("build needs --input ehs.json or --example name:n");
            json j = io::read_json_file(o.input);
            try {
                H = io::ehs_from_json(j);
            } catch (const InputError& e) {
                throw InputError(o.input + ": " + e.what());
            }
        }
        Proof p = build_proof_with_cut(H);
        if (auto v = check_proof(p); !v.empty()) throw InternalError("built proof fails the checker: " + v.front().message);
        emit(o, render(p), io::to_json(p));
    } else if (cmd == "stats") {
        Proof p = load_proof(o);
        ProofStats st = stats(p);
        emit(o, render_stats(st), io::to_json(st));
    } else if (cmd == "check") {
        Proof p = load_proof(o);
        auto v = check_proof(p);
        std::string text;
        json a = json::array();
        for (const auto& x : v) {
            text += "node " + (x.node.empty() ? std::string("root") : x.node) + ": " + x.message + "\n";
            a.push_back(json{{"node", x.node}, {"message", x.message}});
        }
        if (v.empty()) text = "ok\n";
        emit(o, text, json{{"ok", v.empty()}, {"violations", a}});
        return v.empty() ? 0 : 1;
    } else if (cmd == "cut-intro") {
        Source s = load_source(o);
        CutIntroOptions copt;
        copt.max_cuts = o.max_cuts;
        copt.generator = generator_from_name(o.generator);
        copt.grammar_index = o.grammar_index;
        auto r = cut_intro(s.sequent, s.instances, copt, s.proof);
        spdlog::info("compression ratio {:.3f}", r.report.compression_ratio);
        json j = io::to_json(r.report);
        j["proof"] = io::to_json(r.proof);
        emit(o, render(r.report), j);
    } else {
        throw InputError("unknown command " + cmd);
    }
    return 0;
}

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("cutforge");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    const char* lvl = std::getenv("CUTFORGE_LOG");
    spdlog::set_level(lvl ? spdlog::level::from_str(lvl) : spdlog::level::warn);
}

} // namespace

int main(int argc, char** argv) {
    setup_logging();
    CLI::App app{"cutforge: cut introduction by tree-grammar compression of Herbrand instances"};
    app.require_subcommand(1);
    Options o;

    auto add_source = [&](CLI::App* c) {
        c->add_option("--example", o.example, "generated example name:n (linear, square-diagonal, exp)");
        c->add_option("--input", o.input, "input JSON file");
    };
    auto add_output = [&](CLI::App* c) {
        c->add_option("--out", o.out, "write the result to this file");
        c->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
    };
    auto add_grammar = [&](CLI::App* c) {
        c->add_option("--max-cuts", o.max_cuts, "maximal number of grammar levels")->check(CLI::PositiveNumber);
        c->add_option("--grammar-index", o.grammar_index, "index into the minimal grammars");
        c->add_option("--grammar", o.grammar_file, "grammar JSON file");
    };
    auto add_generator = [&](CLI::App* c) {
        c->add_option("--generator", o.generator, "consequence generator")->check(CLI::IsMember({"forgetful", "closure"}));
    };

    struct Cmd {
        const char* name;
        const char* help;
    };
    const Cmd cmds[] = {{"extract-terms", "tagged Herbrand terms of the input"},
                        {"grammars", "grammars covering the terms, ascending by size"},
                        {"show-grammars", "first k grammars"},
                        {"shs", "schematic extended Herbrand sequent of a grammar"},
                        {"canonical", "canonical solution"},
                        {"minimize", "minimized cut formulas"},
                        {"build", "proof with cuts from an extended Herbrand sequent"},
                        {"stats", "proof statistics"},
                        {"check", "check a proof node by node"},
                        {"cut-intro", "whole pipeline"}};
    for (const auto& c : cmds) {
        auto* sub = app.add_subcommand(c.name, c.help);
        add_source(sub);
        add_output(sub);
        std::string n = c.name;
        if (n != "extract-terms" && n != "stats" && n != "check") {
            if (n == "grammars" || n == "show-grammars")
                sub->add_option("--max-cuts", o.max_cuts, "maximal number of grammar levels")->check(CLI::PositiveNumber);
            else add_grammar(sub);
        }
        if (n == "show-grammars") sub->add_option("--k", o.k, "how many grammars to show");
        if (n == "minimize" || n == "build" || n == "cut-intro") add_generator(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return run(cmd, o);
    } catch (const InputError& e) {
        spdlog::error("{}", e.what());
        return 1;
    } catch (const std::exception& e) {
        spdlog::error("internal error: {}", e.what());
        return 2;
    }
}
