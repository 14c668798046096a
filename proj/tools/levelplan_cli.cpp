// levelplan: solve, verify, brute-force and generate level planarity instances.
//
// exit status: 0 feasible / clean, 1 infeasible / violations, 2 usage or
// parameter error, 3 resource limit. Errors go to stderr as one JSON object.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "levelplan/clp2.hpp"
#include "levelplan/clp3.hpp"
#include "levelplan/hardness.hpp"
#include "levelplan/io.hpp"
#include "levelplan/olp.hpp"
#include "levelplan/oracle.hpp"
#include "levelplan/random.hpp"

using namespace levelplan;

namespace {

enum Exit { ok = 0, negative = 1, usage = 2, resource = 3 };

int fail(const std::string& kind, const std::string& message, int code) {
    json j{{"error", kind}, {"message", message}};
    std::cerr << j.dump() << "\n";
    return code;
}

int exit_for(ErrorKind k) {
    return k == ErrorKind::ResourceLimit || k == ErrorKind::SearchSpaceExceeded ? resource : usage;
}

void emit(const std::string& path, const json& j) {
    if (path.empty() || path == "-")
        std::cout << j.dump(2) << "\n";
    else
        write_text_file(path, j.dump(2) + "\n");
}

// parameters keep the key order of the file so vertex indices follow the input
nlohmann::ordered_json read_params(const std::string& path, const std::string& inline_text) {
    try {
        if (!inline_text.empty()) return nlohmann::ordered_json::parse(inline_text);
        std::ifstream in(path);
        if (!in) throw Error(ErrorKind::MalformedInput, "cannot open " + path);
        std::stringstream ss;
        ss << in.rdbuf();
        return nlohmann::ordered_json::parse(ss.str());
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::MalformedInput, e.what());
    }
}

template <class T>
T field(const nlohmann::ordered_json& j, const char* key) {
    if (!j.contains(key)) throw Error(ErrorKind::ParameterInvalid, std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw Error(ErrorKind::ParameterInvalid, std::string("field '") + key + "' has the wrong type");
    }
}

struct SolveArgs {
    std::string mode = "auto", input, out, svg;
    int jobs = 1;
};

int run_solve(const SolveArgs& a) {
    auto inst = validate_instance(read_json_file(a.input));
    bool ranked = std::holds_alternative<OrderedLevelGraph>(inst);
    std::string mode = a.mode == "auto" ? (ranked ? "olp" : "clp") : a.mode;
    const LevelGraph& g = graph_of(inst);
    std::optional<LevelEmbedding> emb;
    json summary{{"mode", mode}, {"height", g.height}};
    if (mode == "olp") {
        if (!ranked) return fail("ParameterInvalid", "--mode olp needs a ranked instance", usage);
        auto limits = olp::Limits::from_env();
        emb = olp::solve_and_draw(std::get<OrderedLevelGraph>(inst), limits);
    } else {
        auto c = ranked ? as_constrained(std::get<OrderedLevelGraph>(inst)) : std::get<ConstrainedLevelGraph>(inst);
        if (c.graph.height >= 4)
            return fail("UnsupportedHeight",
                        "constrained level planarity is NP-hard from 4 levels on; no exact solver for height " +
                            std::to_string(c.graph.height),
                        usage);
        if (c.graph.height <= 2)
            emb = clp2::solve(c);
        else
            emb = clp3::solve(c, {a.jobs, nullptr});
    }
    summary["feasible"] = emb.has_value();
    if (!emb) {
        std::cout << summary.dump() << "\n";
        return negative;
    }
    if (!a.out.empty()) {
        emit(a.out, embedding_to_json(g, *emb));
        std::cout << summary.dump() << "\n";
    } else {
        emit("", embedding_to_json(g, *emb));
    }
    if (!a.svg.empty()) write_text_file(a.svg, to_svg(g, *emb));
    return ok;
}

struct VerifyArgs {
    std::string instance, drawing, svg;
};

int run_verify(const VerifyArgs& a) {
    auto inst = validate_instance(read_json_file(a.instance));
    const LevelGraph& g = graph_of(inst);
    auto emb = embedding_from_json(g, read_json_file(a.drawing));
    auto vs = std::visit([&](const auto& x) { return verify_drawing(x, emb); }, inst);
    json out = json::array();
    for (auto& v : vs) out.push_back({{"kind", violation_name(v.kind)}, {"detail", v.detail}});
    std::cout << json{{"ok", vs.empty()}, {"violations", out}}.dump(2) << "\n";
    if (!a.svg.empty()) write_text_file(a.svg, to_svg(g, emb));
    return vs.empty() ? ok : negative;
}

struct OracleArgs {
    std::string mode = "auto", input, out;
    std::uint64_t max_nodes = OracleLimits{}.max_nodes;
};

int run_oracle(const OracleArgs& a) {
    auto inst = validate_instance(read_json_file(a.input));
    bool ranked = std::holds_alternative<OrderedLevelGraph>(inst);
    std::string mode = a.mode == "auto" ? (ranked ? "olp" : "clp") : a.mode;
    OracleLimits lim{a.max_nodes};
    std::optional<LevelEmbedding> emb;
    if (mode == "olp") {
        if (!ranked) return fail("ParameterInvalid", "--mode olp needs a ranked instance", usage);
        emb = brute_olp(std::get<OrderedLevelGraph>(inst), lim);
    } else {
        emb = brute_clp(ranked ? as_constrained(std::get<OrderedLevelGraph>(inst)) : std::get<ConstrainedLevelGraph>(inst),
                        lim);
    }
    json summary{{"mode", mode}, {"feasible", emb.has_value()}};
    if (emb && !a.out.empty()) emit(a.out, embedding_to_json(graph_of(inst), *emb));
    if (emb && a.out.empty())
        emit("", embedding_to_json(graph_of(inst), *emb));
    else
        std::cout << summary.dump() << "\n";
    return emb ? ok : negative;
}

struct GenArgs {
    std::string params, inline_params, out, witness;
    std::uint64_t seed = 1;
    std::string mode = "olp";
    RandomSpec spec;
};

int run_gen_3partition(const GenArgs& a) {
    auto p = read_params(a.params, a.inline_params);
    auto r = hardness::gen_3partition(field<std::vector<int>>(p, "numbers"), field<int>(p, "m"), field<int>(p, "B"));
    emit(a.out, to_json(r.instance));
    if (!a.witness.empty()) {
        auto triples = field<std::vector<std::vector<int>>>(p, "triples");
        auto emb = hardness::realize_3partition_witness(r, triples);
        write_text_file(a.witness, embedding_to_json(r.instance.graph, emb).dump(2) + "\n");
    }
    return ok;
}

int run_gen_mcis(const GenArgs& a) {
    auto p = read_params(a.params, a.inline_params);
    hardness::McisInput in;
    in.k = field<int>(p, "k");
    std::map<std::string, int> index;
    if (!p.contains("colors") || !p.at("colors").is_object())
        throw Error(ErrorKind::ParameterInvalid, "'colors' must map vertex names to colors");
    for (auto& [name, c] : p.at("colors").items()) {
        if (!c.is_number_integer()) throw Error(ErrorKind::ParameterInvalid, "color of " + name + " is not an integer");
        index[name] = static_cast<int>(in.vertices.size());
        in.vertices.push_back(name);
        in.color.push_back(c.get<int>());
    }
    auto lookup = [&](const std::string& name) {
        auto it = index.find(name);
        if (it == index.end()) throw Error(ErrorKind::ParameterInvalid, "vertex " + name + " has no color");
        return it->second;
    };
    for (auto& e : field<std::vector<std::vector<std::string>>>(p, "edges")) {
        if (e.size() != 2) throw Error(ErrorKind::ParameterInvalid, "edge must be a pair");
        in.edges.push_back({lookup(e[0]), lookup(e[1])});
    }
    auto r = hardness::gen_mcis(in);
    emit(a.out, to_json(r.instance));
    if (!a.witness.empty()) {
        std::vector<int> chosen;
        for (auto& name : field<std::vector<std::string>>(p, "independent_set")) chosen.push_back(lookup(name));
        auto emb = hardness::realize_mcis_witness(r, chosen);
        write_text_file(a.witness, embedding_to_json(r.instance.graph, emb).dump(2) + "\n");
    }
    return ok;
}

int run_gen_random(const GenArgs& a) {
    std::mt19937_64 rng(a.seed);
    if (a.spec.height < 1 || a.spec.max_width < 1 || a.spec.max_vertices < a.spec.height)
        throw Error(ErrorKind::ParameterInvalid, "need height >= 1, width >= 1 and vertices >= height");
    if (a.mode == "olp")
        emit(a.out, to_json(random_olp(rng, a.spec)));
    else
        emit(a.out, to_json(random_clp(rng, a.spec)));
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"level planarity with ordered and constrained levels"};
    app.require_subcommand(1);

    SolveArgs sa;
    auto* solve = app.add_subcommand("solve", "decide an instance and write a drawing");
    solve->add_option("--mode", sa.mode, "olp, clp or auto (by instance kind)")
        ->check(CLI::IsMember({"auto", "olp", "clp"}));
    solve->add_option("--input,-i", sa.input, "instance JSON")->required();
    solve->add_option("--out,-o", sa.out, "embedding JSON (stdout if omitted)");
    solve->add_option("--svg", sa.svg, "SVG picture of the drawing");
    solve->add_option("--jobs,-j", sa.jobs, "worker threads for 3-level CLP")->check(CLI::PositiveNumber);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "check a drawing against an instance");
    verify->add_option("--instance", va.instance)->required();
    verify->add_option("--drawing", va.drawing)->required();
    verify->add_option("--svg", va.svg);

    OracleArgs oa;
    auto* oracle = app.add_subcommand("oracle", "exhaustive search (small instances)");
    oracle->add_option("--mode", oa.mode)->check(CLI::IsMember({"auto", "olp", "clp"}));
    oracle->add_option("--input,-i", oa.input)->required();
    oracle->add_option("--out,-o", oa.out);
    oracle->add_option("--max-nodes", oa.max_nodes, "search-tree node cap");

    GenArgs ga;
    auto* gen = app.add_subcommand("gen", "generate instances");
    gen->require_subcommand(1);
    auto params = [&](CLI::App* c) {
        auto* file = c->add_option("--params", ga.params, "parameter JSON file");
        auto* text = c->add_option("--json", ga.inline_params, "parameter JSON text");
        file->excludes(text);
        c->add_option("--out,-o", ga.out, "instance JSON (stdout if omitted)");
        c->add_option("--witness", ga.witness, "also write the witness drawing here");
    };
    auto* g3 = gen->add_subcommand("3partition", "3-Partition -> 4-level CLP");
    params(g3);
    auto* gm = gen->add_subcommand("mcis", "multicolored independent set -> OLP");
    params(gm);
    auto* gr = gen->add_subcommand("random", "random small instance");
    gr->add_option("--mode", ga.mode)->check(CLI::IsMember({"olp", "clp"}));
    gr->add_option("--seed", ga.seed);
    gr->add_option("--height", ga.spec.height);
    gr->add_option("--vertices", ga.spec.max_vertices);
    gr->add_option("--width", ga.spec.max_width);
    gr->add_option("--density", ga.spec.edge_density);
    gr->add_option("--constraint-density", ga.spec.constraint_density);
    gr->add_option("--out,-o", ga.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("Usage", e.what(), usage);
    }

    try {
        if (*solve) return run_solve(sa);
        if (*verify) return run_verify(va);
        if (*oracle) return run_oracle(oa);
        if (*g3 || *gm) {
            if (ga.params.empty() && ga.inline_params.empty())
                return fail("Usage", "give --params FILE or --json TEXT", usage);
            return *g3 ? run_gen_3partition(ga) : run_gen_mcis(ga);
        }
        if (*gr) return run_gen_random(ga);
    } catch (const Error& e) {
        return fail(kind_name(e.kind()), e.what(), exit_for(e.kind()));
    } catch (const std::exception& e) {
        return fail("Internal", e.what(), usage);
    }
    return usage;
}
