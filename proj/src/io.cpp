#include "levelplan/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace levelplan {

namespace {

const json& need(const json& o, const char* key) {
    if (!o.is_object() || !o.contains(key))
        throw Error(ErrorKind::MalformedInput, std::string("missing field '") + key + "'");
    return o.at(key);
}

std::string vertex_name(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    throw Error(ErrorKind::MalformedInput, "vertex reference must be a string");
}

}  // namespace

Instance validate_instance(const json& raw, bool strict_levels) {
    try {
        LevelGraph g;
        int h = need(raw, "height").get<int>();
        if (h < 0) throw Error(ErrorKind::MalformedInput, "negative height");
        const auto& vs = need(raw, "vertices");
        std::vector<std::optional<int>> ranks;
        for (const auto& v : vs) {
            auto id = vertex_name(need(v, "id"));
            int l = need(v, "level").get<int>();
            if (l < 1 || l > h)
                throw Error(ErrorKind::MalformedInput, "vertex " + id + " has level outside [1,h]");
            g.add_vertex(id, l);
            ranks.push_back(v.contains("rank") ? std::optional<int>(v.at("rank").get<int>()) : std::nullopt);
        }
        g.height = h;
        if (raw.contains("edges"))
            for (const auto& e : raw.at("edges")) {
                if (!e.is_array() || e.size() != 2) throw Error(ErrorKind::MalformedInput, "edge must be a pair");
                g.add_edge(g.index_of(vertex_name(e[0])), g.index_of(vertex_name(e[1])));
            }
        if (strict_levels) {
            std::vector<int> seen(h + 1, 0);
            for (int v = 0; v < static_cast<int>(g.size()); ++v) seen[g.level(v)] = 1;
            for (int l = 1; l <= h; ++l)
                if (!seen[l]) throw Error(ErrorKind::EmptyLevel, "level " + std::to_string(l) + " is empty");
        }
        bool ranked = !ranks.empty() &&
                      std::all_of(ranks.begin(), ranks.end(), [](auto& r) { return r.has_value(); });
        if (ranked) {
            OrderedLevelGraph o;
            o.graph = std::move(g);
            o.rank.resize(ranks.size());
            auto lv = o.graph.by_level();
            for (int l = 0; l < h; ++l) {
                std::set<int> used;
                for (int v : lv[l]) {
                    int r = *ranks[v];
                    if (r < 1 || r > static_cast<int>(lv[l].size()) || !used.insert(r).second)
                        throw Error(ErrorKind::DuplicateRank,
                                    "ranks on level " + std::to_string(l + 1) + " are not a permutation");
                    o.rank[v] = r;
                }
            }
            if (raw.contains("constraints") && !raw.at("constraints").empty())
                throw Error(ErrorKind::MalformedInput, "ranked instances carry no constraints");
            return o;
        }
        ConstrainedLevelGraph c;
        c.graph = std::move(g);
        if (raw.contains("constraints"))
            for (const auto& k : raw.at("constraints")) {
                int a = c.graph.index_of(vertex_name(need(k, "before")));
                int b = c.graph.index_of(vertex_name(need(k, "after")));
                if (k.contains("level") && (k.at("level").get<int>() != c.graph.level(a) ||
                                            k.at("level").get<int>() != c.graph.level(b)))
                    throw Error(ErrorKind::ConstraintAcrossLevels,
                                "constraint " + c.graph.id(a) + " < " + c.graph.id(b) + " not on its stated level");
                c.add_constraint(a, b);
            }
        std::sort(c.constraints.begin(), c.constraints.end());
        c.constraints.erase(std::unique(c.constraints.begin(), c.constraints.end()), c.constraints.end());
        return c;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::MalformedInput, e.what());
    }
}

static json graph_json(const LevelGraph& g, const std::vector<int>* rank) {
    json j;
    j["height"] = g.height;
    // canonical order: by level, then rank or id
    std::vector<int> vs(g.size());
    for (int v = 0; v < static_cast<int>(g.size()); ++v) vs[v] = v;
    std::sort(vs.begin(), vs.end(), [&](int a, int b) {
        if (g.level(a) != g.level(b)) return g.level(a) < g.level(b);
        if (rank) return (*rank)[a] < (*rank)[b];
        return g.id(a) < g.id(b);
    });
    json verts = json::array();
    for (int v : vs) {
        json o{{"id", g.id(v)}, {"level", g.level(v)}};
        if (rank) o["rank"] = (*rank)[v];
        verts.push_back(o);
    }
    j["vertices"] = verts;
    std::vector<std::pair<std::string, std::string>> es;
    for (auto e : g.edges()) es.push_back({g.id(e.u), g.id(e.v)});
    std::sort(es.begin(), es.end());
    json edges = json::array();
    for (auto& [a, b] : es) edges.push_back({a, b});
    j["edges"] = edges;
    return j;
}

json to_json(const ConstrainedLevelGraph& g) {
    json j = graph_json(g.graph, nullptr);
    std::vector<std::tuple<int, std::string, std::string>> cs;
    for (auto c : g.constraints) cs.emplace_back(g.graph.level(c.before), g.graph.id(c.before), g.graph.id(c.after));
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    json arr = json::array();
    for (auto& [l, a, b] : cs) arr.push_back({{"level", l}, {"before", a}, {"after", b}});
    j["constraints"] = arr;
    return j;
}

json to_json(const OrderedLevelGraph& g) {
    json j = graph_json(g.graph, &g.rank);
    j["constraints"] = json::array();
    return j;
}

json to_json(const Instance& inst) {
    return std::visit([](const auto& x) { return to_json(x); }, inst);
}

json embedding_to_json(const LevelGraph& g, const LevelEmbedding& emb, bool with_coordinates) {
    json levels = json::object();
    for (std::size_t i = 0; i < emb.levels.size(); ++i) {
        json seq = json::array();
        for (auto it : emb.levels[i]) {
            if (it.kind == Item::vertex)
                seq.push_back({{"vertex", g.id(it.id)}});
            else
                seq.push_back({{"edge", {g.id(g.edge(it.id).u), g.id(g.edge(it.id).v)}}});
        }
        levels[std::to_string(i + 1)] = seq;
    }
    json j{{"levels", levels}};
    if (with_coordinates) {
        auto c = synthesize_coordinates(g, emb);
        json vs = json::object();
        for (int v = 0; v < static_cast<int>(g.size()); ++v) vs[g.id(v)] = {c.vertex[v].x, c.vertex[v].y};
        json es = json::array();
        for (int e = 0; e < static_cast<int>(g.edge_count()); ++e) {
            json pts = json::array();
            for (auto p : c.polyline[e]) pts.push_back({p.x, p.y});
            es.push_back({{"edge", {g.id(g.edge(e).u), g.id(g.edge(e).v)}}, {"points", pts}});
        }
        j["coordinates"] = {{"vertices", vs}, {"edges", es}};
    }
    return j;
}

LevelEmbedding embedding_from_json(const LevelGraph& g, const json& raw) {
    try {
        LevelEmbedding emb;
        emb.levels.resize(g.height);
        for (auto& [key, seq] : need(raw, "levels").items()) {
            int l = std::stoi(key);
            if (l < 1 || l > g.height) throw Error(ErrorKind::MalformedInput, "embedding level " + key + " out of range");
            for (const auto& it : seq) {
                if (it.contains("vertex")) {
                    emb.levels[l - 1].push_back({Item::vertex, g.index_of(vertex_name(it.at("vertex")))});
                } else {
                    const auto& e = need(it, "edge");
                    int a = g.index_of(vertex_name(e.at(0))), b = g.index_of(vertex_name(e.at(1)));
                    int id = g.find_edge(a, b);
                    if (id < 0) throw Error(ErrorKind::UnknownVertex, "no edge " + g.id(a) + "-" + g.id(b));
                    emb.levels[l - 1].push_back({Item::edge, id});
                }
            }
        }
        return emb;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::MalformedInput, e.what());
    }
}

static std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '&': out += "&amp;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string to_svg(const LevelGraph& g, const LevelEmbedding& emb) {
    auto c = synthesize_coordinates(g, emb);
    const double sx = 40, sy = 60, pad = 30;
    std::size_t width = 1;
    for (auto& l : emb.levels) width = std::max(width, l.size());
    double W = pad * 2 + sx * static_cast<double>(width);
    double H = pad * 2 + sy * std::max(0, g.height - 1);
    auto X = [&](double x) { return pad + sx * x; };
    auto Y = [&](int y) { return H - pad - sy * (y - 1); };
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    for (int l = 1; l <= g.height; ++l)
        o << "<line x1=\"0\" y1=\"" << Y(l) << "\" x2=\"" << W << "\" y2=\"" << Y(l)
          << "\" stroke=\"#ccc\"/>\n";
    for (auto& pl : c.polyline) {
        o << "<polyline fill=\"none\" stroke=\"black\" points=\"";
        for (auto p : pl) o << X(p.x) << "," << Y(p.y) << " ";
        o << "\"/>\n";
    }
    for (int v = 0; v < static_cast<int>(g.size()); ++v) {
        auto p = c.vertex[v];
        o << "<circle cx=\"" << X(p.x) << "\" cy=\"" << Y(p.y) << "\" r=\"8\" fill=\"white\" stroke=\"black\"/>\n";
        o << "<text x=\"" << X(p.x) << "\" y=\"" << Y(p.y) + 3 << "\" font-size=\"8\" text-anchor=\"middle\">"
          << xml_escape(g.id(v)) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::MalformedInput, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::MalformedInput, path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::MalformedInput, "cannot write " + path);
    out << text;
}

}  // namespace levelplan
