#include "levelplan/hardness.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace levelplan::hardness {

namespace {

[[noreturn]] void bad_param(const std::string& what) { throw Error(ErrorKind::ParameterInvalid, what); }
[[noreturn]] void bad_witness(const std::string& what) { throw Error(ErrorKind::WitnessInvalid, what); }

int link(LevelGraph& g, int a, int b) { return g.level(a) < g.level(b) ? g.add_edge(a, b) : g.add_edge(b, a); }

std::string tuple_text(const std::array<int, 4>& l) {
    return "(" + std::to_string(l[0]) + "," + std::to_string(l[1]) + "," + std::to_string(l[2]) + "," +
           std::to_string(l[3]) + ")";
}

// levels[i] / edges over 1-based names; same-level edges are contracted onto the lower name
GadgetTemplate contract(const std::vector<int>& levels, const std::vector<std::pair<int, int>>& edges, int low,
                        int high) {
    int n = static_cast<int>(levels.size()) - 1;
    std::vector<int> root(n + 1);
    std::iota(root.begin(), root.end(), 0);
    std::function<int(int)> find = [&](int x) { return root[x] == x ? x : root[x] = find(root[x]); };
    for (auto [a, b] : edges)
        if (levels[a] == levels[b]) {
            int ra = find(a), rb = find(b);
            if (ra != rb) root[std::max(ra, rb)] = std::min(ra, rb);
        }
    GadgetTemplate t;
    std::vector<int> pos(n + 1, -1);
    for (int v = 1; v <= n; ++v)
        if (find(v) == v) {
            pos[v] = static_cast<int>(t.name.size());
            t.name.push_back(v);
            t.level.push_back(levels[v]);
        }
    for (auto [a, b] : edges) {
        int x = pos[find(a)], y = pos[find(b)];
        if (x == y) continue;
        if (t.level[x] > t.level[y]) std::swap(x, y);
        t.edges.push_back({x, y});
    }
    t.connect_low = pos[find(low)];
    t.connect_high = pos[find(high)];
    return t;
}

}  // namespace

void PlugSpec::check() const {
    auto& l = level;
    if (!(l[0] >= 1 && l[0] <= l[1] && l[1] < l[2] && l[2] <= l[3])) bad_param("plug levels " + tuple_text(l));
}

void SocketSpec::check() const {
    auto& l = level;
    if (!(l[0] >= 1 && l[0] < l[1] && l[1] <= l[2] && l[2] < l[3])) bad_param("socket levels " + tuple_text(l));
}

int GadgetTemplate::find(int name_index) const {
    auto it = std::find(name.begin(), name.end(), name_index);
    return it == name.end() ? -1 : static_cast<int>(it - name.begin());
}

GadgetTemplate plug_template(const PlugSpec& p) {
    p.check();
    auto [l1, l2, l3, l4] = p.level;
    std::vector<int> lv{0, l4, l3, l2, l3, l1, l2};
    return contract(lv, {{1, 2}, {2, 3}, {3, 4}, {4, 6}, {6, 5}}, 5, 1);
}

GadgetTemplate socket_template(const SocketSpec& s) {
    s.check();
    auto [l1, l2, l3, l4] = s.level;
    std::vector<int> lv{0, l3, l2, l1, l2, l2, l3, l3, l4, l2, l3};
    return contract(lv, {{1, 2}, {2, 3}, {3, 5}, {5, 7}, {4, 6}, {6, 8}, {8, 10}, {10, 9}}, 1, 9);
}

bool fits(const PlugSpec& p, const SocketSpec& s, int extent_min, int extent_max) {
    auto& a = p.level;
    auto& v = s.level;
    return extent_min <= v[0] && extent_max >= v[3] && v[0] < a[1] && a[1] < v[1] && v[1] <= v[2] &&
           v[2] < a[2] && a[2] < v[3];
}

bool fits(const PlugSpec& p, const SocketSpec& s) { return fits(p, s, p.level[0], p.level[3]); }

bool double_link_admissible(const PlugSpec& a, int a_min, int a_max, const PlugSpec& b, int b_min, int b_max,
                            const SocketSpec& s) {
    if (!fits(a, s, a_min, a_max) || !fits(b, s, b_min, b_max)) return false;
    auto &x = a.level, &y = b.level;
    return (x[1] < y[1] && x[2] < y[2]) || (x[1] > y[1] && x[2] > y[2]);
}

bool double_link_admissible(const PlugSpec& a, const PlugSpec& b, const SocketSpec& s) {
    return double_link_admissible(a, a.level[0], a.level[3], b, b.level[0], b.level[3], s);
}

namespace {

std::vector<int> add_gadget(LevelGraph& g, const GadgetTemplate& t, const std::string& prefix, char letter) {
    std::vector<int> vs;
    for (std::size_t i = 0; i < t.name.size(); ++i)
        vs.push_back(g.add_vertex(prefix + letter + std::to_string(t.name[i]), t.level[i]));
    for (auto [a, b] : t.edges) g.add_edge(vs[a], vs[b]);
    return vs;
}

}  // namespace

std::vector<int> add_plug(LevelGraph& g, const PlugSpec& p, const std::string& prefix) {
    return add_gadget(g, plug_template(p), prefix, 'u');
}

std::vector<int> add_socket(LevelGraph& g, const SocketSpec& s, const std::string& prefix) {
    return add_gadget(g, socket_template(s), prefix, 'v');
}

// ---------------------------------------------------------------------------
// drawing helper: every vertex and every edge crossing gets an x coordinate

namespace {

using Route = std::function<double(int)>;

struct Canvas {
    LevelGraph g;
    std::vector<double> x;
    std::vector<Route> route;

    int vertex(const std::string& id, int level, double px) {
        x.push_back(px);
        return g.add_vertex(id, level);
    }

    int edge(int a, int b, Route r = {}) {
        int e = link(g, a, b);
        if (!r) {
            auto [u, v] = g.edge(e);
            double xu = x[u], xv = x[v];
            int lu = g.level(u), lv = g.level(v);
            r = [=](int l) { return xu + (xv - xu) * (l - lu) / double(lv - lu); };
        }
        route.push_back(std::move(r));
        return e;
    }

    LevelEmbedding embedding() const {
        std::vector<std::vector<std::pair<double, Item>>> at(g.height);
        for (int v = 0; v < static_cast<int>(g.size()); ++v)
            at[g.level(v) - 1].push_back({x[v], {Item::vertex, v}});
        for (int e = 0; e < static_cast<int>(g.edge_count()); ++e) {
            auto [u, v] = g.edge(e);
            for (int l = g.level(u) + 1; l < g.level(v); ++l) at[l - 1].push_back({route[e](l), {Item::edge, e}});
        }
        LevelEmbedding emb;
        emb.levels.resize(g.height);
        for (int i = 0; i < g.height; ++i) {
            auto& row = at[i];
            std::sort(row.begin(), row.end(), [](auto& a, auto& b) { return a.first < b.first; });
            for (std::size_t k = 0; k < row.size(); ++k) {
                if (k > 0 && row[k].first == row[k - 1].first)
                    throw std::logic_error("coordinate tie on level " + std::to_string(i + 1));
                emb.levels[i].push_back(row[k].second);
            }
        }
        return emb;
    }

    std::vector<int> ranks() const {
        std::vector<int> rank(g.size());
        for (auto lv : g.by_level()) {
            std::sort(lv.begin(), lv.end(), [&](int a, int b) { return x[a] < x[b]; });
            for (std::size_t k = 0; k < lv.size(); ++k) rank[lv[k]] = static_cast<int>(k) + 1;
        }
        return rank;
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// 3-Partition

PartitionReduction gen_3partition(const std::vector<int>& numbers, int m, int bucket, PartitionLimits limits) {
    if (m < 1 || bucket < 1) bad_param("m and B must be positive");
    if (static_cast<int>(numbers.size()) != 3 * m)
        bad_param("expected " + std::to_string(3 * m) + " numbers, got " + std::to_string(numbers.size()));
    if (static_cast<long long>(m) * bucket > limits.max_total)
        bad_param("m*B = " + std::to_string(static_cast<long long>(m) * bucket) + " exceeds the size cap " +
                  std::to_string(limits.max_total));
    long long sum = 0;
    for (int s : numbers) {
        if (!(4LL * s > bucket && 2LL * s < bucket))
            bad_param("number " + std::to_string(s) + " not strictly between B/4 and B/2");
        sum += s;
    }
    if (sum != static_cast<long long>(m) * bucket) bad_param("numbers do not sum to m*B");

    PartitionReduction r;
    r.numbers = numbers;
    r.m = m;
    r.bucket = bucket;
    auto& g = r.instance.graph;
    auto name = [](const std::string& a, int i, const std::string& b) { return a + std::to_string(i) + b; };

    for (int i = 0; i <= m; ++i) {
        std::array<int, 4> w{};
        for (int l = 1; l <= 4; ++l) w[l - 1] = g.add_vertex(name("w", i, "_" + std::to_string(l)), l);
        for (int l = 1; l < 4; ++l) g.add_edge(w[l - 1], w[l]);
        r.walls.push_back(w);
    }
    for (int c = 1; c <= m; ++c) {
        MountainChainInfo ch;
        ch.floor.push_back(r.walls[c - 1][0]);
        for (int j = 1; j < bucket; ++j) ch.floor.push_back(g.add_vertex(name("c", c, "_f" + std::to_string(j)), 1));
        ch.floor.push_back(r.walls[c][0]);
        for (int j = 1; j <= bucket; ++j) {
            std::string base = name("c", c, "_m" + std::to_string(j));
            int a = g.add_vertex(base + "_l", 2), t = g.add_vertex(base + "_t", 3), b = g.add_vertex(base + "_r", 2);
            g.add_edge(ch.floor[j - 1], a);
            g.add_edge(a, t);
            g.add_edge(b, t);
            g.add_edge(ch.floor[j], b);
            ch.mountains.push_back({a, t, b});
        }
        r.chains.push_back(std::move(ch));
    }
    int w0 = r.walls.front()[3], wm = r.walls.back()[3];
    r.instance.add_constraint(w0, wm);
    for (std::size_t t = 0; t < numbers.size(); ++t) {
        ClipInfo clip;
        int k = numbers[t];
        clip.size = k;
        std::string base = "k" + std::to_string(t) + "_";
        for (int i = 0; i <= 2 * k; ++i) clip.upper.push_back(g.add_vertex(base + "p" + std::to_string(i), 2));
        for (int i = 0; i <= k; ++i) clip.top.push_back(g.add_vertex(base + "q" + std::to_string(i), 3));
        for (int i = 0; i < k; ++i) clip.bottom.push_back(g.add_vertex(base + "r" + std::to_string(i), 1));
        clip.center = g.add_vertex(base + "x", 4);
        for (int i = 0; i <= k; ++i) {
            g.add_edge(clip.upper[2 * i], clip.top[i]);
            g.add_edge(clip.top[i], clip.center);
        }
        for (int i = 0; i < k; ++i) g.add_edge(clip.bottom[i], clip.upper[2 * i + 1]);
        for (int i = 0; i < 2 * k; ++i) r.instance.add_constraint(clip.upper[i], clip.upper[i + 1]);
        r.instance.add_constraint(w0, clip.center);
        r.instance.add_constraint(clip.center, wm);
        r.clips.push_back(std::move(clip));
    }
    return r;
}

LevelEmbedding realize_3partition_witness(const PartitionReduction& r, const std::vector<std::vector<int>>& triples) {
    int n = static_cast<int>(r.numbers.size());
    if (static_cast<int>(triples.size()) != r.m) bad_witness("expected " + std::to_string(r.m) + " triples");
    std::vector<char> used(n, 0);
    for (auto& t : triples) {
        if (t.size() != 3) bad_witness("every part must have exactly three numbers");
        long long s = 0;
        for (int i : t) {
            if (i < 0 || i >= n || used[i]) bad_witness("numbers must be used exactly once");
            used[i] = 1;
            s += r.numbers[i];
        }
        if (s != r.bucket) bad_witness("a triple sums to " + std::to_string(s) + ", not " + std::to_string(r.bucket));
    }

    std::array<std::vector<int>, 4> row;
    for (int c = 0; c < r.m; ++c) {
        auto& ch = r.chains[c];
        int B = r.bucket;
        std::vector<std::vector<std::pair<int, int>>> valley(B + 1);  // (level 2, level 3)
        std::vector<std::vector<std::pair<int, int>>> under(B + 1);   // (level 1, level 2), index = mountain
        int offset = 0;
        for (int t : triples[c]) {
            auto& clip = r.clips[t];
            for (int i = 0; i <= clip.size; ++i) valley[offset + i].push_back({clip.upper[2 * i], clip.top[i]});
            for (int i = 0; i < clip.size; ++i) under[offset + i + 1].push_back({clip.bottom[i], clip.upper[2 * i + 1]});
            offset += clip.size;
        }
        if (c == 0) row[0].push_back(ch.floor[0]);
        row[1].push_back(r.walls[c][1]);
        row[2].push_back(r.walls[c][2]);
        row[3].push_back(r.walls[c][3]);
        auto flush_valley = [&](int j) {
            for (auto [p, q] : valley[j]) {
                row[1].push_back(p);
                row[2].push_back(q);
            }
        };
        flush_valley(0);
        for (int j = 1; j <= B; ++j) {
            auto [a, t, b] = ch.mountains[j - 1];
            for (auto [lo, up] : under[j]) row[0].push_back(lo);
            row[0].push_back(ch.floor[j]);
            row[1].push_back(a);
            for (auto [lo, up] : under[j]) row[1].push_back(up);
            row[1].push_back(b);
            row[2].push_back(t);
            flush_valley(j);
        }
        for (int t : triples[c]) row[3].push_back(r.clips[t].center);
    }
    for (int l = 1; l < 4; ++l) row[l].push_back(r.walls[r.m][l]);

    LevelEmbedding emb;
    for (auto& lv : row) {
        emb.levels.emplace_back();
        for (int v : lv) emb.levels.back().push_back({Item::vertex, v});
    }
    return emb;
}

// ---------------------------------------------------------------------------
// Multicolored Independent Set

int GridLayout::color_band_level(int j, int rel) const { return (j - 1) * 26 + rel; }
int GridLayout::collision_band_level(int j, int rel) const { return (j - 1) * 26 + 17 + rel; }

namespace {

const char* kColorLayout = "HCRPRHRCRCRHRPRCH";
const char* kCollisionLayout = "ARABRBARB";

// socket/plug level tuples, sockets in rigid-level numbering of their band
constexpr std::array<int, 4> kChoiceSocket{2, 4, 4, 6};
constexpr std::array<int, 4> kColorSocket{3, 4, 4, 5};
constexpr std::array<int, 4> kPassSocket{1, 2, 6, 7};
constexpr std::array<int, 4> kCollisionSocket{1, 2, 2, 3};
constexpr std::array<int, 4> kHighPlug{1, 6, 12, 17};
constexpr std::array<int, 4> kColorPlug{2, 8, 10, 16};
constexpr std::array<int, 4> kPassPlug{4, 4, 14, 14};
constexpr std::array<int, 4> kAPlug{1, 3, 7, 7};
constexpr std::array<int, 4> kBPlug{4, 4, 6, 9};

// cell-local x (walls at 0 and 100), by original vertex name
constexpr double kSocketX[11] = {0, 0, 10, 40, 50, 70, 50, 70, 70, 100, 90};
constexpr double kPlugX[7] = {0, 30, 30, 40, 70, 80, 80};

constexpr double kCell = 100;

enum class Cell { None, Choice, ColorS, Pass, Collision };

struct Builder {
    const GridLayout& L;
    Canvas cv;
    std::vector<std::vector<int>> wall;  // wall index -> level -> vertex (-1 if none)
    std::vector<int> rigid;              // sorted global rigid levels
    std::vector<int> scaffold;

    explicit Builder(const GridLayout& layout) : L(layout) {}

    int color_rigid(int j, int r) const { return L.color_band_level(j, 2 * r + 1); }
    int collision_rigid(int j, int r) const { return L.collision_band_level(j, 3 * r - 1); }

    // block index of an edge-block column, -1 inside the choice blocks
    int block_of(int col) const {
        int np = L.n_prime;
        if (col < np || col > L.columns - (np - 1)) return -1;
        return (col - np) / (2 * np - 1);
    }

    Cell color_cell(int j, int col) const {
        int b = block_of(col);
        if (b < 0) return Cell::Choice;
        auto [u, v] = L.edges[b];
        return (L.color[u] == j || L.color[v] == j) ? Cell::ColorS : Cell::Pass;
    }

    int collision_column(int b) const { return L.block_first_column(b) + L.n_prime - 1; }

    void walls() {
        for (auto& band : L.bands)
            for (std::size_t i = 0; i < band.layout.size(); ++i)
                if (band.layout[i] == 'R') rigid.push_back(band.first_level + static_cast<int>(i));
        wall.assign(L.walls, std::vector<int>(L.height + 1, -1));
        for (int w = 0; w < L.walls; ++w) {
            bool outer = w == 0 || w == L.walls - 1;
            std::vector<int> lv;
            if (outer)
                for (int l = 1; l <= L.height; ++l) lv.push_back(l);
            else
                lv = rigid;
            double x = kCell * w;
            int prev = -1;
            for (int l : lv) {
                int v = cv.vertex("w" + std::to_string(w) + "." + std::to_string(l), l, x);
                wall[w][l] = v;
                scaffold.push_back(v);
                if (prev >= 0) cv.edge(prev, v, [x](int) { return x; });
                prev = v;
            }
        }
    }

    void socket(const std::array<int, 4>& global, int col, const std::string& tag) {
        auto t = socket_template(SocketSpec{global});
        std::string base = "s" + std::to_string(col) + "." + tag + ".";
        double x0 = kCell * (col - 1);
        std::vector<int> vs;
        for (std::size_t i = 0; i < t.name.size(); ++i) {
            int nm = t.name[i], l = t.level[i];
            int v;
            if (nm == 1)
                v = wall[col - 1][l];
            else if (nm == 9)
                v = wall[col][l];
            else {
                v = cv.vertex(base + "v" + std::to_string(nm), l, x0 + kSocketX[nm]);
                scaffold.push_back(v);
            }
            vs.push_back(v);
        }
        for (auto [a, b] : t.edges) {
            int u = vs[a], w = vs[b];
            int lu = cv.g.level(u), lw = cv.g.level(w);
            double xu = cv.x[u], xw = cv.x[w];
            int prev = u;
            for (int l : rigid)
                if (l > lu && l < lw) {
                    double x = xu + (xw - xu) * (l - lu) / double(lw - lu);
                    int s = cv.vertex(base + "v" + std::to_string(t.name[a]) + "v" + std::to_string(t.name[b]) + "." +
                                          std::to_string(l),
                                      l, x);
                    scaffold.push_back(s);
                    cv.edge(prev, s);
                    prev = s;
                }
            cv.edge(prev, w);
        }
    }

    void sockets() {
        for (auto& band : L.bands) {
            for (int col = 1; col <= L.columns; ++col) {
                std::array<int, 4> rel{};
                std::string tag;
                if (band.kind == Band::Color) {
                    auto c = color_cell(band.index, col);
                    rel = c == Cell::Choice ? kChoiceSocket : c == Cell::ColorS ? kColorSocket : kPassSocket;
                    tag = "C" + std::to_string(band.index);
                    std::array<int, 4> g{};
                    for (int i = 0; i < 4; ++i) g[i] = color_rigid(band.index, rel[i]);
                    socket(g, col, tag);
                } else {
                    int b = block_of(col);
                    if (b < 0 || col != collision_column(b)) continue;
                    if (L.color[L.edges[b].first] != band.index) continue;
                    std::array<int, 4> g{};
                    for (int i = 0; i < 4; ++i) g[i] = collision_rigid(band.index, kCollisionSocket[i]);
                    socket(g, col, "X" + std::to_string(band.index));
                }
            }
        }
    }

    // plug inside column col; b2/b3 are the socket's middle levels, or a midpoint in an empty cell.
    // The plug is squeezed into [offset, offset + 100*scale] of the cell.
    std::vector<int> plug(const std::array<int, 4>& global, const std::string& prefix, int col, double b2, double b3,
                          double scale = 1, double offset = 0) {
        auto t = plug_template(PlugSpec{global});
        double a2 = global[1], a3 = global[2];
        double x0 = kCell * (col - 1) + offset;
        auto X = [=](double local) { return x0 + scale * local; };
        Route desc1 = [=](int y) { return X(y >= b2 ? 30 : 40 - 10 * (y - a2) / (b2 - a2)); };
        Route rise = [=](int y) {
            if (y <= b2) return X(40 + 20 * (y - a2) / (b2 - a2));
            if (y <= b3) return X(60);
            return X(60 + 10 * (y - b3) / (a3 - b3));
        };
        Route desc2 = [=](int y) { return X(y >= b3 ? 80 - 10 * (y - b3) / (a3 - b3) : 80); };
        std::vector<int> vs;
        for (std::size_t i = 0; i < t.name.size(); ++i)
            vs.push_back(cv.vertex(prefix + "u" + std::to_string(t.name[i]), t.level[i], X(kPlugX[t.name[i]])));
        for (auto [a, b] : t.edges) {
            int na = t.name[a], nb = t.name[b];
            bool first = na <= 3 && nb <= 3;
            bool up = (na == 3 && nb == 4) || (na == 4 && nb == 3);
            cv.edge(vs[a], vs[b], first ? desc1 : up ? rise : desc2);
        }
        // return indexed by original name
        std::vector<int> by_name(7, -1);
        for (std::size_t i = 0; i < t.name.size(); ++i) by_name[t.name[i]] = vs[i];
        return by_name;
    }

    // edge from the top of one plug to the bottom of the next, vertical, switching column offset at level sw
    void connect(int lower, int upper, int sw) {
        double xs = cv.x[lower], xt = cv.x[upper];
        cv.edge(lower, upper, [=](int y) { return y < sw ? xs : xt; });
    }
};

std::array<int, 4> shift_levels(const std::array<int, 4>& rel, int base) {
    return {base + rel[0] - 1, base + rel[1] - 1, base + rel[2] - 1, base + rel[3] - 1};
}

struct Built {
    Canvas cv;
    std::vector<int> scaffold;
    std::vector<GadgetCounts> counts;
};

// shift[j-1]: number of high plugs of color j in the left choice block
Built build(const GridLayout& L, const std::vector<int>& shift, bool strict) {
    Builder B(L);
    B.walls();
    B.sockets();
    int np = L.n_prime;
    std::vector<GadgetCounts> counts(L.k);

    // socket sequence per color band: choice and color sockets, left to right
    std::vector<std::vector<int>> seq(L.k + 1);
    for (int j = 1; j <= L.k; ++j)
        for (int col = 1; col <= L.columns; ++col) {
            auto c = B.color_cell(j, col);
            if (c == Cell::Choice) ++counts[j - 1].choice_sockets;
            if (c == Cell::ColorS) ++counts[j - 1].color_sockets;
            if (c == Cell::Pass) ++counts[j - 1].pass_sockets;
            if (c != Cell::Pass) seq[j].push_back(col);
        }

    // cell middle levels of the choice/color sockets (both are (.,r4,r4,.))
    std::vector<std::vector<std::vector<int>>> color_plug(L.k + 1);
    for (int j = 1; j <= L.k; ++j) {
        int base = L.color_band_level(j, 1);
        double mid = B.color_rigid(j, 4);
        int s = shift[j - 1];
        int total = static_cast<int>(seq[j].size());
        for (int h = 1; h <= np - 1; ++h) {
            int slot = h <= s ? h : total - (np - 1) + h;
            B.plug(shift_levels(kHighPlug, base), "h" + std::to_string(j) + "." + std::to_string(h) + ".", seq[j][slot - 1],
                   mid, mid);
            ++counts[j - 1].high_plugs;
        }
        int plugs = total - (np - 1);
        color_plug[j].push_back({});
        for (int p = 1; p <= plugs; ++p) {
            color_plug[j].push_back(B.plug(shift_levels(kColorPlug, base),
                                           "c" + std::to_string(j) + "." + std::to_string(p) + ".",
                                           seq[j][p + s - 1], mid, mid));
            ++counts[j - 1].color_plugs;
        }
    }

    // extended color plugs
    std::vector<int> before(L.k + 1, 0);  // color sockets of earlier incident blocks
    for (int b = 0; b < L.m; ++b) {
        auto [u, v] = L.edges[b];
        int cu = L.color[u], cw = L.color[v];
        int first = L.block_first_column(b);
        auto plug_number = [&](int w) { return (np - 1) + before[L.color[w]] + (np - L.idx[w] + 1); };
        int px = plug_number(u), py = plug_number(v);
        int col_x = seq[cu][px + shift[cu - 1] - 1];
        int col_y = seq[cw][py + shift[cw - 1] - 1];
        if (col_x < first || col_y < first || col_x >= first + 2 * np - 1 || col_y >= first + 2 * np - 1)
            throw std::logic_error("extended plug left its edge block");
        auto& X = color_plug[cu][px];
        auto& Y = color_plug[cw][py];
        int col_s = B.collision_column(b);
        if (strict && col_x == col_s && col_y == col_s)
            bad_witness("both endpoints of edge " + L.vertices[u] + "-" + L.vertices[v] + " selected");

        std::string tag = std::to_string(b);
        int cb = L.collision_band_level(cu, 1);
        double smid = B.collision_rigid(cu, 2);
        auto place = [&](const std::array<int, 4>& rel, const std::string& name, int col, bool left) {
            auto g = shift_levels(rel, cb);
            if (col == col_s) return B.plug(g, name, col, smid, smid);
            double mid = (g[1] + g[2]) / 2.0;
            return B.plug(g, name, col, mid, mid, 0.45, left ? 0 : 55);
        };
        auto bplug = place(kBPlug, "b" + tag + ".", col_x, false);
        auto aplug = place(kAPlug, "a" + tag + ".", col_y, true);
        B.connect(X[1], bplug[5], B.cv.g.level(X[1]) + 1);

        int below = aplug[1];
        for (int i = cu + 1; i < cw; ++i) {
            int base = L.color_band_level(i, 1);
            double p2 = B.color_rigid(i, 2), p3 = B.color_rigid(i, 6);
            auto pp = B.plug(shift_levels(kPassPlug, base), "p" + tag + "." + std::to_string(i) + ".", col_y, p2, p3);
            B.connect(below, pp[5], base);
            below = pp[1];
        }
        B.connect(below, Y[5], L.color_band_level(cw, 1));
        before[cu] += 2 * np - 1;
        before[cw] += 2 * np - 1;
    }
    return {std::move(B.cv), std::move(B.scaffold), std::move(counts)};
}

GridLayout make_layout(const McisInput& in) {
    if (in.k < 2) bad_param("k must be at least 2");
    int n = static_cast<int>(in.vertices.size());
    if (static_cast<int>(in.color.size()) != n) bad_param("every vertex needs a color");
    GridLayout L;
    L.k = in.k;
    L.vertices = in.vertices;
    L.color = in.color;
    std::vector<int> size(in.k + 1, 0);
    for (int v = 0; v < n; ++v) {
        if (in.color[v] < 1 || in.color[v] > in.k)
            bad_param("color of " + in.vertices[v] + " outside 1.." + std::to_string(in.k));
        L.idx.push_back(++size[in.color[v]]);
    }
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : in.edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) bad_param("edge endpoint out of range");
        if (in.color[u] == in.color[v])
            bad_param("edge " + in.vertices[u] + "-" + in.vertices[v] + " joins two vertices of one color");
        if (in.color[u] > in.color[v]) std::swap(u, v);
        if (seen.insert({u, v}).second) L.edges.push_back({u, v});
    }
    L.n_prime = *std::max_element(size.begin() + 1, size.end());
    if (L.n_prime == 0) bad_param("no vertices");
    // padding vertices are adjacent to every vertex of another color
    int first_pad = n;
    for (int j = 1; j <= in.k; ++j)
        while (size[j] < L.n_prime) {
            L.vertices.push_back("pad" + std::to_string(j) + "_" + std::to_string(size[j] + 1));
            L.color.push_back(j);
            L.idx.push_back(++size[j]);
        }
    int total = static_cast<int>(L.vertices.size());
    for (int p = first_pad; p < total; ++p)
        for (int v = 0; v < total; ++v) {
            if (L.color[v] == L.color[p] || (v >= first_pad && v < p)) continue;
            int a = p, b = v;
            if (L.color[a] > L.color[b]) std::swap(a, b);
            if (seen.insert({a, b}).second) L.edges.push_back({a, b});
        }
    L.m = static_cast<int>(L.edges.size());
    L.m_color.assign(in.k, 0);
    for (auto [u, v] : L.edges) {
        ++L.m_color[L.color[u] - 1];
        ++L.m_color[L.color[v] - 1];
    }
    L.columns = L.m * (2 * L.n_prime - 1) + 2 * L.n_prime - 2;
    if (L.columns == 0) bad_param("instance has no cells (one vertex per color and no edges)");
    L.walls = L.columns + 1;
    for (int j = 1; j <= in.k; ++j) {
        L.bands.push_back({Band::Color, j, L.color_band_level(j, 1), kColorLayout});
        if (j < in.k) L.bands.push_back({Band::Collision, j, L.collision_band_level(j, 1), kCollisionLayout});
    }
    L.height = 26 * in.k - 9;
    return L;
}

}  // namespace

McisReduction gen_mcis(const McisInput& in) {
    McisReduction r;
    r.input = in;
    r.layout = make_layout(in);
    // canonical placement: every high plug in the right choice block
    auto built = build(r.layout, std::vector<int>(in.k, 0), false);
    r.instance.graph = built.cv.g;
    r.instance.rank = built.cv.ranks();
    r.per_color = std::move(built.counts);
    r.scaffold = std::move(built.scaffold);
    return r;
}

LevelEmbedding realize_mcis_witness(const McisReduction& r, const std::vector<int>& chosen) {
    auto& L = r.layout;
    int n = static_cast<int>(r.input.vertices.size());
    std::vector<int> shift(L.k, -1);
    for (int v : chosen) {
        if (v < 0 || v >= n) bad_witness("unknown vertex in the independent set");
        int j = L.color[v];
        if (shift[j - 1] >= 0) bad_witness("two vertices of color " + std::to_string(j));
        shift[j - 1] = L.idx[v] - 1;
    }
    for (int j = 1; j <= L.k; ++j)
        if (shift[j - 1] < 0) bad_witness("no vertex of color " + std::to_string(j));
    auto built = build(L, shift, true);
    auto& g = built.cv.g;
    if (g.size() != r.instance.graph.size() || g.edge_count() != r.instance.graph.edge_count())
        throw std::logic_error("witness graph differs from the instance");
    for (int v = 0; v < static_cast<int>(g.size()); ++v)
        if (g.id(v) != r.instance.graph.id(v)) throw std::logic_error("witness graph differs from the instance");
    return built.cv.embedding();
}

}  // namespace levelplan::hardness
