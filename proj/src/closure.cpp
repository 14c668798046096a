#include "levelplan/closure.hpp"

#include <algorithm>

namespace levelplan {

ClosedConstraints::ClosedConstraints(const LevelGraph& g) {
    by_level_.resize(g.height);
    for (int v = 0; v < static_cast<int>(g.size()); ++v) add_vertex(g.level(v));
    for (auto e : g.edges()) {
        adj_[e.u].push_back(e.v);
        adj_[e.v].push_back(e.u);
    }
}

int ClosedConstraints::add_vertex(int level) {
    int v = size();
    if (level > height()) by_level_.resize(level);
    level_.push_back(level);
    adj_.emplace_back();
    by_level_[level - 1].push_back(v);
    for (auto& row : lt_) row.push_back(0);
    lt_.emplace_back(level_.size(), 0);
    return v;
}

const std::vector<int>& ClosedConstraints::on_level(int l) const {
    static const std::vector<int> none;
    return l >= 1 && l <= height() ? by_level_[l - 1] : none;
}

bool ClosedConstraints::adjacent(int u, int v) const {
    return std::find(adj_[u].begin(), adj_[u].end(), v) != adj_[u].end();
}

bool ClosedConstraints::push(int a, int b) {
    if (a == b || lt_[b][a]) return false;
    if (lt_[a][b]) return true;
    lt_[a][b] = 1;
    queue_.push_back({a, b});
    return true;
}

bool ClosedConstraints::drain() {
    while (!queue_.empty()) {
        auto [a, b] = queue_.back();
        queue_.pop_back();
        for (int x : by_level_[level_[a] - 1]) {
            if (lt_[x][a] && !push(x, b)) return ok_ = false;
            if (lt_[b][x] && !push(a, x)) return ok_ = false;
        }
        for (int p : adj_[a])
            for (int q : adj_[b])
                if (p != q && level_[p] == level_[q] && !push(p, q)) return ok_ = false;
    }
    return true;
}

bool ClosedConstraints::add(int before, int after) {
    if (!ok_) return false;
    if (level_[before] != level_[after]) throw Error(ErrorKind::ConstraintAcrossLevels, "constraint across levels");
    if (!push(before, after)) {
        queue_.clear();
        return ok_ = false;
    }
    if (!drain()) {
        queue_.clear();
        return false;
    }
    return true;
}

bool ClosedConstraints::add_edge(int u, int v) {
    if (!ok_) return false;
    if (level_[u] == level_[v]) throw Error(ErrorKind::SameLevelEdge, "edge inside one level");
    if (adjacent(u, v)) return true;
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    // the new edge pairs up with every edge whose endpoints share its two levels
    for (auto [a, b] : {std::pair{u, v}, std::pair{v, u}})
        for (int c : by_level_[level_[a] - 1]) {
            if (c == a) continue;
            for (int d : adj_[c]) {
                if (level_[d] != level_[b] || d == b) continue;
                if (lt_[a][c] && !push(b, d)) return ok_ = false;
                if (lt_[c][a] && !push(d, b)) return ok_ = false;
            }
        }
    if (!drain()) {
        queue_.clear();
        return false;
    }
    return true;
}

void ClosedConstraints::remove_edge(int u, int v) {
    adj_[u].erase(std::remove(adj_[u].begin(), adj_[u].end(), v), adj_[u].end());
    adj_[v].erase(std::remove(adj_[v].begin(), adj_[v].end(), u), adj_[v].end());
}

void ClosedConstraints::isolate(int v) {
    auto nb = adj_[v];
    for (int w : nb) remove_edge(v, w);
}

std::vector<Constraint> ClosedConstraints::pairs() const {
    std::vector<Constraint> out;
    for (int a = 0; a < size(); ++a)
        for (int b = 0; b < size(); ++b)
            if (lt_[a][b]) out.push_back({a, b});
    return out;
}

std::size_t ClosedConstraints::pair_count() const {
    std::size_t k = 0;
    for (auto& row : lt_) k += static_cast<std::size_t>(std::count(row.begin(), row.end(), 1));
    return k;
}

std::optional<ClosedConstraints> close_constraints(const ConstrainedLevelGraph& g) {
    ClosedConstraints c(g.graph);
    for (auto k : g.constraints)
        if (!c.add(k.before, k.after)) return std::nullopt;
    return c;
}

ConstrainedLevelGraph with_closure(const ConstrainedLevelGraph& g, const ClosedConstraints& c) {
    ConstrainedLevelGraph out;
    out.graph = g.graph;
    out.constraints = c.pairs();
    return out;
}

}  // namespace levelplan
