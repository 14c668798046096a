#pragma once

#include <optional>
#include <string>
#include <vector>

#include "levelplan/closure.hpp"
#include "levelplan/model.hpp"

namespace levelplan::clp3 {

/// Strongly connected parts of the component graph (arc X -> Y when some
/// vertex of X must precede some vertex of Y), as induced sub-instances in a
/// topological order of the condensation.
std::vector<SubInstance> decompose_scc(const ConstrainedLevelGraph& g);

/// Chain of components joined by hooks, leftmost first. For consecutive
/// components chain[i], chain[i+1]:
///   anchor_right[i]    cut vertex of chain[i] separating its hook piece towards chain[i+1]
///   anchor_left[i]     cut vertex of chain[i+1] separating its hook piece towards chain[i]
///   spine_end_right[i] far spine end of the hook piece of chain[i+1], tied to anchor_right[i]
///   spine_end_left[i]  far spine end of the hook piece of chain[i], tied to anchor_left[i]
struct HookStructure {
    std::vector<int> chain;
    std::vector<int> anchor_right;
    std::vector<int> anchor_left;
    std::vector<int> spine_end_right;
    std::vector<int> spine_end_left;
};

/// Candidate hook structures for the guess (s, t). The instance must be proper,
/// of height 3, free of isolated vertices and with closed constraints.
/// Empty when the guess is refuted.
std::vector<HookStructure> resolve_hooks(const ConstrainedLevelGraph& g, int s, int t);

/// Part of the main component hanging off one backbone vertex, or a component
/// enclosed in a gap (anchor = -1).
struct Piece {
    int anchor = -1;
    std::vector<int> vertices;  // without the anchor
    int band = 0;               // outer level the object lives next to: 1 or 3
    std::vector<int> options;   // candidate gaps
    int gap = -1;               // chosen gap
};

/// Face of one band between consecutive backbone vertices that still has room
/// on its outer level. Slots are the intervals between middle backbone vertices.
struct Gap {
    int band = 0;
    int first_slot = 0;
    int last_slot = 0;
    int mid_left = -1;
    int mid_right = -1;
    int outer_left = -1;   // -1 when open to the left
    int outer_right = -1;  // -1 when open to the right
    int group = 0;         // 1-based run of gaps on the same band
};

struct BackboneDecomposition {
    int s = -1;
    int t = -1;
    std::vector<char> on_backbone;
    std::vector<std::vector<int>> order;  // backbone vertices per level, left to right
    std::vector<Piece> pieces;
    std::vector<Piece> enclosed;
    std::vector<Gap> gaps;
    int groups = 0;
};

/// One guess (s, t, hooks) carried through the reduction. Every stage returns
/// false when the guess is refuted; reason() tells why.
class Branch {
public:
    Branch(const ConstrainedLevelGraph& g, const ClosedConstraints& closed, int s, int t,
           HookStructure hooks);

    bool connect_hooks();
    bool orient_backbone();
    bool detach_and_prune();
    bool assign_gaps();
    // per-level orders of the input vertices, or nullopt
    std::optional<std::vector<std::vector<int>>> finalize();

    std::optional<std::vector<std::vector<int>>> run();

    const ClosedConstraints& relation() const { return rel_; }
    const BackboneDecomposition& backbone() const { return bb_; }
    const std::string& reason() const { return reason_; }
    int vertex_count() const { return rel_.size(); }

private:
    bool reject(const std::string& why);
    int new_vertex(int level, const std::string& id);
    bool link(int u, int v);
    std::vector<int> alive_component(int from, const std::vector<char>& blocked) const;
    bool compute_gaps();
    bool totalize(const std::vector<int>& vertices);
    bool place(ClosedConstraints& rel, const Piece& p, const Gap& g) const;
    bool try_place(const std::vector<std::pair<int, int>>& choice);
    std::vector<Piece*> objects();
    bool arrange_gap(int gi);
    bool orient(Piece& p);
    bool spread_leaves(Piece& p, const Gap& g);
    bool reinsert_leaves(std::vector<std::vector<int>>& orders);

    const ConstrainedLevelGraph& g_;
    int base_;
    HookStructure hooks_;
    ClosedConstraints rel_;
    std::vector<std::string> ids_;
    std::vector<char> alive_;
    std::vector<std::pair<int, int>> detached_;  // removed finger edges
    std::vector<std::pair<int, int>> leaves_;    // (leaf, anchor) removed before placement
    BackboneDecomposition bb_;
    std::vector<int> position_;  // per vertex index within its backbone level, -1 off the backbone
    std::string reason_;
};

struct Options {
    int jobs = 1;
    std::vector<std::string>* trace = nullptr;  // one line per refuted guess
};

/// Level-planar drawing of a constrained instance of height at most 3, or nullopt.
/// Instances of height <= 2 go to the 2-level solver; taller ones throw UnsupportedHeight.
std::optional<LevelEmbedding> solve(const ConstrainedLevelGraph& g, const Options& opt = {});

}  // namespace levelplan::clp3
