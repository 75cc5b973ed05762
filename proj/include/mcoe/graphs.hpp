#pragma once

// Support graphs of the symbolic restrictions, their generated equivalence
// relations, and the combinatorial data used by edge sliding.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mcoe/chainspec.hpp"

namespace mcoe {

using Edge = std::pair<Symbol, Symbol>;
using EdgeSet = std::set<Edge>;

/// Directed graph on the alphabet {0, ..., n-1}.
class TransitionGraph {
 public:
  TransitionGraph() = default;
  TransitionGraph(std::size_t vertex_count, const EdgeSet& edges);

  std::size_t vertex_count() const { return out_.size(); }
  const EdgeSet& edges() const { return edges_; }
  bool has_edge(Symbol a, Symbol b) const { return edges_.contains({a, b}); }
  /// Out-neighbours in increasing order.
  const std::vector<Symbol>& successors(Symbol a) const { return out_[a]; }
  const std::vector<Symbol>& predecessors(Symbol a) const { return in_[a]; }
  std::size_t out_degree(Symbol a) const { return out_[a].size(); }
  std::size_t in_degree(Symbol a) const { return in_[a].size(); }

 private:
  EdgeSet edges_;
  std::vector<std::vector<Symbol>> out_, in_;
};

/// Partition of the alphabet into equivalence classes, each class sorted, the
/// classes ordered by their smallest element.
struct ClassPartition {
  std::vector<std::size_t> class_of;
  std::vector<std::vector<Symbol>> classes;

  bool same_class(Symbol a, Symbol b) const { return class_of[a] == class_of[b]; }
  const std::vector<Symbol>& class_containing(Symbol a) const { return classes[class_of[a]]; }
};

/// Edges (a, b) with pi(a) P_s(a, b) > 0.
TransitionGraph support_edges(const MarkovSpec& spec, std::size_t generator);
TransitionGraph support_graph(const Matrix& kernel, const std::vector<Rational>& pi);

/// Connected components of the graph with edge directions ignored.
ClassPartition classes(const TransitionGraph& graph);
/// Classes of the relation generated by the union of several graphs.
ClassPartition joint_classes(const std::vector<TransitionGraph>& graphs);

/// Every vertex of the class has in-degree 1 and out-degree 1.
bool is_periodic_class(const TransitionGraph& graph, const std::vector<Symbol>& cls);

struct GeneratorClassification {
  bool ergodic = false;  // the restriction's relation is all of A x A
  bool free = false;     // every class aperiodic
  std::vector<std::vector<Symbol>> classes;
  std::vector<std::vector<Symbol>> periodic_classes;
};

struct Classification {
  std::vector<GeneratorClassification> per_generator;
  bool ergodic = false;
  /// False whenever the measure is not ergodic.
  bool properly_ergodic = false;

  /// Every restriction ergodic and essentially free.
  bool generator_ergodic() const;
};

/// Ergodicity and freeness criteria for Markov measures with fully supported
/// marginal, read off the support graphs.
Classification classify(const MarkovSpec& spec);
GeneratorClassification classify_graph(const TransitionGraph& graph);

/// Shortest branching walk used by an edge slide: b = path[0], consecutive
/// path entries are edges, eta != path[n] and (path[n-1], eta) is an edge.
struct BranchData {
  std::size_t n = 0;
  std::vector<Symbol> path;
  Symbol eta = 0;

  friend bool operator==(const BranchData&, const BranchData&) = default;
};

/// Minimal n = 1 + distance from b to a vertex of out-degree >= 2. Ties are
/// broken by the lexicographically smallest path, then the smallest eta.
/// Throws PreconditionFailed when no branching vertex is reachable (the class
/// of b is periodic).
BranchData branch_data(const TransitionGraph& graph, Symbol b);

/// E_sub is special: no vertex is both the head of one E_sub edge and the tail
/// of another, and every endpoint lies in an aperiodic class. Throws
/// PreconditionFailed when E_sub is not a subset of the graph's edges.
bool is_special(const TransitionGraph& graph, const EdgeSet& subset);
/// The first reason E_sub fails to be special, if any.
std::optional<std::string> specialness_violation(const TransitionGraph& graph, const EdgeSet& subset);

struct SpecialSets {
  EdgeSet tree;                  // spanning tree of the class, as directed graph edges
  std::vector<Symbol> part0, part1;  // 2-colouring of the tree, root in part0
  EdgeSet first, second;         // tree edges part0 -> part1, part1 -> part0
};

/// Spanning tree of the class of a (BFS from its smallest vertex, neighbours
/// in increasing order), oriented along an existing edge (smaller endpoint
/// first when both directions exist), and its bipartition into two special
/// edge sets. A singleton class gives empty sets. Throws PreconditionFailed
/// when the class of a is periodic with more than one symbol.
SpecialSets special_sets(const TransitionGraph& graph, Symbol a);
SpecialSets special_sets(const MarkovSpec& spec, std::size_t generator, Symbol a);

}  // namespace mcoe
