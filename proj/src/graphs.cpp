#include "mcoe/graphs.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <string>

#include "mcoe/error.hpp"

namespace mcoe {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

ClassPartition partition_from(UnionFind& uf, std::size_t n) {
  ClassPartition out;
  out.class_of.resize(n);
  std::map<std::size_t, std::size_t> id;
  for (std::size_t a = 0; a < n; ++a) {
    auto [it, inserted] = id.emplace(uf.find(a), out.classes.size());
    if (inserted) out.classes.emplace_back();
    out.class_of[a] = it->second;
    out.classes[it->second].push_back(static_cast<Symbol>(a));
  }
  return out;
}

}  // namespace

TransitionGraph::TransitionGraph(std::size_t vertex_count, const EdgeSet& edges)
    : edges_(edges), out_(vertex_count), in_(vertex_count) {
  for (auto [a, b] : edges_) {
    if (a >= vertex_count || b >= vertex_count) throw InvalidInput("edge endpoint outside the vertex set");
    out_[a].push_back(b);
    in_[b].push_back(a);
  }
  for (auto& v : in_) std::sort(v.begin(), v.end());
}

TransitionGraph support_graph(const Matrix& kernel, const std::vector<Rational>& pi) {
  EdgeSet edges;
  for (std::size_t a = 0; a < kernel.size(); ++a) {
    for (std::size_t b = 0; b < kernel.size(); ++b) {
      if (pi[a] * kernel(a, b) > 0) edges.emplace(a, b);
    }
  }
  return TransitionGraph(kernel.size(), edges);
}

TransitionGraph support_edges(const MarkovSpec& spec, std::size_t generator) {
  if (generator >= spec.rank()) throw InvalidInput("unknown generator");
  return support_graph(spec.kernels[generator], spec.pi);
}

ClassPartition classes(const TransitionGraph& graph) { return joint_classes({graph}); }

ClassPartition joint_classes(const std::vector<TransitionGraph>& graphs) {
  const std::size_t n = graphs.empty() ? 0 : graphs.front().vertex_count();
  UnionFind uf(n);
  for (const auto& g : graphs) {
    for (auto [a, b] : g.edges()) uf.unite(a, b);
  }
  return partition_from(uf, n);
}

bool is_periodic_class(const TransitionGraph& graph, const std::vector<Symbol>& cls) {
  return std::all_of(cls.begin(), cls.end(),
                     [&](Symbol a) { return graph.in_degree(a) == 1 && graph.out_degree(a) == 1; });
}

GeneratorClassification classify_graph(const TransitionGraph& graph) {
  GeneratorClassification out;
  const auto partition = classes(graph);
  out.classes = partition.classes;
  for (const auto& cls : partition.classes) {
    if (is_periodic_class(graph, cls)) out.periodic_classes.push_back(cls);
  }
  out.ergodic = partition.classes.size() == 1;
  out.free = out.periodic_classes.empty();
  return out;
}

bool Classification::generator_ergodic() const {
  return std::all_of(per_generator.begin(), per_generator.end(),
                     [](const GeneratorClassification& g) { return g.ergodic && g.free; });
}

Classification classify(const MarkovSpec& spec) {
  Classification out;
  std::vector<TransitionGraph> graphs;
  for (std::size_t s = 0; s < spec.rank(); ++s) {
    graphs.push_back(support_edges(spec, s));
    out.per_generator.push_back(classify_graph(graphs.back()));
  }
  out.ergodic = joint_classes(graphs).classes.size() == 1;
  bool some_aperiodic = false;
  for (const auto& g : out.per_generator) some_aperiodic |= g.periodic_classes.size() < g.classes.size();
  out.properly_ergodic = out.ergodic && some_aperiodic;
  return out;
}

BranchData branch_data(const TransitionGraph& graph, Symbol b) {
  const std::size_t n = graph.vertex_count();
  if (b >= n) throw InvalidInput("vertex outside the graph");
  constexpr std::size_t unreachable = static_cast<std::size_t>(-1);
  // Distance from every vertex to the nearest vertex of out-degree >= 2.
  std::vector<std::size_t> dist(n, unreachable);
  std::deque<Symbol> queue;
  for (Symbol v = 0; v < n; ++v) {
    if (graph.out_degree(v) >= 2) {
      dist[v] = 0;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    const Symbol v = queue.front();
    queue.pop_front();
    for (Symbol w : graph.predecessors(v)) {
      if (dist[w] == unreachable) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  if (dist[b] == unreachable) {
    throw PreconditionFailed("no branching vertex reachable from " + std::to_string(b) + ": class is periodic");
  }

  BranchData out;
  out.n = dist[b] + 1;
  out.path.push_back(b);
  Symbol v = b;
  while (dist[v] > 0) {
    for (Symbol w : graph.successors(v)) {
      if (dist[w] == dist[v] - 1) {
        v = w;
        break;
      }
    }
    out.path.push_back(v);
  }
  const auto& branch = graph.successors(v);
  out.path.push_back(branch[0]);
  out.eta = branch[1];
  return out;
}

std::optional<std::string> specialness_violation(const TransitionGraph& graph, const EdgeSet& subset) {
  std::set<Symbol> heads, tails;
  for (auto [a, b] : subset) {
    if (!graph.has_edge(a, b)) {
      throw PreconditionFailed("edge (" + std::to_string(a) + "," + std::to_string(b) + ") is not a support edge");
    }
    tails.insert(a);
    heads.insert(b);
  }
  for (Symbol v : tails) {
    if (heads.contains(v)) {
      return "specialness violated: vertex " + std::to_string(v) + " has both an incoming and an outgoing edge";
    }
  }
  const auto partition = classes(graph);
  for (auto [a, b] : subset) {
    for (Symbol v : {a, b}) {
      if (is_periodic_class(graph, partition.class_containing(v))) {
        return "specialness violated: class of vertex " + std::to_string(v) + " is periodic";
      }
    }
  }
  return std::nullopt;
}

bool is_special(const TransitionGraph& graph, const EdgeSet& subset) {
  return !specialness_violation(graph, subset).has_value();
}

SpecialSets special_sets(const TransitionGraph& graph, Symbol a) {
  const auto partition = classes(graph);
  const auto& cls = partition.class_containing(a);
  if (cls.size() > 1 && is_periodic_class(graph, cls)) throw PreconditionFailed("class of " + std::to_string(a) + " is periodic");

  SpecialSets out;
  std::map<Symbol, int> colour{{cls.front(), 0}};
  std::deque<Symbol> queue{cls.front()};
  while (!queue.empty()) {
    const Symbol v = queue.front();
    queue.pop_front();
    std::set<Symbol> neighbours(graph.successors(v).begin(), graph.successors(v).end());
    neighbours.insert(graph.predecessors(v).begin(), graph.predecessors(v).end());
    for (Symbol w : neighbours) {
      if (w == v || colour.contains(w)) continue;
      colour[w] = 1 - colour[v];
      queue.push_back(w);
      const Symbol lo = std::min(v, w), hi = std::max(v, w);
      out.tree.insert(graph.has_edge(lo, hi) ? Edge{lo, hi} : Edge{hi, lo});
    }
  }
  for (auto [v, c] : colour) (c == 0 ? out.part0 : out.part1).push_back(v);
  for (auto e : out.tree) (colour[e.first] == 0 ? out.first : out.second).insert(e);
  return out;
}

SpecialSets special_sets(const MarkovSpec& spec, std::size_t generator, Symbol a) {
  return special_sets(support_edges(spec, generator), a);
}

}  // namespace mcoe
