#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mctsr/config.hpp"

namespace mctsr {

using NodeId = std::int64_t;
using MetaPromptId = std::int64_t;
using FeedbackId = std::int64_t;

enum class NodeKind { Root, Answer };
enum class NodeOrigin { RootOrigin, Initial, Refined };

std::string_view to_string(NodeKind k);
std::string_view to_string(NodeOrigin o);
NodeKind node_kind_from_string(std::string_view s);
NodeOrigin node_origin_from_string(std::string_view s);

// One vertex of the search tree. The root holds the user query, every other
// node a full assistant response. q stays absent until the node's first
// evaluation; a node whose evaluation failed simply keeps q absent and is
// never selected.
struct SearchNode {
  NodeId id = 0;
  NodeKind kind = NodeKind::Answer;
  NodeOrigin origin = NodeOrigin::Initial;
  std::string content;
  std::optional<NodeId> parent;
  std::vector<NodeId> children;
  std::optional<double> q;  // in [0,10] once set
  std::int64_t visits = 0;
  std::optional<FeedbackId> feedback;
  MetaPromptId meta_prompt_id = 0;

  bool evaluated() const { return q.has_value(); }
};

// Node ids are dense indexes, assigned monotonically and never reused.
class SearchTree {
 public:
  static constexpr NodeId kRoot = 0;

  SearchTree() = default;

  static SearchTree make(std::string query, MetaPromptId m0_id);
  // Rebuilds a tree from snapshot parts; validates before returning.
  static SearchTree restore(std::int64_t iteration, std::vector<SearchNode> nodes,
                            std::vector<NodeId> initial_children);

  const std::string& query() const;
  std::int64_t iteration() const { return iteration_; }
  void set_iteration(std::int64_t t) { iteration_ = t; }

  std::size_t node_count() const { return nodes_.size(); }
  bool contains(NodeId id) const { return id >= 0 && static_cast<std::size_t>(id) < nodes_.size(); }
  const SearchNode& node(NodeId id) const;
  const SearchNode& root() const { return node(kRoot); }
  const std::vector<NodeId>& initial_children() const { return initial_children_; }

  NodeId add_child(NodeId parent, std::string content, NodeOrigin origin, MetaPromptId prompt);
  void set_q(NodeId id, double q);
  void bump_visits(NodeId id);
  void set_feedback(NodeId id, FeedbackId fb);

  // Edges from the root; initial children are at depth 1.
  int depth(NodeId id) const;
  int max_depth() const;

  // Checks every structural invariant; throws InvalidStateError on the first
  // violation. Cheap enough to run after every mutation in tests.
  void validate() const;

 private:
  SearchNode& node_mut(NodeId id);

  std::vector<SearchNode> nodes_;
  std::vector<NodeId> initial_children_;
  std::int64_t iteration_ = 0;
};

// --- operations ------------------------------------------------------------

SearchTree new_tree(std::string_view query, MetaPromptId m0_id);

NodeId add_answer(SearchTree& tree, NodeId parent, std::string content, NodeOrigin origin,
                  MetaPromptId meta_prompt_id);

// q + c * sqrt(ln(parent_visits + 1) / (visits + epsilon))
double uct_score(double q, std::int64_t visits, std::int64_t parent_visits, double c,
                 double epsilon);

struct UctCandidate {
  NodeId id = 0;
  double q = 0.0;
  std::int64_t visits = 0;
  std::int64_t parent_visits = 0;
  double uct = 0.0;
};

// Candidate set: every evaluated answer node plus the root when it has a q.
// The root's parent visit count is the completed-iteration counter.
std::vector<UctCandidate> selection_candidates(const SearchTree& tree, double c, double epsilon);

// Argmax of uct over the candidates; ties go to the lowest node id.
NodeId select_next(const SearchTree& tree, const SearchConfig& config);

struct AncestorUpdate {
  NodeId id = 0;
  std::optional<double> q_before;
  double max_child_q = 0.0;
  double q_after = 0.0;
};

struct BackpropResult {
  NodeId evaluated = 0;
  double q_new = 0.0;
  std::vector<AncestorUpdate> updates;   // answer ancestors, parent upward
  std::vector<double> root_inputs;       // q of evaluated initial children
  double root_q = 0.0;
  std::vector<NodeId> visited;           // evaluated node and all ancestors
};

// Sets q on the evaluated node, applies Q'(p) = (Q(p) + max child Q) / 2 to
// each answer ancestor, recomputes the root as the mean over evaluated
// initial children, and increments visits along the whole path.
BackpropResult backpropagate(SearchTree& tree, NodeId evaluated, double q_new);

// Evaluated answer node with the highest q; ties go to the lowest node id.
NodeId best_answer(const SearchTree& tree);

}  // namespace mctsr
