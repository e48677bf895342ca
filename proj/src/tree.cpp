#include "mctsr/tree.hpp"

#include <algorithm>
#include <cmath>

#include "mctsr/errors.hpp"
#include "mctsr/util.hpp"

namespace mctsr {

std::string_view to_string(NodeKind k) {
  return k == NodeKind::Root ? "root" : "answer";
}

std::string_view to_string(NodeOrigin o) {
  switch (o) {
    case NodeOrigin::RootOrigin: return "root";
    case NodeOrigin::Initial: return "initial";
    case NodeOrigin::Refined: return "refined";
  }
  return "initial";
}

NodeKind node_kind_from_string(std::string_view s) {
  if (s == "root") return NodeKind::Root;
  if (s == "answer") return NodeKind::Answer;
  throw ParseError("unknown node kind: " + std::string(s));
}

NodeOrigin node_origin_from_string(std::string_view s) {
  if (s == "root") return NodeOrigin::RootOrigin;
  if (s == "initial") return NodeOrigin::Initial;
  if (s == "refined") return NodeOrigin::Refined;
  throw ParseError("unknown node origin: " + std::string(s));
}

SearchTree SearchTree::make(std::string query, MetaPromptId m0_id) {
  SearchTree tree;
  SearchNode root;
  root.id = kRoot;
  root.kind = NodeKind::Root;
  root.origin = NodeOrigin::RootOrigin;
  root.content = std::move(query);
  root.meta_prompt_id = m0_id;
  tree.nodes_.push_back(std::move(root));
  return tree;
}

SearchTree SearchTree::restore(std::int64_t iteration, std::vector<SearchNode> nodes,
                               std::vector<NodeId> initial_children) {
  SearchTree tree;
  tree.iteration_ = iteration;
  tree.nodes_ = std::move(nodes);
  tree.initial_children_ = std::move(initial_children);
  tree.validate();
  return tree;
}

const std::string& SearchTree::query() const { return root().content; }

const SearchNode& SearchTree::node(NodeId id) const {
  if (!contains(id)) throw NotFoundError("no node with id " + std::to_string(id));
  return nodes_[static_cast<std::size_t>(id)];
}

SearchNode& SearchTree::node_mut(NodeId id) {
  if (!contains(id)) throw NotFoundError("no node with id " + std::to_string(id));
  return nodes_[static_cast<std::size_t>(id)];
}

NodeId SearchTree::add_child(NodeId parent, std::string content, NodeOrigin origin,
                             MetaPromptId prompt) {
  SearchNode& p = node_mut(parent);
  if (origin == NodeOrigin::RootOrigin)
    throw InvalidArgumentError("add_child: cannot add a second root");
  if (origin == NodeOrigin::Initial && p.kind != NodeKind::Root)
    throw InvalidStateError("add_child: initial nodes must hang off the root");
  if (origin == NodeOrigin::Refined && p.kind != NodeKind::Answer)
    throw InvalidStateError("add_child: refined nodes must hang off an answer node");

  SearchNode child;
  child.id = static_cast<NodeId>(nodes_.size());
  child.kind = NodeKind::Answer;
  child.origin = origin;
  child.content = std::move(content);
  child.parent = parent;
  child.meta_prompt_id = prompt;

  p.children.push_back(child.id);
  if (origin == NodeOrigin::Initial) initial_children_.push_back(child.id);
  nodes_.push_back(std::move(child));
  return nodes_.back().id;
}

void SearchTree::set_q(NodeId id, double q) {
  if (!(q >= 0.0 && q <= 10.0))
    throw InvalidArgumentError("set_q: q must be in [0,10], got " + std::to_string(q));
  node_mut(id).q = q;
}

void SearchTree::bump_visits(NodeId id) { ++node_mut(id).visits; }

void SearchTree::set_feedback(NodeId id, FeedbackId fb) { node_mut(id).feedback = fb; }

int SearchTree::depth(NodeId id) const {
  int d = 0;
  const SearchNode* n = &node(id);
  while (n->parent) {
    n = &node(*n->parent);
    ++d;
  }
  return d;
}

int SearchTree::max_depth() const {
  int best = 0;
  for (const auto& n : nodes_) best = std::max(best, depth(n.id));
  return best;
}

void SearchTree::validate() const {
  if (nodes_.empty()) throw InvalidStateError("tree: no nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const SearchNode& n = nodes_[i];
    if (n.id != static_cast<NodeId>(i))
      throw InvalidStateError("tree: node id does not match its slot");
    if (n.kind == NodeKind::Root) {
      if (n.id != kRoot) throw InvalidStateError("tree: root must be node 0");
      if (n.origin != NodeOrigin::RootOrigin || n.parent)
        throw InvalidStateError("tree: malformed root node");
    } else {
      if (!n.parent) throw InvalidStateError("tree: answer node without parent");
      const SearchNode& p = node(*n.parent);
      const auto& siblings = p.children;
      if (std::count(siblings.begin(), siblings.end(), n.id) != 1)
        throw InvalidStateError("tree: parent/children lists inconsistent");
      if (n.origin == NodeOrigin::Initial && p.kind != NodeKind::Root)
        throw InvalidStateError("tree: initial node not under root");
      if (n.origin == NodeOrigin::Refined && p.kind != NodeKind::Answer)
        throw InvalidStateError("tree: refined node not under an answer node");
      if (n.origin == NodeOrigin::RootOrigin)
        throw InvalidStateError("tree: second root origin");
    }
    for (NodeId c : n.children) {
      const SearchNode& child = node(c);
      if (!child.parent || *child.parent != n.id)
        throw InvalidStateError("tree: child does not point back to parent");
    }
    if (n.q && !(*n.q >= 0.0 && *n.q <= 10.0))
      throw InvalidStateError("tree: q out of [0,10]");
    if (n.visits < 0) throw InvalidStateError("tree: negative visits");
  }
  if (initial_children_ != root().children)
    throw InvalidStateError("tree: initial_children differs from root children");
}

SearchTree new_tree(std::string_view query, MetaPromptId m0_id) {
  if (trim(query).empty()) throw InvalidArgumentError("new_tree: query must be non-empty");
  return SearchTree::make(std::string(query), m0_id);
}

NodeId add_answer(SearchTree& tree, NodeId parent, std::string content, NodeOrigin origin,
                  MetaPromptId meta_prompt_id) {
  return tree.add_child(parent, std::move(content), origin, meta_prompt_id);
}

double uct_score(double q, std::int64_t visits, std::int64_t parent_visits, double c,
                 double epsilon) {
  return q + c * std::sqrt(std::log(static_cast<double>(parent_visits) + 1.0) /
                           (static_cast<double>(visits) + epsilon));
}

std::vector<UctCandidate> selection_candidates(const SearchTree& tree, double c, double epsilon) {
  std::vector<UctCandidate> out;
  for (NodeId id = 0; id < static_cast<NodeId>(tree.node_count()); ++id) {
    const SearchNode& n = tree.node(id);
    if (!n.evaluated()) continue;  // unevaluated and failed nodes never compete
    UctCandidate cand;
    cand.id = id;
    cand.q = *n.q;
    cand.visits = n.visits;
    cand.parent_visits = n.parent ? tree.node(*n.parent).visits : tree.iteration();
    cand.uct = uct_score(cand.q, cand.visits, cand.parent_visits, c, epsilon);
    out.push_back(cand);
  }
  return out;
}

NodeId select_next(const SearchTree& tree, const SearchConfig& config) {
  const auto candidates = selection_candidates(tree, config.c, config.epsilon);
  if (candidates.empty())
    throw InvalidStateError("select_next: no evaluated node to select from");
  const UctCandidate* best = &candidates.front();
  for (const auto& cand : candidates) {
    if (cand.uct > best->uct) best = &cand;  // ties keep the lowest id
  }
  return best->id;
}

BackpropResult backpropagate(SearchTree& tree, NodeId evaluated, double q_new) {
  const SearchNode& target = tree.node(evaluated);
  if (target.kind == NodeKind::Root)
    throw InvalidArgumentError("backpropagate: cannot evaluate the root directly");
  if (!(q_new >= 0.0 && q_new <= 10.0))
    throw InvalidArgumentError("backpropagate: q must be in [0,10]");

  BackpropResult result;
  result.evaluated = evaluated;
  result.q_new = q_new;
  tree.set_q(evaluated, q_new);

  // Answer ancestors, parent upward, each folded toward its best child.
  NodeId cursor = *target.parent;
  while (tree.node(cursor).kind == NodeKind::Answer) {
    const SearchNode& p = tree.node(cursor);
    double max_child = 0.0;
    bool any = false;
    for (NodeId c : p.children) {
      const SearchNode& child = tree.node(c);
      if (child.evaluated() && (!any || *child.q > max_child)) {
        max_child = *child.q;
        any = true;
      }
    }
    AncestorUpdate update;
    update.id = cursor;
    update.q_before = p.q;
    update.max_child_q = max_child;
    update.q_after = p.q ? 0.5 * (*p.q + max_child) : max_child;
    tree.set_q(cursor, update.q_after);
    result.updates.push_back(update);
    cursor = *p.parent;
  }

  // Root: mean over evaluated initial children.
  double sum = 0.0;
  for (NodeId c : tree.initial_children()) {
    const SearchNode& child = tree.node(c);
    if (child.evaluated()) {
      result.root_inputs.push_back(*child.q);
      sum += *child.q;
    }
  }
  result.root_q = sum / static_cast<double>(result.root_inputs.size());
  tree.set_q(SearchTree::kRoot, result.root_q);

  NodeId walk = evaluated;
  while (true) {
    tree.bump_visits(walk);
    result.visited.push_back(walk);
    const auto& parent = tree.node(walk).parent;
    if (!parent) break;
    walk = *parent;
  }
  return result;
}

NodeId best_answer(const SearchTree& tree) {
  const SearchNode* best = nullptr;
  for (NodeId id = 1; id < static_cast<NodeId>(tree.node_count()); ++id) {
    const SearchNode& n = tree.node(id);
    if (!n.evaluated()) continue;
    if (!best || *n.q > *best->q) best = &n;
  }
  if (!best) throw InvalidStateError("best_answer: no evaluated answer node");
  return best->id;
}

}  // namespace mctsr
