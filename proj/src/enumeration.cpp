#include "enumeration.hpp"

#include <algorithm>
#include <queue>

#include "kembed/error.hpp"

namespace kembed {

bool canonical_before(const TensorEntry& a, const TensorEntry& b) {
  if (a.value != b.value) return a.value > b.value;
  if (a.u.size() != b.u.size()) return a.u.size() < b.u.size();
  if (a.u != b.u) return a.u < b.u;
  return a.eigen_indices < b.eigen_indices;
}

namespace detail {
namespace {

// Coordinates as (index j, eigen-index a), sorted by j.
using Coords = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

struct LaterFirst {
  bool operator()(const TensorEntry& a, const TensorEntry& b) const {
    return canonical_before(b, a);
  }
};

// Best-first driver over a tree whose children are canonically after their
// parent. Pops come out in canonical order, so the first n pops are the
// answer. Floating-point rounding can in principle break the parent/child
// order; when that is observed the search keeps popping until the frontier
// falls clearly below the n-th value and sorts at the end.
template <class Node, class Expand>
std::vector<TensorEntry> best_first(std::vector<Node> roots, std::size_t n, Expand expand) {
  struct Item {
    TensorEntry entry;
    Node node;
  };
  auto worse = [](const Item& a, const Item& b) { return canonical_before(b.entry, a.entry); };
  std::priority_queue<Item, std::vector<Item>, decltype(worse)> frontier(worse);
  for (auto& r : roots) {
    TensorEntry e = r.materialize();
    frontier.push(Item{std::move(e), std::move(r)});
  }

  std::vector<TensorEntry> out;
  if (n == 0) return out;
  bool order_broken = false;
  std::priority_queue<TensorEntry, std::vector<TensorEntry>, LaterFirst> best;  // top = n-th
  std::size_t pops = 0;
  while (!frontier.empty()) {
    if (out.size() >= n) {
      if (!order_broken) break;
      if (frontier.top().entry.value < best.top().value * (1.0 - 1e-12)) break;
    }
    require(++pops <= n + kMaxRoots, Errc::not_enumerable,
            "enumeration: frontier does not settle (values tie indefinitely near the cutoff)");
    Item item = frontier.top();
    frontier.pop();
    for (Node& child : expand(item.node)) {
      TensorEntry e = child.materialize();
      if (canonical_before(e, item.entry)) order_broken = true;
      frontier.push(Item{std::move(e), std::move(child)});
    }
    best.push(item.entry);
    if (best.size() > n) best.pop();
    out.push_back(std::move(item.entry));
  }
  std::sort(out.begin(), out.end(), canonical_before);
  if (out.size() > n) out.resize(n);
  return out;
}

}  // namespace

std::vector<TensorEntry> top_products(const ProductSearch& search, std::size_t n) {
  const auto& large = search.large;
  const std::size_t r = search.eigen_count;
  require(r >= 1, Errc::invalid_argument, "enumeration: need at least one eigenvalue");

  auto is_large = [&](std::uint32_t j) { return std::binary_search(large.begin(), large.end(), j); };
  auto next_rest = [&](std::uint32_t j) {
    do ++j;
    while (is_large(j));
    return j;
  };

  struct Node {
    const ProductSearch* search;
    Coords large_part;
    Coords rest_part;

    TensorEntry materialize() const {
      Coords all;
      all.reserve(large_part.size() + rest_part.size());
      std::merge(large_part.begin(), large_part.end(), rest_part.begin(), rest_part.end(),
                 std::back_inserter(all));
      std::vector<std::uint32_t> elems, eig;
      for (auto [j, a] : all) {
        elems.push_back(j);
        eig.push_back(a);
      }
      TensorEntry e{Subset(std::move(elems)), std::move(eig), 0.0};
      e.value = search->value(e.u, e.eigen_indices);
      return e;
    }
  };

  // Roots: every assignment of {absent, 1..r} to the large indices that
  // stays inside the support of gamma.
  std::size_t root_count = 1;
  for (std::size_t k = 0; k < large.size(); ++k) {
    require(root_count <= kMaxRoots / (r + 1), Errc::not_enumerable,
            "enumeration: too many large indices to enumerate exhaustively");
    root_count *= r + 1;
  }
  std::vector<Node> roots;
  std::vector<std::uint32_t> digit(large.size(), 0);
  for (std::size_t idx = 0; idx < root_count; ++idx) {
    Node node{&search, {}, {}};
    bool supported = true;
    for (std::size_t k = 0; k < large.size(); ++k) {
      if (digit[k] == 0) continue;
      if (search.factor(large[k]) <= 0.0) supported = false;
      node.large_part.emplace_back(large[k], digit[k]);
    }
    if (supported) roots.push_back(std::move(node));
    for (std::size_t k = large.size(); k-- > 0;) {
      if (++digit[k] <= r) break;
      digit[k] = 0;
    }
  }

  auto expand = [&](const Node& node) {
    std::vector<Node> children;
    const std::uint32_t last = node.rest_part.empty() ? 0 : node.rest_part.back().first;
    const std::uint32_t append_j = next_rest(last);
    if (search.factor(append_j) > 0.0) {
      Node c = node;
      c.rest_part.emplace_back(append_j, 1);
      children.push_back(std::move(c));
    }
    if (!node.rest_part.empty()) {
      const auto [j, a] = node.rest_part.back();
      if (a < r) {
        Node c = node;
        c.rest_part.back().second = a + 1;
        children.push_back(std::move(c));
      }
      if (a == 1) {
        const std::uint32_t shifted = next_rest(j);
        if (search.factor(shifted) > 0.0) {
          Node c = node;
          c.rest_part.back().first = shifted;
          children.push_back(std::move(c));
        }
      }
    }
    return children;
  };

  return best_first(std::move(roots), n, expand);
}

std::vector<TensorEntry> top_explicit(const std::vector<std::pair<Subset, double>>& entries,
                                      std::size_t eigen_count, const ValueFn& value,
                                      std::size_t n) {
  require(eigen_count >= 1, Errc::invalid_argument, "enumeration: need at least one eigenvalue");

  struct Node {
    const ValueFn* value;
    const Subset* u;
    std::vector<std::uint32_t> eig;
    std::size_t pos;  // coordinates at or after pos may still be incremented

    TensorEntry materialize() const {
      TensorEntry e{*u, eig, 0.0};
      e.value = (*value)(e.u, e.eigen_indices);
      return e;
    }
  };

  std::vector<Node> roots;
  for (const auto& [u, gamma] : entries) {
    (void)gamma;
    roots.push_back(Node{&value, &u, std::vector<std::uint32_t>(u.size(), 1), 0});
  }
  auto expand = [eigen_count](const Node& node) {
    std::vector<Node> children;
    for (std::size_t i = node.pos; i < node.eig.size(); ++i) {
      if (node.eig[i] >= eigen_count) continue;
      Node c = node;
      ++c.eig[i];
      c.pos = i;
      children.push_back(std::move(c));
    }
    return children;
  };
  return best_first(std::move(roots), n, expand);
}

}  // namespace detail
}  // namespace kembed
