#include "hgatelda/disease_dag.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "hgatelda/errors.hpp"
#include "line_reader.hpp"

namespace hgatelda {

namespace {

/// Describes one directed cycle among nodes Kahn's algorithm could not clear.
std::string describe_cycle(const std::vector<std::vector<std::size_t>>& parents,
                           const std::vector<bool>& stuck,
                           const std::vector<std::string>* names) {
  auto label = [&](std::size_t i) { return names ? (*names)[i] : std::to_string(i); };
  std::size_t start = 0;
  while (start < stuck.size() && !stuck[start]) ++start;
  std::vector<std::size_t> path;
  std::vector<int> pos(parents.size(), -1);
  std::size_t cur = start;
  while (pos[cur] < 0) {
    pos[cur] = static_cast<int>(path.size());
    path.push_back(cur);
    for (std::size_t p : parents[cur]) {
      if (stuck[p]) {
        cur = p;
        break;
      }
    }
  }
  std::string out;
  for (std::size_t i = static_cast<std::size_t>(pos[cur]); i < path.size(); ++i) {
    out += label(path[i]);
    out += " -> ";
  }
  out += label(cur);
  return out;
}

void verify_acyclic(const std::vector<std::vector<std::size_t>>& parents,
                    const std::vector<std::string>* names) {
  const std::size_t n = parents.size();
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& ps : parents)
    for (std::size_t p : ps) ++indegree[p];
  std::deque<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push_back(i);
  std::size_t cleared = 0;
  while (!ready.empty()) {
    const std::size_t c = ready.front();
    ready.pop_front();
    ++cleared;
    for (std::size_t p : parents[c]) {
      if (--indegree[p] == 0) ready.push_back(p);
    }
  }
  if (cleared != n) {
    std::vector<bool> stuck(n);
    for (std::size_t i = 0; i < n; ++i) stuck[i] = indegree[i] > 0;
    throw InputError("disease DAG contains a cycle: " + describe_cycle(parents, stuck, names));
  }
}

std::vector<std::vector<std::size_t>> build_parent_lists(
    std::size_t node_count, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::vector<std::size_t>> parents(node_count);
  for (const auto& [child, parent] : edges) {
    if (child >= node_count || parent >= node_count) {
      throw std::invalid_argument("DiseaseDag: edge endpoint out of range");
    }
    // duplicate edges collapse
    if (std::find(parents[child].begin(), parents[child].end(), parent) ==
        parents[child].end()) {
      parents[child].push_back(parent);
    }
  }
  return parents;
}

}  // namespace

DiseaseDag::DiseaseDag(std::size_t node_count,
                       const std::vector<std::pair<std::size_t, std::size_t>>& child_parent_edges)
    : parents_(build_parent_lists(node_count, child_parent_edges)), children_(node_count) {
  verify_acyclic(parents_, nullptr);
  for (std::size_t c = 0; c < node_count; ++c)
    for (std::size_t p : parents_[c]) children_[p].push_back(c);
}

std::vector<std::size_t> DiseaseDag::ancestors(std::size_t d) const {
  if (d >= node_count()) throw std::invalid_argument("ancestors: unknown node");
  std::vector<bool> seen(node_count(), false);
  std::deque<std::size_t> frontier{d};
  seen[d] = true;
  std::vector<std::size_t> out;
  while (!frontier.empty()) {
    const std::size_t cur = frontier.front();
    frontier.pop_front();
    out.push_back(cur);
    for (std::size_t p : parents_[cur]) {
      if (!seen[p]) {
        seen[p] = true;
        frontier.push_back(p);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

DiseaseDag load_dag(const std::string& path, const EntityRegistry& registry, bool skip_header) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& line : detail::read_data_lines(path, skip_header)) {
    const auto fields = detail::split_tabs(line.text);
    if (fields.size() != 2) {
      throw InputError("DAG: expected 2 tab-separated columns, got " +
                       std::to_string(fields.size()) + " at " + path + ":" +
                       std::to_string(line.number));
    }
    const auto child = registry.disease_index(fields[0]);
    if (!child) {
      throw InputError("DAG: unknown disease ID '" + fields[0] + "' at " + path + ":" +
                       std::to_string(line.number));
    }
    const auto parent = registry.disease_index(fields[1]);
    if (!parent) {
      throw InputError("DAG: unknown disease ID '" + fields[1] + "' at " + path + ":" +
                       std::to_string(line.number));
    }
    edges.emplace_back(*child, *parent);
  }
  // validate here so cycle errors name disease IDs, not bare indices
  verify_acyclic(build_parent_lists(registry.disease_count(), edges), &registry.diseases());
  return DiseaseDag(registry.disease_count(), edges);
}

}  // namespace hgatelda
