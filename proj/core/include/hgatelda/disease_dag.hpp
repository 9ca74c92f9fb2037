#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hgatelda/registry.hpp"

namespace hgatelda {

/// Disease ontology DAG over registry disease indices; edges run child ->
/// parent. Diseases absent from the edge file stay as isolated nodes so the
/// pipeline never drops registry entities. Acyclicity is verified at
/// construction.
class DiseaseDag {
 public:
  /// Builds from child->parent index pairs over n nodes; throws InputError
  /// listing one cycle if the edges are not acyclic.
  DiseaseDag(std::size_t node_count,
             const std::vector<std::pair<std::size_t, std::size_t>>& child_parent_edges);

  std::size_t node_count() const { return parents_.size(); }
  const std::vector<std::size_t>& parents(std::size_t node) const { return parents_[node]; }
  const std::vector<std::size_t>& children(std::size_t node) const { return children_[node]; }

  /// Reflexive-transitive parent closure of d (always contains d), sorted by
  /// node index. Throws on an out-of-range node.
  std::vector<std::size_t> ancestors(std::size_t d) const;

 private:
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::vector<std::size_t>> children_;
};

/// Parses `child_id<TAB>parent_id` lines over registry diseases.
DiseaseDag load_dag(const std::string& path, const EntityRegistry& registry,
                    bool skip_header = false);

}  // namespace hgatelda
