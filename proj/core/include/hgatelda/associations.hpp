#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hgatelda/matrix.hpp"
#include "hgatelda/registry.hpp"

namespace hgatelda {

/// Orientation of a binary association matrix.
///   LD: lncRNA x disease, ML: lncRNA x miRNA, MD: disease x miRNA.
enum class AssociationRole { LD, ML, MD };

const char* role_name(AssociationRole role);

/// Binary interaction matrix whose axes are bound to registry roles. Entries
/// are exactly 0 or 1.
class AssociationMatrix {
 public:
  AssociationMatrix(AssociationRole role, std::size_t rows, std::size_t cols)
      : role_(role), values_(rows, cols) {}

  AssociationRole role() const { return role_; }
  std::size_t rows() const { return values_.rows(); }
  std::size_t cols() const { return values_.cols(); }

  bool get(std::size_t i, std::size_t j) const { return values_(i, j) != 0.0; }
  void set(std::size_t i, std::size_t j, bool on) { values_(i, j) = on ? 1.0 : 0.0; }

  /// The 0/1 entries as a dense matrix, directly usable in products.
  const Matrix& dense() const { return values_; }

  std::size_t ones() const;
  std::vector<std::pair<std::size_t, std::size_t>> one_entries() const;
  std::vector<std::pair<std::size_t, std::size_t>> zero_entries() const;

  /// Copy with the given entries cleared; used for fold masking.
  AssociationMatrix without(std::span<const std::pair<std::size_t, std::size_t>> pairs) const;

  /// Distinct-pair collapses observed while loading (0 for built matrices).
  std::size_t duplicate_count = 0;

 private:
  AssociationRole role_;
  Matrix values_;
};

/// Parses `source_id<TAB>target_id` lines into a binary matrix. The role
/// fixes which registry axes the two columns refer to. Repeated pairs
/// collapse to a single 1 and are counted in duplicate_count; unknown IDs and
/// malformed lines raise InputError naming the ID/line.
AssociationMatrix load_associations(const std::string& path, AssociationRole role,
                                    const EntityRegistry& registry, bool skip_header = false);

}  // namespace hgatelda
