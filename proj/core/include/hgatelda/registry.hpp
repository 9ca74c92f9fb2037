#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace hgatelda {

/// Stable index maps for the three entity axes. Indices are assigned in file
/// order and never change for the lifetime of a run; counts are conventionally
/// p (lncRNAs), q (diseases), r (miRNAs).
class EntityRegistry {
 public:
  EntityRegistry(std::vector<std::string> lncrnas, std::vector<std::string> diseases,
                 std::vector<std::string> mirnas);

  const std::vector<std::string>& lncrnas() const { return lncrnas_; }
  const std::vector<std::string>& diseases() const { return diseases_; }
  const std::vector<std::string>& mirnas() const { return mirnas_; }

  std::size_t lncrna_count() const { return lncrnas_.size(); }
  std::size_t disease_count() const { return diseases_.size(); }
  std::size_t mirna_count() const { return mirnas_.size(); }

  std::optional<std::size_t> lncrna_index(const std::string& id) const;
  std::optional<std::size_t> disease_index(const std::string& id) const;
  std::optional<std::size_t> mirna_index(const std::string& id) const;

 private:
  std::vector<std::string> lncrnas_, diseases_, mirnas_;
  std::unordered_map<std::string, std::size_t> lncrna_idx_, disease_idx_, mirna_idx_;
};

/// Loads the three entity lists (one ID per line, UTF-8, '#' comments
/// ignored, IDs whitespace-trimmed and case-sensitive). Duplicate or empty
/// inputs raise InputError naming the offending ID and line.
EntityRegistry load_registry(const std::string& lncrna_path, const std::string& disease_path,
                             const std::string& mirna_path, bool skip_header = false);

}  // namespace hgatelda
