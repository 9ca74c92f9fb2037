#include "hgatelda/registry.hpp"

#include "hgatelda/errors.hpp"
#include "line_reader.hpp"

namespace hgatelda {

namespace {

std::unordered_map<std::string, std::size_t> index_of(const std::vector<std::string>& ids,
                                                      const char* axis) {
  std::unordered_map<std::string, std::size_t> idx;
  idx.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!idx.emplace(ids[i], i).second) {
      throw InputError(std::string(axis) + ": duplicate ID '" + ids[i] + "'");
    }
  }
  return idx;
}

std::vector<std::string> load_id_list(const std::string& path, const char* axis,
                                      bool skip_header) {
  auto lines = detail::read_data_lines(path, skip_header);
  if (lines.empty()) throw InputError(std::string(axis) + ": no IDs in " + path);
  std::vector<std::string> ids;
  ids.reserve(lines.size());
  std::unordered_map<std::string, std::size_t> seen;
  for (const auto& line : lines) {
    auto [it, fresh] = seen.emplace(line.text, line.number);
    if (!fresh) {
      throw InputError(std::string(axis) + ": duplicate ID '" + line.text + "' at " + path + ":" +
                       std::to_string(line.number) + " (first at line " +
                       std::to_string(it->second) + ")");
    }
    ids.push_back(line.text);
  }
  return ids;
}

}  // namespace

EntityRegistry::EntityRegistry(std::vector<std::string> lncrnas, std::vector<std::string> diseases,
                               std::vector<std::string> mirnas)
    : lncrnas_(std::move(lncrnas)),
      diseases_(std::move(diseases)),
      mirnas_(std::move(mirnas)),
      lncrna_idx_(index_of(lncrnas_, "lncrna")),
      disease_idx_(index_of(diseases_, "disease")),
      mirna_idx_(index_of(mirnas_, "mirna")) {}

namespace {
std::optional<std::size_t> lookup(const std::unordered_map<std::string, std::size_t>& idx,
                                  const std::string& id) {
  auto it = idx.find(id);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}
}  // namespace

std::optional<std::size_t> EntityRegistry::lncrna_index(const std::string& id) const {
  return lookup(lncrna_idx_, id);
}
std::optional<std::size_t> EntityRegistry::disease_index(const std::string& id) const {
  return lookup(disease_idx_, id);
}
std::optional<std::size_t> EntityRegistry::mirna_index(const std::string& id) const {
  return lookup(mirna_idx_, id);
}

EntityRegistry load_registry(const std::string& lncrna_path, const std::string& disease_path,
                             const std::string& mirna_path, bool skip_header) {
  return EntityRegistry(load_id_list(lncrna_path, "lncrna", skip_header),
                        load_id_list(disease_path, "disease", skip_header),
                        load_id_list(mirna_path, "mirna", skip_header));
}

}  // namespace hgatelda
