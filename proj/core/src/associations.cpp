#include "hgatelda/associations.hpp"

#include "hgatelda/errors.hpp"
#include "line_reader.hpp"

namespace hgatelda {

const char* role_name(AssociationRole role) {
  switch (role) {
    case AssociationRole::LD: return "LD";
    case AssociationRole::ML: return "ML";
    case AssociationRole::MD: return "MD";
  }
  return "?";
}

std::size_t AssociationMatrix::ones() const {
  std::size_t n = 0;
  for (double v : values_.flat()) n += (v != 0.0);
  return n;
}

std::vector<std::pair<std::size_t, std::size_t>> AssociationMatrix::one_entries() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j)
      if (get(i, j)) out.emplace_back(i, j);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> AssociationMatrix::zero_entries() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j)
      if (!get(i, j)) out.emplace_back(i, j);
  return out;
}

AssociationMatrix AssociationMatrix::without(
    std::span<const std::pair<std::size_t, std::size_t>> pairs) const {
  AssociationMatrix copy = *this;
  copy.duplicate_count = 0;
  for (const auto& [i, j] : pairs) copy.set(i, j, false);
  return copy;
}

namespace {

struct AxisLookup {
  const char* name;
  std::optional<std::size_t> (*find)(const EntityRegistry&, const std::string&);
  std::size_t count;
};

std::optional<std::size_t> find_lnc(const EntityRegistry& r, const std::string& id) {
  return r.lncrna_index(id);
}
std::optional<std::size_t> find_dis(const EntityRegistry& r, const std::string& id) {
  return r.disease_index(id);
}
std::optional<std::size_t> find_mir(const EntityRegistry& r, const std::string& id) {
  return r.mirna_index(id);
}

}  // namespace

AssociationMatrix load_associations(const std::string& path, AssociationRole role,
                                    const EntityRegistry& registry, bool skip_header) {
  AxisLookup row_axis, col_axis;
  switch (role) {
    case AssociationRole::LD:
      row_axis = {"lncrna", find_lnc, registry.lncrna_count()};
      col_axis = {"disease", find_dis, registry.disease_count()};
      break;
    case AssociationRole::ML:
      row_axis = {"lncrna", find_lnc, registry.lncrna_count()};
      col_axis = {"mirna", find_mir, registry.mirna_count()};
      break;
    case AssociationRole::MD:
      row_axis = {"disease", find_dis, registry.disease_count()};
      col_axis = {"mirna", find_mir, registry.mirna_count()};
      break;
    default:
      throw std::invalid_argument("load_associations: bad role");
  }

  AssociationMatrix m(role, row_axis.count, col_axis.count);
  for (const auto& line : detail::read_data_lines(path, skip_header)) {
    const auto fields = detail::split_tabs(line.text);
    if (fields.size() != 2) {
      throw InputError(std::string(role_name(role)) + ": expected 2 tab-separated columns, got " +
                       std::to_string(fields.size()) + " at " + path + ":" +
                       std::to_string(line.number));
    }
    const auto i = row_axis.find(registry, fields[0]);
    if (!i) {
      throw InputError(std::string(role_name(role)) + ": unknown " + row_axis.name + " ID '" +
                       fields[0] + "' at " + path + ":" + std::to_string(line.number));
    }
    const auto j = col_axis.find(registry, fields[1]);
    if (!j) {
      throw InputError(std::string(role_name(role)) + ": unknown " + col_axis.name + " ID '" +
                       fields[1] + "' at " + path + ":" + std::to_string(line.number));
    }
    if (m.get(*i, *j)) {
      ++m.duplicate_count;
    } else {
      m.set(*i, *j, true);
    }
  }
  return m;
}

}  // namespace hgatelda
