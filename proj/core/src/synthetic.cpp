#include "hgatelda/synthetic.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "hgatelda/errors.hpp"
#include "hgatelda/rng.hpp"

namespace hgatelda {

namespace {

std::vector<std::string> make_ids(const char* prefix, std::size_t n) {
  std::vector<std::string> ids;
  ids.reserve(n);
  char buf[32];
  for (std::size_t i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof(buf), "%s%03zu", prefix, i);
    ids.emplace_back(buf);
  }
  return ids;
}

}  // namespace

namespace {

std::size_t lnc_group(std::size_t i) { return i % 3; }

/// Diseases split X/Y/Z with Z twice the size (indices 2 and 3 mod 4 merge).
std::size_t dis_group(std::size_t j) {
  const std::size_t m = j % 4;
  return m <= 1 ? m : 2;
}

std::size_t mir_group(std::size_t m) { return m % 3; }

/// Block connectivity A-X, B-Y, C-X, C-Y: as a 0/1 matrix the C row is the
/// sum of the A and B rows, so the planted structure has rank exactly two.
bool block_on(std::size_t lg, std::size_t dg) {
  if (dg == 2) return false;
  return lg == dg || lg == 2;
}

}  // namespace

SyntheticData make_planted_block(const SyntheticSpec& spec) {
  if (!(spec.noise >= 0.0 && spec.noise < 0.5)) {
    throw std::invalid_argument("make_planted_block: noise must lie in [0, 0.5)");
  }
  SyntheticData data;
  data.lncrnas = make_ids("L", spec.lncrnas);
  data.diseases = make_ids("D", spec.diseases);
  data.mirnas = make_ids("M", spec.mirnas);

  SeededRng rng(spec.seed);

  // observed LD: planted blocks with one flip draw per cell
  for (std::size_t i = 0; i < spec.lncrnas; ++i) {
    for (std::size_t j = 0; j < spec.diseases; ++j) {
      bool on = block_on(lnc_group(i), dis_group(j));
      if (rng.uniform() < spec.noise) on = !on;
      if (on) data.ld_edges.emplace_back(data.lncrnas[i], data.diseases[j]);
    }
  }
  // lncRNA-miRNA links: A-U, B-V; the mixed C group links both at half rate
  for (std::size_t i = 0; i < spec.lncrnas; ++i) {
    for (std::size_t m = 0; m < spec.mirnas; ++m) {
      const std::size_t lg = lnc_group(i);
      const std::size_t mg = mir_group(m);
      double rate = spec.background_link;
      if (lg <= 1 && lg == mg) rate = spec.within_link;
      if (lg == 2 && mg <= 1) rate = spec.within_link / 2.0;
      if (rng.uniform() < rate) data.ml_edges.emplace_back(data.lncrnas[i], data.mirnas[m]);
    }
  }
  // disease-miRNA links: X-U, Y-V, Z-W
  for (std::size_t j = 0; j < spec.diseases; ++j) {
    for (std::size_t m = 0; m < spec.mirnas; ++m) {
      const double rate =
          dis_group(j) == mir_group(m) ? spec.within_link : spec.background_link;
      if (rng.uniform() < rate) data.md_edges.emplace_back(data.diseases[j], data.mirnas[m]);
    }
  }
  // one star per disease group, rooted at the group's first disease
  std::vector<std::size_t> group_root(3, spec.diseases);
  for (std::size_t j = 0; j < spec.diseases; ++j) {
    const std::size_t g = dis_group(j);
    if (group_root[g] == spec.diseases) {
      group_root[g] = j;
    } else {
      data.dag_edges.emplace_back(data.diseases[j], data.diseases[group_root[g]]);
    }
  }
  return data;
}

namespace {

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write fixture file: " + path);
  for (const auto& line : lines) out << line << '\n';
}

void write_edges(const std::string& path,
                 const std::vector<std::pair<std::string, std::string>>& edges) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write fixture file: " + path);
  for (const auto& [a, b] : edges) out << a << '\t' << b << '\n';
}

}  // namespace

void write_synthetic(const SyntheticData& data, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  write_lines((base / "lncrnas.tsv").string(), data.lncrnas);
  write_lines((base / "diseases.tsv").string(), data.diseases);
  write_lines((base / "mirnas.tsv").string(), data.mirnas);
  write_edges((base / "ld.tsv").string(), data.ld_edges);
  write_edges((base / "ml.tsv").string(), data.ml_edges);
  write_edges((base / "md.tsv").string(), data.md_edges);
  write_edges((base / "dag.tsv").string(), data.dag_edges);
}

Dataset to_dataset(const SyntheticData& data, double delta) {
  EntityRegistry registry(data.lncrnas, data.diseases, data.mirnas);
  auto fill = [&](AssociationMatrix& m,
                  const std::vector<std::pair<std::string, std::string>>& edges,
                  auto row_index, auto col_index) {
    for (const auto& [a, b] : edges) m.set(*row_index(a), *col_index(b), true);
  };
  AssociationMatrix ld(AssociationRole::LD, registry.lncrna_count(), registry.disease_count());
  AssociationMatrix ml(AssociationRole::ML, registry.lncrna_count(), registry.mirna_count());
  AssociationMatrix md(AssociationRole::MD, registry.disease_count(), registry.mirna_count());
  auto lnc = [&](const std::string& id) { return registry.lncrna_index(id); };
  auto dis = [&](const std::string& id) { return registry.disease_index(id); };
  auto mir = [&](const std::string& id) { return registry.mirna_index(id); };
  fill(ld, data.ld_edges, lnc, dis);
  fill(ml, data.ml_edges, lnc, mir);
  fill(md, data.md_edges, dis, mir);

  std::vector<std::pair<std::size_t, std::size_t>> dag_edges;
  for (const auto& [child, parent] : data.dag_edges) {
    dag_edges.emplace_back(*dis(child), *dis(parent));
  }
  DiseaseDag dag(registry.disease_count(), dag_edges);
  return make_dataset(std::move(registry), std::move(ld), std::move(ml), std::move(md),
                      std::move(dag), delta);
}

}  // namespace hgatelda
