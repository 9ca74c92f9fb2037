#include "hgatelda/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hgatelda/errors.hpp"

namespace hgatelda {

SimilarityMatrix::SimilarityMatrix(SimilarityAxis axis, Matrix values)
    : axis_(axis), values_(std::move(values)) {
  if (values_.rows() != values_.cols()) {
    throw std::invalid_argument("SimilarityMatrix: not square: " + values_.shape_str());
  }
  for (std::size_t i = 0; i < values_.rows(); ++i) {
    if (values_(i, i) != 1.0) {
      throw std::invalid_argument("SimilarityMatrix: diagonal entry " + std::to_string(i) +
                                  " is not exactly 1");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(values_(i, j) - values_(j, i)) > 1e-12) {
        throw std::invalid_argument("SimilarityMatrix: asymmetric at (" + std::to_string(i) +
                                    "," + std::to_string(j) + ")");
      }
      if (values_(i, j) < 0.0 || values_(i, j) > 1.0) {
        throw std::invalid_argument("SimilarityMatrix: entry out of [0,1] at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
}

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("contribution: delta must lie in (0,1)");
  }
}

/// Contributions as a dense vector indexed by node (0 where not an ancestor).
/// Every non-root ancestor has at least one child inside the closure, so its
/// value is well-defined and positive.
std::vector<double> contribution_dense(const DiseaseDag& dag, std::size_t root, double delta,
                                       const std::vector<std::size_t>& closure) {
  std::vector<double> value(dag.node_count(), 0.0);
  std::vector<char> in_closure(dag.node_count(), 0);
  for (std::size_t m : closure) in_closure[m] = 1;
  std::vector<char> done(dag.node_count(), 0);
  value[root] = 1.0;
  done[root] = 1;

  // iterative post-order over child edges restricted to the closure
  std::vector<std::size_t> stack;
  for (std::size_t m : closure) {
    if (done[m]) continue;
    stack.push_back(m);
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      bool ready = true;
      for (std::size_t c : dag.children(cur)) {
        if (in_closure[c] && !done[c]) {
          stack.push_back(c);
          ready = false;
        }
      }
      if (!ready) continue;
      stack.pop_back();
      if (done[cur]) continue;
      double best = 0.0;
      for (std::size_t c : dag.children(cur)) {
        if (in_closure[c]) best = std::max(best, value[c]);
      }
      value[cur] = delta * best;
      done[cur] = 1;
    }
  }
  return value;
}

}  // namespace

ContributionMap contribution(const DiseaseDag& dag, std::size_t disease, double delta) {
  check_delta(delta);
  const auto closure = dag.ancestors(disease);
  const auto dense = contribution_dense(dag, disease, delta, closure);
  ContributionMap map;
  map.root = disease;
  map.values.reserve(closure.size());
  double total = 0.0;
  for (std::size_t m : closure) {
    map.values.emplace_back(m, dense[m]);
    total += dense[m];
  }
  map.semantic_value = total;
  return map;
}

double semantic_value(const DiseaseDag& dag, std::size_t disease, double delta) {
  return contribution(dag, disease, delta).semantic_value;
}

SimilarityMatrix disease_similarity(const DiseaseDag& dag, double delta) {
  check_delta(delta);
  const std::size_t q = dag.node_count();
  std::vector<std::vector<std::size_t>> closures(q);
  std::vector<std::vector<double>> contrib(q);
  std::vector<double> dv(q, 0.0);
  for (std::size_t d = 0; d < q; ++d) {
    closures[d] = dag.ancestors(d);
    contrib[d] = contribution_dense(dag, d, delta, closures[d]);
    for (std::size_t m : closures[d]) dv[d] += contrib[d][m];
  }

  Matrix out(q, q);
  for (std::size_t i = 0; i < q; ++i) {
    out(i, i) = 1.0;
    for (std::size_t j = 0; j < i; ++j) {
      // sorted closures; walk the intersection
      double shared = 0.0;
      const auto& a = closures[i];
      const auto& b = closures[j];
      std::size_t x = 0, y = 0;
      while (x < a.size() && y < b.size()) {
        if (a[x] < b[y]) {
          ++x;
        } else if (a[x] > b[y]) {
          ++y;
        } else {
          shared += contrib[i][a[x]] + contrib[j][a[x]];
          ++x;
          ++y;
        }
      }
      const double value = std::clamp(shared / (dv[i] + dv[j]), 0.0, 1.0);
      out(i, j) = value;
      out(j, i) = value;
    }
  }
  return SimilarityMatrix(SimilarityAxis::Disease, std::move(out));
}

SimilarityMatrix lncrna_functional_similarity(const SimilarityMatrix& ds,
                                              const AssociationMatrix& ld) {
  if (ds.axis() != SimilarityAxis::Disease) {
    throw std::invalid_argument("lncrna_functional_similarity: ds must be disease-axis");
  }
  if (ld.role() != AssociationRole::LD || ld.cols() != ds.size()) {
    throw std::invalid_argument(
        "lncrna_functional_similarity: ld must be LD with disease axis matching ds (" +
        std::to_string(ld.cols()) + " vs " + std::to_string(ds.size()) + ")");
  }
  const std::size_t p = ld.rows();
  std::vector<std::vector<std::size_t>> assoc(p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < ld.cols(); ++j) {
      if (ld.get(i, j)) assoc[i].push_back(j);
    }
  }

  // one-directional best-match sum: for each d in `from`, its best DS match
  // inside `to`
  auto best_match_sum = [&](const std::vector<std::size_t>& from,
                            const std::vector<std::size_t>& to) {
    double sum = 0.0;
    for (std::size_t d : from) {
      double best = 0.0;
      for (std::size_t d1 : to) best = std::max(best, ds(d, d1));
      sum += best;
    }
    return sum;
  };

  Matrix out(p, p);
  for (std::size_t i = 0; i < p; ++i) {
    out(i, i) = 1.0;
    for (std::size_t j = 0; j < i; ++j) {
      const auto& di = assoc[i];
      const auto& dj = assoc[j];
      double value = 0.0;
      if (!di.empty() && !dj.empty()) {
        const double numer = best_match_sum(dj, di) + best_match_sum(di, dj);
        value = std::clamp(numer / static_cast<double>(di.size() + dj.size()), 0.0, 1.0);
      }
      out(i, j) = value;
      out(j, i) = value;
    }
  }
  return SimilarityMatrix(SimilarityAxis::Lncrna, std::move(out));
}

}  // namespace hgatelda
