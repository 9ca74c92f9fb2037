#pragma once

#include <vector>

#include "hgatelda/associations.hpp"
#include "hgatelda/disease_dag.hpp"
#include "hgatelda/matrix.hpp"

namespace hgatelda {

enum class SimilarityAxis { Disease, Lncrna };

/// Square symmetric matrix in [0,1] with unit diagonal. The constructor
/// enforces the invariants (symmetry within 1e-12, diagonal exactly 1).
class SimilarityMatrix {
 public:
  SimilarityMatrix(SimilarityAxis axis, Matrix values);

  SimilarityAxis axis() const { return axis_; }
  std::size_t size() const { return values_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return values_(i, j); }
  const Matrix& values() const { return values_; }

 private:
  SimilarityAxis axis_;
  Matrix values_;
};

/// Decay-weighted importance of each ancestor of a root disease. The root
/// contributes 1; every other ancestor contributes delta times the best of
/// its children inside the ancestor set.
struct ContributionMap {
  std::size_t root;
  /// (ancestor index, contribution), sorted by index; covers ancestors(root)
  /// exactly.
  std::vector<std::pair<std::size_t, double>> values;
  /// Sum of all contributions (>= 1).
  double semantic_value;
};

inline constexpr double kDefaultDelta = 0.5;

ContributionMap contribution(const DiseaseDag& dag, std::size_t disease, double delta);

double semantic_value(const DiseaseDag& dag, std::size_t disease, double delta);

/// Pairwise semantic similarity over all DAG nodes: shared-ancestor
/// contributions normalized by the two semantic values. Diseases in disjoint
/// components score 0; the diagonal is forced to exactly 1.
SimilarityMatrix disease_similarity(const DiseaseDag& dag, double delta);

/// Best-match-average functional similarity of lncRNA pairs through their
/// associated disease sets. Pairs where either set is empty score 0
/// off-diagonal; the diagonal is forced to exactly 1.
SimilarityMatrix lncrna_functional_similarity(const SimilarityMatrix& ds,
                                              const AssociationMatrix& ld);

}  // namespace hgatelda
