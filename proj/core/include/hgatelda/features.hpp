#pragma once

#include "hgatelda/associations.hpp"
#include "hgatelda/matrix.hpp"
#include "hgatelda/similarity.hpp"

namespace hgatelda {

/// Similarity-weighted miRNA interaction profiles. F stacks lncRNA rows
/// first (0..p-1), disease rows after (p..p+q-1); that row order is the node
/// index convention for the whole pipeline. The feature dimension equals the
/// miRNA count.
struct LinearFeatures {
  Matrix fl;       // p x r
  Matrix fd;       // q x r
  Matrix stacked;  // (p+q) x r
};

/// FL = LFS x ML.
Matrix lncrna_linear(const SimilarityMatrix& lfs, const AssociationMatrix& ml);

/// FD = DS x MD.
Matrix disease_linear(const SimilarityMatrix& ds, const AssociationMatrix& md);

/// Row-wise concatenation, lncRNAs first.
Matrix stack_features(const Matrix& fl, const Matrix& fd);

/// Full construction; row_normalize applies optional L2 row scaling (off by
/// default, zero rows left untouched).
LinearFeatures build_linear_features(const SimilarityMatrix& lfs, const AssociationMatrix& ml,
                                     const SimilarityMatrix& ds, const AssociationMatrix& md,
                                     bool row_normalize = false);

}  // namespace hgatelda
