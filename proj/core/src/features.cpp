#include "hgatelda/features.hpp"

#include <cmath>
#include <stdexcept>

namespace hgatelda {

Matrix lncrna_linear(const SimilarityMatrix& lfs, const AssociationMatrix& ml) {
  if (lfs.axis() != SimilarityAxis::Lncrna || ml.role() != AssociationRole::ML) {
    throw std::invalid_argument("lncrna_linear: expects LFS and ML");
  }
  return matmul(lfs.values(), ml.dense());
}

Matrix disease_linear(const SimilarityMatrix& ds, const AssociationMatrix& md) {
  if (ds.axis() != SimilarityAxis::Disease || md.role() != AssociationRole::MD) {
    throw std::invalid_argument("disease_linear: expects DS and MD");
  }
  return matmul(ds.values(), md.dense());
}

Matrix stack_features(const Matrix& fl, const Matrix& fd) { return vstack(fl, fd); }

namespace {
void normalize_rows(Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double norm = 0.0;
    for (double v : m.row(i)) norm += v * v;
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    for (double& v : m.row(i)) v /= norm;
  }
}
}  // namespace

LinearFeatures build_linear_features(const SimilarityMatrix& lfs, const AssociationMatrix& ml,
                                     const SimilarityMatrix& ds, const AssociationMatrix& md,
                                     bool row_normalize) {
  LinearFeatures out;
  out.fl = lncrna_linear(lfs, ml);
  out.fd = disease_linear(ds, md);
  if (out.fl.cols() != out.fd.cols()) {
    throw std::invalid_argument("build_linear_features: miRNA axes differ between ML and MD");
  }
  if (row_normalize) {
    normalize_rows(out.fl);
    normalize_rows(out.fd);
  }
  out.stacked = stack_features(out.fl, out.fd);
  return out;
}

}  // namespace hgatelda
