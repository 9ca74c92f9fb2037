#include <cmath>
#include <set>

#include <doctest.h>

#include "hgatelda/classifier.hpp"
#include "hgatelda/errors.hpp"
#include "hgatelda/gradcheck.hpp"
#include "support/fixtures.hpp"

using namespace hgatelda;

TEST_SUITE_BEGIN("classifier");

namespace {

FeatureBundle toy_bundle() {
  FeatureBundle b;
  b.fl = Matrix::from_rows({{1, 2}, {5, 6}});
  b.fl_nl = Matrix::from_rows({{9}, {10}});
  b.fd = Matrix::from_rows({{3, 4}, {7, 8}, {0, 1}});
  b.fd_nl = Matrix::from_rows({{8}, {11}, {12}});
  return b;
}

}  // namespace

TEST_CASE("fuse concatenates the four segments in order") {
  const FeatureBundle b = toy_bundle();
  CHECK(fuse(0, 0, b) == std::vector<double>{1, 2, 9, 3, 4, 8});
  CHECK(b.pair_dim() == 6);
  CHECK_THROWS_AS(fuse(2, 0, b), std::invalid_argument);
  CHECK_THROWS_AS(fuse(0, 3, b), std::invalid_argument);
}

TEST_CASE("pair length at the published dims is 2*(495+64) = 1118") {
  FeatureBundle b;
  b.fl = Matrix(3, 495);
  b.fl_nl = Matrix(3, 64);
  b.fd = Matrix(4, 495);
  b.fd_nl = Matrix(4, 64);
  CHECK(b.pair_dim() == 1118);
  CHECK(fuse(0, 0, b).size() == 1118);
}

TEST_CASE("lncRNA and disease roles are not interchangeable") {
  const FeatureBundle b = toy_bundle();
  CHECK(fuse(0, 1, b) != fuse(1, 0, b));
}

TEST_CASE("ablation arms zero the excluded segments, keeping the length") {
  const FeatureBundle b = toy_bundle();
  const auto linear = fuse(0, 0, b, FeatureArm::LinearOnly);
  CHECK(linear == std::vector<double>{1, 2, 0, 3, 4, 0});
  const auto nonlinear = fuse(0, 0, b, FeatureArm::NonlinearOnly);
  CHECK(nonlinear == std::vector<double>{0, 0, 9, 0, 0, 8});
}

TEST_CASE("split_latent cuts the stacked latent at the lncRNA count") {
  const Matrix latent = Matrix::from_rows({{1}, {2}, {3}, {4}, {5}});
  const auto [lnc, dis] = split_latent(latent, 2);
  CHECK(lnc.rows() == 2);
  CHECK(dis.rows() == 3);
  CHECK(dis(0, 0) == 3.0);
}

TEST_CASE("sample_negatives: errors, emptiness, determinism, disjointness") {
  AssociationMatrix full(AssociationRole::LD, 2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) full.set(i, j, true);
  SeededRng rng(5);
  CHECK_THROWS_AS(sample_negatives(full, 1, rng), InputError);

  AssociationMatrix ld(AssociationRole::LD, 3, 4);
  ld.set(0, 0, true);
  ld.set(1, 2, true);
  CHECK(sample_negatives(ld, 0, rng).empty());

  SeededRng a(9), b(9);
  const auto s1 = sample_negatives(ld, 5, a);
  const auto s2 = sample_negatives(ld, 5, b);
  CHECK(s1 == s2);

  const std::set<std::pair<std::size_t, std::size_t>> unique(s1.begin(), s1.end());
  CHECK(unique.size() == 5);  // without replacement
  for (const auto& [i, j] : s1) CHECK(!ld.get(i, j));

  // excluded pairs never appear
  const std::vector<std::pair<std::size_t, std::size_t>> excluded{{0, 1}, {2, 3}};
  SeededRng c(11);
  const auto s3 = sample_negatives(ld, 8, c, excluded);
  for (const auto& pr : s3) {
    CHECK(std::find(excluded.begin(), excluded.end(), pr) == excluded.end());
  }
  SeededRng d(12);
  CHECK_THROWS_AS(sample_negatives(ld, 9, d, excluded), InputError);
}

TEST_CASE("PairSet validation catches overlap and range errors") {
  PairSet ok{{{0, 1}}, {{1, 0}}};
  ok.validate(2, 2);
  PairSet overlap{{{0, 1}}, {{0, 1}}};
  CHECK_THROWS_AS(overlap.validate(2, 2), std::invalid_argument);
  PairSet range{{{5, 0}}, {}};
  CHECK_THROWS_AS(range.validate(2, 2), std::invalid_argument);
}

TEST_CASE("training reaches full accuracy on a separable toy set") {
  // margin-1 stripes on the first feature
  const std::size_t n = 20;
  Matrix x(n, 2);
  std::vector<int> labels;
  for (std::size_t i = 0; i < n; ++i) {
    const bool pos = i % 2 == 0;
    x(i, 0) = pos ? 1.0 + 0.05 * static_cast<double>(i) : -1.0 - 0.05 * static_cast<double>(i);
    x(i, 1) = 0.3;
    labels.push_back(pos ? 1 : 0);
  }
  ClassifierConfig cfg;
  cfg.hidden_dims = {8, 4};
  cfg.epochs = 200;
  cfg.dropout = 0.0;
  SeededRng rng(13);
  const ClassifierModel model = train_classifier(cfg, {x, labels}, rng);
  const auto scores = predict_batch(model, x);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK((scores[i] >= 0.5) == (labels[i] == 1));
  }
}

TEST_CASE("dropout 0 matches an all-ones-mask run bitwise") {
  SeededRng data_rng(17);
  Matrix x(12, 4);
  for (double& v : x.flat()) v = data_rng.uniform(-1.0, 1.0);
  std::vector<int> labels;
  for (int i = 0; i < 12; ++i) labels.push_back(i % 2);

  ClassifierConfig off;
  off.hidden_dims = {6, 3};
  off.epochs = 40;
  off.dropout = 0.0;
  // small enough that the keep-scale rounds to exactly 1.0 and no unit is
  // ever dropped, but the mask code path still runs
  ClassifierConfig tiny = off;
  tiny.dropout = 1e-300;

  SeededRng a(19), b(19);
  const ClassifierModel m_off = train_classifier(off, {x, labels}, a);
  const ClassifierModel m_tiny = train_classifier(tiny, {x, labels}, b);
  const auto s_off = predict_batch(m_off, x);
  const auto s_tiny = predict_batch(m_tiny, x);
  CHECK(s_off == s_tiny);
}

TEST_CASE("analytic gradients match finite differences on a 5-sample batch") {
  SeededRng rng(23);
  Matrix x(5, 7);
  for (double& v : x.flat()) v = rng.uniform(-1.0, 1.0);
  const std::vector<int> labels{1, 0, 0, 1, 1};
  ClassifierConfig cfg;
  cfg.hidden_dims = {5, 3};
  ClassifierModel model = init_classifier(7, cfg, rng);
  const ClassifierGradients grads = classifier_gradients(model, x, labels);

  auto check = [&](Matrix& slot, const Matrix& analytic) {
    const Matrix numeric = finite_diff_grad(
        [&](const Matrix& candidate) {
          const Matrix saved = slot;
          slot = candidate;
          const double loss = classifier_loss(model, x, labels);
          slot = saved;
          return loss;
        },
        slot, 1e-5);
    CHECK(max_relative_error(analytic, numeric) < 1e-4);
  };
  for (std::size_t li = 0; li < model.hidden.size(); ++li) {
    check(model.hidden[li].weights, grads.hidden[li].weights);
    check(model.hidden[li].bias, grads.hidden[li].bias);
  }
  check(model.output.weights, grads.output.weights);
  check(model.output.bias, grads.output.bias);
}

TEST_CASE("predict: zero model scores 0.5; sigmoid is monotone; batch = elementwise") {
  ClassifierConfig cfg;
  cfg.zero_init = true;
  SeededRng rng(29);
  const ClassifierModel zero = init_classifier(4, cfg, rng);
  CHECK(predict(zero, std::vector<double>{1.0, -2.0, 0.3, 4.0}) == 0.5);

  // bare logistic unit: no hidden layers, unit weight
  ClassifierModel logistic;
  logistic.output.weights = Matrix::from_rows({{1.0}});
  logistic.output.bias = Matrix(1, 1);
  CHECK(predict(logistic, std::vector<double>{0.0}) == 0.5);
  CHECK(predict(logistic, std::vector<double>{1.0}) > predict(logistic, std::vector<double>{0.5}));
  CHECK(predict(logistic, std::vector<double>{-1.0}) < 0.5);

  Matrix batch(3, 1);
  batch(0, 0) = -1.0;
  batch(1, 0) = 0.0;
  batch(2, 0) = 2.0;
  const auto scores = predict_batch(logistic, batch);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(scores[i] == predict(logistic, batch.row(i)));
  }
  CHECK_THROWS_AS(predict(logistic, std::vector<double>{1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("predict is pure: repeated calls agree bitwise") {
  SeededRng rng(31);
  ClassifierConfig cfg;
  cfg.hidden_dims = {5};
  const ClassifierModel model = init_classifier(3, cfg, rng);
  const std::vector<double> input{0.2, -0.7, 1.1};
  const double first = predict(model, input);
  for (int i = 0; i < 5; ++i) CHECK(predict(model, input) == first);
}

TEST_CASE("BCE is invariant under label flips with a negated logistic unit") {
  SeededRng rng(37);
  Matrix x(10, 3);
  for (double& v : x.flat()) v = rng.uniform(-2.0, 2.0);
  std::vector<int> labels, flipped;
  for (int i = 0; i < 10; ++i) {
    labels.push_back(i % 3 == 0 ? 1 : 0);
    flipped.push_back(1 - labels.back());
  }
  ClassifierModel unit;
  unit.output.weights = Matrix::from_rows({{0.8, -0.5, 1.2}});
  unit.output.bias = Matrix(1, 1, 0.3);
  ClassifierModel negated;
  negated.output.weights = Matrix::from_rows({{-0.8, 0.5, -1.2}});
  negated.output.bias = Matrix(1, 1, -0.3);
  CHECK(classifier_loss(unit, x, labels) ==
        doctest::Approx(classifier_loss(negated, x, flipped)).epsilon(1e-12));
}

TEST_CASE("training rejects degenerate sets and reports divergence") {
  Matrix x(4, 2, 1.0);
  ClassifierConfig cfg;
  cfg.epochs = 5;
  SeededRng rng(41);
  CHECK_THROWS_AS(train_classifier(cfg, {x, {1, 1, 1, 1}}, rng), InputError);
  CHECK_THROWS_AS(train_classifier(cfg, {x, {0, 0, 0, 0}}, rng), InputError);
  CHECK_THROWS_AS(train_classifier(cfg, {Matrix(0, 2), {}}, rng), InputError);

  ClassifierConfig wild;
  wild.hidden_dims = {4, 4};
  wild.epochs = 10;
  // one Adam step moves parameters to about +-lr; the next forward pass
  // overflows the layer product
  wild.learning_rate = 1e200;
  SeededRng rng2(43);
  Matrix big(4, 2);
  for (double& v : big.flat()) v = 100.0;
  big(0, 0) = -100.0;
  CHECK_THROWS_WITH_AS(train_classifier(wild, {big, {1, 0, 1, 0}}, rng2),
                       doctest::Contains("epoch"), NumericError);
}

TEST_CASE("zero-init training moves only the output bias (symmetric hidden units)") {
  SeededRng rng(47);
  Matrix x(6, 3);
  for (double& v : x.flat()) v = rng.uniform(-1.0, 1.0);
  ClassifierConfig cfg;
  cfg.hidden_dims = {4};
  cfg.zero_init = true;
  cfg.dropout = 0.0;
  cfg.epochs = 30;
  // class imbalance so the shared-logit gradient is nonzero
  const ClassifierModel model = train_classifier(cfg, {x, {1, 0, 0, 0, 1, 0}}, rng);
  for (double v : model.hidden[0].weights.flat()) CHECK(v == 0.0);
  for (double v : model.output.weights.flat()) CHECK(v == 0.0);
  CHECK(model.output.bias(0, 0) != 0.0);
}

TEST_SUITE_END();
