#include <doctest.h>

#include <cmath>
#include <set>

#include "adlab/trainer.hpp"

using namespace adlab;

namespace {

BlobSpec easy_spec() {
  BlobSpec spec;
  spec.classes = 3;
  spec.samples_per_class = 120;
  spec.dim = 6;
  spec.separation = 4.0;
  spec.cov_scale = 0.5;
  return spec;
}

}  // namespace

TEST_CASE("blob generation basics") {
  BlobSpec spec = easy_spec();
  SyntheticDataset data = make_blobs(spec, 5);
  CHECK(data.size() == 360);
  CHECK(data.dim == 6);
  CHECK(data.classes == 3);
  std::vector<std::size_t> counts(3, 0);
  for (std::size_t y : data.labels) {
    REQUIRE(y < 3);
    ++counts[y];
  }
  for (std::size_t c : counts) CHECK(c == 120);
  // deterministic given the seed
  SyntheticDataset again = make_blobs(spec, 5);
  CHECK(data.features == again.features);
  CHECK(data.labels == again.labels);
  // a different seed moves the samples
  SyntheticDataset other = make_blobs(spec, 6);
  CHECK(data.features != other.features);
}

TEST_CASE("class means are separated") {
  BlobSpec spec = easy_spec();
  SyntheticDataset data = make_blobs(spec, 11);
  std::vector<ParamVector> means(3, ParamVector(spec.dim, 0.0));
  std::vector<std::size_t> counts(3, 0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    axpy(1.0, data.features[i], means[data.labels[i]]);
    ++counts[data.labels[i]];
  }
  for (std::size_t c = 0; c < 3; ++c)
    scale(1.0 / static_cast<double>(counts[c]), means[c]);
  for (std::size_t c = 1; c < 3; ++c) {
    ParamVector diff = sub(means[c], means[0]);
    CHECK(norm(diff) > spec.separation / 2.0);
  }
}

TEST_CASE("model parameter layout sizes") {
  CHECK(MlpShape{6, 0, 3}.param_count() == 21);
  CHECK(MlpShape{6, 8, 3}.param_count() == 6 * 8 + 8 + 8 * 3 + 3);
  MlpModel model({6, 8, 3}, 1);
  CHECK(model.params().size() == MlpShape{6, 8, 3}.param_count());
}

TEST_CASE("loss gradient matches finite differences") {
  BlobSpec spec = easy_spec();
  spec.samples_per_class = 10;
  SyntheticDataset data = make_blobs(spec, 3);
  std::vector<std::size_t> batch{0, 5, 13, 22, 29};

  for (std::size_t hidden : {std::size_t{0}, std::size_t{5}}) {
    MlpModel model({6, hidden, 3}, 7);
    ParamVector grad;
    model.forward_loss(data, batch, grad);
    REQUIRE(grad.size() == model.params().size());
    for (std::size_t j = 0; j < grad.size(); j += 3) {
      double h = 1e-6;
      ParamVector dummy;
      double saved = model.params()[j];
      model.params()[j] = saved + h;
      double up = model.forward_loss(data, batch, dummy);
      model.params()[j] = saved - h;
      double down = model.forward_loss(data, batch, dummy);
      model.params()[j] = saved;
      CHECK(grad[j] == doctest::Approx((up - down) / (2.0 * h)).epsilon(1e-4));
    }
  }
}

TEST_CASE("uniform predictions give log(classes) loss") {
  BlobSpec spec = easy_spec();
  SyntheticDataset data = make_blobs(spec, 3);
  MlpModel model({6, 0, 3}, 1);
  for (auto& w : model.params()) w = 0.0;
  CHECK(model.dataset_loss(data) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("fixed-rate training separates easy blobs") {
  BlobSpec spec = easy_spec();
  SyntheticDataset train_data = make_blobs(spec, 100);
  SyntheticDataset eval_data = make_blobs(spec, 101);

  MlpModel model({6, 0, 3}, 9);
  TrainOptions opts;
  opts.fixed_alpha = 0.1;
  opts.epochs = 30;
  opts.seed = 1;
  auto records = train(model, train_data, eval_data, opts);
  REQUIRE(records.size() == 30);
  CHECK(records.front().lr == 0.1);
  CHECK(std::isnan(records.front().omega));
  CHECK_FALSE(std::isnan(records[3].omega));
  CHECK(records.back().train_loss < records.front().train_loss);
  CHECK(records.back().eval_acc > 0.9);
  for (const auto& r : records) CHECK_FALSE(r.dropped);
}

TEST_CASE("training is deterministic given the seed") {
  BlobSpec spec = easy_spec();
  SyntheticDataset train_data = make_blobs(spec, 100);
  SyntheticDataset eval_data = make_blobs(spec, 101);
  TrainOptions opts;
  opts.epochs = 8;
  opts.seed = 4;
  MlpModel m1({6, 5, 3}, 9), m2({6, 5, 3}, 9);
  auto r1 = train(m1, train_data, eval_data, opts);
  auto r2 = train(m2, train_data, eval_data, opts);
  CHECK(m1.params() == m2.params());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    CHECK(r1[i].train_loss == r2[i].train_loss);
    CHECK(r1[i].eval_acc == r2[i].eval_acc);
  }
}

TEST_CASE("autodrop training lowers the rate and keeps learning") {
  BlobSpec spec = easy_spec();
  SyntheticDataset train_data = make_blobs(spec, 100);
  SyntheticDataset eval_data = make_blobs(spec, 101);

  AutoDropConfig ad;
  ad.alpha0 = 0.2;
  ad.alpha_min = 0.001;
  ad.theta0 = 2.0;
  ad.theta_max = 16.0;
  ad.rho = 0.5;
  ad.n_d = 5;

  MlpModel model({6, 0, 3}, 9);
  TrainOptions opts;
  opts.autodrop = ad;
  opts.epochs = 60;
  opts.seed = 2;
  auto records = train(model, train_data, eval_data, opts);

  CHECK(records.front().lr == ad.alpha0);
  int drops = 0;
  double last_lr = ad.alpha0;
  std::uint64_t first_drop = 0;
  for (const auto& r : records) {
    CHECK(r.lr <= last_lr);
    CHECK(r.lr >= ad.alpha_min);
    if (r.dropped) {
      ++drops;
      if (first_drop == 0) first_drop = r.epoch;
    }
    last_lr = r.lr;
  }
  CHECK(drops >= 1);
  CHECK(first_drop >= 3 + ad.n_d);  // saturation plus the delay window
  CHECK(records.back().eval_acc > 0.9);
}

TEST_CASE("momentum variants reach comparable accuracy") {
  BlobSpec spec = easy_spec();
  SyntheticDataset train_data = make_blobs(spec, 100);
  SyntheticDataset eval_data = make_blobs(spec, 101);
  for (UmConfig um : {UmConfig::heavy_ball(0.9), UmConfig::nesterov(0.9),
                      UmConfig::gradient_descent(0.5)}) {
    MlpModel model({6, 0, 3}, 9);
    TrainOptions opts;
    opts.optimizer = um;
    opts.fixed_alpha = 0.02;
    opts.epochs = 30;
    opts.seed = 3;
    auto records = train(model, train_data, eval_data, opts);
    CHECK(records.back().eval_acc > 0.85);
  }
}
