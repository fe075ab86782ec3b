#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "adlab/autodrop.hpp"
#include "adlab/unified_momentum.hpp"
#include "adlab/vec.hpp"

namespace adlab {

// Gaussian-blob classification task; class means sit on a scaled simplex
// (separation along one axis per class) with shared isotropic covariance.
struct BlobSpec {
  std::size_t classes = 2;
  std::size_t samples_per_class = 1000;
  std::size_t dim = 20;
  double separation = 2.0;
  double cov_scale = 1.0;
};

struct SyntheticDataset {
  std::vector<ParamVector> features;
  std::vector<std::size_t> labels;
  std::size_t dim = 0;
  std::size_t classes = 0;

  std::size_t size() const { return features.size(); }
};

SyntheticDataset make_blobs(const BlobSpec& spec, std::uint64_t seed);

// Softmax classifier with an optional rectifier hidden layer (hidden = 0
// gives logistic regression). Parameters live in one flat vector so the
// optimizer and scheduler see the same x_t the rest of the library does.
struct MlpShape {
  std::size_t in = 0;
  std::size_t hidden = 0;
  std::size_t out = 0;

  std::size_t param_count() const {
    if (hidden == 0) return out * in + out;
    return hidden * in + hidden + out * hidden + out;
  }
};

class MlpModel {
 public:
  MlpModel(MlpShape shape, std::uint64_t seed, double init_scale = 0.1);

  const MlpShape& shape() const { return shape_; }
  const ParamVector& params() const { return params_; }
  ParamVector& params() { return params_; }

  // Mean cross-entropy over the batch plus its gradient.
  double forward_loss(const SyntheticDataset& data,
                      const std::vector<std::size_t>& batch,
                      ParamVector& grad) const;

  double dataset_loss(const SyntheticDataset& data) const;
  double accuracy(const SyntheticDataset& data) const;

 private:
  ParamVector logits(const ParamVector& x) const;

  MlpShape shape_;
  ParamVector params_;
};

struct TrainRecord {
  std::uint64_t epoch;
  double train_loss;  // mean minibatch loss across the epoch
  double eval_acc;
  double lr;
  double omega;  // degrees; NaN until two steps exist
  bool dropped;
};

struct TrainOptions {
  UmConfig optimizer = UmConfig::heavy_ball(0.9);
  // When set, AutoDrop drives the learning rate; otherwise fixed_alpha.
  std::optional<AutoDropConfig> autodrop;
  double fixed_alpha = 0.1;
  std::uint64_t epochs = 60;
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;
};

std::vector<TrainRecord> train(MlpModel& model, const SyntheticDataset& data,
                               const SyntheticDataset& eval_data,
                               const TrainOptions& opts);

}  // namespace adlab
