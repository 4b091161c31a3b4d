#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "hitpredict/dataset.hpp"
#include "hitpredict/error.hpp"
#include "hitpredict/matrix.hpp"

namespace hitpredict {

enum class Metric { euclidean, hamming };

inline std::string_view to_string(Metric m) {
  return m == Metric::euclidean ? "euclidean" : "hamming";
}

inline Metric metric_from_string(std::string_view s) {
  if (s == "euclidean") return Metric::euclidean;
  if (s == "hamming") return Metric::hamming;
  raise(ErrorKind::validation, "metric='" + std::string(s) + "' must be euclidean or hamming");
}

// Lazy learner: the model is the training data.
struct KnnModel {
  int k = 25;
  Metric metric = Metric::euclidean;
  Matrix train;
  std::vector<double> labels;
};

inline KnnModel train_knn(const FeatureMatrix& train, int k, Metric metric = Metric::euclidean) {
  if (k < 1) raise(ErrorKind::parameter, "knn: k must be >= 1");
  if (static_cast<std::size_t>(k) > train.size())
    raise(ErrorKind::parameter, "knn: k=" + std::to_string(k) + " exceeds training size " +
                                    std::to_string(train.size()));
  return {k, metric, train.values, train.labels};
}

inline double knn_distance(Metric metric, std::span<const double> a, std::span<const double> b) {
  if (metric == Metric::euclidean) return squared_distance(a, b);
  if (a.size() != b.size()) raise(ErrorKind::parameter, "hamming: dimension mismatch");
  double count = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) count += 1.0;
  return count;
}

struct KnnPrediction {
  int label = 0;
  double probability_of_class0 = 0.0;  // count(class=0) / k among the neighbors
};

// Nearest neighbors with distance ties broken toward the lower training-row
// index; an even vote split goes to class 0.
inline KnnPrediction predict_knn(const KnnModel& model, std::span<const double> query) {
  if (query.size() != model.train.cols())
    raise(ErrorKind::parameter, "knn: query dimension mismatch");
  const std::size_t n = model.train.rows();
  std::vector<double> dist(n);
  for (std::size_t r = 0; r < n; ++r)
    dist[r] = knn_distance(model.metric, model.train.row(r), query);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t k = static_cast<std::size_t>(model.k);
  std::partial_sort(order.begin(), order.begin() + k, order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (dist[a] != dist[b]) return dist[a] < dist[b];
                      return a < b;
                    });

  std::size_t count0 = 0;
  for (std::size_t i = 0; i < k; ++i)
    if (model.labels[order[i]] == 0.0) ++count0;
  KnnPrediction out;
  out.probability_of_class0 = static_cast<double>(count0) / static_cast<double>(k);
  out.label = (k - count0 > count0) ? 1 : 0;
  return out;
}

}  // namespace hitpredict
