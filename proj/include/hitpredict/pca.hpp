#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "hitpredict/dataset.hpp"
#include "hitpredict/error.hpp"
#include "hitpredict/jacobi.hpp"
#include "hitpredict/matrix.hpp"

namespace hitpredict {

// Standardization statistics plus the ordered principal axes of the fitted
// data. Rows of `components` are orthonormal and sorted by eigenvalue,
// descending; within each row the largest-magnitude loading is non-negative.
struct PcaModel {
  std::vector<std::string> feature_names;  // fitting schema
  std::vector<double> mean;
  std::vector<double> std_dev;  // population std; constant columns recorded as 1
  Matrix components;            // k x d
  std::vector<double> eigenvalues;               // length k
  std::vector<double> explained_variance_ratio;  // length k
  std::size_t k = 0;

  std::size_t dimension() const { return mean.size(); }
};

inline PcaModel fit_pca(const FeatureMatrix& matrix) {
  const std::size_t n = matrix.size();
  const std::size_t d = matrix.values.cols();
  if (n < 2) raise(ErrorKind::data, "fit_pca: need at least 2 rows");
  if (!matrix.values.all_finite()) raise(ErrorKind::validation, "fit_pca: NaN in input");

  PcaModel model;
  model.feature_names = matrix.feature_names;
  model.mean.assign(d, 0.0);
  model.std_dev.assign(d, 1.0);

  for (std::size_t c = 0; c < d; ++c) {
    double sum = 0.0;
    for (std::size_t r = 0; r < n; ++r) sum += matrix.values(r, c);
    model.mean[c] = sum / static_cast<double>(n);
  }
  for (std::size_t c = 0; c < d; ++c) {
    double ss = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double dev = matrix.values(r, c) - model.mean[c];
      ss += dev * dev;
    }
    const double variance = ss / static_cast<double>(n);
    model.std_dev[c] = variance > 0.0 ? std::sqrt(variance) : 1.0;
  }

  Matrix z(n, d);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < d; ++c)
      z(r, c) = (matrix.values(r, c) - model.mean[c]) / model.std_dev[c];

  Matrix cov(d, d, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i < d; ++i) {
      const double zi = z(r, i);
      if (zi == 0.0) continue;
      for (std::size_t j = i; j < d; ++j) cov(i, j) += zi * z(r, j);
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) {
      cov(i, j) /= static_cast<double>(n);
      cov(j, i) = cov(i, j);
    }

  EigenDecomposition eig = jacobi_eigendecompose(cov);

  model.k = d;
  model.components = Matrix(d, d);
  model.eigenvalues.assign(d, 0.0);
  double total = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double lambda = std::max(eig.values[j], 0.0);
    model.eigenvalues[j] = lambda;
    total += lambda;
  }
  for (std::size_t j = 0; j < d; ++j) {
    // Sign convention: the largest-|loading| entry of each component is
    // non-negative.
    std::size_t argmax = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double mag = std::abs(eig.vectors(i, j));
      if (mag > best) {
        best = mag;
        argmax = i;
      }
    }
    const double flip = eig.vectors(argmax, j) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < d; ++i) model.components(j, i) = flip * eig.vectors(i, j);
  }
  model.explained_variance_ratio.assign(d, 0.0);
  if (total > 0.0)
    for (std::size_t j = 0; j < d; ++j)
      model.explained_variance_ratio[j] = model.eigenvalues[j] / total;
  return model;
}

inline std::vector<double> cumulative_variance(const PcaModel& model) {
  std::vector<double> cum(model.explained_variance_ratio.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < cum.size(); ++i) {
    sum += model.explained_variance_ratio[i];
    cum[i] = sum;
  }
  return cum;
}

// Truncates to the smallest prefix whose cumulative explained variance
// reaches the threshold (or the full dimension if rounding never gets there).
inline PcaModel select_components(const PcaModel& model, double variance_threshold) {
  if (!(variance_threshold > 0.0 && variance_threshold <= 1.0))
    raise(ErrorKind::parameter, "variance_threshold must lie in (0,1]");
  const std::vector<double> cum = cumulative_variance(model);
  std::size_t keep = model.k;
  for (std::size_t i = 0; i < cum.size(); ++i) {
    if (cum[i] >= variance_threshold - 1e-12) {
      keep = i + 1;
      break;
    }
  }
  PcaModel out = model;
  out.k = keep;
  out.components = Matrix(keep, model.dimension());
  for (std::size_t j = 0; j < keep; ++j)
    for (std::size_t i = 0; i < model.dimension(); ++i)
      out.components(j, i) = model.components(j, i);
  out.eigenvalues.assign(model.eigenvalues.begin(), model.eigenvalues.begin() + keep);
  out.explained_variance_ratio.assign(model.explained_variance_ratio.begin(),
                                      model.explained_variance_ratio.begin() + keep);
  return out;
}

inline void pca_transform_row(const PcaModel& model, std::span<const double> in,
                              std::span<double> out) {
  const std::size_t d = model.dimension();
  for (std::size_t j = 0; j < model.k; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      acc += ((in[i] - model.mean[i]) / model.std_dev[i]) * model.components(j, i);
    out[j] = acc;
  }
}

// Projects rows onto the retained components; columns become PC1..PCk.
inline FeatureMatrix pca_transform(const PcaModel& model, const FeatureMatrix& matrix) {
  if (model.feature_names != matrix.feature_names)
    raise(ErrorKind::schema, "pca_transform: column order does not match the fitted model");
  FeatureMatrix out;
  out.feature_names.reserve(model.k);
  for (std::size_t j = 0; j < model.k; ++j)
    out.feature_names.push_back("PC" + std::to_string(j + 1));
  out.values = Matrix(matrix.size(), model.k);
  out.labels = matrix.labels;
  out.track_ids = matrix.track_ids;
  for (std::size_t r = 0; r < matrix.size(); ++r)
    pca_transform_row(model, matrix.values.row(r), out.values.row(r));
  return out;
}

struct LoadingEntry {
  std::size_t component;  // 1-based, matches the PC name
  std::string feature;    // feature with the largest |loading|
  double loading;         // signed value of that loading
};

inline std::vector<LoadingEntry> loading_report(const PcaModel& model) {
  std::vector<LoadingEntry> report;
  report.reserve(model.k);
  for (std::size_t j = 0; j < model.k; ++j) {
    std::size_t argmax = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < model.dimension(); ++i) {
      const double mag = std::abs(model.components(j, i));
      if (mag > best) {
        best = mag;
        argmax = i;
      }
    }
    report.push_back({j + 1, model.feature_names[argmax], model.components(j, argmax)});
  }
  return report;
}

inline nlohmann::json to_json(const PcaModel& model) {
  nlohmann::json components = nlohmann::json::array();
  for (std::size_t j = 0; j < model.k; ++j) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t i = 0; i < model.dimension(); ++i) row.push_back(model.components(j, i));
    components.push_back(std::move(row));
  }
  return {{"features", model.feature_names},
          {"mean", model.mean},
          {"std", model.std_dev},
          {"components", components},
          {"eigenvalues", model.eigenvalues},
          {"explained_variance_ratio", model.explained_variance_ratio},
          {"k", model.k}};
}

inline PcaModel pca_from_json(const nlohmann::json& j) {
  PcaModel model;
  model.feature_names = j.at("features").get<std::vector<std::string>>();
  model.mean = j.at("mean").get<std::vector<double>>();
  model.std_dev = j.at("std").get<std::vector<double>>();
  model.eigenvalues = j.at("eigenvalues").get<std::vector<double>>();
  model.explained_variance_ratio = j.at("explained_variance_ratio").get<std::vector<double>>();
  model.k = j.at("k").get<std::size_t>();
  const auto& rows = j.at("components");
  model.components = Matrix(model.k, model.mean.size());
  if (rows.size() != model.k) raise(ErrorKind::schema, "pca: component row count mismatch");
  for (std::size_t r = 0; r < model.k; ++r) {
    const auto row = rows[r].get<std::vector<double>>();
    if (row.size() != model.mean.size())
      raise(ErrorKind::schema, "pca: component column count mismatch");
    for (std::size_t c = 0; c < row.size(); ++c) model.components(r, c) = row[c];
  }
  return model;
}

}  // namespace hitpredict
