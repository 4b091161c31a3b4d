#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "hitpredict/dataset.hpp"
#include "hitpredict/error.hpp"
#include "hitpredict/rng.hpp"
#include "hitpredict/track.hpp"

namespace hitpredict {

struct CleanupSummary {
  std::size_t input = 0;
  std::size_t kept = 0;
  std::size_t removed_duplicate = 0;
  std::size_t removed_missing_feature = 0;
  std::size_t removed_no_key = 0;
};

// Keeps unique tracks only: duplicates (by id, first occurrence wins), records
// with any missing model feature, and records with key = -1 are removed.
// Idempotent.
inline std::vector<TrackRecord> cleanup(std::span<const TrackRecord> tracks,
                                        CleanupSummary* summary = nullptr) {
  CleanupSummary s;
  s.input = tracks.size();
  std::unordered_set<std::string> seen;
  seen.reserve(tracks.size());
  std::vector<TrackRecord> kept;
  kept.reserve(tracks.size());
  for (const TrackRecord& t : tracks) {
    if (!seen.insert(t.id).second) {
      ++s.removed_duplicate;
      continue;
    }
    if (!has_all_model_features(t)) {
      ++s.removed_missing_feature;
      continue;
    }
    if (has_no_key(t)) {
      ++s.removed_no_key;
      continue;
    }
    kept.push_back(t);
  }
  s.kept = kept.size();
  if (summary) *summary = s;
  return kept;
}

// Duplicates uniformly drawn minority rows (with replacement) until both
// classes have the same count. Original rows are untouched and keep their
// order; copies are appended. Deterministic in seed.
inline FeatureMatrix oversample(const FeatureMatrix& matrix, std::uint64_t seed) {
  std::vector<std::size_t> rows_of[2];
  for (std::size_t r = 0; r < matrix.size(); ++r)
    rows_of[matrix.labels[r] == 1.0 ? 1 : 0].push_back(r);
  if (rows_of[0].empty() || rows_of[1].empty())
    raise(ErrorKind::data, "oversample: both classes must be present");

  const int minority = rows_of[0].size() < rows_of[1].size() ? 0 : 1;
  const std::size_t deficit = rows_of[1 - minority].size() - rows_of[minority].size();
  if (deficit == 0) return matrix;

  Rng rng = Rng::substream(seed, "oversample");
  std::vector<std::size_t> all_rows(matrix.size());
  for (std::size_t r = 0; r < matrix.size(); ++r) all_rows[r] = r;
  for (std::size_t i = 0; i < deficit; ++i) {
    const std::size_t pick = static_cast<std::size_t>(rng.uniform_index(rows_of[minority].size()));
    all_rows.push_back(rows_of[minority][pick]);
  }
  return matrix.select_rows(all_rows);
}

// Per-column min/max over a fitting matrix; application maps each column
// affinely onto [0,1], with unseen values clipped and constant columns sent
// to 0.
struct ScalerModel {
  std::vector<std::string> feature_names;
  std::vector<double> min;
  std::vector<double> max;

  double scale_value(std::size_t column, double v) const {
    const double lo = min[column];
    const double hi = max[column];
    if (hi <= lo) return 0.0;
    const double scaled = (v - lo) / (hi - lo);
    return std::clamp(scaled, 0.0, 1.0);
  }

  void scale_row(std::span<const double> in, std::span<double> out) const {
    for (std::size_t c = 0; c < in.size(); ++c) out[c] = scale_value(c, in[c]);
  }
};

inline ScalerModel fit_scaler(const FeatureMatrix& matrix) {
  if (matrix.size() == 0) raise(ErrorKind::data, "fit_scaler: empty matrix");
  ScalerModel model;
  model.feature_names = matrix.feature_names;
  const std::size_t d = matrix.values.cols();
  model.min.assign(d, 0.0);
  model.max.assign(d, 0.0);
  for (std::size_t c = 0; c < d; ++c) {
    double lo = matrix.values(0, c);
    double hi = lo;
    for (std::size_t r = 1; r < matrix.size(); ++r) {
      lo = std::min(lo, matrix.values(r, c));
      hi = std::max(hi, matrix.values(r, c));
    }
    model.min[c] = lo;
    model.max[c] = hi;
  }
  return model;
}

inline FeatureMatrix apply_scaler(const ScalerModel& model, const FeatureMatrix& matrix) {
  if (model.feature_names != matrix.feature_names)
    raise(ErrorKind::schema, "apply_scaler: column order does not match the fitted scaler");
  FeatureMatrix out = matrix;
  for (std::size_t r = 0; r < out.size(); ++r) model.scale_row(matrix.values.row(r), out.values.row(r));
  return out;
}

inline nlohmann::json to_json(const ScalerModel& model) {
  return {{"features", model.feature_names}, {"min", model.min}, {"max", model.max}};
}

inline ScalerModel scaler_from_json(const nlohmann::json& j) {
  ScalerModel model;
  model.feature_names = j.at("features").get<std::vector<std::string>>();
  model.min = j.at("min").get<std::vector<double>>();
  model.max = j.at("max").get<std::vector<double>>();
  if (model.min.size() != model.feature_names.size() ||
      model.max.size() != model.feature_names.size())
    raise(ErrorKind::schema, "scaler: min/max length does not match feature count");
  return model;
}

}  // namespace hitpredict
