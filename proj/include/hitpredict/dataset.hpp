#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hitpredict/error.hpp"
#include "hitpredict/matrix.hpp"
#include "hitpredict/rng.hpp"
#include "hitpredict/track.hpp"

namespace hitpredict {

// Numeric view of a track list: one row per track, columns in kModelFeatures
// order (or PC1..PCk after a PCA transform), labels 1 = hit.
struct FeatureMatrix {
  std::vector<std::string> feature_names;
  Matrix values;
  std::vector<double> labels;
  std::vector<std::string> track_ids;

  std::size_t size() const { return values.rows(); }

  void validate() const {
    if (feature_names.size() != values.cols())
      raise(ErrorKind::schema, "feature_names/columns mismatch");
    if (labels.size() != values.rows() || track_ids.size() != values.rows())
      raise(ErrorKind::schema, "labels/track_ids length does not match row count");
    if (!values.all_finite())
      raise(ErrorKind::validation, "matrix contains NaN or infinite entries");
    for (double y : labels)
      if (y != 0.0 && y != 1.0)
        raise(ErrorKind::validation, "labels must be 0 or 1");
  }

  FeatureMatrix select_rows(std::span<const std::size_t> rows) const {
    FeatureMatrix out;
    out.feature_names = feature_names;
    out.values = Matrix(rows.size(), values.cols());
    out.labels.reserve(rows.size());
    out.track_ids.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::size_t r = rows[i];
      for (std::size_t c = 0; c < values.cols(); ++c) out.values(i, c) = values(r, c);
      out.labels.push_back(labels[r]);
      out.track_ids.push_back(track_ids[r]);
    }
    return out;
  }

  std::size_t count_label(double y) const {
    std::size_t n = 0;
    for (double v : labels)
      if (v == y) ++n;
    return n;
  }
};

inline std::vector<std::string> canonical_feature_names() {
  return {kModelFeatures.begin(), kModelFeatures.end()};
}

// Maps records onto the 15 model columns. Rows keep input order; id/artist are
// carried as metadata and album_type is not a column. Every model feature must
// be present (run cleanup first); key = -1 passes through as -1.0.
inline FeatureMatrix to_feature_matrix(std::span<const TrackRecord> tracks) {
  if (tracks.empty()) raise(ErrorKind::data, "empty dataset: no tracks to convert");
  FeatureMatrix m;
  m.feature_names = canonical_feature_names();
  m.values = Matrix(tracks.size(), kModelFeatures.size());
  m.labels.reserve(tracks.size());
  m.track_ids.reserve(tracks.size());
  for (std::size_t r = 0; r < tracks.size(); ++r) {
    const TrackRecord& t = tracks[r];
    if (!has_all_model_features(t))
      raise(ErrorKind::validation,
            "track '" + t.id + "' is missing model features; run cleanup first");
    m.values(r, 0) = t.explicit_lyrics ? 1.0 : 0.0;
    m.values(r, 1) = static_cast<double>(*t.mode);
    m.values(r, 2) = static_cast<double>(*t.key);
    m.values(r, 3) = *t.acousticness;
    m.values(r, 4) = *t.valence;
    m.values(r, 5) = *t.danceability;
    m.values(r, 6) = static_cast<double>(t.popularity);
    m.values(r, 7) = *t.tempo;
    m.values(r, 8) = *t.instrumentalness;
    m.values(r, 9) = *t.liveness;
    m.values(r, 10) = static_cast<double>(t.duration_ms);
    m.values(r, 11) = *t.energy;
    m.values(r, 12) = *t.loudness;
    m.values(r, 13) = *t.speechiness;
    m.values(r, 14) = static_cast<double>(*t.time_signature);
    m.labels.push_back(t.label == Label::hit ? 1.0 : 0.0);
    m.track_ids.push_back(t.id);
  }
  m.validate();
  return m;
}

enum class BalanceMode { paper, strict };  // balance-then-split vs split-then-balance

inline std::string_view to_string(BalanceMode m) {
  return m == BalanceMode::paper ? "paper" : "strict";
}

inline BalanceMode balance_mode_from_string(std::string_view s) {
  if (s == "paper") return BalanceMode::paper;
  if (s == "strict") return BalanceMode::strict;
  raise(ErrorKind::validation, "balance_mode='" + std::string(s) + "' must be paper or strict");
}

struct SplitSpec {
  double train_fraction = 0.7;
  std::uint64_t seed = 0;
  BalanceMode mode = BalanceMode::paper;
};

struct DatasetSplit {
  FeatureMatrix train;
  FeatureMatrix validation;
};

// Stratified shuffle split. |train| = round(train_fraction * N); the per-class
// train counts are the largest-remainder apportionment of that total, so each
// class is split as close to train_fraction as rounding allows. Row order
// within each part preserves the input order. Deterministic in spec.seed.
inline DatasetSplit split(const FeatureMatrix& matrix, const SplitSpec& spec) {
  const std::size_t n = matrix.size();
  if (n < 2) raise(ErrorKind::data, "insufficient data: need at least 2 rows to split");
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
    raise(ErrorKind::parameter, "train_fraction must lie in (0,1)");

  std::vector<std::size_t> class_rows[2];
  for (std::size_t r = 0; r < n; ++r) class_rows[matrix.labels[r] == 1.0 ? 1 : 0].push_back(r);

  const std::size_t total_train =
      static_cast<std::size_t>(std::llround(spec.train_fraction * static_cast<double>(n)));

  // Largest-remainder apportionment of total_train across the two classes.
  std::size_t take[2] = {0, 0};
  double remainder[2] = {0.0, 0.0};
  std::size_t base_sum = 0;
  for (int c = 0; c < 2; ++c) {
    const double target = spec.train_fraction * static_cast<double>(class_rows[c].size());
    take[c] = static_cast<std::size_t>(std::floor(target));
    remainder[c] = target - std::floor(target);
    base_sum += take[c];
  }
  std::size_t extras = total_train > base_sum ? total_train - base_sum : 0;
  while (extras > 0) {
    int pick = (remainder[0] >= remainder[1]) ? 0 : 1;
    if (take[pick] >= class_rows[pick].size()) pick = 1 - pick;
    if (take[pick] >= class_rows[pick].size()) break;
    ++take[pick];
    remainder[pick] = -1.0;
    --extras;
  }
  // Rounding drift (total below the floors' sum) is taken back from the class
  // with the smaller remainder.
  std::size_t shrink = base_sum > total_train ? base_sum - total_train : 0;
  while (shrink > 0) {
    int pick = (remainder[0] <= remainder[1]) ? 0 : 1;
    if (take[pick] == 0) pick = 1 - pick;
    if (take[pick] == 0) break;
    --take[pick];
    remainder[pick] = 2.0;
    --shrink;
  }

  Rng rng = Rng::substream(spec.seed, "split");
  std::vector<std::size_t> train_rows, validation_rows;
  for (int c = 0; c < 2; ++c) {
    std::vector<std::size_t> rows = class_rows[c];
    rng.shuffle(rows);
    for (std::size_t i = 0; i < rows.size(); ++i)
      (i < take[c] ? train_rows : validation_rows).push_back(rows[i]);
  }
  std::sort(train_rows.begin(), train_rows.end());
  std::sort(validation_rows.begin(), validation_rows.end());
  return {matrix.select_rows(train_rows), matrix.select_rows(validation_rows)};
}

}  // namespace hitpredict
