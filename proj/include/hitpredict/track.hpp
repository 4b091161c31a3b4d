#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "hitpredict/error.hpp"

namespace hitpredict {

enum class AlbumType { album, single, compilation };

enum class Label { non_hit = 0, hit = 1 };

inline std::string_view to_string(AlbumType t) {
  switch (t) {
    case AlbumType::album: return "album";
    case AlbumType::single: return "single";
    case AlbumType::compilation: return "compilation";
  }
  return "album";
}

inline AlbumType album_type_from_string(std::string_view s) {
  if (s == "album") return AlbumType::album;
  if (s == "single") return AlbumType::single;
  if (s == "compilation") return AlbumType::compilation;
  raise(ErrorKind::validation, "album_type='" + std::string(s) +
                                   "' is not one of album/single/compilation");
}

// One Spotify track: identity fields, the per-track attributes, and the
// hit label. Audio fields are optional because they are only known after the
// features endpoint answered; records with gaps are removed by cleanup().
struct TrackRecord {
  std::string id;
  std::string artist;
  int popularity = 0;  // 0..100
  bool explicit_lyrics = false;
  AlbumType album_type = AlbumType::album;

  std::optional<double> danceability;      // [0,1]
  std::optional<double> energy;            // [0,1]
  std::optional<int> key;                  // 0..11 pitch class, -1 = no key detected
  std::optional<double> loudness;          // dB
  std::optional<int> mode;                 // 1 major, 0 minor
  std::optional<double> speechiness;       // [0,1]
  std::optional<double> acousticness;      // [0,1]
  std::optional<double> instrumentalness;  // [0,1]
  std::optional<double> liveness;          // [0,1]
  std::optional<double> valence;           // [0,1]
  std::optional<double> tempo;             // BPM, > 0
  long long duration_ms = 0;               // > 0
  std::optional<int> time_signature;       // 1..7

  Label label = Label::non_hit;

  bool operator==(const TrackRecord&) const = default;
};

// Model input columns, in the fixed order used by every matrix in the toolkit.
inline constexpr std::array<std::string_view, 15> kModelFeatures = {
    "explicit",         "mode",     "key",         "acousticness",
    "valence",          "danceability", "popularity", "tempo",
    "instrumentalness", "liveness", "duration_ms", "energy",
    "loudness",         "speechiness",  "time_signature"};

namespace detail {

inline void check_unit_interval(std::string_view field, const std::optional<double>& v,
                                const std::string& where) {
  if (!v) return;
  if (!std::isfinite(*v) || *v < 0.0 || *v > 1.0)
    raise(ErrorKind::validation, where + std::string(field) + "=" + std::to_string(*v) +
                                     " out of range [0,1]");
}

}  // namespace detail

// Throws ErrorKind::validation naming the offending field and value.
inline void validate(const TrackRecord& t, const std::string& where = "") {
  if (t.id.empty()) raise(ErrorKind::validation, where + "id is empty");
  if (t.popularity < 0 || t.popularity > 100)
    raise(ErrorKind::validation,
          where + "popularity=" + std::to_string(t.popularity) + " out of range [0,100]");
  detail::check_unit_interval("danceability", t.danceability, where);
  detail::check_unit_interval("energy", t.energy, where);
  detail::check_unit_interval("speechiness", t.speechiness, where);
  detail::check_unit_interval("acousticness", t.acousticness, where);
  detail::check_unit_interval("instrumentalness", t.instrumentalness, where);
  detail::check_unit_interval("liveness", t.liveness, where);
  detail::check_unit_interval("valence", t.valence, where);
  if (t.key && (*t.key < -1 || *t.key > 11))
    raise(ErrorKind::validation,
          where + "key=" + std::to_string(*t.key) + " out of range [-1,11]");
  if (t.loudness && !std::isfinite(*t.loudness))
    raise(ErrorKind::validation, where + "loudness is not finite");
  if (t.mode && *t.mode != 0 && *t.mode != 1)
    raise(ErrorKind::validation, where + "mode=" + std::to_string(*t.mode) + " must be 0 or 1");
  if (t.tempo && (!std::isfinite(*t.tempo) || *t.tempo <= 0.0))
    raise(ErrorKind::validation,
          where + "tempo=" + std::to_string(*t.tempo) + " must be positive");
  if (t.duration_ms <= 0)
    raise(ErrorKind::validation,
          where + "duration_ms=" + std::to_string(t.duration_ms) + " must be positive");
  if (t.time_signature && (*t.time_signature < 1 || *t.time_signature > 7))
    raise(ErrorKind::validation, where + "time_signature=" +
                                     std::to_string(*t.time_signature) + " out of range [1,7]");
}

// True when every model feature is populated (key = -1 counts as populated;
// cleanup treats it as a separate removal reason).
inline bool has_all_model_features(const TrackRecord& t) {
  return t.danceability && t.energy && t.key && t.loudness && t.mode && t.speechiness &&
         t.acousticness && t.instrumentalness && t.liveness && t.valence && t.tempo &&
         t.time_signature;
}

inline bool has_no_key(const TrackRecord& t) { return t.key && *t.key == -1; }

}  // namespace hitpredict
