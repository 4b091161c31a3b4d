#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hitpredict/error.hpp"
#include "hitpredict/track.hpp"

namespace hitpredict {

// Shortest decimal form that round-trips the exact double.
inline std::string format_double(double v) {
  std::array<char, 64> buf;
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

inline double parse_double(std::string_view text, const std::string& context) {
  double value = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    raise(ErrorKind::data, context + ": cannot parse '" + std::string(text) + "' as a number");
  if (!std::isfinite(value))
    raise(ErrorKind::validation, context + ": non-finite value '" + std::string(text) + "'");
  return value;
}

inline long long parse_int(std::string_view text, const std::string& context) {
  long long value = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    raise(ErrorKind::data, context + ": cannot parse '" + std::string(text) + "' as an integer");
  return value;
}

inline bool parse_bool(std::string_view text, const std::string& context) {
  if (text == "0" || text == "false") return false;
  if (text == "1" || text == "true") return true;
  raise(ErrorKind::data, context + ": cannot parse '" + std::string(text) + "' as a boolean");
}

// --- low-level CSV ----------------------------------------------------------

// Reads one record (possibly spanning lines inside quotes). Returns false at EOF.
inline bool read_csv_record(std::istream& in, std::vector<std::string>& fields) {
  fields.clear();
  int c = in.get();
  if (c == EOF) return false;
  std::string field;
  bool quoted = false;
  for (;;) {
    if (c == EOF) break;
    char ch = static_cast<char>(c);
    if (quoted) {
      if (ch == '"') {
        const int peek = in.peek();
        if (peek == '"') {
          field.push_back('"');
          in.get();
        } else {
          quoted = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (ch == '\n') {
      break;
    } else if (ch == '\r') {
      // swallow; \r\n handled when \n arrives
    } else {
      field.push_back(ch);
    }
    c = in.get();
  }
  fields.push_back(std::move(field));
  return true;
}

inline std::string csv_escape(std::string_view field) {
  const bool needs_quotes = field.find_first_of(",\"\n\r") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

inline void write_csv_record(std::ostream& out, std::span<const std::string> fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.put(',');
    out << csv_escape(fields[i]);
  }
  out.put('\n');
}

// --- track schema -----------------------------------------------------------

inline constexpr std::array<std::string_view, 19> kTrackCsvHeader = {
    "id",       "artist",       "popularity",       "explicit", "album_type",
    "danceability", "energy",   "key",              "loudness", "mode",
    "speechiness",  "acousticness", "instrumentalness", "liveness", "valence",
    "tempo",    "duration_ms",  "time_signature",   "hit"};

namespace detail {

inline void check_track_header(const std::vector<std::string>& header) {
  for (std::string_view want : kTrackCsvHeader) {
    bool found = false;
    for (const auto& got : header)
      if (got == want) { found = true; break; }
    if (!found)
      raise(ErrorKind::schema, "header is missing column '" + std::string(want) + "'");
  }
  for (const auto& got : header) {
    bool known = false;
    for (std::string_view want : kTrackCsvHeader)
      if (got == want) { known = true; break; }
    if (!known) raise(ErrorKind::schema, "header has unexpected column '" + got + "'");
  }
  if (header.size() != kTrackCsvHeader.size())
    raise(ErrorKind::schema, "header has a duplicated column");
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] != kTrackCsvHeader[i])
      raise(ErrorKind::schema, "header column " + std::to_string(i + 1) + " is '" + header[i] +
                                   "', expected '" + std::string(kTrackCsvHeader[i]) + "'");
}

template <typename T, typename Parse>
std::optional<T> parse_optional(const std::string& cell, Parse&& parse) {
  if (cell.empty()) return std::nullopt;
  return parse(cell);
}

}  // namespace detail

inline std::vector<TrackRecord> load_tracks_csv(std::istream& in) {
  std::vector<std::string> row;
  if (!read_csv_record(in, row)) raise(ErrorKind::schema, "empty file: no header row");
  detail::check_track_header(row);

  std::vector<TrackRecord> tracks;
  std::size_t line = 1;
  while (read_csv_record(in, row)) {
    ++line;
    if (row.size() == 1 && row[0].empty()) continue;  // trailing blank line
    if (row.size() != kTrackCsvHeader.size())
      raise(ErrorKind::data, "row " + std::to_string(line) + ": expected " +
                                 std::to_string(kTrackCsvHeader.size()) + " fields, got " +
                                 std::to_string(row.size()));
    const std::string ctx = "row " + std::to_string(line);
    TrackRecord t;
    t.id = row[0];
    t.artist = row[1];
    t.popularity = static_cast<int>(parse_int(row[2], ctx + " popularity"));
    t.explicit_lyrics = parse_bool(row[3], ctx + " explicit");
    t.album_type = album_type_from_string(row[4]);
    auto opt_double = [&](const std::string& cell, const char* name) {
      return detail::parse_optional<double>(
          cell, [&](const std::string& s) { return parse_double(s, ctx + " " + name); });
    };
    auto opt_int = [&](const std::string& cell, const char* name) {
      return detail::parse_optional<int>(cell, [&](const std::string& s) {
        return static_cast<int>(parse_int(s, ctx + " " + name));
      });
    };
    t.danceability = opt_double(row[5], "danceability");
    t.energy = opt_double(row[6], "energy");
    t.key = opt_int(row[7], "key");
    t.loudness = opt_double(row[8], "loudness");
    t.mode = opt_int(row[9], "mode");
    t.speechiness = opt_double(row[10], "speechiness");
    t.acousticness = opt_double(row[11], "acousticness");
    t.instrumentalness = opt_double(row[12], "instrumentalness");
    t.liveness = opt_double(row[13], "liveness");
    t.valence = opt_double(row[14], "valence");
    t.tempo = opt_double(row[15], "tempo");
    t.duration_ms = parse_int(row[16], ctx + " duration_ms");
    t.time_signature = opt_int(row[17], "time_signature");
    const long long hit = parse_int(row[18], ctx + " hit");
    if (hit != 0 && hit != 1)
      raise(ErrorKind::validation, ctx + ": hit=" + std::to_string(hit) + " must be 0 or 1");
    t.label = hit == 1 ? Label::hit : Label::non_hit;
    validate(t, ctx + ": ");
    tracks.push_back(std::move(t));
  }
  return tracks;
}

inline std::vector<TrackRecord> load_tracks_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(ErrorKind::io, "cannot open '" + path.string() + "'");
  try {
    return load_tracks_csv(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.what());
  }
}

inline void write_tracks_csv(std::ostream& out, std::span<const TrackRecord> tracks) {
  std::vector<std::string> row(kTrackCsvHeader.size());
  for (std::size_t i = 0; i < kTrackCsvHeader.size(); ++i) row[i] = kTrackCsvHeader[i];
  write_csv_record(out, row);
  auto opt_str = [](const std::optional<double>& v) { return v ? format_double(*v) : ""; };
  auto opt_int_str = [](const std::optional<int>& v) { return v ? std::to_string(*v) : ""; };
  for (const TrackRecord& t : tracks) {
    row[0] = t.id;
    row[1] = t.artist;
    row[2] = std::to_string(t.popularity);
    row[3] = t.explicit_lyrics ? "1" : "0";
    row[4] = std::string(to_string(t.album_type));
    row[5] = opt_str(t.danceability);
    row[6] = opt_str(t.energy);
    row[7] = opt_int_str(t.key);
    row[8] = opt_str(t.loudness);
    row[9] = opt_int_str(t.mode);
    row[10] = opt_str(t.speechiness);
    row[11] = opt_str(t.acousticness);
    row[12] = opt_str(t.instrumentalness);
    row[13] = opt_str(t.liveness);
    row[14] = opt_str(t.valence);
    row[15] = opt_str(t.tempo);
    row[16] = std::to_string(t.duration_ms);
    row[17] = opt_int_str(t.time_signature);
    row[18] = t.label == Label::hit ? "1" : "0";
    write_csv_record(out, row);
  }
}

inline void write_tracks_csv(const std::filesystem::path& path,
                             std::span<const TrackRecord> tracks) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorKind::io, "cannot write '" + path.string() + "'");
  write_tracks_csv(out, tracks);
}

}  // namespace hitpredict
