#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace egonet {

using Timestamp = std::chrono::sys_seconds;
using UserId = std::string;

enum class InteractionKind : std::uint8_t { reply, mention, retweet, plain_tweet };

std::string_view to_string(InteractionKind kind);
std::optional<InteractionKind> parse_kind(std::string_view token);

/// True for the kinds that count as direct ego -> alter interactions.
constexpr bool is_social(InteractionKind kind) {
  return kind != InteractionKind::plain_tweet;
}

/// One event in an ego's timeline. `alter` is empty for plain tweets.
struct InteractionRecord {
  UserId ego;
  UserId alter;
  InteractionKind kind = InteractionKind::plain_tweet;
  Timestamp timestamp{};

  friend bool operator==(const InteractionRecord&, const InteractionRecord&) = default;
};

struct Timeline {
  UserId ego;
  std::vector<InteractionRecord> records;  // non-decreasing timestamps
};

using TimelineMap = std::map<UserId, Timeline>;

// ---------------------------------------------------------------------------
// Timestamps

/// Parses `YYYY-MM-DDTHH:MM:SS[.fff](Z|+HH:MM|-HH:MM|+HHMM|-HHMM)` and
/// normalizes to UTC. Fractional seconds are truncated.
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// Canonical UTC form, `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_timestamp(Timestamp t);

std::optional<std::chrono::sys_days> parse_date(std::string_view text);
std::string format_date(std::chrono::sys_days d);

// ---------------------------------------------------------------------------
// Parsing

enum class InputFormat { tsv, csv };

// How a mention line listing several alters (`u2|u3|u4`) is expanded.
enum class MentionMode {
  per_alter,    // one record per mentioned alter
  first_alter,  // one record, attributed to the first listed alter
};

struct ParseOptions {
  InputFormat format = InputFormat::tsv;
  MentionMode mention_mode = MentionMode::per_alter;
};

struct ParseDiagnostic {
  std::size_t line = 0;  // 1-based, in the original stream
  std::string reason;
};

struct ParseResult {
  std::vector<InteractionRecord> records;
  std::vector<ParseDiagnostic> diagnostics;
};

ParseResult parse_interactions(std::istream& in, const ParseOptions& options = {});
ParseResult parse_interactions(std::string_view text, const ParseOptions& options = {});

/// One TSV line (no trailing newline) that parse_interactions reads back
/// into an identical record.
std::string serialize_record(const InteractionRecord& record);
void write_records(std::ostream& out, std::span<const InteractionRecord> records);

TimelineMap build_timelines(std::vector<InteractionRecord> records);

// ---------------------------------------------------------------------------
// Period grid

struct PeriodLength {
  enum class Unit { days, months, years };
  int count = 1;
  Unit unit = Unit::years;

  /// Nominal length in years: 1y = 1, 1m = 1/12, 1d = 1/365.25.
  double nominal_years() const;
  std::string to_string() const;
};

/// Accepts "<n>y", "<n>m" or "<n>d".
std::optional<PeriodLength> parse_period_length(std::string_view text);

/// Half-open interval [start, end).
struct PeriodWindow {
  int index = 0;
  Timestamp start{};
  Timestamp end{};
  double length_years = 1.0;

  bool contains(Timestamp t) const { return start <= t && t < end; }
};

std::chrono::sys_days advance(std::chrono::sys_days anchor, const PeriodLength& length, int steps);

std::vector<PeriodWindow> make_periods(std::chrono::sys_days anchor, int num_periods,
                                       const PeriodLength& length);

/// Records of `timeline` with timestamps in [from, to).
std::span<const InteractionRecord> records_between(const Timeline& timeline, Timestamp from,
                                                   Timestamp to);

}  // namespace egonet
