#include "ingest.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace egonet {

namespace chr = std::chrono;

std::string_view to_string(InteractionKind kind) {
  switch (kind) {
    case InteractionKind::reply: return "reply";
    case InteractionKind::mention: return "mention";
    case InteractionKind::retweet: return "retweet";
    case InteractionKind::plain_tweet: return "plain_tweet";
  }
  return "?";
}

std::optional<InteractionKind> parse_kind(std::string_view token) {
  if (token == "reply") return InteractionKind::reply;
  if (token == "mention") return InteractionKind::mention;
  if (token == "retweet") return InteractionKind::retweet;
  if (token == "plain_tweet") return InteractionKind::plain_tweet;
  return std::nullopt;
}

namespace {

bool read_fixed_int(std::string_view text, std::size_t pos, std::size_t width, int& out) {
  if (pos + width > text.size()) return false;
  int value = 0;
  for (std::size_t i = pos; i < pos + width; ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  out = value;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const auto pos = line.find(sep, begin);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(begin));
      break;
    }
    fields.push_back(line.substr(begin, pos - begin));
    begin = pos + 1;
  }
  return fields;
}

bool valid_user_id(std::string_view id) {
  if (id.empty()) return false;
  return std::none_of(id.begin(), id.end(), [](char c) {
    return c == '\t' || c == ',' || c == '|' || c == ' ' || c == '\n' || c == '"';
  });
}

}  // namespace

std::optional<chr::sys_days> parse_date(std::string_view text) {
  int y = 0, m = 0, d = 0;
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  if (!read_fixed_int(text, 0, 4, y) || !read_fixed_int(text, 5, 2, m) ||
      !read_fixed_int(text, 8, 2, d))
    return std::nullopt;
  const chr::year_month_day ymd{chr::year{y}, chr::month{static_cast<unsigned>(m)},
                                chr::day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) return std::nullopt;
  return chr::sys_days{ymd};
}

std::string format_date(chr::sys_days d) {
  const chr::year_month_day ymd{d};
  return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  text = trim(text);
  if (text.size() < 20 || text[10] != 'T' || text[13] != ':' || text[16] != ':')
    return std::nullopt;
  const auto date = parse_date(text.substr(0, 10));
  if (!date) return std::nullopt;
  int hh = 0, mm = 0, ss = 0;
  if (!read_fixed_int(text, 11, 2, hh) || !read_fixed_int(text, 14, 2, mm) ||
      !read_fixed_int(text, 17, 2, ss))
    return std::nullopt;
  if (hh > 23 || mm > 59 || ss > 59) return std::nullopt;

  std::size_t pos = 19;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    const std::size_t digits_start = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == digits_start) return std::nullopt;
  }
  if (pos >= text.size()) return std::nullopt;

  chr::seconds offset{0};
  const std::string_view zone = text.substr(pos);
  if (zone == "Z") {
    // UTC
  } else if (zone[0] == '+' || zone[0] == '-') {
    int oh = 0, om = 0;
    if (zone.size() == 6 && zone[3] == ':') {
      if (!read_fixed_int(zone, 1, 2, oh) || !read_fixed_int(zone, 4, 2, om)) return std::nullopt;
    } else if (zone.size() == 5) {
      if (!read_fixed_int(zone, 1, 2, oh) || !read_fixed_int(zone, 3, 2, om)) return std::nullopt;
    } else {
      return std::nullopt;
    }
    if (oh > 23 || om > 59) return std::nullopt;
    offset = chr::hours{oh} + chr::minutes{om};
    if (zone[0] == '-') offset = -offset;
  } else {
    return std::nullopt;
  }
  const Timestamp local = chr::sys_seconds{*date} + chr::hours{hh} + chr::minutes{mm} +
                          chr::seconds{ss};
  return local - offset;
}

std::string format_timestamp(Timestamp t) {
  const auto day = chr::floor<chr::days>(t);
  const chr::hh_mm_ss hms{t - day};
  return fmt::format("{}T{:02d}:{:02d}:{:02d}Z", format_date(day), hms.hours().count(),
                     hms.minutes().count(), hms.seconds().count());
}

namespace {

void parse_line(std::string_view line, std::size_t line_no, const ParseOptions& options,
                ParseResult& result) {
  const char sep = options.format == InputFormat::csv ? ',' : '\t';
  const auto fields = split(line, sep);
  auto reject = [&](std::string reason) {
    result.diagnostics.push_back({line_no, std::move(reason)});
  };
  if (fields.size() != 4) {
    reject(fmt::format("malformed line: expected 4 fields, found {}", fields.size()));
    return;
  }
  const std::string_view ego = trim(fields[0]);
  const std::string_view alters = trim(fields[1]);
  const std::string_view kind_token = trim(fields[2]);

  if (!valid_user_id(ego)) {
    reject("malformed line: invalid ego_id");
    return;
  }
  const auto kind = parse_kind(kind_token);
  if (!kind) {
    reject(fmt::format("unknown kind '{}'", kind_token));
    return;
  }
  const auto ts = parse_timestamp(fields[3]);
  if (!ts) {
    reject(fmt::format("unparseable timestamp '{}'", trim(fields[3])));
    return;
  }

  if (*kind == InteractionKind::plain_tweet) {
    if (!alters.empty()) {
      reject("plain_tweet must not carry an alter_id");
      return;
    }
    result.records.push_back({UserId{ego}, {}, *kind, *ts});
    return;
  }

  if (alters.empty()) {
    reject(fmt::format("{} requires an alter_id", to_string(*kind)));
    return;
  }
  const auto targets = split(alters, '|');
  if (targets.size() > 1 && *kind != InteractionKind::mention) {
    reject(fmt::format("multiple alters are only allowed for mention, not {}", to_string(*kind)));
    return;
  }
  for (const auto target : targets) {
    if (!valid_user_id(target)) {
      reject("malformed line: invalid alter_id");
      return;
    }
    if (target == ego) {
      reject("self-directed interaction");
      return;
    }
  }
  const std::size_t take =
      options.mention_mode == MentionMode::first_alter ? std::size_t{1} : targets.size();
  for (std::size_t i = 0; i < take; ++i)
    result.records.push_back({UserId{ego}, UserId{targets[i]}, *kind, *ts});
}

bool is_csv_header(std::string_view line) {
  return trim(line).substr(0, 7) == "ego_id,";
}

}  // namespace

ParseResult parse_interactions(std::istream& in, const ParseOptions& options) {
  ParseResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (trim(view).empty() || view.front() == '#') continue;
    if (options.format == InputFormat::csv && line_no == 1 && is_csv_header(view)) continue;
    parse_line(view, line_no, options, result);
  }
  return result;
}

ParseResult parse_interactions(std::string_view text, const ParseOptions& options) {
  std::istringstream in{std::string{text}};
  return parse_interactions(in, options);
}

std::string serialize_record(const InteractionRecord& record) {
  return fmt::format("{}\t{}\t{}\t{}", record.ego, record.alter, to_string(record.kind),
                     format_timestamp(record.timestamp));
}

void write_records(std::ostream& out, std::span<const InteractionRecord> records) {
  std::string buffer;
  for (const auto& r : records) {
    buffer += serialize_record(r);
    buffer += '\n';
    if (buffer.size() > (1u << 20)) {
      out << buffer;
      buffer.clear();
    }
  }
  out << buffer;
}

TimelineMap build_timelines(std::vector<InteractionRecord> records) {
  TimelineMap timelines;
  Timeline* current = nullptr;
  for (auto& r : records) {
    if (!current || current->ego != r.ego) {
      current = &timelines[r.ego];
      if (current->ego.empty()) current->ego = r.ego;
    }
    current->records.push_back(std::move(r));
  }
  const auto by_time = [](const auto& a, const auto& b) { return a.timestamp < b.timestamp; };
  for (auto& [ego, tl] : timelines)
    if (!std::is_sorted(tl.records.begin(), tl.records.end(), by_time))
      std::stable_sort(tl.records.begin(), tl.records.end(), by_time);
  return timelines;
}

double PeriodLength::nominal_years() const {
  switch (unit) {
    case Unit::years: return count;
    case Unit::months: return count / 12.0;
    case Unit::days: return count / 365.25;
  }
  return count;
}

std::string PeriodLength::to_string() const {
  const char suffix = unit == Unit::years ? 'y' : unit == Unit::months ? 'm' : 'd';
  return fmt::format("{}{}", count, suffix);
}

std::optional<PeriodLength> parse_period_length(std::string_view text) {
  text = trim(text);
  if (text.size() < 2) return std::nullopt;
  PeriodLength length;
  switch (text.back()) {
    case 'y': length.unit = PeriodLength::Unit::years; break;
    case 'm': length.unit = PeriodLength::Unit::months; break;
    case 'd': length.unit = PeriodLength::Unit::days; break;
    default: return std::nullopt;
  }
  const auto digits = text.substr(0, text.size() - 1);
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), length.count);
  if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
  return length;
}

chr::sys_days advance(chr::sys_days anchor, const PeriodLength& length, int steps) {
  const long total = static_cast<long>(length.count) * steps;
  if (length.unit == PeriodLength::Unit::days) return anchor + chr::days{total};
  const chr::year_month_day ymd{anchor};
  const chr::months delta = length.unit == PeriodLength::Unit::years ? chr::years{total}
                                                                      : chr::months{total};
  const chr::year_month_day shifted = ymd + delta;
  if (shifted.ok()) return chr::sys_days{shifted};
  // Clamp e.g. Jan 31 + 1 month to the last day of February.
  return chr::sys_days{chr::year_month_day_last{shifted.year(),
                                                chr::month_day_last{shifted.month()}}};
}

std::vector<PeriodWindow> make_periods(chr::sys_days anchor, int num_periods,
                                       const PeriodLength& length) {
  if (num_periods < 1) throw std::invalid_argument("number of periods must be at least 1");
  if (length.count < 1) throw std::invalid_argument("period length must be positive");
  std::vector<PeriodWindow> periods;
  periods.reserve(static_cast<std::size_t>(num_periods));
  for (int k = 0; k < num_periods; ++k) {
    periods.push_back({k, chr::sys_seconds{advance(anchor, length, k)},
                       chr::sys_seconds{advance(anchor, length, k + 1)}, length.nominal_years()});
  }
  return periods;
}

std::span<const InteractionRecord> records_between(const Timeline& timeline, Timestamp from,
                                                   Timestamp to) {
  const auto& recs = timeline.records;
  const auto lo = std::lower_bound(recs.begin(), recs.end(), from,
                                   [](const auto& r, Timestamp t) { return r.timestamp < t; });
  const auto hi = std::lower_bound(lo, recs.end(), to,
                                   [](const auto& r, Timestamp t) { return r.timestamp < t; });
  return {lo, hi};
}

}  // namespace egonet
