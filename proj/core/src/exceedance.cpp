#include "scalewise/exceedance.hpp"

#include <charconv>
#include <cstdio>

#include "scalewise/error.hpp"

namespace scalewise {

namespace chr = std::chrono;

namespace {

bool parse_uint(std::string_view text, unsigned& out) {
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

Date parse_date(std::string_view text) {
  unsigned y = 0;
  unsigned m = 0;
  unsigned d = 0;
  if (text.size() != 10 || text[4] != '-' || text[7] != '-' || !parse_uint(text.substr(0, 4), y) ||
      !parse_uint(text.substr(5, 2), m) || !parse_uint(text.substr(8, 2), d)) {
    throw DomainError("expected a date as YYYY-MM-DD, got '" + std::string(text) + "'");
  }
  const Date date{chr::year{static_cast<int>(y)}, chr::month{m}, chr::day{d}};
  if (!date.ok()) throw DomainError("no such date: " + std::string(text));
  return date;
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                static_cast<unsigned>(d.day()));
  return buf;
}

YearStart parse_year_start(std::string_view text) {
  YearStart ys;
  if (text.size() != 5 || text[2] != '-' || !parse_uint(text.substr(0, 2), ys.month) ||
      !parse_uint(text.substr(3, 2), ys.day)) {
    throw ConfigError("year start must be MM-DD, got '" + std::string(text) + "'");
  }
  const chr::month_day md{chr::month{ys.month}, chr::day{ys.day}};
  if (!md.ok()) throw ConfigError("no such month/day: " + std::string(text));
  if (ys.month == 2 && ys.day == 29) throw ConfigError("a year cannot start on 02-29");
  return ys;
}

std::string to_string(const YearStart& ys) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02u-%02u", ys.month, ys.day);
  return buf;
}

ExceedanceSeries::ExceedanceSeries(Date first, std::vector<bool> flags) : first_(first), flags_(std::move(flags)) {
  if (!first_.ok()) throw DomainError("invalid series start date");
  if (flags_.empty()) throw DomainError("empty exceedance series");
}

Date ExceedanceSeries::last() const {
  return Date{chr::sys_days{first_} + chr::days{static_cast<int>(flags_.size()) - 1}};
}

bool ExceedanceSeries::covers(Date d) const {
  const auto offset = (chr::sys_days{d} - chr::sys_days{first_}).count();
  return offset >= 0 && static_cast<std::size_t>(offset) < flags_.size();
}

bool ExceedanceSeries::at(Date d) const {
  if (!covers(d)) throw RangeError("date " + format_date(d) + " is outside the series");
  return flags_[static_cast<std::size_t>((chr::sys_days{d} - chr::sys_days{first_}).count())];
}

ExceedanceStats exceedance_stats(const ExceedanceSeries& series, std::uint64_t threshold_count,
                                 const YearStart& year_start, int start_year) {
  if (threshold_count < 1) throw DomainError("threshold count must be at least 1");
  const chr::month m{year_start.month};
  const chr::day d{year_start.day};
  const Date begin{chr::year{start_year}, m, d};
  const Date next{chr::year{start_year + 1}, m, d};
  if (!begin.ok() || !next.ok()) throw ConfigError("invalid year start " + to_string(year_start));

  ExceedanceStats out;
  out.year_begin = begin;
  out.year_length = static_cast<int>((chr::sys_days{next} - chr::sys_days{begin}).count());
  const Date end{chr::sys_days{next} - chr::days{1}};
  if (!series.covers(begin) || !series.covers(end)) {
    throw RangeError("series " + format_date(series.first()) + ".." + format_date(series.last()) +
                     " does not cover the year " + format_date(begin) + ".." + format_date(end));
  }
  out.days_remaining_in_year = out.year_length;
  for (int i = 0; i < out.year_length; ++i) {
    const Date day{chr::sys_days{begin} + chr::days{i}};
    if (!series.at(day)) continue;
    if (++out.total_days == threshold_count) {
      out.first_date_reaching = day;
      out.threshold_day = i + 1;
      out.days_remaining_in_year = out.year_length - (i + 1);
    }
  }
  return out;
}

std::vector<ExceedanceStats> exceedance_years(const ExceedanceSeries& series, std::uint64_t threshold_count,
                                              const YearStart& year_start) {
  std::vector<ExceedanceStats> out;
  const int first = static_cast<int>(series.first().year());
  const int last = static_cast<int>(series.last().year());
  for (int y = first - 1; y <= last; ++y) {
    const Date begin{chr::year{y}, chr::month{year_start.month}, chr::day{year_start.day}};
    const Date end{chr::sys_days{Date{chr::year{y + 1}, begin.month(), begin.day()}} - chr::days{1}};
    if (series.covers(begin) && series.covers(end)) {
      out.push_back(exceedance_stats(series, threshold_count, year_start, y));
    }
  }
  return out;
}

ThresholdShift threshold_shift(const ExceedanceStats& earlier, const ExceedanceStats& later) {
  if (!earlier.threshold_day || !later.threshold_day) {
    throw DomainError("threshold not reached in both years");
  }
  ThresholdShift s;
  s.earlier_day = *earlier.threshold_day;
  s.later_day = *later.threshold_day;
  s.days_later = s.later_day - s.earlier_day;
  s.relative = static_cast<double>(s.days_later) / static_cast<double>(s.later_day);
  return s;
}

}  // namespace scalewise
