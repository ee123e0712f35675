#pragma once

// Exceedance-day counting over a daily series, measured from a configurable
// start of year.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scalewise {

using Date = std::chrono::year_month_day;

/// "YYYY-MM-DD". Throws DomainError on anything else or an invalid date.
Date parse_date(std::string_view text);
std::string format_date(const Date& d);

/// Month and day on which a counting year begins (Jan 1 calendar, Oct 1
/// US federal fiscal).
struct YearStart {
  unsigned month = 1;
  unsigned day = 1;

  bool operator==(const YearStart&) const = default;
};

/// "MM-DD". Throws ConfigError for malformed text, an impossible date or
/// 02-29 (which would not start every year).
YearStart parse_year_start(std::string_view text);
std::string to_string(const YearStart& ys);

/// One flag per consecutive day from `first`: true when the day counts as an
/// exceedance (e.g. ozone in Orange or worse).
class ExceedanceSeries {
 public:
  /// Throws DomainError for an invalid first date or an empty series.
  ExceedanceSeries(Date first, std::vector<bool> flags);

  const Date& first() const noexcept { return first_; }
  Date last() const;
  std::size_t size() const noexcept { return flags_.size(); }
  const std::vector<bool>& flags() const noexcept { return flags_; }
  bool covers(Date d) const;
  /// Throws RangeError outside the series.
  bool at(Date d) const;

 private:
  Date first_;
  std::vector<bool> flags_;
};

struct ExceedanceStats {
  Date year_begin;
  int year_length = 0;
  std::uint64_t total_days = 0;
  /// Date on which the running count first reaches the threshold.
  std::optional<Date> first_date_reaching;
  /// 1-based position of that date within the counting year.
  std::optional<int> threshold_day;
  /// year_length - threshold_day, or year_length when never reached.
  int days_remaining_in_year = 0;
};

/// Counts over the year beginning at `year_start` in `start_year`.
/// Throws DomainError if threshold_count < 1 and RangeError when the series
/// does not cover the whole year.
ExceedanceStats exceedance_stats(const ExceedanceSeries& series, std::uint64_t threshold_count,
                                 const YearStart& year_start, int start_year);

/// Stats for every counting year the series covers completely, in order.
std::vector<ExceedanceStats> exceedance_years(const ExceedanceSeries& series, std::uint64_t threshold_count,
                                              const YearStart& year_start);

/// Movement of the threshold day between two counting years.
struct ThresholdShift {
  int earlier_day = 0;
  int later_day = 0;
  int days_later = 0;
  /// days_later / later_day: 20 / 200 reads as a 10% improvement.
  double relative = 0.0;
};

/// Throws DomainError if either year never reaches its threshold.
ThresholdShift threshold_shift(const ExceedanceStats& earlier, const ExceedanceStats& later);

}  // namespace scalewise
