#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "series.hpp"

namespace loadtk {

// Estimation error statistics over a window. The error convention is
// actual minus estimated, so a negative mean means the model sits above
// the measured load. Variance is the population form (divide by n).
struct ErrorStats {
    std::size_t n = 0;
    double mean_mw = 0;
    double variance_mw2 = 0;
};

ErrorStats error_stats(std::span<const double> actual, std::span<const double> estimated);

// Mean-shift test between a reference window and a test window: the gap
// between mean errors must exceed k times the larger standard error of the
// two means.
struct GateDecision {
    double diff_mw = 0;       // |mean_test - mean_ref|
    double scale_mw = 0;      // max of the two standard errors
    double k = 0;
    bool significant = false; // diff > k * scale
};

GateDecision anomaly_gate(const ErrorStats& reference, const ErrorStats& test, double k = 10.0);

// Energy variation index of one aggregation window, in percent of the
// estimated energy. Positive when the estimate exceeds the metered energy.
double evi_pct(double estimated_mwh, double actual_mwh);

struct DailyEvi {
    CivilDate date;
    double evi = 0;  // percent
};
std::vector<DailyEvi> daily_evi(const std::vector<DailyAggregate>& days);

struct MonthlyEvi {
    int year = 0;
    int month = 0;
    std::size_t days = 0;
    double actual_mwh = 0;
    double estimated_mwh = 0;
    double evi = 0;  // percent
};
std::vector<MonthlyEvi> monthly_evi(const std::vector<DailyAggregate>& days);

// Running sum of (estimated - actual) day by day, reported in GWh.
struct AccumulatedPoint {
    CivilDate date;
    double accumulated_gwh = 0;
};
std::vector<AccumulatedPoint> accumulated_difference_gwh(const std::vector<DailyAggregate>& days);

// Quantile with linear interpolation between order statistics, h = (n-1)p.
double quantile_linear(std::vector<double> values, double p);

struct FiveNumber {
    std::size_t n = 0;
    double min = 0;
    double q1 = 0;
    double median = 0;
    double q3 = 0;
    double max = 0;
};
FiveNumber five_number(std::vector<double> values);

// Hour-to-hour load changes; pairs spanning a missing hour are skipped.
std::vector<double> hourly_ramps(const HourlySeries& series);

struct MaeMape {
    std::size_t n = 0;
    double mae_mw = 0;
    // absent when no row has a nonzero actual to divide by
    std::optional<double> mape_pct;
};
MaeMape mae_mape(std::span<const double> actual, std::span<const double> estimated);

// (current - baseline) / baseline, in percent.
double relative_change_pct(double baseline, double current);

// Pearson correlation with a two-sided p-value from the exact t reference
// distribution on n-2 degrees of freedom.
struct Correlation {
    std::size_t n = 0;
    double r = 0;
    double p_value = 1;
};
Correlation pearson(std::span<const double> x, std::span<const double> y);

// Regularized incomplete beta I_x(a, b); exposed for direct verification.
double regularized_incomplete_beta(double a, double b, double x);

// Two-sided tail probability of Student's t with nu degrees of freedom.
double student_t_two_sided_p(double t, double nu);

}  // namespace loadtk
