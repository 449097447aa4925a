#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "features.hpp"
#include "series.hpp"

namespace loadtk {

// How the ridge penalty is picked.
//  Auto:  lambda = 1e-6 * trace(A'A) / ncols, scale-free default
//  Exact: no penalty, minimum-norm least squares on the raw design matrix
//  Fixed: caller-supplied lambda
enum class LambdaPolicy { Auto, Exact, Fixed };

struct SolverOptions {
    LambdaPolicy policy = LambdaPolicy::Auto;
    double fixed_lambda = 0;
};

// Accepts "auto", "exact" or "fixed:<value>"; throws ValidationError.
SolverOptions parse_lambda_policy(const std::string& text);

struct TrendEntry {
    int year = 0;
    double mean_mw = 0;
    std::int64_t hours = 0;  // training hours behind the mean
};

// Two-stage hourly load model: per-year mean level plus a linear shape model
// on the detrended residual.
struct Model {
    std::vector<TrendEntry> trend;  // ascending year
    std::vector<double> coef;       // cols::kWidth entries
    double lambda = 0;
    double residual_mean_mw = 0;
    std::int64_t train_start_hour = 0;  // [start, end) of the fit window
    std::int64_t train_end_hour = 0;
    std::int64_t train_rows = 0;

    // Level for a prediction year. Years outside the trained set borrow the
    // nearest trained year; *extrapolated reports when that happened.
    double trend_for_year(int year, bool* extrapolated = nullptr) const;

    std::string to_json() const;
    static Model from_json(const std::string& text);
};

Model fit_model(const FeatureMatrix& m, const SolverOptions& opt = {});

// Applies a model to joined hours (the table's load column is ignored).
std::vector<double> predict(const Model& model, const JoinedTable& table,
                            const CalendarConfig& cal,
                            std::size_t* trend_extrapolated_hours = nullptr);

// Rolling refit: a model trained on the trailing train_months is valid for
// refresh_days, then the window slides forward and the fit is redone.
struct RetrainSchedule {
    int train_months = 26;
    int refresh_days = 167;
};

struct IntervalModel {
    std::int64_t valid_start_hour = 0;  // [start, end)
    std::int64_t valid_end_hour = 0;
    Model model;
};

struct RollingEstimate {
    HourlySeries estimate;  // covers [eval_start, eval_end); hours without
                            // weather stay missing
    std::vector<IntervalModel> models;
    std::size_t trend_extrapolated_hours = 0;
};

// Estimates [eval_start, eval_end) hour indices using data as both training
// history and weather source. Every estimated hour lies strictly after the
// training window of the model that produced it.
// Throws DataError when history before eval_start is shorter than one full
// training window; the message names the earliest estimable timestamp.
RollingEstimate rolling_estimate(const JoinedTable& data, const CalendarConfig& cal,
                                 std::int64_t eval_start_hour, std::int64_t eval_end_hour,
                                 const RetrainSchedule& sched = {},
                                 const SolverOptions& opt = {});

}  // namespace loadtk
