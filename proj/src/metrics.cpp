#include "metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "errors.hpp"

namespace loadtk {

ErrorStats error_stats(std::span<const double> actual, std::span<const double> estimated) {
    if (actual.size() != estimated.size())
        throw DataError("actual and estimated series differ in length");
    if (actual.empty()) throw DataError("cannot compute error statistics on an empty window");

    ErrorStats out;
    out.n = actual.size();
    double sum = 0;
    for (std::size_t i = 0; i < actual.size(); ++i) sum += actual[i] - estimated[i];
    out.mean_mw = sum / static_cast<double>(out.n);
    double ss = 0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        double d = (actual[i] - estimated[i]) - out.mean_mw;
        ss += d * d;
    }
    out.variance_mw2 = ss / static_cast<double>(out.n);
    return out;
}

GateDecision anomaly_gate(const ErrorStats& reference, const ErrorStats& test, double k) {
    if (k <= 0) throw ValidationError("gate multiplier must be positive");
    if (reference.n == 0 || test.n == 0)
        throw DataError("gate windows must both contain data");
    GateDecision out;
    out.k = k;
    out.diff_mw = std::abs(test.mean_mw - reference.mean_mw);
    double se_ref = std::sqrt(reference.variance_mw2 / static_cast<double>(reference.n));
    double se_test = std::sqrt(test.variance_mw2 / static_cast<double>(test.n));
    out.scale_mw = std::max(se_ref, se_test);
    out.significant = out.diff_mw > k * out.scale_mw;
    return out;
}

double evi_pct(double estimated_mwh, double actual_mwh) {
    if (estimated_mwh == 0) throw DataError("estimated energy is zero, variation index undefined");
    return (estimated_mwh - actual_mwh) / estimated_mwh * 100.0;
}

std::vector<DailyEvi> daily_evi(const std::vector<DailyAggregate>& days) {
    std::vector<DailyEvi> out;
    out.reserve(days.size());
    for (const auto& d : days)
        out.push_back(DailyEvi{d.date, evi_pct(d.energy_estimated_mwh, d.energy_actual_mwh)});
    return out;
}

std::vector<MonthlyEvi> monthly_evi(const std::vector<DailyAggregate>& days) {
    std::map<std::pair<int, int>, MonthlyEvi> by_month;
    for (const auto& d : days) {
        auto& m = by_month[{d.date.year, d.date.month}];
        m.year = d.date.year;
        m.month = d.date.month;
        m.days += 1;
        m.actual_mwh += d.energy_actual_mwh;
        m.estimated_mwh += d.energy_estimated_mwh;
    }
    std::vector<MonthlyEvi> out;
    out.reserve(by_month.size());
    for (auto& [_, m] : by_month) {
        m.evi = evi_pct(m.estimated_mwh, m.actual_mwh);
        out.push_back(m);
    }
    return out;
}

std::vector<AccumulatedPoint> accumulated_difference_gwh(const std::vector<DailyAggregate>& days) {
    std::vector<AccumulatedPoint> out;
    out.reserve(days.size());
    double accum = 0;
    for (const auto& d : days) {
        accum += d.energy_estimated_mwh - d.energy_actual_mwh;
        out.push_back(AccumulatedPoint{d.date, accum / 1000.0});
    }
    return out;
}

double quantile_linear(std::vector<double> values, double p) {
    if (values.empty()) throw DataError("quantile of an empty sample");
    if (p < 0 || p > 1) throw ValidationError("quantile probability must lie in [0, 1]");
    std::sort(values.begin(), values.end());
    double h = static_cast<double>(values.size() - 1) * p;
    auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= values.size()) return values.back();
    double frac = h - static_cast<double>(lo);
    return values[lo] + frac * (values[lo + 1] - values[lo]);
}

FiveNumber five_number(std::vector<double> values) {
    if (values.empty()) throw DataError("five-number summary of an empty sample");
    std::sort(values.begin(), values.end());
    FiveNumber out;
    out.n = values.size();
    out.min = values.front();
    out.max = values.back();
    auto at = [&](double p) {
        double h = static_cast<double>(values.size() - 1) * p;
        auto lo = static_cast<std::size_t>(h);
        if (lo + 1 >= values.size()) return values.back();
        return values[lo] + (h - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
    };
    out.q1 = at(0.25);
    out.median = at(0.5);
    out.q3 = at(0.75);
    return out;
}

std::vector<double> hourly_ramps(const HourlySeries& series) {
    std::vector<double> out;
    if (series.size() < 2) return out;
    const auto& v = series.values();
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        if (HourlySeries::is_missing(v[i]) || HourlySeries::is_missing(v[i + 1])) continue;
        out.push_back(v[i + 1] - v[i]);
    }
    return out;
}

MaeMape mae_mape(std::span<const double> actual, std::span<const double> estimated) {
    if (actual.size() != estimated.size())
        throw DataError("actual and estimated series differ in length");
    if (actual.empty()) throw DataError("cannot score an empty window");
    MaeMape out;
    out.n = actual.size();
    double abs_sum = 0;
    double pct_sum = 0;
    std::size_t pct_n = 0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        double e = std::abs(actual[i] - estimated[i]);
        abs_sum += e;
        if (actual[i] != 0) {
            pct_sum += e / std::abs(actual[i]);
            ++pct_n;
        }
    }
    out.mae_mw = abs_sum / static_cast<double>(out.n);
    if (pct_n > 0) out.mape_pct = pct_sum / static_cast<double>(pct_n) * 100.0;
    return out;
}

double relative_change_pct(double baseline, double current) {
    if (baseline == 0) throw DataError("relative change against a zero baseline");
    return (current - baseline) / baseline * 100.0;
}

namespace {

// Continued fraction for the incomplete beta, evaluated with the modified
// Lentz method.
double beta_cont_frac(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;

    double qab = a + b;
    double qap = a + 1;
    double qam = a - 1;
    double c = 1;
    double d = 1 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1) < kEps) break;
    }
    return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (a <= 0 || b <= 0) throw ValidationError("beta parameters must be positive");
    if (x < 0 || x > 1) throw ValidationError("incomplete beta argument must lie in [0, 1]");
    if (x == 0) return 0;
    if (x == 1) return 1;
    double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                      a * std::log(x) + b * std::log1p(-x);
    double front = std::exp(ln_front);
    if (x < (a + 1) / (a + b + 2)) return front * beta_cont_frac(a, b, x) / a;
    return 1 - front * beta_cont_frac(b, a, 1 - x) / b;
}

double student_t_two_sided_p(double t, double nu) {
    if (nu <= 0) throw ValidationError("degrees of freedom must be positive");
    if (!std::isfinite(t)) return 0;
    double x = nu / (nu + t * t);
    return regularized_incomplete_beta(nu / 2.0, 0.5, x);
}

Correlation pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DataError("correlation inputs differ in length");
    if (x.size() < 3) throw DataError("correlation needs at least three pairs");
    auto n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dx = x[i] - mx;
        double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0 || syy == 0) throw DataError("correlation undefined for a constant series");

    Correlation out;
    out.n = x.size();
    out.r = sxy / std::sqrt(sxx * syy);
    out.r = std::clamp(out.r, -1.0, 1.0);
    double nu = n - 2;
    double denom = 1 - out.r * out.r;
    if (denom <= 0) {
        out.p_value = 0;
    } else {
        double t = out.r * std::sqrt(nu / denom);
        out.p_value = student_t_two_sided_p(t, nu);
    }
    return out;
}

}  // namespace loadtk
