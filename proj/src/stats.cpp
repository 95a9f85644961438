#include "adrsig/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "adrsig/error.hpp"

namespace adrsig {

namespace {

constexpr double kTiny = 1e-300;
constexpr double kEps = 1e-16;
constexpr int kMaxIterations = 100000;

// Continued fraction for I_x(a, b), converging fast for x < (a+1)/(a+b+2).
double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) return h;
    }
    throw Error(Errc::InvalidArgument, "incomplete beta continued fraction did not converge");
}

// I_x(a, b) given both x and y = 1 - x, so callers can supply y without cancellation.
double incomplete_beta_xy(double a, double b, double x, double y) {
    if (x <= 0.0) return 0.0;
    if (y <= 0.0) return 1.0;
    const double log_front =
        a * std::log(x) + b * std::log(y) - (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, y) / b;
}

void check_df(double df) {
    if (!(df > 0.0) || !std::isfinite(df)) {
        throw Error(Errc::NonPositiveDf, "degrees of freedom must be positive and finite");
    }
}

// P(T > |t|) = I_{df/(df+t^2)}(df/2, 1/2) / 2
double upper_tail(double abs_t, double df) {
    const double ratio = abs_t * abs_t / df;
    if (!std::isfinite(ratio)) return 0.0;
    const double x = 1.0 / (1.0 + ratio);
    const double y = ratio / (1.0 + ratio);
    return 0.5 * incomplete_beta_xy(0.5 * df, 0.5, x, y);
}

struct Moments {
    double mean = 0.0;
    double sum_sq_dev = 0.0;
};

Moments moments(std::span<const double> v) {
    Moments m;
    for (double x : v) m.mean += x;
    m.mean /= static_cast<double>(v.size());
    for (double x : v) m.sum_sq_dev += (x - m.mean) * (x - m.mean);
    return m;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw Error(Errc::InvalidArgument, "incomplete beta needs a, b > 0");
    if (!(x >= 0.0 && x <= 1.0)) throw Error(Errc::InvalidArgument, "incomplete beta needs x in [0, 1]");
    return incomplete_beta_xy(a, b, x, 1.0 - x);
}

double t_cdf(double t, double df) {
    check_df(df);
    if (!std::isfinite(t)) throw Error(Errc::NonFiniteT, "t must be finite");
    const double tail = upper_tail(std::fabs(t), df);
    return t > 0.0 ? 1.0 - tail : tail;
}

double t_two_sided_p(double t, double df) {
    check_df(df);
    if (std::isnan(t)) throw Error(Errc::NonFiniteT, "t is NaN");
    if (std::isinf(t)) return 0.0;
    return std::clamp(2.0 * upper_tail(std::fabs(t), df), 0.0, 1.0);
}

TTestResult student_t_test(std::span<const double> before, std::span<const double> after, TTestMode mode) {
    if (before.size() != after.size()) {
        throw Error(Errc::LengthMismatch, "samples differ in length (" + std::to_string(before.size()) + " vs " +
                                              std::to_string(after.size()) + ")");
    }
    const std::size_t g = before.size();
    if (g < 2) throw Error(Errc::TooFewGroups, "need at least 2 groups, got " + std::to_string(g));
    const double n = static_cast<double>(g);

    const Moments mb = moments(before);
    const Moments ma = moments(after);
    TTestResult r;
    r.mean_before = mb.mean;
    r.mean_after = ma.mean;

    double diff = 0.0;
    double se = 0.0;
    if (mode == TTestMode::TwoSamplePooled) {
        r.df = 2.0 * n - 2.0;
        const double pooled_var = (mb.sum_sq_dev + ma.sum_sq_dev) / r.df;
        se = std::sqrt(pooled_var * (2.0 / n));
        diff = ma.mean - mb.mean;
    } else {
        r.df = n - 1.0;
        double mean_d = 0.0;
        for (std::size_t i = 0; i < g; ++i) mean_d += after[i] - before[i];
        mean_d /= n;
        double ss = 0.0;
        for (std::size_t i = 0; i < g; ++i) {
            const double dev = (after[i] - before[i]) - mean_d;
            ss += dev * dev;
        }
        se = std::sqrt(ss / r.df / n);
        diff = mean_d;
    }

    if (se == 0.0) {
        if (diff == 0.0) {
            r.t_stat = 0.0;
            r.p_value = 1.0;
        } else {
            r.t_stat = std::copysign(std::numeric_limits<double>::infinity(), diff);
            r.p_value = 0.0;
        }
        return r;
    }
    r.t_stat = diff / se;
    r.p_value = t_two_sided_p(r.t_stat, r.df);
    return r;
}

RatioStats ratio_stats(std::uint64_t nb, std::uint64_t na, std::uint64_t population) {
    if (population == 0) throw Error(Errc::NonPositivePopulation, "population size must be >= 1");
    RatioStats s;
    s.nb = nb;
    s.na = na;
    s.population = population;
    s.r1 = static_cast<double>(na) / static_cast<double>(std::max<std::uint64_t>(nb, 1));
    s.r2_percent = 100.0 * static_cast<double>(na) / static_cast<double>(population);
    return s;
}

}  // namespace adrsig
