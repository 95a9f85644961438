#pragma once

#include <cstdint>
#include <span>

namespace adrsig {

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1],
// evaluated by continued fraction (modified Lentz).
double incomplete_beta(double a, double b, double x);

// P(T <= t) for Student's t with `df` degrees of freedom.
// Throws Errc::NonPositiveDf or Errc::NonFiniteT.
double t_cdf(double t, double df);

// Two-sided p-value 2 * (1 - t_cdf(|t|, df)); infinite |t| gives 0.
double t_two_sided_p(double t, double df);

enum class TTestMode {
    TwoSamplePooled,  // equal-variance Student test, df = 2g - 2
    Paired,           // test on after - before differences, df = g - 1
};

struct TTestResult {
    double t_stat = 0.0;  // positive when the after sample mean is larger
    double df = 0.0;
    double p_value = 1.0;
    double mean_before = 0.0;
    double mean_after = 0.0;
};

// Compares `before` (x) against `after` (y). When the standard error is
// exactly zero, p is 1 for equal means and 0 otherwise.
// Throws Errc::LengthMismatch or Errc::TooFewGroups (g < 2).
TTestResult student_t_test(std::span<const double> before, std::span<const double> after,
                           TTestMode mode = TTestMode::TwoSamplePooled);

struct RatioStats {
    std::uint64_t nb = 0;
    std::uint64_t na = 0;
    std::uint64_t population = 0;
    double r1 = 0.0;          // NA / NB, or NA when NB == 0
    double r2_percent = 0.0;  // 100 * NA / N
};

// Throws Errc::NonPositivePopulation when population == 0.
RatioStats ratio_stats(std::uint64_t nb, std::uint64_t na, std::uint64_t population);

}  // namespace adrsig
