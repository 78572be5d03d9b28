#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace reslevy {

struct Summary {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;

    double se() const { return n > 0 ? sd / std::sqrt(static_cast<double>(n)) : 0.0; }
    double half_width_95() const { return 1.959963984540054 * se(); }
};

inline Summary summarize(const std::vector<double>& xs) {
    Summary s;
    s.n = xs.size();
    if (xs.empty()) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.sd = xs.size() > 1 ? std::sqrt(ss / static_cast<double>(xs.size() - 1)) : 0.0;
    return s;
}

// Kolmogorov coefficient c(level) with threshold c(level)/sqrt(n); the
// classical large-sample approximation c = sqrt(-ln(level/2)/2).
inline double kolmogorov_coefficient(double level) {
    if (!(level > 0.0 && level < 1.0)) throw std::invalid_argument("kolmogorov_coefficient: level in (0,1)");
    return std::sqrt(-0.5 * std::log(level / 2.0));
}

inline double ks_threshold_one_sample(double level, std::size_t n) {
    if (n == 0) throw std::invalid_argument("ks_threshold_one_sample: empty sample");
    return kolmogorov_coefficient(level) / std::sqrt(static_cast<double>(n));
}

inline double ks_threshold_two_sample(double level, std::size_t n, std::size_t m) {
    if (n == 0 || m == 0) throw std::invalid_argument("ks_threshold_two_sample: empty sample");
    const double nn = static_cast<double>(n), mm = static_cast<double>(m);
    return kolmogorov_coefficient(level) * std::sqrt((nn + mm) / (nn * mm));
}

// Two-sided KS statistic of a sample against a CDF. Sorts a copy.
inline double ks_statistic_one_sample(std::vector<double> sample,
                                      const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_statistic_one_sample: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double F = cdf(sample[i]);
        d = std::max(d, std::abs(F - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - F));
    }
    return d;
}

// One-sided statistic sup_t (Fhat(t) - G(t)); positive values mean the
// empirical CDF exceeds G somewhere.
inline double ks_dplus_one_sample(std::vector<double> sample,
                                  const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_dplus_one_sample: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = -1.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        d = std::max(d, static_cast<double>(i + 1) / n - cdf(sample[i]));
    }
    return d;
}

inline double ks_statistic_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

struct KsReport {
    double statistic = 0.0;
    std::size_t n = 0;  // effective sample size: n for one-sample, nm/(n+m) for two-sample
    double threshold = 0.0;
    double level = 0.05;
    bool rejected = false;
};

inline KsReport ks_report_one_sample(const std::vector<double>& sample,
                                     const std::function<double(double)>& cdf,
                                     double level = 0.05) {
    KsReport r;
    r.statistic = ks_statistic_one_sample(sample, cdf);
    r.n = sample.size();
    r.level = level;
    r.threshold = ks_threshold_one_sample(level, sample.size());
    r.rejected = r.statistic > r.threshold;
    return r;
}

inline KsReport ks_report_two_sample(const std::vector<double>& a, const std::vector<double>& b,
                                     double level = 0.05) {
    KsReport r;
    r.statistic = ks_statistic_two_sample(a, b);
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    r.n = static_cast<std::size_t>(na * nb / (na + nb));
    r.level = level;
    r.threshold = ks_threshold_two_sample(level, a.size(), b.size());
    r.rejected = r.statistic > r.threshold;
    return r;
}

}  // namespace reslevy
