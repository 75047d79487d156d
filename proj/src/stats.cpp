#include "coal/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

namespace coal::stats {

std::string canonical_key(std::vector<ComponentStat> comps, bool with_surplus) {
    std::sort(comps.begin(), comps.end(), [](const ComponentStat& a, const ComponentStat& b) {
        if (a.size != b.size) return a.size > b.size;
        return a.surplus > b.surplus;
    });
    std::string key;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (i > 0) key += '|';
        key += std::to_string(comps[i].size);
        if (with_surplus) {
            key += 's';
            key += std::to_string(comps[i].surplus);
        }
    }
    return key;
}

std::string joint_key(const std::string& first, const std::string& second) {
    return first + ";" + second;
}

void EmpiricalLaw::add(const std::string& key, long long k) {
    counts[key] += k;
    total += k;
}

void EmpiricalLaw::merge(const EmpiricalLaw& other) {
    for (const auto& [key, k] : other.counts) counts[key] += k;
    total += other.total;
}

double chi_square_upper_tail(double statistic, int dof) {
    if (dof < 1) return 1.0;
    if (statistic <= 0.0) return 1.0;
    return boost::math::gamma_q(0.5 * dof, 0.5 * statistic);
}

double kolmogorov_q(double lambda) {
    if (lambda <= 0.0) return 1.0;
    double sum = 0.0;
    for (int j = 1; j <= 200; ++j) {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        sum += (j % 2 == 1 ? term : -term);
        if (term < 1e-14) break;
    }
    return std::min(1.0, std::max(0.0, 2.0 * sum));
}

namespace {

struct Cell {
    double expected;
    long long observed;
};

GofResult pearson(std::vector<Cell> cells, double min_expected) {
    // Pool low-expectation cells (smallest first) into a single tail cell.
    std::sort(cells.begin(), cells.end(),
              [](const Cell& a, const Cell& b) { return a.expected < b.expected; });
    std::vector<Cell> merged;
    Cell tail{0.0, 0};
    for (const auto& c : cells) {
        if (tail.expected < min_expected) {
            tail.expected += c.expected;
            tail.observed += c.observed;
        } else {
            merged.push_back(c);
        }
    }
    if (tail.expected > 0.0) {
        if (tail.expected < min_expected && !merged.empty()) {
            merged.front().expected += tail.expected;
            merged.front().observed += tail.observed;
        } else {
            merged.push_back(tail);
        }
    }
    GofResult res;
    res.dof = static_cast<int>(merged.size()) - 1;
    for (const auto& c : merged) {
        if (c.expected <= 0.0) continue;
        const double diff = static_cast<double>(c.observed) - c.expected;
        res.statistic += diff * diff / c.expected;
    }
    res.p_value = chi_square_upper_tail(res.statistic, res.dof);
    return res;
}

} // namespace

GofResult chi_square_gof(const EmpiricalLaw& empirical,
                         const std::map<std::string, double>& expected,
                         double min_expected) {
    for (const auto& [key, k] : empirical.counts) {
        if (k > 0 && expected.find(key) == expected.end()) {
            throw UnsupportedOutcome(key);
        }
    }
    const double n = static_cast<double>(empirical.total);
    std::vector<Cell> cells;
    cells.reserve(expected.size());
    for (const auto& [key, p] : expected) {
        const auto it = empirical.counts.find(key);
        cells.push_back({p * n, it == empirical.counts.end() ? 0 : it->second});
    }
    return pearson(std::move(cells), min_expected);
}

GofResult chi_square_homogeneity(const EmpiricalLaw& a, const EmpiricalLaw& b,
                                 double min_expected) {
    std::map<std::string, std::pair<long long, long long>> cells;
    for (const auto& [key, k] : a.counts) cells[key].first += k;
    for (const auto& [key, k] : b.counts) cells[key].second += k;
    const double na = static_cast<double>(a.total);
    const double nb = static_cast<double>(b.total);
    const double n = na + nb;

    // Pool cells whose smaller expected count drops below the threshold.
    std::vector<std::pair<long long, long long>> rows;
    rows.reserve(cells.size());
    for (const auto& [key, c] : cells) rows.push_back(c);
    std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) {
        return x.first + x.second < y.first + y.second;
    });
    const double min_side = std::min(na, nb);
    std::vector<std::pair<long long, long long>> merged;
    std::pair<long long, long long> tail{0, 0};
    auto pooled_expected = [&](const std::pair<long long, long long>& c) {
        return min_side * static_cast<double>(c.first + c.second) / n;
    };
    for (const auto& c : rows) {
        if (pooled_expected(tail) < min_expected) {
            tail.first += c.first;
            tail.second += c.second;
        } else {
            merged.push_back(c);
        }
    }
    if (tail.first + tail.second > 0) {
        if (pooled_expected(tail) < min_expected && !merged.empty()) {
            merged.front().first += tail.first;
            merged.front().second += tail.second;
        } else {
            merged.push_back(tail);
        }
    }

    GofResult res;
    res.dof = static_cast<int>(merged.size()) - 1;
    for (const auto& c : merged) {
        const double pooled = static_cast<double>(c.first + c.second) / n;
        const double ea = na * pooled;
        const double eb = nb * pooled;
        if (ea > 0.0) {
            const double da = static_cast<double>(c.first) - ea;
            res.statistic += da * da / ea;
        }
        if (eb > 0.0) {
            const double db = static_cast<double>(c.second) - eb;
            res.statistic += db * db / eb;
        }
    }
    res.p_value = chi_square_upper_tail(res.statistic, res.dof);
    return res;
}

KsResult ks_two_sided(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) {
        throw std::invalid_argument("ks_two_sided needs at least one sample");
    }
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, f - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - f);
    }
    const double sqrt_n = std::sqrt(n);
    const double lambda = (sqrt_n + 0.12 + 0.11 / sqrt_n) * d;
    return {d, kolmogorov_q(lambda)};
}

double ks_two_sample_d(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("ks_two_sample_d needs nonempty samples");
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

} // namespace coal::stats
