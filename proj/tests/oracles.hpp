#pragma once

// Reference computations used only by tests. Each one takes a different route from the
// library code it checks: brute force, counting, or straight-line loops.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <map>
#include <vector>

namespace oracle {

using Seq = std::vector<int>;

/// Every sequence over {0..symbols-1} with length <= max_len.
inline std::vector<Seq> all_sequences(int symbols, std::size_t max_len)
{
    std::vector<Seq> out{{}};
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out[i].size() == max_len) continue;
        for (int s = 0; s < symbols; ++s) {
            Seq next = out[i];
            next.push_back(s);
            out.push_back(next);
        }
    }
    return out;
}

/// Single insert / delete / substitute neighbours within the length bound.
inline std::vector<Seq> edit_neighbours(const Seq& s, int symbols, std::size_t max_len)
{
    std::vector<Seq> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        Seq del = s;
        del.erase(del.begin() + static_cast<std::ptrdiff_t>(i));
        out.push_back(del);
        for (int c = 0; c < symbols; ++c) {
            if (c == s[i]) continue;
            Seq sub = s;
            sub[i] = c;
            out.push_back(sub);
        }
    }
    if (s.size() < max_len) {
        for (std::size_t i = 0; i <= s.size(); ++i) {
            for (int c = 0; c < symbols; ++c) {
                Seq ins = s;
                ins.insert(ins.begin() + static_cast<std::ptrdiff_t>(i), c);
                out.push_back(ins);
            }
        }
    }
    return out;
}

/// Shortest edit path from `from` to every sequence of the bounded space, by breadth-first search.
/// An optimal path never needs to leave the length range of its endpoints, so the bound is exact
/// for pairs within it.
inline std::map<Seq, int> edit_paths_from(const Seq& from, int symbols, std::size_t max_len)
{
    std::map<Seq, int> dist{{from, 0}};
    std::deque<Seq> frontier{from};
    while (!frontier.empty()) {
        Seq cur = frontier.front();
        frontier.pop_front();
        const int d = dist[cur];
        for (auto& next : edit_neighbours(cur, symbols, max_len)) {
            if (dist.emplace(next, d + 1).second) frontier.push_back(std::move(next));
        }
    }
    return dist;
}

/// k-th smallest (0-based) by counting, no sorting.
inline double order_statistic(const std::vector<double>& x, std::size_t k)
{
    for (double v : x) {
        std::size_t less = 0, less_eq = 0;
        for (double u : x) {
            less += u < v;
            less_eq += u <= v;
        }
        if (less <= k && k < less_eq) return v;
    }
    return std::nan("");
}

inline double mean(const std::vector<double>& x)
{
    double s = 0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

inline double median(const std::vector<double>& x)
{
    const std::size_t n = x.size();
    if (n % 2 == 1) return order_statistic(x, n / 2);
    return (order_statistic(x, n / 2 - 1) + order_statistic(x, n / 2)) / 2.0;
}

/// x[0] is the newest sample; weight of the i-th previous sample is exp(-(1 - (k - i)) / k).
inline double ewa(const std::vector<double>& newest_first)
{
    const double k = static_cast<double>(newest_first.size());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < newest_first.size(); ++i) {
        const double w = std::exp(-(1.0 - (k - static_cast<double>(i))) / k);
        num += w * newest_first[i];
        den += w;
    }
    return num / den;
}

/// (sum_j w_j p_j) / J recomputed from scratch.
inline std::vector<double> batch_weighted_mean(const std::vector<std::vector<double>>& probs,
                                               const std::vector<double>& weights)
{
    std::vector<double> out(probs.front().size(), 0.0);
    for (std::size_t j = 0; j < probs.size(); ++j) {
        for (std::size_t c = 0; c < out.size(); ++c) out[c] += weights[j] * probs[j][c];
    }
    for (double& v : out) v /= static_cast<double>(probs.size());
    return out;
}

} // namespace oracle
