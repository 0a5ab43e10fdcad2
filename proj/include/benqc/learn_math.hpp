#pragma once

#include <cmath>
#include <span>

namespace benqc {

// Shannon entropy in bits of a count histogram.
inline double entropy_bits(std::span<const double> counts) {
    double total = 0.0;
    for (double c : counts) total += c;
    if (total <= 0.0) return 0.0;
    double h = 0.0;
    for (double c : counts) {
        if (c <= 0.0) continue;
        const double p = c / total;
        h -= p * std::log2(p);
    }
    return h;
}

// Information gain in bits of a binary partition of `parent`.
inline double info_gain_bits(std::span<const double> parent, std::span<const double> left,
                             std::span<const double> right) {
    double n = 0.0, nl = 0.0, nr = 0.0;
    for (double c : parent) n += c;
    for (double c : left) nl += c;
    for (double c : right) nr += c;
    if (n <= 0.0) return 0.0;
    return entropy_bits(parent) - (nl / n) * entropy_bits(left) - (nr / n) * entropy_bits(right);
}

// Split information (the gain-ratio denominator) of a binary partition.
inline double split_info_bits(double n_left, double n_right) {
    const double n = n_left + n_right;
    if (n <= 0.0 || n_left <= 0.0 || n_right <= 0.0) return 0.0;
    const double pl = n_left / n, pr = n_right / n;
    return -pl * std::log2(pl) - pr * std::log2(pr);
}

// FOIL gain of refining a rule from (p0 positives, n0 negatives) covered to
// (p, n) covered. Zero positives after refinement contribute no gain.
inline double foil_gain(double p, double n, double p0, double n0) {
    if (p <= 0.0 || p0 <= 0.0) return 0.0;
    return p * (std::log2(p / (p + n)) - std::log2(p0 / (p0 + n0)));
}

}  // namespace benqc
