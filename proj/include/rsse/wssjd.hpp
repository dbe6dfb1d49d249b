// Weighted sum-subtract joint detection coordinate machinery: transforms
// between (a, b) and (+, -) spaces, the noiseless transformed channel
// outputs (with the asymmetric cross-terms), and the weighted branch metric.
//
// With U = [[1,1],[1,-1]], inputs map as z+ = x_a + x_b, z- = x_a - x_b,
// and received samples as r+ = (r_a + r_b)/(1+eps), r- = (r_a - r_b)/(1-eps).
// The transformed noise components then have unequal variances
// 2 sigma^2/(1+eps)^2 and 2 sigma^2/(1-eps)^2, which the branch metric
// compensates with weights (1+eps)^2 and (1-eps)^2.
#pragma once

#include <utility>
#include <vector>

#include "rsse/channel.hpp"
#include "rsse/types.hpp"

namespace rsse {

// Elementwise z+ = x_a + x_b, z- = x_a - x_b.
std::vector<SumDiffSymbol> input_transform(const TrackPair& x);

// Elementwise x_a = (z+ + z-)/2, x_b = (z+ - z-)/2; exact inverse of
// input_transform.  Throws if a symbol is outside the 4-point constellation.
TrackPair inverse_input_transform(const std::vector<SumDiffSymbol>& z);

// r+ = (r_a + r_b)/(1+eps), r- = (r_a - r_b)/(1-eps).  Uses eps only; any
// asymmetric residual crosstalk is modeled in noiseless_outputs instead.
// Throws for eps >= 1.
TransformedReceived output_transform(const ReceivedPair& r, const ItiModel& iti);

// Noiseless transformed outputs for one time step, given the last nu+1
// sum/difference symbols newest-first (window[0] = current symbol).
//
// Symmetric case:   y+ = sum_i h_i z+_{n-i},  y- = sum_i h_i z-_{n-i}.
// Asymmetric case adds the residual cross-terms
//   y+ += (deps/(1+eps)) * sum_i h_i z-_{n-i}
//   y- += (deps/(eps-1)) * sum_i h_i z+_{n-i}
std::pair<double, double> noiseless_outputs(
    const std::vector<SumDiffSymbol>& z_window, const ChannelTarget& target,
    const ItiModel& iti);

// Weighted branch metric (1+eps)^2 (r+ - y+)^2 + (1-eps)^2 (r- - y-)^2.
// For the symmetric channel this equals exactly twice the joint Euclidean
// metric in the original coordinates.
inline double branch_metric(double r_plus, double r_minus, double y_plus,
                            double y_minus, const ItiModel& iti) {
    const double wp = (1.0 + iti.epsilon) * (1.0 + iti.epsilon);
    const double wm = (1.0 - iti.epsilon) * (1.0 - iti.epsilon);
    const double dp = r_plus - y_plus;
    const double dm = r_minus - y_minus;
    return wp * dp * dp + wm * dm * dm;
}

}  // namespace rsse
