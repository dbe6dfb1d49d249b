#include "rsse/wssjd.hpp"

#include <stdexcept>

namespace rsse {

std::vector<SumDiffSymbol> input_transform(const TrackPair& x) {
    if (x.track_a.size() != x.track_b.size())
        throw std::invalid_argument("input_transform needs equal-length tracks");
    std::vector<SumDiffSymbol> z(x.track_a.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        z[i].z_plus = x.track_a[i] + x.track_b[i];
        z[i].z_minus = x.track_a[i] - x.track_b[i];
    }
    return z;
}

TrackPair inverse_input_transform(const std::vector<SumDiffSymbol>& z) {
    TrackPair x;
    x.track_a.resize(z.size());
    x.track_b.resize(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (joint_index(z[i]) < 0)
            throw std::invalid_argument(
                "inverse_input_transform: symbol outside the constellation");
        x.track_a[i] = (z[i].z_plus + z[i].z_minus) / 2;
        x.track_b[i] = (z[i].z_plus - z[i].z_minus) / 2;
    }
    return x;
}

TransformedReceived output_transform(const ReceivedPair& r, const ItiModel& iti) {
    if (!(iti.epsilon < 1.0))
        throw std::invalid_argument("output_transform needs eps < 1");
    if (r.r_a.size() != r.r_b.size())
        throw std::invalid_argument("output_transform needs equal-length heads");
    const double sp = 1.0 / (1.0 + iti.epsilon);
    const double sm = 1.0 / (1.0 - iti.epsilon);
    TransformedReceived out;
    out.r_plus.resize(r.r_a.size());
    out.r_minus.resize(r.r_a.size());
    for (std::size_t i = 0; i < r.r_a.size(); ++i) {
        out.r_plus[i] = sp * (r.r_a[i] + r.r_b[i]);
        out.r_minus[i] = sm * (r.r_a[i] - r.r_b[i]);
    }
    return out;
}

std::pair<double, double> noiseless_outputs(
    const std::vector<SumDiffSymbol>& z_window, const ChannelTarget& target,
    const ItiModel& iti) {
    if (z_window.size() != target.coefficients.size())
        throw std::invalid_argument("noiseless_outputs needs a nu+1 window");
    double conv_p = 0.0, conv_m = 0.0;
    for (std::size_t i = 0; i < z_window.size(); ++i) {
        conv_p += target.coefficients[i] * static_cast<double>(z_window[i].z_plus);
        conv_m += target.coefficients[i] * static_cast<double>(z_window[i].z_minus);
    }
    double y_plus = conv_p;
    double y_minus = conv_m;
    if (iti.delta_epsilon != 0.0) {
        y_plus += iti.delta_epsilon / (1.0 + iti.epsilon) * conv_m;
        y_minus += iti.delta_epsilon / (iti.epsilon - 1.0) * conv_p;
    }
    return {y_plus, y_minus};
}

}  // namespace rsse
