#include "rsse/trellis.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace rsse {

SubsetConfig::SubsetConfig(std::vector<int> entries) : j(std::move(entries)) {
    if (j.empty()) throw std::invalid_argument("config must be nonempty");
    for (int v : j)
        if (v < 1 || v > 4)
            throw std::invalid_argument("config entries must be in {1,2,3,4}");
    for (std::size_t k = 1; k < j.size(); ++k)
        if (j[k] > j[k - 1])
            throw std::invalid_argument(
                "config must be monotone nonincreasing (J_1 >= ... >= J_nu)");
}

PartitionLevel SubsetConfig::level(int k) const {
    return level_from_subset_count(j.at(static_cast<std::size_t>(k)));
}

bool SubsetConfig::is_full() const {
    return std::all_of(j.begin(), j.end(), [](int v) { return v == 4; });
}

std::string SubsetConfig::label() const {
    std::ostringstream out;
    out << '[';
    for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out << ',';
        out << j[k];
    }
    out << ']';
    return out.str();
}

SubsetConfig parse_config(const std::string& text) {
    std::string spaced = text;
    for (char& ch : spaced)
        if (ch == ',') ch = ' ';
    std::vector<int> entries;
    std::istringstream in(spaced);
    std::string token;
    while (in >> token) {
        std::size_t pos = 0;
        int v = 0;
        try {
            v = std::stoi(token, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("invalid config entry: " + token);
        }
        if (pos != token.size())
            throw std::invalid_argument("invalid config entry: " + token);
        entries.push_back(v);
    }
    return SubsetConfig(entries);
}

SubsetConfig full_config(int nu) {
    if (nu < 1) throw std::invalid_argument("memory must be >= 1");
    return SubsetConfig(std::vector<int>(static_cast<std::size_t>(nu), 4));
}

SubsetTrellis::SubsetTrellis(SubsetConfig config, ChannelTarget target)
    : config_(std::move(config)), target_(std::move(target)) {
    if (config_.memory() != target_.memory())
        throw std::invalid_argument(
            "config length must equal the target memory");
    const int nu = config_.memory();

    // Place values for mixed-radix encoding, a(1) most significant.
    radix_weights_.assign(static_cast<std::size_t>(nu), 1);
    for (int k = nu - 2; k >= 0; --k)
        radix_weights_[static_cast<std::size_t>(k)] =
            radix_weights_[static_cast<std::size_t>(k + 1)] *
            config_.j[static_cast<std::size_t>(k + 1)];
    num_states_ = radix_weights_[0] * config_.j[0];

    // Transition table.
    successors_.resize(static_cast<std::size_t>(num_states_) * 4);
    for (int s = 0; s < num_states_; ++s) {
        const std::vector<int> digits = decode_state(s);
        for (int z = 0; z < 4; ++z) {
            std::vector<int> next(static_cast<std::size_t>(nu));
            next[0] = subset_index(z, config_.level(0));
            for (int k = 1; k < nu; ++k)
                next[static_cast<std::size_t>(k)] =
                    reindex_subset(digits[static_cast<std::size_t>(k - 1)],
                                   config_.level(k - 1), config_.level(k));
            successors_[static_cast<std::size_t>(s) * 4 +
                        static_cast<std::size_t>(z)] = encode_state(next);
        }
    }

    // Input groups by subset index at Omega(1).
    input_groups_.assign(static_cast<std::size_t>(config_.j[0]), {});
    for (int z = 0; z < 4; ++z)
        input_groups_[static_cast<std::size_t>(subset_index(z, config_.level(0)))]
            .push_back(z);
}

int SubsetTrellis::encode_state(const std::vector<int>& digits) const {
    const int nu = config_.memory();
    if (static_cast<int>(digits.size()) != nu)
        throw std::invalid_argument("state digit count mismatch");
    int s = 0;
    for (int k = 0; k < nu; ++k) {
        const int d = digits[static_cast<std::size_t>(k)];
        if (d < 0 || d >= config_.j[static_cast<std::size_t>(k)])
            throw std::invalid_argument("state digit out of range");
        s += d * radix_weights_[static_cast<std::size_t>(k)];
    }
    return s;
}

std::vector<int> SubsetTrellis::decode_state(int state) const {
    const int nu = config_.memory();
    if (state < 0 || state >= num_states_)
        throw std::invalid_argument("state id out of range");
    std::vector<int> digits(static_cast<std::size_t>(nu));
    for (int k = 0; k < nu; ++k) {
        digits[static_cast<std::size_t>(k)] =
            state / radix_weights_[static_cast<std::size_t>(k)];
        state %= radix_weights_[static_cast<std::size_t>(k)];
    }
    return digits;
}

int SubsetTrellis::max_parallel() const {
    std::size_t widest = 1;
    for (const auto& g : input_groups_) widest = std::max(widest, g.size());
    return static_cast<int>(widest);
}

}  // namespace rsse
