#include "rsse/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "rsse/detector.hpp"
#include "rsse/errspec.hpp"
#include "rsse/rng.hpp"
#include "rsse/wssjd.hpp"

namespace rsse {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::string fmt(const char* format, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, value);
    return buf;
}

}  // namespace

std::string DetectorSpec::label() const {
    if (ml) return "ml";
    return SubsetConfig(config).label();
}

DetectorSpec parse_detector(const std::string& text) {
    DetectorSpec spec;
    const std::string t = trim(text);
    if (t == "ml" || t == "ML") {
        spec.ml = true;
        return spec;
    }
    spec.config = parse_config(t).j;
    return spec;
}

void SimPlan::validate() const {
    validate_iti(iti);
    if (target.coefficients.size() < 2)
        throw std::invalid_argument("plan target has no memory");
    if (detectors.empty())
        throw std::invalid_argument("plan has no detectors");
    if (snr_db.empty())
        throw std::invalid_argument("plan has no SNR points");
    if (min_errors < 100)
        throw std::invalid_argument("min_errors must be at least 100");
    if (max_bits < 1)
        throw std::invalid_argument("max_bits must be positive");
    const int nu = target.memory();
    if (block_length < 100 * nu)
        throw std::invalid_argument(
            "block length must be at least 100x the channel memory");
    long long ml_states = 1;
    for (int k = 0; k < nu; ++k) ml_states *= 4;
    for (const DetectorSpec& d : detectors) {
        if (d.ml) {
            if (ml_states > 4096)
                throw std::invalid_argument(
                    "joint reference detector limited to memory <= 6");
        } else {
            SubsetTrellis probe(SubsetConfig(d.config), target);  // throws if bad
        }
    }
}

std::vector<BerPoint> run_ber(const SimPlan& plan) {
    plan.validate();
    const int nu = plan.target.memory();
    const int guard = nu;
    const std::size_t n = static_cast<std::size_t>(plan.block_length);

    // Build every subset trellis up front so an invalid configuration is
    // reported before any simulation work starts.
    std::vector<std::unique_ptr<SubsetTrellis>> trellises(plan.detectors.size());
    for (std::size_t di = 0; di < plan.detectors.size(); ++di) {
        if (!plan.detectors[di].ml)
            trellises[di] = std::make_unique<SubsetTrellis>(
                SubsetConfig(plan.detectors[di].config), plan.target);
    }

    std::vector<BerPoint> points;
    for (std::size_t di = 0; di < plan.detectors.size(); ++di) {
        const DetectorSpec& det = plan.detectors[di];
        bool curve_done = false;
        for (std::size_t si = 0; si < plan.snr_db.size(); ++si) {
            if (curve_done) continue;
            const double snr = plan.snr_db[si];
            const double sigma = snr_to_sigma(plan.target, snr);

            long long bits = 0, ea = 0, eb = 0;
            for (long long b = 0;; ++b) {
                if (ea + eb >= plan.min_errors || bits >= plan.max_bits) break;
                // Common random numbers: the seed ignores the detector
                // index, so every detector sees the same blocks and loss
                // comparisons are paired.
                const std::uint64_t block_seed = hash_seed(
                    plan.seed, static_cast<std::uint64_t>(si),
                    static_cast<std::uint64_t>(b));
                const TrackPair x = generate_inputs(n, block_seed);
                const ReceivedPair r =
                    transmit(x, plan.target, plan.iti, sigma, block_seed);
                DecodeResult res;
                if (det.ml) {
                    res = detect_ml_reference(r, plan.target, plan.iti);
                } else {
                    const TransformedReceived t = output_transform(r, plan.iti);
                    res = detect(t, *trellises[di], plan.iti);
                }
                const ErrorCount c = count_errors(res, x, guard);
                ea += c.errors_a;
                eb += c.errors_b;
                bits += c.counted_bits;
            }

            BerPoint p;
            p.detector = det.label();
            p.snr_db = snr;
            p.bits = bits;
            p.errors_a = ea;
            p.errors_b = eb;
            p.ber = bits > 0 ? static_cast<double>(ea + eb) /
                                   static_cast<double>(bits)
                             : 0.0;
            points.push_back(p);
            if (plan.stop_below_ber > 0.0 && p.ber < plan.stop_below_ber)
                curve_done = true;
        }
    }
    return points;
}

std::string ber_csv(const std::vector<BerPoint>& points) {
    std::ostringstream out;
    out << "detector,snr_db,bits,errors_a,errors_b,ber\n";
    for (const BerPoint& p : points) {
        out << p.detector << ',' << fmt("%.6g", p.snr_db) << ',' << p.bits
            << ',' << p.errors_a << ',' << p.errors_b << ','
            << fmt("%.6g", p.ber) << '\n';
    }
    return out.str();
}

namespace {

// Interpolated SNR where one detector's curve crosses ber_target, or
// reached=false if no adjacent pair of positive-BER points brackets it.
std::pair<bool, double> cross_snr(std::vector<BerPoint> curve,
                                  double ber_target) {
    std::stable_sort(curve.begin(), curve.end(),
                     [](const BerPoint& a, const BerPoint& b) {
                         return a.snr_db < b.snr_db;
                     });
    for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
        const double hi = curve[i].ber, lo = curve[i + 1].ber;
        if (hi >= ber_target && ber_target >= lo && lo > 0.0) {
            if (hi == lo) return {true, curve[i].snr_db};
            const double f = (std::log10(hi) - std::log10(ber_target)) /
                             (std::log10(hi) - std::log10(lo));
            return {true,
                    curve[i].snr_db + f * (curve[i + 1].snr_db - curve[i].snr_db)};
        }
    }
    return {false, 0.0};
}

}  // namespace

std::vector<SnrLoss> snr_loss_from_points(const std::vector<BerPoint>& points,
                                          double ber_target) {
    if (!(ber_target > 0.0))
        throw std::invalid_argument("ber_target must be positive");
    // Group per detector, preserving first-appearance order.
    std::vector<std::string> order;
    std::map<std::string, std::vector<BerPoint>> curves;
    for (const BerPoint& p : points) {
        if (!curves.count(p.detector)) order.push_back(p.detector);
        curves[p.detector].push_back(p);
    }
    if (!curves.count("ml"))
        throw std::invalid_argument(
            "loss comparison needs an \"ml\" detector in the point set");
    const auto ml = cross_snr(curves["ml"], ber_target);

    std::vector<SnrLoss> losses;
    for (const std::string& name : order) {
        SnrLoss l;
        l.detector = name;
        const auto c = cross_snr(curves[name], ber_target);
        l.reached = c.first && ml.first;
        if (c.first) l.snr_db = c.second;
        if (l.reached) l.loss_db = c.second - ml.second;
        losses.push_back(l);
    }
    return losses;
}

std::vector<SnrLoss> snr_loss_at(const SimPlan& plan, double ber_target) {
    return snr_loss_from_points(run_ber(plan), ber_target);
}

// ----- plan files ---------------------------------------------------------

std::map<std::string, std::string> read_plan_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open plan file: " + path);
    std::map<std::string, std::string> keys;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": empty key");
        keys[key] = value;
    }
    return keys;
}

namespace {

ChannelTarget target_from_text(const std::string& text) {
    static const char* kPresets[] = {"dicode", "pr2", "epr4", "mp1", "mp2"};
    for (const char* p : kPresets)
        if (text == p) return make_target(text);
    // Otherwise a comma/space separated tap list.
    std::vector<double> taps;
    std::string norm = text;
    for (char& c : norm)
        if (c == ',') c = ' ';
    std::istringstream in(norm);
    double v;
    while (in >> v) taps.push_back(v);
    if (!in.eof())
        throw std::invalid_argument("unknown target: " + text);
    return make_target(taps);
}

std::vector<double> snr_from_text(const std::string& text) {
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3)
            throw std::invalid_argument("snr range must be start:step:stop");
        const double start = std::stod(trim(parts[0]));
        const double step = std::stod(trim(parts[1]));
        const double stop = std::stod(trim(parts[2]));
        if (!(step > 0.0) || stop < start)
            throw std::invalid_argument("snr range must ascend");
        for (double s = start; s <= stop + 1e-9; s += step) grid.push_back(s);
        return grid;
    }
    for (const std::string& piece : split(text, ';'))
        for (const std::string& fine : split(piece, ','))
            if (!trim(fine).empty()) grid.push_back(std::stod(trim(fine)));
    if (grid.empty()) throw std::invalid_argument("empty snr list");
    return grid;
}

}  // namespace

SimPlan plan_from_keys(const std::map<std::string, std::string>& keys) {
    static const char* kKnown[] = {"target",     "epsilon", "depsilon",
                                   "configs",    "snr",     "seed",
                                   "block",      "min_errors", "max_bits"};
    for (const auto& [key, value] : keys) {
        bool known = false;
        for (const char* k : kKnown) known = known || key == k;
        if (!known) throw std::invalid_argument("unknown plan key: " + key);
        (void)value;
    }
    for (const char* req : {"target", "configs", "snr"})
        if (!keys.count(req))
            throw std::invalid_argument(std::string("plan is missing key: ") +
                                        req);

    SimPlan plan;
    plan.target = target_from_text(keys.at("target"));
    if (keys.count("epsilon")) plan.iti.epsilon = std::stod(keys.at("epsilon"));
    if (keys.count("depsilon"))
        plan.iti.delta_epsilon = std::stod(keys.at("depsilon"));
    for (const std::string& piece : split(keys.at("configs"), ';'))
        if (!trim(piece).empty()) plan.detectors.push_back(parse_detector(piece));
    plan.snr_db = snr_from_text(keys.at("snr"));
    if (keys.count("seed"))
        plan.seed = static_cast<std::uint64_t>(std::stoull(keys.at("seed")));
    if (keys.count("block")) plan.block_length = std::stoi(keys.at("block"));
    if (keys.count("min_errors"))
        plan.min_errors = std::stoll(keys.at("min_errors"));
    if (keys.count("max_bits")) plan.max_bits = std::stoll(keys.at("max_bits"));
    plan.validate();
    return plan;
}

// ----- canned reproductions ----------------------------------------------

namespace {

constexpr double kLossBer = 1e-4;

SimPlan make_plan(const std::string& target, double eps, double deps,
                  const std::vector<std::string>& detectors, double snr_lo,
                  double snr_step, double snr_hi, long long min_errors,
                  long long max_bits, double stop_below, std::uint64_t seed) {
    SimPlan plan;
    plan.target = make_target(target);
    plan.iti.epsilon = eps;
    plan.iti.delta_epsilon = deps;
    for (const std::string& d : detectors)
        plan.detectors.push_back(parse_detector(d));
    for (double s = snr_lo; s <= snr_hi + 1e-9; s += snr_step)
        plan.snr_db.push_back(s);
    plan.seed = seed;
    plan.min_errors = min_errors;
    plan.max_bits = max_bits;
    plan.stop_below_ber = stop_below;
    return plan;
}

// SNR-loss table at BER 1e-4: one CSV with a row per (epsilon, detector).
std::string loss_table(const std::string& target,
                       const std::vector<std::string>& detectors,
                       const std::vector<double>& eps_list,
                       const std::vector<double>& base_snr,
                       std::uint64_t seed) {
    std::ostringstream out;
    out << "epsilon,detector,snr_at_ber_1e-4,loss_db\n";
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
        SimPlan plan = make_plan(target, eps_list[e], 0.0, detectors,
                                 base_snr[e] - 0.6, 0.4, base_snr[e] + 3.0,
                                 500, 40000000, 2e-5, seed);
        const auto losses = snr_loss_from_points(run_ber(plan), kLossBer);
        for (const SnrLoss& l : losses) {
            out << fmt("%.6g", eps_list[e]) << ',' << l.detector << ',';
            if (l.reached)
                out << fmt("%.3f", l.snr_db) << ',' << fmt("%.3f", l.loss_db);
            else
                out << ",not_reached";
            out << '\n';
        }
    }
    return out.str();
}

// Dominant early-merged event table: one text line per (config, epsilon).
std::string dominant_table(const std::string& target,
                           const std::vector<std::string>& configs,
                           const std::vector<double>& eps_list) {
    const ChannelTarget t = make_target(target);
    std::ostringstream out;
    for (const std::string& cfg : configs) {
        for (double eps : eps_list) {
            const SubsetConfig config = parse_config(cfg);
            ItiModel iti;
            iti.epsilon = eps;
            const DominantReport rep = dominant_early_events(t, config, iti);
            out << config.label() << " eps=" << fmt("%.6g", eps)
                << " dmin_ml=" << fmt("%.4f", rep.dmin_ml) << " events:";
            for (const ErrorEvent& ev : rep.listed)
                out << ' ' << ev.rendered << '/' << fmt("%.4f", ev.distance);
            out << '\n';
        }
    }
    return out.str();
}

// Early-merge minimum-distance grid over the interference offset, for the
// asymmetric channel.
std::string offset_grid(const std::string& target, double eps,
                        const std::vector<double>& deps_list,
                        const std::vector<std::string>& configs) {
    const ChannelTarget t = make_target(target);
    std::ostringstream out;
    out << "config";
    for (double d : deps_list) out << ",deps=" << fmt("%.6g", d);
    out << '\n';
    out << "ml_dmin";
    for (double d : deps_list)
        out << ',' << fmt("%.2f", dmin_closed_form(target, eps, d));
    out << '\n';
    for (const std::string& cfg : configs) {
        const SubsetConfig config = parse_config(cfg);
        out << config.label();
        for (double d : deps_list) {
            ItiModel iti;
            iti.epsilon = eps;
            iti.delta_epsilon = d;
            const DominantReport rep = dominant_early_events(t, config, iti);
            out << ',' << fmt("%.2f", rep.dmin_early);
        }
        out << '\n';
    }
    return out.str();
}

// BER curve family: one CSV accumulating every (epsilon, depsilon) sweep.
std::string curve_csv(
    const std::string& target, const std::vector<std::string>& detectors,
    const std::vector<std::pair<double, double>>& iti_list,
    const std::vector<std::vector<double>>& snr_grids, std::uint64_t seed) {
    std::ostringstream out;
    out << "detector,epsilon,depsilon,snr_db,bits,errors_a,errors_b,ber\n";
    for (std::size_t i = 0; i < iti_list.size(); ++i) {
        SimPlan plan;
        plan.target = make_target(target);
        plan.iti.epsilon = iti_list[i].first;
        plan.iti.delta_epsilon = iti_list[i].second;
        for (const std::string& d : detectors)
            plan.detectors.push_back(parse_detector(d));
        plan.snr_db = snr_grids[i];
        plan.seed = seed;
        plan.min_errors = 300;
        plan.max_bits = 50000000;
        plan.stop_below_ber = 3e-6;
        for (const BerPoint& p : run_ber(plan)) {
            out << p.detector << ',' << fmt("%.6g", plan.iti.epsilon) << ','
                << fmt("%.6g", plan.iti.delta_epsilon) << ','
                << fmt("%.6g", p.snr_db) << ',' << p.bits << ',' << p.errors_a
                << ',' << p.errors_b << ',' << fmt("%.6g", p.ber) << '\n';
        }
    }
    return out.str();
}

std::vector<double> grid(double lo, double step, double hi) {
    std::vector<double> g;
    for (double s = lo; s <= hi + 1e-9; s += step) g.push_back(s);
    return g;
}

}  // namespace

ReproduceResult reproduce(const std::string& id, std::uint64_t seed) {
    std::string key = id;
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    ReproduceResult result;
    result.id = key;
    const std::vector<double> eps4 = {0.1, 0.2, 0.3, 0.4};

    if (key == "II") {
        result.files.emplace_back(
            "table_ii_pr2_loss.csv",
            loss_table("pr2", {"ml", "4,3", "4,2", "3,3", "4,1"}, eps4,
                       {10.1, 10.0, 10.2, 10.9}, seed));
    } else if (key == "III") {
        result.files.emplace_back(
            "table_iii_epr4_loss.csv",
            loss_table("epr4",
                       {"ml", "4,3,3", "4,4,2", "4,3,2", "4,2,2", "3,3,3",
                        "4,3,1"},
                       eps4, {8.4, 8.3, 8.6, 9.9}, seed));
    } else if (key == "V") {
        result.files.emplace_back(
            "table_v_mp1_events.txt",
            dominant_table("mp1",
                           {"3,3,3", "3,3,2", "4,3,2", "4,2,2", "3,2,2",
                            "4,2,1"},
                           eps4));
    } else if (key == "VI") {
        result.files.emplace_back(
            "table_vi_pr2_events.txt",
            dominant_table("pr2", {"4,3", "4,2", "3,3"}, eps4));
    } else if (key == "VII") {
        result.files.emplace_back(
            "table_vii_epr4_events.txt",
            dominant_table("epr4", {"4,3,3", "4,3,2", "3,3,3"}, eps4));
    } else if (key == "VIII" || key == "IX") {
        const double eps = key == "VIII" ? 0.1 : 0.4;
        result.files.emplace_back(
            key == "VIII" ? "table_viii_epr4_offset.csv"
                          : "table_ix_epr4_offset.csv",
            offset_grid("epr4", eps, {0.0, 0.05, 0.1},
                        {"4,4,3", "4,4,2", "4,4,1", "4,3,3", "4,3,2",
                         "3,3,3"}));
    } else if (key == "9") {
        result.files.emplace_back(
            "fig9_pr2_ber.csv",
            curve_csv("pr2", {"ml", "4,3", "4,2", "3,3", "4,1"},
                      {{0.1, 0.0}, {0.3, 0.0}},
                      {grid(8.0, 0.5, 13.0), grid(8.0, 0.5, 13.0)}, seed));
    } else if (key == "10") {
        result.files.emplace_back(
            "fig10_dicode_ber.csv",
            curve_csv("dicode", {"ml", "3", "2"}, {{0.1, 0.0}, {0.3, 0.0}},
                      {grid(6.5, 0.5, 11.5), grid(6.5, 0.5, 11.5)}, seed));
    } else if (key == "11") {
        result.files.emplace_back(
            "fig11_epr4_ber.csv",
            curve_csv("epr4",
                      {"ml", "4,3,3", "4,4,2", "4,3,2", "4,2,2", "3,3,3"},
                      {{0.1, 0.0}, {0.3, 0.0}},
                      {grid(7.0, 0.5, 12.0), grid(7.0, 0.5, 12.0)}, seed));
    } else if (key == "12") {
        result.files.emplace_back(
            "fig12_mp1_ber.csv",
            curve_csv("mp1",
                      {"ml", "3,3,3", "4,3,2", "4,2,2", "3,2,2", "4,2,1"},
                      {{0.1, 0.0}}, {grid(10.0, 0.5, 15.0)}, seed));
    } else if (key == "13") {
        result.files.emplace_back(
            "fig13_mp2_ber.csv",
            curve_csv("mp2", {"ml", "4,2,2,2", "4,2,2,1"}, {{0.1, 0.0}},
                      {grid(10.5, 0.5, 15.5)}, seed));
    } else if (key == "14") {
        // BER against the interference offset at fixed SNR, per epsilon.
        std::vector<std::pair<double, double>> sweeps;
        std::vector<std::vector<double>> grids;
        for (double d : {0.0, 0.02, 0.04, 0.06, 0.08}) {
            sweeps.emplace_back(0.1, d);
            grids.push_back({8.5});
        }
        for (double d : {0.0, 0.1, 0.2, 0.3}) {
            sweeps.emplace_back(0.4, d);
            grids.push_back({10.5});
        }
        result.files.emplace_back(
            "fig14_epr4_offset_ber.csv",
            curve_csv("epr4", {"ml", "4,3,3", "4,4,2"}, sweeps, grids, seed));
    } else {
        throw std::invalid_argument("unknown reproduction id: " + id);
    }
    return result;
}

}  // namespace rsse
