// experiments.hpp - figure datasets and report serialization for the CLI
//
// Datasets are written as CSV (comment header lines starting with '#', then
// a column line, then rows; LF endings; every number printed with 12
// significant digits in scientific notation) or as JSON carrying the same
// rounded values.  Output is a pure function of the parameters.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "remcoh/measures.hpp"
#include "remcoh/protocols.hpp"

namespace remcoh {

inline constexpr const char* kToolVersion = "remcoh 0.1.0";

struct FigureDataset {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    /// Provenance: tool version, parameters, conventions, diagnostics.
    std::vector<std::pair<std::string, std::string>> header;

    void validate(std::size_t expected_rows) const {
        if (rows.size() != expected_rows) throw std::logic_error(name + ": unexpected row count");
        for (const auto& row : rows) {
            if (row.size() != columns.size()) throw std::logic_error(name + ": ragged row");
            for (double v : row)
                if (!std::isfinite(v)) throw std::logic_error(name + ": non-finite value");
        }
    }

    std::size_t column(const std::string& c) const {
        const auto it = std::find(columns.begin(), columns.end(), c);
        if (it == columns.end()) throw std::out_of_range(name + ": no column " + c);
        return static_cast<std::size_t>(it - columns.begin());
    }
};

/// 12 significant digits, scientific; negative zero prints as zero.
inline std::string format_number(double v) {
    if (v == 0.0) v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return buf;
}

inline double rounded(double v) { return std::stod(format_number(v)); }

/// Evenly spaced grid with both end points.
inline std::vector<double> linear_grid(double lo, double hi, int steps) {
    if (steps < 2) throw std::invalid_argument("grid resolution must be at least 2");
    std::vector<double> g(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) g[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (steps - 1);
    g.back() = hi;
    return g;
}

namespace detail {

inline std::vector<std::pair<std::string, std::string>> common_header() {
    return {
        {"tool", kToolVersion},
        {"ordering", "|Alice, Bob, control>, leftmost register most significant"},
        {"switch_kraus", "W_ij = X_i Y_j (x) |0><0| + Y_j X_i (x) |1><1|"},
        {"control_state", "sqrt(p)|0> + sqrt(1-p)|1>, k = sqrt(p(1-p)), conditioned on |+>"},
        {"state_tolerance", format_number(kStateTolerance)},
        {"null_outcome_probability", format_number(kNullOutcomeProbability)},
        {"log_base", "2"},
    };
}

}  // namespace detail

/// Discord of rho12+ for two complete depolarizing channels over p in [0, 1].
inline FigureDataset cmd_fig1(int steps) {
    const auto ps = linear_grid(0.0, 1.0, steps);
    FigureDataset ds{"fig1", {"p", "discord"}, {}, detail::common_header()};
    ds.header.emplace_back("grid", "p in [0, 1], " + std::to_string(steps) + " points");
    for (double p : ps) ds.rows.push_back({p, discord_scenario_A(p)});

    // Brute-force cross-check at five evenly spaced p values.
    double worst = 0.0;
    for (double p : linear_grid(0.0, 1.0, 5)) {
        const auto rho = plus_conditioned_state(scenario_a_switch(p));
        worst = std::max(worst, std::abs(discord_bruteforce(rho).discord - discord_scenario_A(p)));
    }
    ds.header.emplace_back("bruteforce_check_points", "0, 0.25, 0.5, 0.75, 1");
    ds.header.emplace_back("bruteforce_max_deviation", format_number(worst));
    ds.validate(ps.size());
    return ds;
}

/// Second partial-transpose eigenvalue for depolarizing + U over (p, gamma).
inline FigureDataset cmd_fig2(int p_steps, int gamma_steps) {
    const auto ps = linear_grid(0.0, 1.0, p_steps);
    const auto gs = linear_grid(0.0, std::numbers::pi, gamma_steps);
    FigureDataset ds{"fig2", {"p", "gamma", "eig2"}, {}, detail::common_header()};
    ds.header.emplace_back("grid", "p in [0, 1] (" + std::to_string(p_steps) + ") x gamma in [0, pi] (" +
                                       std::to_string(gamma_steps) + "), p outer");
    ds.header.emplace_back("eig2", "(1 + 2k cos gamma) / (4 (1 + k (1 + cos gamma)))");
    for (double p : ps)
        for (double g : gs) ds.rows.push_back({p, g, pt_eigs_scenario_B(p, g).second});
    ds.validate(ps.size() * gs.size());
    return ds;
}

/// Closed-form vs brute-force discord for depolarizing + U at fixed p over
/// (gamma, delta), delta confined to [0, pi/2].
inline FigureDataset cmd_fig3(int gamma_steps, int delta_steps, double p = 0.25) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("fig3: p outside [0, 1]");
    const auto gs = linear_grid(0.0, std::numbers::pi, gamma_steps);
    const auto ds_grid = linear_grid(0.0, std::numbers::pi / 2.0, delta_steps);
    FigureDataset ds{"fig3",
                     {"gamma", "delta", "discord_analytic", "discord_bruteforce", "deviation",
                      "mutual_information"},
                     {},
                     detail::common_header()};
    ds.header.emplace_back("p", format_number(p));
    ds.header.emplace_back("grid", "gamma in [0, pi] (" + std::to_string(gamma_steps) + ") x delta in [0, pi/2] (" +
                                       std::to_string(delta_steps) + "), gamma outer");
    double worst = 0.0;
    double worst_gamma = 0.0, worst_delta = 0.0;
    for (double g : gs) {
        for (double d : ds_grid) {
            const auto rho = plus_conditioned_state(scenario_b_switch(p, g, d));
            const auto bf = discord_bruteforce(rho);
            const double an = discord_scenario_B(p, g, d);
            const double dev = an - bf.discord;
            if (std::abs(dev) > worst) {
                worst = std::abs(dev);
                worst_gamma = g;
                worst_delta = d;
            }
            ds.rows.push_back({g, d, an, bf.discord, dev, bf.mutual_information});
        }
    }
    ds.header.emplace_back("max_abs_deviation", format_number(worst));
    ds.header.emplace_back("max_abs_deviation_at", format_number(worst_gamma) + ", " + format_number(worst_delta));
    ds.validate(gs.size() * ds_grid.size());
    return ds;
}

/// Coherence fraction with the SWITCH, sequential baseline (1-q)^2 and
/// their difference over (p, q).
inline FigureDataset cmd_fig4(int p_steps, int q_steps) {
    const auto ps = linear_grid(0.0, 1.0, p_steps);
    const auto qs = linear_grid(0.0, 1.0, q_steps);
    FigureDataset ds{"fig4", {"p", "q", "R_c", "baseline", "advantage"}, {}, detail::common_header()};
    ds.header.emplace_back("grid", "p in [0, 1] (" + std::to_string(p_steps) + ") x q in [0, 1] (" +
                                       std::to_string(q_steps) + "), p outer");
    for (double p : ps)
        for (double q : qs) ds.rows.push_back({p, q, coherence_fraction_C(p, q), (1.0 - q) * (1.0 - q), advantage_C(p, q)});
    ds.validate(ps.size() * qs.size());
    return ds;
}

// Serialization.

inline void write_csv(const FigureDataset& ds, std::ostream& os) {
    os << "# dataset: " << ds.name << '\n';
    for (const auto& [k, v] : ds.header) os << "# " << k << ": " << v << '\n';
    for (std::size_t i = 0; i < ds.columns.size(); ++i) os << (i ? "," : "") << ds.columns[i];
    os << '\n';
    for (const auto& row : ds.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
        os << '\n';
    }
}

inline nlohmann::ordered_json to_json(const FigureDataset& ds) {
    nlohmann::ordered_json j;
    j["dataset"] = ds.name;
    auto& meta = j["header"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : ds.header) meta[k] = v;
    j["columns"] = ds.columns;
    auto& rows = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : ds.rows) {
        auto r = nlohmann::ordered_json::array();
        for (double v : row) r.push_back(rounded(v));
        rows.push_back(std::move(r));
    }
    return j;
}

inline void write_json(const FigureDataset& ds, std::ostream& os) { os << to_json(ds).dump(2) << '\n'; }

namespace detail {

inline nlohmann::ordered_json complex_json(Complex z) { return {rounded(z.real()), rounded(z.imag())}; }

inline nlohmann::ordered_json matrix_json(const ComplexMatrix& m) {
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        auto row = nlohmann::ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(complex_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

template <class T>
nlohmann::ordered_json optional_json(const std::optional<T>& v) {
    return v ? nlohmann::ordered_json(rounded(*v)) : nlohmann::ordered_json(nullptr);
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const ProtocolReport& r) {
    using detail::optional_json;
    nlohmann::ordered_json j;
    auto& params = j["params"];
    params["scenario"] = to_string(r.params.scenario);
    params["p"] = optional_json(r.params.p);
    params["gamma"] = optional_json(r.params.gamma);
    params["delta"] = optional_json(r.params.delta);
    params["q"] = optional_json(r.params.q);
    params["alpha"] = detail::complex_json(r.params.target.alpha());
    params["beta"] = detail::complex_json(r.params.target.beta());
    params["phi"] = rounded(r.params.target.phi());
    params["target_coherence"] = rounded(r.params.target.coherence());

    j["control_plus_probability"] = optional_json(r.control_plus_probability);
    j["alice_outcome_probabilities"] = {rounded(r.alice_outcome_probabilities[0]),
                                        rounded(r.alice_outcome_probabilities[1])};
    j["bob_state_psi"] = detail::matrix_json(r.bob_state_psi.matrix());
    j["bob_state_psibar"] = detail::matrix_json(r.bob_state_psibar.matrix());
    j["coherence_numeric"] = rounded(r.coherence_numeric);
    j["coherence_numeric_psibar"] = rounded(r.coherence_numeric_psibar);
    j["coherence_analytic"] = rounded(r.coherence_analytic);
    j["baseline_coherence"] = optional_json(r.baseline_coherence);
    j["baseline_coherence_analytic"] = optional_json(r.baseline_coherence_analytic);
    j["coherence_fraction"] = rounded(r.coherence_fraction);
    j["advantage"] = optional_json(r.advantage);
    j["discord_shared"] = rounded(r.discord_shared);
    j["discord_analytic"] = optional_json(r.discord_analytic);
    j["min_pt_eigenvalue"] = rounded(r.min_pt_eigenvalue);
    if (r.pt_eigs_analytic) {
        j["pt_eigs_analytic"] = {rounded(r.pt_eigs_analytic->first), rounded(r.pt_eigs_analytic->second)};
    } else {
        j["pt_eigs_analytic"] = nullptr;
    }
    if (r.perfect_coherence) {
        j["perfect_coherence"] = {{"gamma", rounded(r.perfect_coherence->gamma)},
                                  {"delta", rounded(r.perfect_coherence->delta)},
                                  {"coherence", rounded(r.perfect_coherence->coherence)}};
    } else {
        j["perfect_coherence"] = nullptr;
    }
    auto& notes = j["notes"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.notes) notes[k] = v;
    return j;
}

/// Flat key,value CSV rendering of a report (matrices as row-major re/im pairs).
inline void write_csv(const ProtocolReport& r, std::ostream& os) {
    os << "# report: " << to_string(r.params.scenario) << '\n';
    os << "# tool: " << kToolVersion << '\n';
    os << "field,value\n";
    const auto j = to_json(r);
    auto emit = [&](const std::string& key, const nlohmann::ordered_json& v, auto&& self) -> void {
        if (v.is_null()) return;
        if (v.is_number()) {
            os << key << ',' << format_number(v.get<double>()) << '\n';
        } else if (v.is_string()) {
            auto text = v.get<std::string>();
            if (text.find_first_of(",\"") != std::string::npos) {
                std::string quoted = "\"";
                for (char ch : text) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
                text = quoted + "\"";
            }
            os << key << ',' << text << '\n';
        } else if (v.is_array()) {
            for (std::size_t i = 0; i < v.size(); ++i) self(key + "." + std::to_string(i), v[i], self);
        } else if (v.is_object()) {
            for (auto it = v.begin(); it != v.end(); ++it) self(key + "." + it.key(), it.value(), self);
        }
    };
    for (auto it = j.begin(); it != j.end(); ++it) emit(it.key(), it.value(), emit);
}

}  // namespace remcoh
