// qkdlab: squeezed-state continuous-variable QKD simulator and threshold
// calculator. Subcommands: threshold, loss-sweep, error-curve, wigner, run.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qkdlab/shift_code.hpp"
#include "qkdlab/protocol.hpp"
#include "qkdlab/security.hpp"
#include "qkdlab/serde.hpp"

namespace {

using namespace qkdlab;

constexpr double kSqrtPi = 1.7724538509055160273;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("QKDLAB_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return 12345;
}

std::string format_full(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string format_value(double value, bool pretty) {
    if (!pretty) return format_full(value);
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6g", value);
    return buffer;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file: " + out_path);
    file << text;
}

EveModel parse_eve(const std::string& spec, double tilde_delta) {
    EveModel eve;
    if (spec == "none" || spec.empty()) return eve;
    if (spec.rfind("intercept", 0) == 0) {
        eve.variant = EveVariant::InterceptResend;
        eve.resend_width = tilde_delta;
        const auto colon = spec.find(':');
        if (colon != std::string::npos) eve.resend_width = std::stod(spec.substr(colon + 1));
        return eve;
    }
    if (spec.rfind("shift:", 0) == 0) {
        eve.variant = EveVariant::FixedShift;
        const std::string args = spec.substr(6);
        const auto comma = args.find(',');
        if (comma == std::string::npos) {
            throw CLI::ValidationError("--eve", "shift needs dq,dp");
        }
        eve.dq = std::stod(args.substr(0, comma));
        eve.dp = std::stod(args.substr(comma + 1));
        return eve;
    }
    throw CLI::ValidationError("--eve", "expected none, intercept[:width] or shift:dq,dp");
}

int cmd_threshold(double threshold, bool as_json, bool pretty, const std::string& out_path) {
    const auto row_for = [](double t) {
        const double delta = solve_secure_delta(t);
        return SqueezeParams::from_delta(delta);
    };
    const std::vector<std::pair<double, SqueezeParams>> rows = {
        {threshold, row_for(threshold)},
        {0.01, row_for(0.01)},
        {1e-6, row_for(1e-6)},
    };
    std::ostringstream out;
    if (as_json) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& [t, p] : rows) {
            j.push_back({{"error_threshold", t},
                         {"delta", p.delta},
                         {"tilde_delta", p.tilde_delta},
                         {"r", p.r},
                         {"db", p.db},
                         {"two_mode_r", p.two_mode_r()}});
        }
        out << j.dump() << "\n";
    } else {
        out << "error_threshold,delta,tilde_delta,r,db,two_mode_r\n";
        for (const auto& [t, p] : rows) {
            out << format_value(t, pretty) << ',' << format_value(p.delta, pretty) << ','
                << format_value(p.tilde_delta, pretty) << ',' << format_value(p.r, pretty) << ','
                << format_value(p.db, pretty) << ',' << format_value(p.two_mode_r(), pretty)
                << "\n";
        }
    }
    write_output(out.str(), out_path);
    return 0;
}

int cmd_loss_sweep(double lo, double hi, int points, bool pretty, const std::string& out_path) {
    if (!(lo < hi) || points < 2) throw CLI::ValidationError("--lo/--hi/--points", "bad range");
    std::ostringstream out;
    out << "tilde_delta,kappa_d_max_noamp,kappa_d_max_amp\n";
    for (int i = 0; i < points; ++i) {
        const double t = lo + (hi - lo) * i / (points - 1);
        out << format_value(t, pretty) << ',' << format_value(max_distance(t, false), pretty)
            << ',' << format_value(max_distance(t, true), pretty) << "\n";
    }
    write_output(out.str(), out_path);
    return 0;
}

int cmd_error_curve(const std::string& variable, double lo, double hi, int points,
                    double tilde_delta, double kappa_d, bool amplified, long trials,
                    std::uint64_t seed, bool pretty, const std::string& out_path) {
    if (!(lo < hi) || points < 2) throw CLI::ValidationError("--lo/--hi/--points", "bad range");
    const bool sweep_tilde = variable == "tilde-delta";
    if (!sweep_tilde && variable != "kappa-d") {
        throw CLI::ValidationError("--variable", "expected tilde-delta or kappa-d");
    }
    std::ostringstream out;
    out << (sweep_tilde ? "tilde_delta" : "kappa_d")
        << ",delta_effective,p_window,p_exact,p_tail";
    if (trials > 0) out << ",p_mc_z,p_mc_x";
    out << "\n";
    for (int i = 0; i < points; ++i) {
        const double x = lo + (hi - lo) * i / (points - 1);
        const double td = sweep_tilde ? x : tilde_delta;
        const double kd = sweep_tilde ? kappa_d : x;
        const double width = delta_xi(td, {kd, amplified});
        out << format_value(x, pretty) << ',' << format_value(width, pretty) << ','
            << format_value(shift_error_prob(width, ErrorProbMethod::Window), pretty) << ','
            << format_value(shift_error_prob(width, ErrorProbMethod::ExactSeries), pretty) << ','
            << format_value(shift_error_prob(width, ErrorProbMethod::TailBound), pretty);
        if (trials > 0) {
            // matched-basis Monte-Carlo of the same raw-bit channel; the
            // simulator rescales classically, the analytic columns hold the
            // (looser) amplified width
            ProtocolConfig config;
            config.tilde_delta = td;
            config.kappa_d = kd;
            config.amplified = amplified;
            config.m_bits = 32;
            config.seed = seed + static_cast<std::uint64_t>(i);
            const auto estimate = estimate_error_rates(config, trials);
            out << ',' << format_value(estimate.p_hat_z, pretty) << ','
                << format_value(estimate.p_hat_x, pretty);
        }
        out << "\n";
    }
    write_output(out.str(), out_path);
    return 0;
}

int cmd_wigner(double tilde_delta, double alpha, bool pretty, const std::string& out_path) {
    std::ostringstream out;
    out << "state,center_q,center_p,semi_axis_q,semi_axis_p\n";
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int which = 0; which < 2; ++which) {
        const bool q_squeezed = which == 0;
        const double width = q_squeezed ? tilde_delta * alpha : tilde_delta / alpha;
        const double spacing = q_squeezed ? kSqrtPi * alpha : kSqrtPi / alpha;
        const double narrow = width * inv_sqrt2;
        const double wide = 1.0 / (width * std::sqrt(2.0));
        for (int m = -1; m <= 1; ++m) {
            const double center = m * spacing;
            out << (q_squeezed ? "q_squeezed" : "p_squeezed") << ','
                << format_value(q_squeezed ? center : 0.0, pretty) << ','
                << format_value(q_squeezed ? 0.0 : center, pretty) << ','
                << format_value(q_squeezed ? narrow : wide, pretty) << ','
                << format_value(q_squeezed ? wide : narrow, pretty) << "\n";
        }
    }
    write_output(out.str(), out_path);
    return 0;
}

int cmd_run(const ProtocolConfig& config, bool pretty, const std::string& out_path,
            const std::string& transcript_path) {
    const RunResult result = run_protocol_with_transcript(config);
    std::ostringstream out;
    if (pretty) {
        const auto& o = result.outcome;
        out << "status:        " << to_string(o.status) << "\n"
            << "sifted_count:  " << o.sifted_count << "\n"
            << "p_hat_z:       " << format_value(o.p_hat_z, true) << "\n"
            << "p_hat_x:       " << format_value(o.p_hat_x, true) << "\n"
            << "key_alice:     " << bits_to_string(o.key_alice) << "\n"
            << "key_bob:       " << bits_to_string(o.key_bob) << "\n";
        if (o.status == ProtocolStatus::Completed) {
            out << "keys_match:    " << (o.key_alice == o.key_bob ? "yes" : "no") << "\n";
        }
    } else {
        out << to_json(result.outcome).dump() << "\n";
    }
    write_output(out.str(), out_path);
    if (!transcript_path.empty()) {
        std::ofstream file(transcript_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open transcript file: " + transcript_path);
        file << to_json(result.transcript).dump() << "\n";
    }
    return result.outcome.status == ProtocolStatus::Completed ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"squeezed-state continuous-variable QKD laboratory"};
    app.require_subcommand(1);

    // shared flags
    std::uint64_t seed = default_seed();
    double tilde_delta = 0.5;
    double alpha = 1.0;
    double kappa_d = 0.0;
    bool amplified = false;
    bool as_json = false;
    bool pretty = false;
    std::string out_path;

    auto* threshold_cmd = app.add_subcommand("threshold", "security thresholds and conversions");
    double threshold = 0.11;
    threshold_cmd->add_option("--threshold", threshold, "target error probability");
    threshold_cmd->add_flag("--json", as_json, "emit JSON");
    threshold_cmd->add_flag("--pretty", pretty, "short numbers");
    threshold_cmd->add_option("--out", out_path, "output path");

    auto* sweep_cmd = app.add_subcommand("loss-sweep", "max secure distance vs squeezing (CSV)");
    double lo = 0.01, hi = 0.74;
    int points = 500;
    sweep_cmd->add_option("--lo", lo, "lower tilde_delta");
    sweep_cmd->add_option("--hi", hi, "upper tilde_delta");
    sweep_cmd->add_option("--points", points, "grid points");
    sweep_cmd->add_flag("--pretty", pretty, "short numbers");
    sweep_cmd->add_option("--out", out_path, "output path");

    auto* curve_cmd = app.add_subcommand("error-curve", "shift-error probabilities (CSV)");
    std::string variable = "tilde-delta";
    double curve_lo = 0.05, curve_hi = 1.0;
    int curve_points = 96;
    long trials = 0;
    curve_cmd->add_option("--variable", variable, "tilde-delta or kappa-d");
    curve_cmd->add_option("--lo", curve_lo, "sweep start");
    curve_cmd->add_option("--hi", curve_hi, "sweep end");
    curve_cmd->add_option("--points", curve_points, "grid points");
    curve_cmd->add_option("--tilde-delta", tilde_delta, "fixed width for kappa-d sweeps");
    curve_cmd->add_option("--kappa-d", kappa_d, "fixed distance for tilde-delta sweeps");
    curve_cmd->add_flag("--amplify", amplified, "use the amplified width");
    curve_cmd->add_option("--trials", trials, "append Monte-Carlo columns at this many trials");
    curve_cmd->add_option("--seed", seed, "Monte-Carlo seed");
    curve_cmd->add_flag("--pretty", pretty, "short numbers");
    curve_cmd->add_option("--out", out_path, "output path");

    auto* wigner_cmd = app.add_subcommand("wigner", "one-sigma signal ellipses (CSV)");
    wigner_cmd->add_option("--tilde-delta", tilde_delta, "signal width");
    wigner_cmd->add_option("--alpha", alpha, "q/p asymmetry");
    wigner_cmd->add_flag("--pretty", pretty, "short numbers");
    wigner_cmd->add_option("--out", out_path, "output path");

    auto* run_cmd = app.add_subcommand("run", "execute the full protocol");
    long n = 700;
    int m_bits = 16;
    double abort_threshold = 0.11;
    std::string eve_spec = "none";
    std::string config_path;
    std::string transcript_path;
    run_cmd->add_option("--config", config_path, "load config JSON (flags override)");
    run_cmd->add_option("--n", n, "key-block size");
    run_cmd->add_option("--tilde-delta", tilde_delta, "signal width");
    run_cmd->add_option("--alpha", alpha, "q/p asymmetry");
    run_cmd->add_option("--m-bits", m_bits, "residue announcement bits");
    run_cmd->add_option("--kappa-d", kappa_d, "channel length in attenuation lengths");
    run_cmd->add_flag("--amplify", amplified, "Bob rescales outcomes by 1/xi");
    run_cmd->add_option("--eve", eve_spec, "none, intercept[:width] or shift:dq,dp");
    run_cmd->add_option("--threshold", abort_threshold, "per-basis abort threshold");
    run_cmd->add_option("--seed", seed, "run seed (QKDLAB_SEED overrides the default)");
    run_cmd->add_flag("--pretty", pretty, "human-readable outcome");
    run_cmd->add_option("--out", out_path, "output path");
    run_cmd->add_option("--transcript", transcript_path, "also dump the transcript JSON");

    try {
        app.parse(argc, argv);

        if (threshold_cmd->parsed()) {
            return cmd_threshold(threshold, as_json, pretty, out_path);
        }
        if (sweep_cmd->parsed()) {
            return cmd_loss_sweep(lo, hi, points, pretty, out_path);
        }
        if (curve_cmd->parsed()) {
            return cmd_error_curve(variable, curve_lo, curve_hi, curve_points, tilde_delta,
                                   kappa_d, amplified, trials, seed, pretty, out_path);
        }
        if (wigner_cmd->parsed()) {
            return cmd_wigner(tilde_delta, alpha, pretty, out_path);
        }
        if (run_cmd->parsed()) {
            ProtocolConfig config;
            if (!config_path.empty()) {
                std::ifstream file(config_path);
                if (!file) throw std::runtime_error("cannot open config: " + config_path);
                nlohmann::json j;
                file >> j;
                config = protocol_config_from_json(j);
            }
            if (run_cmd->count("--n") || config_path.empty()) config.n = n;
            if (run_cmd->count("--tilde-delta") || config_path.empty()) {
                config.tilde_delta = tilde_delta;
            }
            if (run_cmd->count("--alpha") || config_path.empty()) config.alpha = alpha;
            if (run_cmd->count("--m-bits") || config_path.empty()) config.m_bits = m_bits;
            if (run_cmd->count("--kappa-d") || config_path.empty()) config.kappa_d = kappa_d;
            if (run_cmd->count("--amplify") || config_path.empty()) config.amplified = amplified;
            if (run_cmd->count("--threshold") || config_path.empty()) {
                config.abort_threshold = abort_threshold;
            }
            if (run_cmd->count("--seed") || config_path.empty()) config.seed = seed;
            if (run_cmd->count("--eve") || config_path.empty()) {
                config.eve = parse_eve(eve_spec, config.tilde_delta);
            }
            return cmd_run(config, pretty, out_path, transcript_path);
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
