// Command-line front end: point queries, figure-data sweeps, and
// bound-verification campaigns.
//
// Exit codes: 0 success, 1 bound violation, 2 invalid input.

#include "tubedist/tubedist.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

namespace {

using namespace tubedist;
using nlohmann::json;

constexpr int exit_ok = 0;
constexpr int exit_violation = 1;
constexpr int exit_invalid = 2;

// Floats are printed with 12 significant digits, locale-independent, so
// output files diff cleanly across runs and platforms.
std::string fmt12(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

std::string csv_cell(const json& v) {
    if (v.is_number_float()) return fmt12(v.get<double>());
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
    return v.get<std::string>();
}

std::string text_cell(const json& v) {
    if (v.is_number_float()) return fmt12(v.get<double>());
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.get<std::string>();
}

struct Table {
    std::vector<std::string> columns;
    std::vector<json> rows;  // arrays of scalars aligned with columns
    json summary;            // optional object, reported in JSON output
};

std::string render_csv(const Table& t) {
    std::string out;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c) out += ',';
        out += t.columns[c];
    }
    out += '\n';
    for (const json& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += csv_cell(row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string render_json(const Table& t) {
    json doc;
    doc["rows"] = json::array();
    for (const json& row : t.rows) {
        json obj;
        for (std::size_t c = 0; c < t.columns.size(); ++c) obj[t.columns[c]] = row[c];
        doc["rows"].push_back(std::move(obj));
    }
    if (!t.summary.is_null()) doc["summary"] = t.summary;
    return doc.dump(2) + "\n";
}

void write_payload(const std::string& path, const std::string& payload) {
    if (path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << payload;
}

struct OutputOpts {
    std::string format;  // "", "csv", or "json"
    std::string out;
    int threads = 1;
};

void add_output_opts(CLI::App* cmd, OutputOpts& o, bool with_threads) {
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", o.out, "write output to this file instead of stdout");
    if (with_threads) {
        cmd->add_option("--threads", o.threads, "worker threads for the sweep")
            ->check(CLI::PositiveNumber);
    }
}

void emit_table(const Table& t, const OutputOpts& o) {
    write_payload(o.out, o.format == "json" ? render_json(t) : render_csv(t));
}

// Point-query output: plain key = value lines by default, or a one-row
// table in csv/json.
void emit_point(const std::vector<std::pair<std::string, json>>& kv, const OutputOpts& o) {
    if (o.format.empty()) {
        std::string out;
        for (const auto& [k, v] : kv) out += k + " = " + text_cell(v) + "\n";
        write_payload(o.out, out);
        return;
    }
    Table t;
    json row = json::array();
    for (const auto& [k, v] : kv) {
        t.columns.push_back(k);
        row.push_back(v);
    }
    t.rows.push_back(std::move(row));
    emit_table(t, o);
}

// The nonsingular case is a discrete branch of the radius formula, so a
// decimal rounding of 2*pi must land exactly on it: cone angles within
// 1e-3 of 2*pi snap to 2*pi, with a warning when the snap moved the value
// by more than 1e-9.
double clamp_alpha(double alpha) {
    if (std::abs(alpha - two_pi) <= 1e-3) {
        if (std::abs(alpha - two_pi) > 1e-9) {
            std::cerr << "warning: alpha " << fmt12(alpha) << " snapped to 2*pi\n";
        }
        return two_pi;
    }
    return alpha;
}

std::int64_t power_code(const std::optional<Realizer>& r) {
    if (!r) return 0;  // empty thin part
    return r->is_elliptic() ? -1 : r->n;
}

// Index-sharded worker pool; results are stored by index, so output is
// independent of the thread count.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) break;
            try {
                fn(i);
            } catch (...) {
                failed.store(true);
            }
        }
    };
    std::vector<std::thread> pool;
    const int n = std::min<int>(threads, static_cast<int>(count));
    pool.reserve(n);
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failed.load()) throw std::runtime_error("sweep worker failed");
}

struct GridOpts {
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    int lambda_steps = 0;
    double tau_min = 0.0;
    double tau_max = std::numbers::pi;
    int tau_steps = 0;
};

void add_grid_opts(CLI::App* cmd, GridOpts& g) {
    cmd->add_option("--lambda-min", g.lambda_min, "smallest core length")->required();
    cmd->add_option("--lambda-max", g.lambda_max, "largest core length")->required();
    cmd->add_option("--lambda-steps", g.lambda_steps, "grid points along lambda")->required();
    cmd->add_option("--tau-min", g.tau_min, "smallest rotation (default 0)");
    cmd->add_option("--tau-max", g.tau_max, "largest rotation (default pi)");
    cmd->add_option("--tau-steps", g.tau_steps, "grid points along tau")->required();
}

void validate_grid(const GridOpts& g) {
    if (g.lambda_steps < 2 || g.tau_steps < 2) {
        throw std::invalid_argument("grid: step counts must be at least 2");
    }
    if (!(0.0 < g.lambda_min && g.lambda_min <= g.lambda_max)) {
        throw std::invalid_argument("grid: need 0 < lambda-min <= lambda-max");
    }
    if (!(g.tau_min <= g.tau_max)) {
        throw std::invalid_argument("grid: need tau-min <= tau-max");
    }
}

double grid_point(double lo, double hi, int steps, int i) {
    return lo + (hi - lo) * i / (steps - 1);
}

// Campaign sampling: (delta, eps) uniform over the admissible triangle,
// lambda log-uniform down to 1e-6 (the deep-tube regime), tau uniform,
// and alpha exactly 2*pi half of the time.
struct VerifySample {
    double alpha, lambda, tau, delta, eps;
};

VerifySample draw_sample(std::uint64_t seed, std::uint64_t index, double eps_max) {
    SplitMix64 rng(split_seed(seed, index));
    double delta = 0.0;
    double eps = 0.0;
    do {
        const double a = rng.uniform(0.0, eps_max);
        const double b = rng.uniform(0.0, eps_max);
        delta = std::min(a, b);
        eps = std::max(a, b);
    } while (!(delta > 0.0 && delta < eps));
    const double lo = std::min(1e-6, 0.5 * delta);
    const double lambda = std::exp(rng.uniform(std::log(lo), std::log(delta)));
    const double tau = rng.uniform(-std::numbers::pi, std::numbers::pi);
    const double alpha = rng.next_double() < 0.5 ? two_pi : rng.uniform(0.01, two_pi);
    return {alpha, lambda, tau, delta, eps};
}

// ---- subcommand handlers ----

int run_radius(double alpha, double lambda, double tau, double eps, bool with_oracle,
               const OutputOpts& o) {
    const ModelSolidTorus N(clamp_alpha(alpha), lambda, tau);
    const TubeRadiusResult res = tube_radius(N, eps);

    std::vector<std::pair<std::string, json>> kv;
    if (res.empty() && o.format.empty()) {
        kv.emplace_back("radius", "empty thin part");
    } else {
        kv.emplace_back("radius", res.radius);
    }
    kv.emplace_back("power", power_code(res.realizer));
    if (with_oracle) {
        const ExtendedLength oracle = tube_radius_oracle(N, eps);
        const double residual =
            res.empty() && is_neg_infinity(oracle) ? 0.0 : std::abs(res.radius - oracle);
        kv.emplace_back("oracle", oracle);
        kv.emplace_back("residual", residual);
    }
    emit_point(kv, o);
    return exit_ok;
}

int run_distance(double alpha, double lambda, double tau, double delta, double eps,
                 double eps_max, bool force, const OutputOpts& o) {
    const ModelSolidTorus N(clamp_alpha(alpha), lambda, tau);
    const bool in_hypothesis =
        lambda <= delta && 0.0 < delta && delta < eps && eps <= eps_max &&
        eps_max <= eps_max_limit;

    if (!in_hypothesis && !force) {
        std::cerr << "error: (lambda, delta, eps) violate the bound hypotheses "
                     "(need lambda <= delta < eps <= eps-max <= 1.475); "
                     "pass --force to evaluate without certification\n";
        return exit_invalid;
    }

    if (!in_hypothesis) {
        const double d = tube_distance(N, delta, eps);
        emit_point({{"distance", d}, {"certified", false}}, o);
        return exit_ok;
    }

    const BoundsCertificate cert = check_bounds(N, delta, eps, eps_max);
    emit_point({{"distance", cert.actual},
                {"lower_linear", cert.lower_linear},
                {"lower_log", cert.lower_log},
                {"upper", cert.upper},
                {"lower_ok", cert.lower_ok},
                {"upper_ok", cert.upper_ok},
                {"power_delta", power_code(cert.realizer_delta)},
                {"power_eps", power_code(cert.realizer_eps)},
                {"certified", true}},
               o);
    return cert.lower_ok && cert.upper_ok ? exit_ok : exit_violation;
}

int run_region_map(double alpha, double eps, const GridOpts& g, const OutputOpts& o) {
    validate_grid(g);
    const double a = clamp_alpha(alpha);

    Table t;
    t.columns = {"lambda", "tau", "power"};
    const std::size_t count =
        static_cast<std::size_t>(g.lambda_steps) * static_cast<std::size_t>(g.tau_steps);
    t.rows.resize(count);
    parallel_for(count, o.threads, [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / g.tau_steps;
        const int j = static_cast<int>(idx) % g.tau_steps;
        const double lambda = grid_point(g.lambda_min, g.lambda_max, g.lambda_steps, i);
        const double tau = grid_point(g.tau_min, g.tau_max, g.tau_steps, j);
        const TubeRadiusResult res = tube_radius(ModelSolidTorus(a, lambda, tau), eps);
        t.rows[idx] = json::array({lambda, tau, power_code(res.realizer)});
    });
    emit_table(t, o);
    return exit_ok;
}

int run_surface(double alpha, double delta, double eps, const GridOpts& g,
                const OutputOpts& o) {
    validate_grid(g);
    if (!(0.0 < delta && delta < eps)) {
        throw std::invalid_argument("surface: need 0 < delta < eps");
    }
    if (g.lambda_max > delta) {
        throw std::invalid_argument("surface: lambda-max must not exceed delta");
    }
    const double a = clamp_alpha(alpha);

    Table t;
    t.columns = {"lambda", "tau", "distance"};
    const std::size_t count =
        static_cast<std::size_t>(g.lambda_steps) * static_cast<std::size_t>(g.tau_steps);
    t.rows.resize(count);
    parallel_for(count, o.threads, [&](std::size_t idx) {
        const int i = static_cast<int>(idx) / g.tau_steps;
        const int j = static_cast<int>(idx) % g.tau_steps;
        const double lambda = grid_point(g.lambda_min, g.lambda_max, g.lambda_steps, i);
        const double tau = grid_point(g.tau_min, g.tau_max, g.tau_steps, j);
        const double d = tube_distance(ModelSolidTorus(a, lambda, tau), delta, eps);
        t.rows[idx] = json::array({lambda, tau, d});
    });

    double mn = std::numeric_limits<double>::infinity();
    double mx = -std::numeric_limits<double>::infinity();
    for (const json& row : t.rows) {
        mn = std::min(mn, row[2].get<double>());
        mx = std::max(mx, row[2].get<double>());
    }
    t.summary = {{"min", mn}, {"max", mx}, {"cells", t.rows.size()}};
    emit_table(t, o);
    std::cerr << "surface: min = " << fmt12(mn) << ", max = " << fmt12(mx) << "\n";
    return exit_ok;
}

int run_verify(std::int64_t samples, double eps_max, std::uint64_t seed, bool self_test,
               const OutputOpts& o) {
    if (samples < 1) throw std::invalid_argument("verify: need at least one sample");
    if (!(0.0 < eps_max && eps_max <= eps_max_limit)) {
        throw std::invalid_argument("verify: need 0 < eps-max <= 1.475");
    }

    Table t;
    t.columns = {"index", "alpha", "lambda", "tau",      "delta",
                 "eps",   "actual", "lower_linear", "lower_log", "upper",
                 "lower_ok", "upper_ok", "realizer_delta", "realizer_eps"};
    const std::size_t count = static_cast<std::size_t>(samples);
    t.rows.resize(count);
    parallel_for(count, o.threads, [&](std::size_t i) {
        const VerifySample s = draw_sample(seed, i, eps_max);
        const BoundsCertificate cert =
            check_bounds(ModelSolidTorus(s.alpha, s.lambda, s.tau), s.delta, s.eps, eps_max);
        t.rows[i] = json::array({static_cast<std::int64_t>(i), s.alpha, s.lambda, s.tau,
                                 s.delta, s.eps, cert.actual, cert.lower_linear,
                                 cert.lower_log, cert.upper, cert.lower_ok, cert.upper_ok,
                                 power_code(cert.realizer_delta),
                                 power_code(cert.realizer_eps)});
    });

    if (self_test) {
        // adversarial row: the measured distance is pushed above the upper
        // bound, which the recomputed flags must catch
        json row = t.rows.front();
        row[0] = static_cast<std::int64_t>(count);
        row[6] = row[6].get<double>() + 1.0;
        row[10] = row[6].get<double>() >=
                  std::max(row[7].get<double>(), row[8].get<double>()) - certificate_tol;
        row[11] = row[6].get<double>() <= row[9].get<double>() + certificate_tol;
        t.rows.push_back(std::move(row));
    }

    std::int64_t violations = 0;
    double worst_lower = std::numeric_limits<double>::infinity();
    double worst_upper = std::numeric_limits<double>::infinity();
    for (const json& row : t.rows) {
        if (!row[10].get<bool>() || !row[11].get<bool>()) ++violations;
        const double actual = row[6].get<double>();
        const double lower = std::max(row[7].get<double>(), row[8].get<double>());
        worst_lower = std::min(worst_lower, actual - lower);
        worst_upper = std::min(worst_upper, row[9].get<double>() - actual);
    }
    t.summary = {{"samples", static_cast<std::int64_t>(t.rows.size())},
                 {"violations", violations},
                 {"worst_lower_margin", worst_lower},
                 {"worst_upper_margin", worst_upper}};
    emit_table(t, o);
    std::cerr << "verify: " << t.rows.size() << " rows, " << violations
              << " violations, worst lower margin " << fmt12(worst_lower)
              << ", worst upper margin " << fmt12(worst_upper) << "\n";
    return violations == 0 ? exit_ok : exit_violation;
}

int run_sharpness(double delta, double eps, const OutputOpts& o) {
    const SharpnessWitness w = sharpness_example(delta, eps);
    emit_point({{"n", w.n},
                {"lambda", w.torus.lambda()},
                {"tau", w.torus.tau()},
                {"actual_distance", w.actual_distance},
                {"sharpness_upper", w.sharpness_upper},
                {"lower_bound", lower_bound(delta, eps)},
                {"gap_to_lower", w.gap_to_lower}},
               o);
    return exit_ok;
}

int run_cusp(double delta, double eps, const OutputOpts& o) {
    const double d = cusp_distance(delta, eps);
    const double lo = delta < eps ? lower_bound(delta, eps) : 0.0;
    const double up = delta < eps ? upper_bound(delta, eps) : 0.0;
    const bool lower_ok = d >= lo - certificate_tol;
    const bool upper_ok = d <= up + certificate_tol;
    emit_point({{"distance", d},
                {"lower", lo},
                {"upper", up},
                {"lower_ok", lower_ok},
                {"upper_ok", upper_ok}},
               o);
    return lower_ok && upper_ok ? exit_ok : exit_violation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tube radii, realizing powers, and distances in hyperbolic solid tori"};
    app.require_subcommand(1);

    double alpha = two_pi;
    double lambda = 0.0;
    double tau = 0.0;
    double delta = 0.0;
    double eps = 0.0;
    double eps_max = 0.3;
    bool with_oracle = false;
    bool force = false;
    bool self_test = false;
    std::int64_t samples = 10000;
    std::uint64_t seed = 42;
    OutputOpts out_radius, out_distance, out_region, out_surface, out_verify, out_sharp,
        out_cusp;
    GridOpts grid_region, grid_surface;

    CLI::App* c_radius = app.add_subcommand("radius", "tube radius and realizing power");
    c_radius->add_option("--alpha", alpha, "cone angle (radians)")->required();
    c_radius->add_option("--lambda", lambda, "core length")->required();
    c_radius->add_option("--tau", tau, "core rotation (radians)")->required();
    c_radius->add_option("--eps", eps, "injectivity diameter")->required();
    c_radius->add_flag("--oracle", with_oracle, "cross-check against the bisection oracle");
    add_output_opts(c_radius, out_radius, false);

    CLI::App* c_distance =
        app.add_subcommand("distance", "distance between tubes with bound certificate");
    c_distance->add_option("--alpha", alpha, "cone angle (radians)")->required();
    c_distance->add_option("--lambda", lambda, "core length")->required();
    c_distance->add_option("--tau", tau, "core rotation (radians)")->required();
    c_distance->add_option("--delta", delta, "inner injectivity diameter")->required();
    c_distance->add_option("--eps", eps, "outer injectivity diameter")->required();
    c_distance->add_option("--eps-max", eps_max, "largest eps the certificate supports (default 0.3)");
    c_distance->add_flag("--force", force, "evaluate out-of-hypothesis inputs uncertified");
    add_output_opts(c_distance, out_distance, false);

    CLI::App* c_region =
        app.add_subcommand("region-map", "realizing power over a (lambda, tau) grid");
    c_region->add_option("--eps", eps, "injectivity diameter")->required();
    c_region->add_option("--alpha", alpha, "cone angle (default 2*pi)");
    add_grid_opts(c_region, grid_region);
    add_output_opts(c_region, out_region, true);

    CLI::App* c_surface =
        app.add_subcommand("surface", "tube distance over a (lambda, tau) grid");
    c_surface->add_option("--delta", delta, "inner injectivity diameter")->required();
    c_surface->add_option("--eps", eps, "outer injectivity diameter")->required();
    c_surface->add_option("--alpha", alpha, "cone angle (default 2*pi)");
    add_grid_opts(c_surface, grid_surface);
    add_output_opts(c_surface, out_surface, true);

    CLI::App* c_verify =
        app.add_subcommand("verify", "randomized certificate campaign over the bounds");
    c_verify->add_option("--samples", samples, "number of random tori (default 10000)");
    c_verify->add_option("--eps-max", eps_max, "largest eps the certificate supports (default 0.3)");
    c_verify->add_option("--seed", seed, "campaign seed (default 42)");
    c_verify->add_flag("--self-test", self_test, "inject one adversarial row");
    add_output_opts(c_verify, out_verify, true);

    CLI::App* c_sharp =
        app.add_subcommand("sharpness", "near-extremal witness for a (delta, eps) pair");
    c_sharp->add_option("--delta", delta, "inner injectivity diameter")->required();
    c_sharp->add_option("--eps", eps, "outer injectivity diameter")->required();
    add_output_opts(c_sharp, out_sharp, false);

    CLI::App* c_cusp = app.add_subcommand("cusp", "horocusp distance with both bounds");
    c_cusp->add_option("--delta", delta, "inner injectivity diameter")->required();
    c_cusp->add_option("--eps", eps, "outer injectivity diameter")->required();
    add_output_opts(c_cusp, out_cusp, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_invalid;
    }

    try {
        if (*c_radius) return run_radius(alpha, lambda, tau, eps, with_oracle, out_radius);
        if (*c_distance) {
            return run_distance(alpha, lambda, tau, delta, eps, eps_max, force, out_distance);
        }
        if (*c_region) return run_region_map(alpha, eps, grid_region, out_region);
        if (*c_surface) return run_surface(alpha, delta, eps, grid_surface, out_surface);
        if (*c_verify) return run_verify(samples, eps_max, seed, self_test, out_verify);
        if (*c_sharp) return run_sharpness(delta, eps, out_sharp);
        if (*c_cusp) return run_cusp(delta, eps, out_cusp);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_invalid;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_invalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_violation;
    }
    return exit_invalid;
}
