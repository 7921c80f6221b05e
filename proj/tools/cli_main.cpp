// Command-line front end: closed-form pricing, price curves, series audits,
// path simulation, the terminal share density, and multi-candidate fields.
// All numeric output uses shortest round-trip formatting so downstream
// consumers can reproduce library values bit for bit.
//
// Exit codes: 0 success, 2 bad input or parameter domain, 3 I/O failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <votemart/audit.hpp>
#include <votemart/density.hpp>
#include <votemart/multicandidate.hpp>
#include <votemart/pricing.hpp>
#include <votemart/process.hpp>

#include <charconv>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
    char buf[32];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
}

double parse_double_field(const std::string& field, const char* what) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    const auto [p, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || p != last)
        throw std::invalid_argument(std::string("malformed ") + what + ": '" +
                                    field + "'");
    return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

// Series file format: header "date,published_prob,vote_share_est", one row
// per forecast, share estimate column may be empty.
std::vector<votemart::ForecastPoint> read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open series file: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("series file is empty");
    {
        const auto header = split_csv_line(line);
        if (header != std::vector<std::string>{"date", "published_prob",
                                               "vote_share_est"})
            throw std::invalid_argument(
                "series header must be date,published_prob,vote_share_est");
    }
    std::vector<votemart::ForecastPoint> points;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 3)
            throw std::invalid_argument("series row needs 3 fields: " + line);
        votemart::ForecastPoint pt;
        pt.date = votemart::parse_date(fields[0]);
        pt.published_prob = parse_double_field(fields[1], "published_prob");
        if (!fields[2].empty())
            pt.vote_share_est = parse_double_field(fields[2], "vote_share_est");
        points.push_back(pt);
    }
    if (in.bad()) throw IoError("read error on series file: " + path);
    return points;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open output file: " + path);
    out << text;
    out.flush();
    if (!out) throw IoError("write error on output file: " + path);
}

// Emits to the file when a path was given, to stdout otherwise.
void emit(const std::string& path, const std::string& text) {
    if (path.empty())
        std::cout << text;
    else
        write_text(path, text);
}

json seed_json(const votemart::SeedSpec& seed) {
    return json{{"master_seed", seed.master_seed}, {"stream_id", seed.stream_id}};
}

int run_price(double y0, std::optional<double> s, std::optional<double> sigma,
              double horizon, double threshold) {
    if (s.has_value() == sigma.has_value())
        throw std::invalid_argument("give exactly one of --s and --sigma");
    json out;
    out["y0"] = y0;
    out["threshold"] = threshold;
    out["horizon"] = horizon;
    if (s) {
        out["price"] = votemart::price_binary_from_s(y0, *s, horizon, threshold);
        out["s_used"] = *s;
        if (horizon > 0.0)
            out["sigma_used"] = votemart::sigma_from_s(*s, y0, horizon);
        else
            out["sigma_used"] = nullptr;
    } else {
        out["price"] = votemart::price_binary(y0, *sigma, horizon, threshold);
        out["sigma_used"] = *sigma;
        out["s_used"] = horizon > 0.0
                            ? votemart::s_from_sigma(*sigma, y0, horizon)
                            : 0.0;
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_curve(const std::vector<double>& s_list, int grid_points,
              double horizon, double threshold, const std::string& out_path) {
    if (s_list.empty()) throw std::invalid_argument("--s needs at least one value");
    std::ostringstream csv;
    csv << "y0,s,price\n";
    for (double s : s_list) {
        const auto curve = votemart::price_curve(
            s, horizon, threshold, static_cast<std::size_t>(grid_points));
        for (const auto& pt : curve)
            csv << fmt(pt.y0) << ',' << fmt(s) << ',' << fmt(pt.price) << '\n';
    }
    emit(out_path, csv.str());
    return 0;
}

int run_audit(const std::string& series_path, const std::string& election_date,
              std::optional<double> s, bool estimate_s, double threshold,
              std::optional<int> outcome, double tolerance) {
    if (s.has_value() && estimate_s)
        throw std::invalid_argument("--s and --estimate-s are exclusive");
    if (!s.has_value() && !estimate_s)
        throw std::invalid_argument("need --s or --estimate-s");

    votemart::ForecastSeries series;
    series.points = read_series_csv(series_path);
    series.election_date = votemart::parse_date(election_date);
    if (outcome) {
        if (*outcome != 0 && *outcome != 1)
            throw std::invalid_argument("--outcome must be 0 or 1");
        series.outcome = (*outcome == 1);
    }
    series.validate();

    json out;
    double s_used = 0.0;
    if (estimate_s) {
        s_used = votemart::estimate_share_vol(series);
        out["s_estimated"] = s_used;
    } else {
        s_used = *s;
    }
    const auto report = votemart::martingale_audit(series, s_used, threshold,
                                                   tolerance);
    out["election_date"] = election_date;
    out["n_points"] = series.points.size();
    out["s_used"] = report.s_used;
    out["threshold"] = report.threshold;
    out["tolerance"] = report.tolerance;
    out["violation_count"] = report.violation_count;
    out["vol_violation"] = report.vol_violation;
    auto opt = [](const std::optional<double>& v) {
        return v ? json(*v) : json(nullptr);
    };
    out["realized_forecast_vol"] = opt(report.realized_forecast_vol);
    out["max_admissible_vol"] = opt(report.max_admissible_vol);
    out["dutch_book_pnl"] = opt(report.dutch_book);
    out["brier"] = opt(report.brier);
    out["l1"] = opt(report.l1);
    if (series.outcome) out["outcome"] = *series.outcome ? 1 : 0;
    out["points"] = json::array();
    for (const auto& pr : report.points) {
        json row;
        row["date"] = votemart::format_date(pr.date);
        row["published_prob"] = pr.published_prob;
        row["fair_value"] = opt(pr.fair_value);
        row["divergence"] = opt(pr.divergence);
        row["violation"] = pr.violation;
        row["note"] = pr.note;
        out["points"].push_back(std::move(row));
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_simulate(double y0, std::optional<double> s, std::optional<double> sigma,
                 double horizon, double dt, std::uint64_t n_paths,
                 std::uint64_t master_seed, std::uint64_t stream_id,
                 unsigned threads, bool exact, double threshold,
                 const std::string& out_path) {
    if (s.has_value() == sigma.has_value())
        throw std::invalid_argument("give exactly one of --s and --sigma");
    const double sig = sigma ? *sigma : votemart::sigma_from_s(*s, y0, horizon);
    const votemart::SeedSpec seed{master_seed, stream_id};
    const auto ens =
        exact ? votemart::simulate_y_terminal_exact(y0, sig, horizon, n_paths,
                                                    seed, threads)
              : votemart::simulate_y_paths(y0, sig, horizon, dt, n_paths, seed,
                                           threads);

    if (!out_path.empty()) {
        std::ostringstream csv;
        csv << "terminal_share\n";
        for (double v : ens.terminal_values) csv << fmt(v) << '\n';
        write_text(out_path, csv.str());
    }

    json out;
    out["n_paths"] = ens.n_paths();
    out["dt"] = ens.dt;
    out["scheme"] = ens.scheme == votemart::PathScheme::euler_share
                        ? "euler_share"
                        : "exact_x_mapped";
    out["seed"] = seed_json(ens.seed);
    out["sigma_used"] = sig;
    out["horizon"] = horizon;
    out["mean"] = ens.mean();
    out["variance"] = ens.variance();
    out["threshold"] = threshold;
    out["fraction_above"] = ens.fraction_above(threshold);
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_density(double y0, std::optional<double> s, std::optional<double> sigma,
                double horizon, int points, const std::string& out_path) {
    if (s.has_value() == sigma.has_value())
        throw std::invalid_argument("give exactly one of --s and --sigma");
    const double sig = sigma ? *sigma : votemart::sigma_from_s(*s, y0, horizon);
    const votemart::TimeSliceParams params{y0, sig, horizon};
    if (points < 2) throw std::domain_error("--points must be at least 2");
    std::ostringstream csv;
    csv << "y,density\n";
    for (int i = 0; i < points; ++i) {
        const double y = double(i + 1) / double(points + 1);
        csv << fmt(y) << ',' << fmt(votemart::timeslice_density(y, params))
            << '\n';
    }
    emit(out_path, csv.str());
    return 0;
}

int run_multi(const std::vector<double>& shares,
              const std::vector<std::string>& ids, double sigma, double horizon,
              double dt, std::uint64_t n_paths, std::uint64_t master_seed,
              std::uint64_t stream_id, unsigned threads,
              const std::string& rule_name, double threshold) {
    votemart::ShareVector init{shares, ids};
    votemart::WinRule rule;
    if (rule_name == "plurality")
        rule = votemart::WinRule::plurality();
    else if (rule_name == "majority")
        rule = votemart::WinRule::majority(threshold);
    else
        throw std::invalid_argument("--rule must be plurality or majority");

    const votemart::SeedSpec seed{master_seed, stream_id};
    const auto ens = votemart::simulate_shares(init, sigma, horizon, dt,
                                               n_paths, seed, threads);
    const auto wins = votemart::win_probabilities(ens, rule);

    json out;
    out["rule"] = rule_name;
    if (rule.kind == votemart::WinRule::Kind::majority_threshold)
        out["threshold"] = rule.threshold;
    out["n_paths"] = ens.n_paths;
    out["dt"] = ens.dt;
    out["seed"] = seed_json(seed);
    out["initial_shares"] = shares;
    if (!ids.empty()) out["candidate_ids"] = ids;
    out["win_probabilities"] = wins;
    std::cout << out.dump(2) << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"binary election contract pricing and forecast audit"};
    app.require_subcommand(1);
    std::function<int()> action;

    // price
    {
        auto* cmd = app.add_subcommand(
            "price", "closed-form value of the binary contract");
        auto y0 = std::make_shared<double>(0.5);
        auto s = std::make_shared<std::optional<double>>();
        auto sigma = std::make_shared<std::optional<double>>();
        auto horizon = std::make_shared<double>(0.0);
        auto threshold = std::make_shared<double>(0.5);
        cmd->add_option("--y0", *y0, "current vote share estimate")->required();
        cmd->add_option("--s", *s,
                        "share volatility over the whole remaining horizon");
        cmd->add_option("--sigma", *sigma, "shadow volatility (needs --horizon)");
        cmd->add_option("--horizon", *horizon, "time to the election, years");
        cmd->add_option("--threshold", *threshold, "winning share threshold");
        cmd->callback([=, &action] {
            action = [=] {
                return run_price(*y0, *s, *sigma, *horizon, *threshold);
            };
        });
    }

    // curve
    {
        auto* cmd = app.add_subcommand(
            "curve", "price as a function of the share estimate, CSV");
        auto s_list = std::make_shared<std::vector<double>>();
        auto grid = std::make_shared<int>(201);
        auto horizon = std::make_shared<double>(0.0);
        auto threshold = std::make_shared<double>(0.5);
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--s", *s_list, "share volatility, repeat or comma-list")
            ->required()
            ->delimiter(',');
        cmd->add_option("--grid-points", *grid, "number of share grid points");
        cmd->add_option("--horizon", *horizon, "time to the election, years");
        cmd->add_option("--threshold", *threshold, "winning share threshold");
        cmd->add_option("-o,--out", *out_path, "output CSV path (default stdout)");
        cmd->callback([=, &action] {
            action = [=] {
                return run_curve(*s_list, *grid, *horizon, *threshold, *out_path);
            };
        });
    }

    // audit
    {
        auto* cmd = app.add_subcommand(
            "audit", "audit a published forecast series, JSON report");
        auto series = std::make_shared<std::string>();
        auto election = std::make_shared<std::string>();
        auto s = std::make_shared<std::optional<double>>();
        auto estimate = std::make_shared<bool>(false);
        auto threshold = std::make_shared<double>(0.5);
        auto outcome = std::make_shared<std::optional<int>>();
        auto tol = std::make_shared<double>(0.05);
        cmd->add_option("--series", *series,
                        "CSV: date,published_prob,vote_share_est")
            ->required();
        cmd->add_option("--election-date", *election, "YYYY-MM-DD")->required();
        cmd->add_option("--s", *s, "annualized share volatility");
        cmd->add_flag("--estimate-s", *estimate,
                      "estimate the share volatility from the series itself");
        cmd->add_option("--threshold", *threshold, "winning share threshold");
        cmd->add_option("--outcome", *outcome, "realized outcome, 0 or 1");
        cmd->add_option("--tol", *tol, "divergence tolerance");
        cmd->callback([=, &action] {
            action = [=] {
                return run_audit(*series, *election, *s, *estimate, *threshold,
                                 *outcome, *tol);
            };
        });
    }

    // simulate
    {
        auto* cmd = app.add_subcommand(
            "simulate", "simulate terminal shares, JSON summary");
        auto y0 = std::make_shared<double>(0.5);
        auto s = std::make_shared<std::optional<double>>();
        auto sigma = std::make_shared<std::optional<double>>();
        auto horizon = std::make_shared<double>(0.0);
        auto dt = std::make_shared<double>(1e-3);
        auto paths = std::make_shared<std::uint64_t>(10000);
        auto master = std::make_shared<std::uint64_t>(0);
        auto stream = std::make_shared<std::uint64_t>(0);
        auto threads = std::make_shared<unsigned>(0);
        auto exact = std::make_shared<bool>(false);
        auto threshold = std::make_shared<double>(0.5);
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--y0", *y0, "current vote share estimate")->required();
        cmd->add_option("--s", *s,
                        "share volatility over the whole remaining horizon");
        cmd->add_option("--sigma", *sigma, "shadow volatility");
        cmd->add_option("--horizon", *horizon, "time to the election, years")
            ->required();
        cmd->add_option("--dt", *dt, "Euler step, years");
        cmd->add_option("--paths", *paths, "number of paths");
        cmd->add_option("--seed", *master, "master seed");
        cmd->add_option("--stream", *stream, "base stream id");
        cmd->add_option("--threads", *threads, "worker threads, 0 = auto");
        cmd->add_flag("--exact", *exact,
                      "draw terminals exactly instead of stepping");
        cmd->add_option("--threshold", *threshold,
                        "threshold for the reported win frequency");
        cmd->add_option("-o,--out", *out_path, "write terminal values CSV here");
        cmd->callback([=, &action] {
            action = [=] {
                return run_simulate(*y0, *s, *sigma, *horizon, *dt, *paths,
                                    *master, *stream, *threads, *exact,
                                    *threshold, *out_path);
            };
        });
    }

    // density
    {
        auto* cmd = app.add_subcommand(
            "density", "terminal share density on a grid, CSV");
        auto y0 = std::make_shared<double>(0.5);
        auto s = std::make_shared<std::optional<double>>();
        auto sigma = std::make_shared<std::optional<double>>();
        auto horizon = std::make_shared<double>(0.0);
        auto points = std::make_shared<int>(201);
        auto out_path = std::make_shared<std::string>();
        cmd->add_option("--y0", *y0, "current vote share estimate")->required();
        cmd->add_option("--s", *s,
                        "share volatility over the whole remaining horizon");
        cmd->add_option("--sigma", *sigma, "shadow volatility");
        cmd->add_option("--horizon", *horizon, "time to the election, years")
            ->required();
        cmd->add_option("--points", *points, "number of grid points");
        cmd->add_option("-o,--out", *out_path, "output CSV path (default stdout)");
        cmd->callback([=, &action] {
            action = [=] {
                return run_density(*y0, *s, *sigma, *horizon, *points, *out_path);
            };
        });
    }

    // multi
    {
        auto* cmd = app.add_subcommand(
            "multi", "multi-candidate win probabilities, JSON");
        auto shares = std::make_shared<std::vector<double>>();
        auto ids = std::make_shared<std::vector<std::string>>();
        auto sigma = std::make_shared<double>(1.0);
        auto horizon = std::make_shared<double>(0.0);
        auto dt = std::make_shared<double>(1e-3);
        auto paths = std::make_shared<std::uint64_t>(10000);
        auto master = std::make_shared<std::uint64_t>(0);
        auto stream = std::make_shared<std::uint64_t>(0);
        auto threads = std::make_shared<unsigned>(0);
        auto rule = std::make_shared<std::string>("plurality");
        auto threshold = std::make_shared<double>(0.5);
        cmd->add_option("--shares", *shares, "initial shares, comma-list")
            ->required()
            ->delimiter(',');
        cmd->add_option("--ids", *ids, "candidate labels, comma-list")
            ->delimiter(',');
        cmd->add_option("--sigma", *sigma, "shadow volatility")->required();
        cmd->add_option("--horizon", *horizon, "time to the election, years")
            ->required();
        cmd->add_option("--dt", *dt, "Euler step, years");
        cmd->add_option("--paths", *paths, "number of paths");
        cmd->add_option("--seed", *master, "master seed");
        cmd->add_option("--stream", *stream, "base stream id");
        cmd->add_option("--threads", *threads, "worker threads, 0 = auto");
        cmd->add_option("--rule", *rule, "plurality or majority");
        cmd->add_option("--threshold", *threshold, "majority threshold");
        cmd->callback([=, &action] {
            action = [=] {
                return run_multi(*shares, *ids, *sigma, *horizon, *dt, *paths,
                                 *master, *stream, *threads, *rule, *threshold);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return action ? action() : 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const votemart::QuadratureError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
