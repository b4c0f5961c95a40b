#include "ifalab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include "ifalab/ca.hpp"
#include "ifalab/error.hpp"
#include "ifalab/io.hpp"
#include "ifalab/kernels.hpp"
#include "ifalab/market.hpp"
#include "ifalab/regulation.hpp"
#include "ifalab/stats.hpp"
#include "ifalab/survey.hpp"
#include "ifalab/svg.hpp"

namespace ifalab {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

// Where a subcommand's artifacts go. Without --out, the primary CSV goes to stdout.
class Sink {
public:
    Sink(std::optional<fs::path> dir, bool svg, std::ostream& out) : dir_(std::move(dir)), svg_(svg), out_(out) {}

    bool to_disk() const { return dir_.has_value(); }
    bool svg() const { return svg_ && dir_.has_value(); }

    void primary(const std::string& name, const std::string& content) {
        if (dir_) file(name, content);
        else out_ << content;
    }

    void file(const std::string& name, const std::string& content) {
        if (!dir_) return;
        write_file_atomic(*dir_ / name, content);
        files_.push_back(name);
    }

    void plot(const std::string& name, const std::function<std::string()>& render) {
        if (svg()) file(name, render());
    }

    const std::vector<std::string>& files() const { return files_; }
    const std::optional<fs::path>& dir() const { return dir_; }

private:
    std::optional<fs::path> dir_;
    bool svg_;
    std::ostream& out_;
    std::vector<std::string> files_;
};

struct TraderOptions {
    std::string rule = "54";
    unsigned states = 2;
    unsigned lookback = 22;
    std::string seed_window = "allU";

    void add_to(CLI::App& app, unsigned default_lookback) {
        lookback = default_lookback;
        app.add_option("--rule", rule, "rule number or k=<k>;<digits>")->capture_default_str();
        app.add_option("--k", states, "state count for integer rule numbers")->capture_default_str();
        app.add_option("--n", lookback, "lookback window in ticks")->capture_default_str();
        app.add_option("--seed-window", seed_window, "U/D string most-recent-first, allU or allD")
            ->capture_default_str();
    }

    TraderConfig config() const {
        TraderConfig cfg{parse_rule(rule, states), lookback, parse_seed_window(seed_window, lookback)};
        cfg.validate();
        return cfg;
    }
};

std::string path_csv(const MarketPath& path) {
    CsvWriter csv{"t", "tick", "price"};
    for (std::size_t t = 0; t < path.ticks.size(); ++t) {
        csv.field(static_cast<std::uint64_t>(t + 1)).field(int{path.ticks[t]}).field(path.prices[t]).end_row();
    }
    return csv.str();
}

std::vector<double> as_doubles(const std::vector<std::int64_t>& v) { return {v.begin(), v.end()}; }

std::vector<std::size_t> parse_lags(const std::string& text) {
    std::vector<std::size_t> lags;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto dash = item.find('-');
        try {
            if (dash != std::string::npos) {
                const auto lo = std::stoul(item.substr(0, dash));
                const auto hi = std::stoul(item.substr(dash + 1));
                for (auto l = lo; l <= hi; ++l) lags.push_back(l);
            } else {
                lags.push_back(std::stoul(item));
            }
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::usage, "invalid lag list '" + text + "'");
        }
    }
    std::sort(lags.begin(), lags.end());
    lags.erase(std::unique(lags.begin(), lags.end()), lags.end());
    return lags;
}

void add_moments_row(CsvWriter& csv, std::string_view name, const MomentEstimates& m,
                     std::span<const std::size_t> lags) {
    csv.field(name).field(m.mean).field(m.std_dev).field(m.skewness).field(m.excess_kurtosis);
    for (auto l : lags) csv.field(m.autocorr.at(l));
    csv.end_row();
}

std::string moments_header(std::span<const std::size_t> lags) {
    std::string h = "series,mean,std_dev,skewness,excess_kurtosis";
    for (auto l : lags) h += ",lag_" + std::to_string(l);
    return h + "\n";
}

std::string rolling_csv(const std::vector<std::pair<std::string, std::vector<MomentEstimates>>>& sets,
                        std::size_t stride) {
    CsvWriter csv{"series", "start", "mean", "std_dev", "skewness", "excess_kurtosis"};
    for (const auto& [name, rolling] : sets) {
        for (std::size_t i = 0; i < rolling.size(); ++i) {
            const auto& m = rolling[i];
            csv.field(name).field(static_cast<std::uint64_t>(i * stride)).field(m.mean).field(m.std_dev);
            csv.field(m.skewness).field(m.excess_kurtosis).end_row();
        }
    }
    return csv.str();
}

std::vector<svg::Series> rolling_panels(const std::string& prefix, const std::vector<MomentEstimates>& rolling,
                                        const std::string& colour) {
    std::vector<svg::Series> out(4);
    const char* names[] = {"mean", "std_dev", "skewness", "excess_kurtosis"};
    for (int i = 0; i < 4; ++i) out[i] = {prefix + names[i], {}, colour};
    for (const auto& m : rolling) {
        out[0].y.push_back(m.mean);
        out[1].y.push_back(m.std_dev);
        out[2].y.push_back(m.skewness);
        out[3].y.push_back(m.excess_kurtosis);
    }
    return out;
}

std::vector<std::uint8_t> parse_initial(const std::string& text, std::size_t width) {
    if (text == "center" || text == "centre") return {};
    std::vector<std::uint8_t> row;
    for (char c : text) {
        if (c != '0' && c != '1') throw Error(ErrorCode::parse, "initial row must be 'center' or a 0/1 string");
        row.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    if (row.size() != width) throw Error(ErrorCode::precondition, "initial row length must equal --width");
    return row;
}

template <typename T>
std::vector<T> parse_list(const std::string& text) {
    std::vector<T> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            out.push_back(static_cast<T>(std::stoll(item)));
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::usage, "invalid list '" + text + "'");
        }
    }
    return out;
}

struct CaOptions {
    std::size_t width = 201;
    std::size_t steps = 400;
    int rule = 110;
    double p = 0.1;
    std::uint64_t seed = 1;
    std::string initial = "center";

    void add_to(CLI::App& app) {
        app.add_option("--width", width)->capture_default_str();
        app.add_option("--steps", steps)->capture_default_str();
        app.add_option("--rule", rule, "elementary CA rule 0..255")->capture_default_str();
        app.add_option("--p", p, "ex post justice probability")->capture_default_str();
        app.add_option("--seed", seed, "generator seed")->capture_default_str();
        app.add_option("--initial", initial, "center or a 0/1 string of length width")->capture_default_str();
    }

    CaConfig config(CaRegime regime) const {
        CaConfig cfg{width, steps, rule, regime, p, seed, {}};
        cfg.initial = parse_initial(initial, width);
        cfg.validate();
        return cfg;
    }
};

std::string ca_report_csv(const std::vector<RegimeOutcome>& outcomes, const CaConfig& cfg) {
    CsvWriter csv{"regime", "p", "seed", "score", "pollution_rate", "right_half_polluted"};
    for (const auto& o : outcomes) {
        csv.field(to_string(o.regime)).field(cfg.justice_p).field(cfg.seed).field(o.score);
        csv.field(o.pollution_rate).field(o.right_half_polluted).end_row();
    }
    return csv.str();
}

// The replayable part of the command line: everything except --out.
std::vector<std::string> replayable_args(std::span<const std::string> args) {
    std::vector<std::string> kept;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--out") {
            ++i;
            continue;
        }
        if (args[i].starts_with("--out=")) continue;
        kept.push_back(args[i]);
    }
    return kept;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

int replay(const fs::path& manifest_path, const std::string& out_dir, std::ostream& out, std::ostream& err) {
    const auto manifest = json::parse(read_file(manifest_path));
    std::vector<std::string> args = manifest.at("argv").get<std::vector<std::string>>();
    if (!out_dir.empty()) {
        args.push_back("--out");
        args.push_back(out_dir);
    }
    return run(args, out, err);
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Iterated-finite-automaton market laboratory", "ifa_lab"};
    app.require_subcommand(1);
    app.set_version_flag("--version", tool_version);

    std::string out_dir;
    bool svg_flag = false;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", out_dir, "directory for CSV reports and the run manifest");
        sub->add_flag("--svg", svg_flag, "also write SVG plots (requires --out)");
    };

    json params = json::object();
    json seeds = json::object();
    std::function<void(Sink&)> action;

    // simulate
    TraderOptions sim_opts;
    std::uint64_t sim_ticks = 1000;
    auto* sim = app.add_subcommand("simulate", "price path of one representative trader");
    sim_opts.add_to(*sim, 22);
    sim->add_option("--ticks", sim_ticks, "horizon in ticks")->capture_default_str();
    add_common(sim);
    sim->callback([&] {
        action = [&](Sink& sink) {
            const auto cfg = sim_opts.config();
            const auto path = simulate(cfg, sim_ticks);
            sink.primary("path.csv", path_csv(path));
            sink.plot("path.svg", [&] {
                const std::vector<svg::Series> s{{"price", as_doubles(path.prices), "#1f4e99"}};
                return svg::lines("Price path, rule " + format_rule(cfg.rule), s);
            });
        };
    });

    // cycle
    TraderOptions cyc_opts;
    bool cyc_all = false;
    auto* cyc = app.add_subcommand("cycle", "transient and period of the window map");
    cyc_opts.add_to(*cyc, 22);
    cyc->add_flag("--all", cyc_all, "enumerate every cycle over all 2^n windows (n <= 20)");
    add_common(cyc);
    cyc->callback([&] {
        action = [&](Sink& sink) {
            const auto cfg = cyc_opts.config();
            if (cyc_all) {
                CsvWriter csv{"period", "entry", "basin_size"};
                for (const auto& c : enumerate_cycles(cfg.rule, cfg.lookback)) {
                    csv.field(c.period).field(format_window(unpack_window(c.entry, cfg.lookback)));
                    csv.field(c.basin_size).end_row();
                }
                sink.primary("cycles.csv", csv.str());
                return;
            }
            const auto info = cycle_length(cfg);
            CsvWriter csv{"rule", "n", "seed", "transient", "period"};
            csv.field(cyc_opts.rule).field(cfg.lookback).field(format_window(cfg.seed));
            csv.field(info.transient).field(info.period).end_row();
            sink.primary("cycle.csv", csv.str());
        };
    });

    // survey
    unsigned survey_k = 2;
    SurveyConfig survey_cfg;
    std::string survey_lookbacks = "6,10,14";
    auto* sur = app.add_subcommand("survey", "classify every k-state rule");
    sur->add_option("--k", survey_k, "state count")->capture_default_str();
    sur->add_option("--lookbacks", survey_lookbacks, "ascending lookbacks")->capture_default_str();
    sur->add_option("--horizon", survey_cfg.horizon, "ticks simulated per rule")->capture_default_str();
    sur->add_option("--threshold", survey_cfg.complexity_threshold, "complexity threshold for COMPLEX")
        ->capture_default_str();
    sur->add_option("--bucket", survey_cfg.bucket_size, "ticks per return bucket")->capture_default_str();
    sur->add_flag("--allow-large", survey_cfg.allow_large, "permit the k=4 sweep");
    add_common(sur);
    sur->callback([&] {
        action = [&](Sink& sink) {
            survey_cfg.lookbacks = parse_list<unsigned>(survey_lookbacks);
            const auto report = survey_rules(survey_k, survey_cfg);

            std::string header = "rule,canonical,label";
            for (auto n : survey_cfg.lookbacks) header += ",period_n" + std::to_string(n);
            header += ",tick_complexity,excess_kurtosis\n";
            std::string body = header;
            for (const auto& r : report.rules) {
                body += std::to_string(r.rule.value) + "," + std::to_string(r.canonical.value) + "," +
                        std::string(to_string(r.label));
                for (const auto& [n, period] : r.period_by_n) body += "," + std::to_string(period);
                body += "," + format_double(r.tick_complexity) + "," + format_double(r.excess_kurtosis) + "\n";
            }
            sink.primary("survey.csv", body);

            CsvWriter classes{"canonical", "label", "members"};
            for (const auto& c : report.classes) {
                std::string members;
                for (const auto& m : c.members) members += (members.empty() ? "" : " ") + std::to_string(m.value);
                classes.field(c.canonical.value).field(to_string(c.label)).field(members).end_row();
            }
            sink.file("classes.csv", classes.str());

            std::ostream& info = sink.to_disk() ? out : err;
            const auto complex = report.complex_classes();
            info << "complex_classes=" << complex.size();
            for (const auto& c : complex) info << " " << c.value;
            if (survey_k == 2) info << " unique_contains_54=" << (report.unique_complex_class_contains(54) ? "true" : "false");
            info << "\n";
        };
    });

    // stats
    TraderOptions st_opts;
    std::string st_input;
    std::string st_format = "auto";
    std::uint64_t st_ticks = 22 * 40000;
    std::size_t st_bucket = default_bucket_size;
    bool st_overlapping = false;
    std::string st_lags = "1-22";
    std::size_t st_rolling = 250;
    std::size_t st_stride = 10;
    std::uint64_t st_seed = 1;
    auto* st = app.add_subcommand("stats", "stylized-facts statistics against a matched Normal benchmark");
    st_opts.add_to(*st, 22);
    st->add_option("--input", st_input, "CSV of returns; omit to generate from the trader");
    st->add_option("--format", st_format, "auto | plain | dated")->capture_default_str();
    st->add_option("--ticks", st_ticks, "generated horizon in ticks")->capture_default_str();
    st->add_option("--bucket", st_bucket, "ticks per bucket")->capture_default_str();
    st->add_flag("--overlapping", st_overlapping, "rolling-sum buckets instead of disjoint ones");
    st->add_option("--lags", st_lags, "autocorrelation lags, e.g. 1-22 or 1,5,10")->capture_default_str();
    st->add_option("--rolling-window", st_rolling, "returns per rolling window")->capture_default_str();
    st->add_option("--stride", st_stride, "rolling window step")->capture_default_str();
    st->add_option("--benchmark-seed", st_seed, "seed of the Normal benchmark")->capture_default_str();
    add_common(st);
    st->callback([&] {
        action = [&](Sink& sink) {
            seeds["benchmark"] = st_seed;
            ReturnSeries series;
            if (!st_input.empty()) {
                series = ingest_returns(st_input, parse_ingest_format(st_format));
            } else {
                series = bucket_returns(simulate(st_opts.config(), st_ticks), st_bucket, st_overlapping);
            }
            const auto lags = parse_lags(st_lags);
            const auto m = moments(series, lags);
            const auto bench = normal_benchmark(m.mean, m.std_dev, series.returns.size(), st_seed);
            const auto mb = moments(bench, lags);

            CsvWriter csv;
            add_moments_row(csv, series.source, m, lags);
            add_moments_row(csv, bench.source, mb, lags);
            sink.primary("moments.csv", moments_header(lags) + csv.str());

            CsvWriter ret{"index", "return", "benchmark"};
            for (std::size_t i = 0; i < series.returns.size(); ++i) {
                ret.field(static_cast<std::uint64_t>(i)).field(series.returns[i]).field(bench.returns[i]).end_row();
            }
            sink.file("returns.csv", ret.str());

            const std::size_t window = std::min(st_rolling, series.returns.size());
            const auto rolling = rolling_moments(series, window, st_stride);
            const auto rolling_bench = rolling_moments(bench, window, st_stride);
            sink.file("rolling.csv", rolling_csv({{series.source, rolling}, {bench.source, rolling_bench}}, st_stride));

            sink.plot("returns.svg", [&] {
                const std::vector<svg::Series> s{{series.source, series.returns, "#1f4e99"},
                                                 {bench.source, bench.returns, "#e0a030"}};
                return svg::scatter("Returns with matched Normal overlay", s);
            });
            sink.plot("rolling.svg", [&] {
                return svg::panels("Rolling moments", rolling_panels("", rolling, "#1f4e99"));
            });
        };
    });

    // regulate
    TraderOptions reg_opts;
    std::uint64_t reg_ticks = 100000;
    std::string reg_spec = "prick";
    bool reg_all = false;
    bool reg_sweep = false;
    std::string sweep_ma = "20,50,100,200,500";
    std::string sweep_k = "2,5,10,20,50";
    std::size_t reg_bucket = default_bucket_size;
    std::size_t reg_rolling = 250;
    auto* reg = app.add_subcommand("regulate", "trader under regulatory overrides");
    reg_opts.add_to(*reg, 22);
    reg->add_option("--ticks", reg_ticks, "horizon in ticks")->capture_default_str();
    reg->add_option("--regime", reg_spec, "unregulated | prick[:ma,k[,budget]] | prop[...] | both[...]")
        ->capture_default_str();
    reg->add_flag("--all-regimes", reg_all, "run unregulated, prick, prop and both with the --regime detector");
    reg->add_flag("--sweep", reg_sweep, "prick vs both detector sweep");
    reg->add_option("--sweep-ma", sweep_ma, "moving-average windows for --sweep")->capture_default_str();
    reg->add_option("--sweep-k", sweep_k, "thresholds for --sweep")->capture_default_str();
    reg->add_option("--bucket", reg_bucket, "ticks per return bucket")->capture_default_str();
    reg->add_option("--rolling-window", reg_rolling, "buckets per rolling window")->capture_default_str();
    add_common(reg);
    reg->callback([&] {
        action = [&](Sink& sink) {
            const auto cfg = reg_opts.config();
            const Regime base = parse_regime(reg_spec);
            if (reg_sweep) {
                const auto probes = sweep_asymmetry(cfg, parse_list<std::size_t>(sweep_ma),
                                                    parse_list<std::int64_t>(sweep_k), reg_ticks);
                CsvWriter csv{"ma", "k", "identical", "prick_interventions", "prop_interventions_both"};
                for (const auto& p : probes) {
                    csv.field(static_cast<std::uint64_t>(p.detector.ma_window)).field(p.detector.threshold);
                    csv.field(p.identical_ticks).field(static_cast<std::uint64_t>(p.prick_interventions));
                    csv.field(static_cast<std::uint64_t>(p.prop_interventions_both)).end_row();
                }
                sink.primary("sweep.csv", csv.str());
                return;
            }
            std::vector<Regime> regimes{base};
            if (reg_all) {
                regimes.clear();
                for (auto kind : {RegimeKind::unregulated, RegimeKind::prick_bubbles, RegimeKind::prop_crashes,
                                  RegimeKind::both}) {
                    regimes.push_back({kind, base.detector, base.budget});
                }
            }
            CsvWriter summary{"regime", "interventions", "prick_interventions", "prop_interventions",
                              "budget_exhausted_at", "mean", "std_dev", "skewness", "excess_kurtosis"};
            std::vector<std::pair<std::string, std::vector<MomentEstimates>>> rolling_sets;
            std::vector<svg::Series> panels;
            const char* colours[] = {"#1f4e99", "#c03030", "#30a050", "#8040a0"};
            for (std::size_t i = 0; i < regimes.size(); ++i) {
                const auto& regime = regimes[i];
                const auto run = simulate_regulated(cfg, regime, reg_ticks);
                const std::string name(to_string(regime.kind));

                CsvWriter csv{"t", "tick", "price", "intervened", "original", "final"};
                std::size_t next = 0;
                for (std::size_t t = 0; t < run.path.ticks.size(); ++t) {
                    const int tick = run.path.ticks[t];
                    const Action final_action = tick > 0 ? Action::buy : Action::sell;
                    const bool intervened = next < run.interventions.size() && run.interventions[next].t == t;
                    const Action original = intervened ? run.interventions[next].original : final_action;
                    if (intervened) ++next;
                    csv.field(static_cast<std::uint64_t>(t + 1)).field(tick).field(run.path.prices[t]);
                    csv.field(intervened).field(to_string(original)).field(to_string(final_action)).end_row();
                }
                if (regimes.size() == 1) sink.primary("run_" + name + ".csv", csv.str());
                else sink.file("run_" + name + ".csv", csv.str());

                const auto returns = bucket_returns(run.path, reg_bucket);
                const auto m = moments(returns);
                summary.field(format_regime(regime)).field(static_cast<std::uint64_t>(run.interventions.size()));
                summary.field(static_cast<std::uint64_t>(run.count(Action::sell)));
                summary.field(static_cast<std::uint64_t>(run.count(Action::buy)));
                summary.field(run.budget_exhausted_at ? std::to_string(*run.budget_exhausted_at) : std::string("none"));
                summary.field(m.mean).field(m.std_dev).field(m.skewness).field(m.excess_kurtosis).end_row();

                const auto rolling = rolling_moments(returns, std::min(reg_rolling, returns.returns.size()), 1);
                rolling_sets.emplace_back(name, rolling);
                for (auto& s : rolling_panels(name + " ", rolling, colours[i % 4])) panels.push_back(std::move(s));
            }
            if (regimes.size() == 1) sink.file("regimes.csv", summary.str());
            else sink.primary("regimes.csv", summary.str());
            sink.file("rolling.csv", rolling_csv(rolling_sets, 1));
            sink.plot("rolling.svg", [&] { return svg::panels("Rolling moments by regime", panels); });
        };
    });

    // ca
    CaOptions ca_opts;
    std::string ca_regime = "anarchy";
    auto* ca = app.add_subcommand("ca", "elementary CA pollution model under one regime");
    ca_opts.add_to(*ca);
    ca->add_option("--regime", ca_regime, "anarchy | full_regulation | ex_post_justice")->capture_default_str();
    add_common(ca);
    ca->callback([&] {
        action = [&](Sink& sink) {
            seeds["ca"] = ca_opts.seed;
            const auto cfg = ca_opts.config(parse_ca_regime(ca_regime));
            const auto grid = run_ca(cfg);
            const auto outcome = summarize(grid, cfg.regime, seed_column(cfg));
            sink.primary("ca.csv", ca_report_csv({outcome}, cfg));
            sink.file("grid.pbm", to_pbm(grid));
            sink.plot("grid.svg", [&] { return svg::raster("Rule " + std::to_string(cfg.eca_rule) + ", " + ca_regime, grid); });
        };
    });

    // compare
    CaOptions cmp_opts;
    auto* cmp = app.add_subcommand("compare", "anarchy vs full regulation vs ex post justice");
    cmp_opts.add_to(*cmp);
    add_common(cmp);
    cmp->callback([&] {
        action = [&](Sink& sink) {
            seeds["ca"] = cmp_opts.seed;
            const auto cfg = cmp_opts.config(CaRegime::anarchy);
            const auto report = compare_regimes(cfg);
            sink.primary("compare.csv", ca_report_csv(report.outcomes, cfg));

            CsvWriter freq{"column", "anarchy", "full_regulation", "ex_post_justice"};
            for (std::size_t c = 0; c < cfg.width; ++c) {
                freq.field(static_cast<std::uint64_t>(c));
                for (const auto& o : report.outcomes) freq.field(o.cell_frequency[c]);
                freq.end_row();
            }
            sink.file("cell_frequency.csv", freq.str());
            if (sink.svg()) {
                for (auto regime : {CaRegime::anarchy, CaRegime::full_regulation, CaRegime::ex_post_justice}) {
                    auto run_cfg = cfg;
                    run_cfg.regime = regime;
                    const std::string name(to_string(regime));
                    sink.plot(name + ".svg", [&] { return svg::raster(name, run_ca(run_cfg)); });
                }
            }
        };
    });

    // replay
    std::string manifest_path;
    auto* rep = app.add_subcommand("replay", "re-run a command from its manifest.json");
    rep->add_option("manifest", manifest_path, "path to manifest.json")->required();
    rep->add_option("--out", out_dir, "directory for the replayed outputs");
    bool replaying = false;
    rep->callback([&] { replaying = true; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << tool_version << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: code=usage message=" << e.what() << "\n";
        return 2;
    }

    if (replaying) return replay(manifest_path, out_dir, out, err);

    std::optional<fs::path> dir;
    if (!out_dir.empty()) dir = fs::path(out_dir);
    Sink sink(dir, svg_flag, out);
    const auto* sub = app.get_subcommands().front();
    action(sink);

    if (sink.to_disk()) {
        json manifest;
        manifest["tool"] = "ifa_lab";
        manifest["version"] = tool_version;
        manifest["subcommand"] = sub->get_name();
        manifest["argv"] = replayable_args(args);
        json options = json::object();
        for (const auto* opt : sub->get_options()) {
            if (opt->get_name() == "--help" || opt->get_lnames().empty()) continue;
            const auto& name = opt->get_lnames().front();
            if (name == "out") continue;
            options[name] = opt->count() > 0 ? opt->as<std::string>() : opt->get_default_str();
        }
        manifest["parameters"] = options;
        manifest["seeds"] = seeds;
        manifest["simd"] = std::string(kernels::to_string(kernels::active_level()));
        manifest["outputs"] = sink.files();
        write_file_atomic(*dir / "manifest.json", manifest.dump(2) + "\n");
    }
    return 0;
}

}  // namespace

int dispatch(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    try {
        return run(args, out, err);
    } catch (const Error& e) {
        err << "error: code=" << to_string(e.code()) << " message=" << e.what() << "\n";
        return e.code() == ErrorCode::usage ? 2 : 1;
    } catch (const std::exception& e) {
        err << "error: code=internal message=" << e.what() << "\n";
        return 1;
    }
}

}  // namespace ifalab
