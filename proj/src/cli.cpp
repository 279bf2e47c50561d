#include "censtail/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "censtail/asymptotics.hpp"
#include "censtail/config.hpp"
#include "censtail/error.hpp"
#include "censtail/estimators.hpp"
#include "censtail/io.hpp"
#include "censtail/kselect.hpp"
#include "censtail/montecarlo.hpp"
#include "json.hpp"

namespace censtail {

namespace {

struct EstimatorOptions {
    std::string name = "weighted-na";
    double beta = 1.01;

    EstimatorSpec spec() const {
        EstimatorSpec s;
        s.kind = parse_estimator_kind(name);
        if (s.uses_beta()) s.beta = beta;
        s.validate();
        return s;
    }
};

void add_estimator_options(CLI::App* cmd, EstimatorOptions& opts) {
    cmd->add_option("--est", opts.name,
                    "Estimator: hill, p-hat, efg, worms-km, mns-na, weighted-na, weighted-km, bw")
        ->capture_default_str();
    cmd->add_option("--beta", opts.beta, "Tuning parameter of weighted-na, weighted-km and bw")->capture_default_str();
}

// Writes to --out when given, otherwise to the command's stdout.
class Sink {
public:
    Sink(const std::string& file, std::ostream& fallback) : fallback_(fallback) {
        if (!file.empty()) {
            file_.open(file);
            if (!file_) throw DataError("cannot write '" + file + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : fallback_; }

private:
    std::ofstream file_;
    std::ostream& fallback_;
};

unsigned worker_count(std::optional<unsigned> requested) {
    unsigned workers = requested.value_or(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* cap = std::getenv("CENSTAIL_THREADS")) {
        try {
            const long v = std::stol(cap);
            if (v >= 1) workers = std::min(workers, static_cast<unsigned>(v));
        } catch (const std::exception&) {
            throw ConfigError("CENSTAIL_THREADS must be a positive integer");
        }
    }
    return std::max(1u, workers);
}

RankedSample load_ranked(const std::string& file, std::ostream& err) {
    const auto sample = ingest_file(file);
    err << ingest_summary(sample) << '\n';
    try {
        return rank(sample);
    } catch (const DomainError& e) {
        throw DataError(e.what());
    }
}

struct Range {
    std::size_t k_min = 2;
    std::optional<std::size_t> k_max;
};

void add_range_options(CLI::App* cmd, Range& range) {
    cmd->add_option("--k-min", range.k_min, "Smallest k")->capture_default_str();
    cmd->add_option("--k-max", range.k_max, "Largest k (default: largest admissible)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tail-index estimation for right-censored heavy-tailed data", "censtail"};
    app.require_subcommand(1);

    // estimate
    auto* estimate = app.add_subcommand("estimate", "Point estimate at a fixed or adaptively chosen k");
    std::string estimate_file;
    EstimatorOptions estimate_est;
    std::optional<std::size_t> estimate_k;
    bool auto_k = false;
    double nu = 0.3;
    Range estimate_range;
    std::optional<double> ci_level;
    std::string json_file;
    estimate->add_option("file", estimate_file, "CSV with columns z,delta")->required();
    add_estimator_options(estimate, estimate_est);
    auto* k_opt = estimate->add_option("--k", estimate_k, "Number of top order statistics");
    auto* auto_opt = estimate->add_flag("--auto-k", auto_k, "Choose k by the Reiss-Thomas criterion");
    k_opt->excludes(auto_opt);
    estimate->add_option("--nu", nu, "Reiss-Thomas weight exponent in [0, 1/2]")->capture_default_str();
    add_range_options(estimate, estimate_range);
    estimate->add_option("--ci", ci_level, "Confidence level of a plug-in normal interval");
    estimate->add_option("--json", json_file, "Also write the report as JSON to this file");

    // path
    auto* path_cmd = app.add_subcommand("path", "Estimates for every k in a range (k,estimate,reason)");
    std::string path_file;
    EstimatorOptions path_est;
    Range path_range;
    std::string path_out;
    path_cmd->add_option("file", path_file, "CSV with columns z,delta")->required();
    add_estimator_options(path_cmd, path_est);
    add_range_options(path_cmd, path_range);
    path_cmd->add_option("--out", path_out, "Output CSV (default: stdout)");

    // kselect
    auto* kselect_cmd = app.add_subcommand(
        "kselect", "Reiss-Thomas choice of k from a path CSV, or from a dataset when --est is given");
    std::string kselect_file;
    std::optional<std::string> kselect_est;
    double kselect_beta = 1.01;
    double kselect_nu = 0.3;
    Range kselect_range;
    std::string kselect_out;
    kselect_cmd->add_option("file", kselect_file, "Path CSV (k,estimate,reason) or dataset CSV (z,delta)")
        ->required();
    kselect_cmd->add_option("--est", kselect_est, "Treat the input as a dataset and build this estimator's path");
    kselect_cmd->add_option("--beta", kselect_beta, "Tuning parameter for --est")->capture_default_str();
    kselect_cmd->add_option("--nu", kselect_nu, "Weight exponent in [0, 1/2]")->capture_default_str();
    add_range_options(kselect_cmd, kselect_range);
    kselect_cmd->add_option("--out", kselect_out, "Output CSV (default: stdout)");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo bias/MSE table from a JSON run configuration");
    std::string config_file;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
    std::string simulate_out;
    simulate->add_option("--config", config_file, "Run configuration (JSON)")->required();
    simulate->add_option("--seed", seed, "Override the configured master seed");
    simulate->add_option("--threads", threads, "Worker threads (capped by CENSTAIL_THREADS)");
    simulate->add_option("--out", simulate_out, "Output CSV (default: stdout)");

    // compare
    auto* compare = app.add_subcommand("compare", "Side-by-side estimator paths, one column per estimator");
    std::string compare_file;
    std::vector<std::string> compare_specs;
    Range compare_range;
    std::string compare_out;
    compare->add_option("file", compare_file, "CSV with columns z,delta")->required();
    compare->add_option("--est", compare_specs, "Estimator as name or name:beta (repeatable)");
    add_range_options(compare, compare_range);
    compare->add_option("--out", compare_out, "Output CSV (default: stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (estimate->parsed()) {
            const auto spec = estimate_est.spec();
            const auto ranked = load_ranked(estimate_file, err);
            const TailContext context(ranked);
            const std::size_t n = ranked.size();
            if (!estimate_k && !auto_k) throw DomainError("estimate: give --k or --auto-k");
            if (ci_level && spec.kind != EstimatorKind::WeightedNA && spec.kind != EstimatorKind::WeightedKM &&
                spec.kind != EstimatorKind::MnsNA && spec.kind != EstimatorKind::WormsKM) {
                throw DomainError("--ci is available for weighted-na, weighted-km, mns-na and worms-km");
            }

            std::size_t k = 0;
            std::optional<KSelection> selection;
            if (auto_k) {
                if (n < 3) throw DomainError("estimate: --auto-k needs n >= 3");
                KSelectConfig cfg;
                cfg.nu = nu;
                cfg.k_min = std::max<std::size_t>(2, estimate_range.k_min);
                cfg.k_max = std::min(estimate_range.k_max.value_or(n - 1), n - 1);
                const auto p = path(context, spec, std::max(spec.min_k(), cfg.k_min), cfg.k_max);
                selection = reiss_thomas(p, cfg);
                k = selection->k_opt;
            } else {
                k = *estimate_k;
            }
            const auto result = context.evaluate(spec, k);
            if (result.reason == Reason::OutOfRange) {
                throw DomainError("k=" + std::to_string(k) + " is outside the admissible range for " + spec.label());
            }
            if (!result.ok()) {
                err << "error: " << spec.label() << " failed at k=" << k << ": " << to_string(result.reason) << '\n';
                return kExitNumerical;
            }
            const double phat = context.p_hat(std::min(k, n));

            nlohmann::json report;
            report["estimator"] = spec.label();
            report["k"] = k;
            report["estimate"] = result.value;
            report["p_hat"] = phat;
            report["n"] = n;
            out << "estimator=" << spec.label() << '\n'
                << "k=" << k << '\n'
                << "estimate=" << format_double(result.value) << '\n'
                << "p_hat=" << format_double(phat) << '\n';
            if (selection) {
                out << "criterion=" << format_double(selection->criterion) << '\n';
                report["criterion"] = selection->criterion;
                report["nu"] = nu;
            }
            for (const auto& w : spec.warnings()) err << "warning: " << w << '\n';
            if (ci_level) {
                const bool pinned = spec.kind == EstimatorKind::MnsNA || spec.kind == EstimatorKind::WormsKM;
                const double beta = pinned ? phat : spec.beta;
                const auto ci = confidence_interval(result.value, k, phat, beta, *ci_level);
                out << "ci_level=" << format_double(ci.level) << '\n'
                    << "ci_lower=" << format_double(ci.lower) << '\n'
                    << "ci_upper=" << format_double(ci.upper) << '\n'
                    << "se=" << format_double(ci.se) << '\n';
                report["ci"] = {{"level", ci.level}, {"lower", ci.lower}, {"upper", ci.upper}, {"se", ci.se}};
            }
            if (!json_file.empty()) {
                std::ofstream js(json_file);
                if (!js) throw DataError("cannot write '" + json_file + "'");
                js << report.dump(2) << '\n';
            }
            return kExitOk;
        }

        if (path_cmd->parsed()) {
            const auto spec = path_est.spec();
            const auto ranked = load_ranked(path_file, err);
            const auto p = path(ranked, spec, path_range.k_min, path_range.k_max.value_or(spec.max_k(ranked.size())));
            for (const auto& w : p.warnings) err << "warning: " << w << '\n';
            Sink sink(path_out, out);
            write_path_csv(sink.stream(), p);
            return kExitOk;
        }

        if (kselect_cmd->parsed()) {
            KSelectConfig cfg;
            cfg.nu = kselect_nu;
            cfg.k_min = kselect_range.k_min;
            EstimatePath p;
            if (kselect_est) {
                EstimatorOptions opts{*kselect_est, kselect_beta};
                const auto spec = opts.spec();
                const auto ranked = load_ranked(kselect_file, err);
                const std::size_t n = ranked.size();
                if (n < 3) throw DomainError("kselect: needs n >= 3");
                cfg.k_max = std::min(kselect_range.k_max.value_or(n - 1), n - 1);
                p = path(ranked, spec, std::max(spec.min_k(), std::min(cfg.k_min, cfg.k_max)), cfg.k_max);
            } else {
                std::ifstream in(kselect_file);
                if (!in) throw DataError("cannot open '" + kselect_file + "'");
                p = read_path_csv(in, kselect_file);
                if (kselect_range.k_max) cfg.k_max = *kselect_range.k_max;
            }
            const auto sel = reiss_thomas(p, cfg);
            Sink sink(kselect_out, out);
            write_kselect_csv(sink.stream(), sel);
            return kExitOk;
        }

        if (simulate->parsed()) {
            auto cfg = load_run_config(config_file);
            if (seed) cfg.seed.master = *seed;
            cfg.workers = worker_count(threads ? threads : (cfg.workers ? std::optional<unsigned>(cfg.workers)
                                                                         : std::nullopt));
            const auto summary = run(cfg);
            Sink sink(simulate_out, out);
            write_figure_table(sink.stream(), figure_table(summary));
            return kExitOk;
        }

        if (compare->parsed()) {
            std::vector<EstimatorSpec> specs;
            if (compare_specs.empty()) {
                compare_specs = {"weighted-na:1.01", "weighted-na:1.5", "weighted-na:2", "mns-na", "efg"};
            }
            for (const auto& s : compare_specs) specs.push_back(parse_estimator_spec(s));
            const auto ranked = load_ranked(compare_file, err);
            const TailContext context(ranked);
            const std::size_t n = ranked.size();
            if (n < 2) throw DomainError("compare: needs n >= 2");
            const std::size_t hi = std::min(compare_range.k_max.value_or(n - 1), n - 1);
            Sink sink(compare_out, out);
            auto& os = sink.stream();
            os << 'k';
            for (const auto& s : specs) os << ',' << s.label();
            os << '\n';
            for (std::size_t k = compare_range.k_min; k <= hi; ++k) {
                os << k;
                for (const auto& s : specs) {
                    const auto r = context.evaluate(s, k);
                    os << ',' << (r.ok() ? format_double(r.value) : std::string());
                }
                os << '\n';
            }
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DataError& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    } catch (const AllCensoredTail& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const Degenerate& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitUsage;
}

}  // namespace censtail
