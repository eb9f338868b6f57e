// mobskew command-line front end: wires the sieve, continued-fraction,
// flow, and correlation machinery into reproducible experiments with cached
// artifacts and CSV/JSON emission.
//
// Exit codes: 0 success, 2 precision-insufficient, 3 cache-corrupt,
// 4 bad-config.

#include <chrono>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mobskew/bessel_oracle.hpp"
#include "mobskew/confrac.hpp"
#include "mobskew/correlation.hpp"
#include "mobskew/errors.hpp"
#include "mobskew/flows.hpp"
#include "mobskew/io.hpp"
#include "mobskew/sieve.hpp"

namespace fs = std::filesystem;
using namespace mobskew;

namespace {

struct ExperimentConfig {
    std::uint64_t n_max = 1000000;
    std::string grid = "1000,10000,100000,1000000";
    unsigned precision_bits = 128;
    std::string q_cap = "1000000000000000000";
    std::string coeff_rule = "furstenberg"; // furstenberg | constant | custom-file
    double c_bound = 1.0;
    std::string coeff_file;
    unsigned threads = 1;
    std::uint64_t seed = 0;
    std::string cache_dir = "cache";
    std::string out;
    std::string format = "csv"; // csv | json
    bool rebuild = false;
    std::string kind = "moebius"; // moebius | liouville
};

class StageClock {
public:
    void start(const std::string& name) {
        name_ = name;
        t0_ = std::chrono::steady_clock::now();
    }
    void stop(RunManifest& m) {
        auto dt = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_);
        m.stages_ms.emplace_back(name_, dt.count());
    }

private:
    std::string name_;
    std::chrono::steady_clock::time_point t0_;
};

std::vector<std::uint64_t> parse_grid(const std::string& s) {
    std::vector<std::uint64_t> grid;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        grid.push_back(std::stoull(tok));
    }
    if (grid.empty()) throw config_error("empty N grid");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1]) throw config_error("N grid must be strictly increasing");
    return grid;
}

void echo_config(RunManifest& m, const ExperimentConfig& cfg) {
    m.config = {
        {"n_max", std::to_string(cfg.n_max)},
        {"grid", cfg.grid},
        {"precision_bits", std::to_string(cfg.precision_bits)},
        {"q_cap", cfg.q_cap},
        {"coeff_rule", cfg.coeff_rule},
        {"c_bound", g17(cfg.c_bound)},
        {"coeff_file", cfg.coeff_file},
        {"threads", std::to_string(cfg.threads)},
        {"seed", std::to_string(cfg.seed)},
        {"cache_dir", cfg.cache_dir},
        {"format", cfg.format},
        {"kind", cfg.kind},
    };
}

void validate_common(const ExperimentConfig& cfg) {
    if (cfg.precision_bits < 64) throw config_error("precision_bits must be >= 64");
    if (cfg.threads < 1) throw config_error("threads must be >= 1");
    if (cfg.format != "csv" && cfg.format != "json") throw config_error("format must be csv or json");
    if (cfg.kind != "moebius" && cfg.kind != "liouville")
        throw config_error("kind must be moebius or liouville");
}

fs::path cache_table_path(const ExperimentConfig& cfg) {
    return fs::path(cfg.cache_dir) / (cfg.kind + "_" + std::to_string(cfg.n_max) + ".msieve");
}

fs::path cache_manifest_path(const ExperimentConfig& cfg) {
    return fs::path(cfg.cache_dir) / (cfg.kind + "_" + std::to_string(cfg.n_max) + ".manifest.json");
}

// Build or reuse the sieve cache; validates the stored checksum against the
// manifest and rebuilds only when asked.
MobiusTable obtain_table(const ExperimentConfig& cfg, RunManifest& m) {
    fs::create_directories(cfg.cache_dir);
    fs::path tpath = cache_table_path(cfg);
    fs::path mpath = cache_manifest_path(cfg);

    StageClock clock;
    if (fs::exists(tpath) && fs::exists(mpath) && !cfg.rebuild) {
        clock.start("cache_validate");
        RunManifest cached = read_manifest(mpath);
        std::uint64_t want = 0;
        bool found = false;
        for (const auto& e : cached.outputs)
            if (e.path == tpath.filename().string()) {
                want = e.checksum;
                found = true;
            }
        std::uint64_t got = fnv1a64_file(tpath);
        clock.stop(m);
        if (!found || got != want)
            throw cache_corrupt("sieve cache " + tpath.string() +
                                " failed its checksum; rerun with --rebuild");
        clock.start("cache_load");
        MobiusTable t = load_table(tpath);
        clock.stop(m);
        if (t.n_max != cfg.n_max) throw cache_corrupt("sieve cache has wrong n_max");
        m.cache_hits += 1;
        return t;
    }

    clock.start("sieve");
    MobiusTable t = cfg.kind == "moebius"
                        ? mobius_sieve(cfg.n_max, kDefaultSegmentSize, cfg.threads)
                        : liouville_sieve(cfg.n_max, kDefaultSegmentSize, cfg.threads);
    clock.stop(m);
    clock.start("cache_store");
    save_table(t, tpath);
    clock.stop(m);
    m.cache_misses += 1;

    RunManifest cached;
    cached.config = {{"kind", cfg.kind}, {"n_max", std::to_string(cfg.n_max)}};
    cached.outputs.push_back({tpath.filename().string(), fnv1a64_file(tpath)});
    auto M = mertens(t, {t.n_max});
    cached.extra.emplace_back("mertens_n_max", std::to_string(M.checkpoints[0].second));
    write_manifest(cached, mpath);
    return t;
}

PartialQuotients obtain_alpha(const ExperimentConfig& cfg) {
    return build_liouville_alpha(BigInt(cfg.q_cap));
}

FurstenbergCocycle obtain_cocycle(const ExperimentConfig& cfg, PartialQuotients alpha) {
    if (cfg.coeff_rule == "furstenberg") return FurstenbergCocycle::furstenberg_example(std::move(alpha));
    if (cfg.coeff_rule == "constant")
        return FurstenbergCocycle::constant_rule(std::move(alpha), cfg.c_bound);
    if (cfg.coeff_rule == "zero") return FurstenbergCocycle::constant_rule(std::move(alpha), 0.0);
    if (cfg.coeff_rule == "custom-file") {
        if (cfg.coeff_file.empty()) throw config_error("custom-file rule needs --coeff-file");
        std::ifstream f(cfg.coeff_file);
        if (!f) throw config_error("cannot open coefficient file " + cfg.coeff_file);
        std::vector<Cplx> c;
        double re, im;
        std::string line;
        while (std::getline(f, line)) {
            if (line.empty()) continue;
            std::istringstream row(line);
            if (!(row >> re)) throw config_error("bad coefficient line: " + line);
            if (!(row >> im)) im = 0.0;
            c.emplace_back(re, im);
        }
        return FurstenbergCocycle::custom(std::move(alpha), std::move(c),
                                          cfg.c_bound >= 1.0 ? std::optional<double>(cfg.c_bound)
                                                             : std::nullopt);
    }
    throw config_error("unknown coeff rule: " + cfg.coeff_rule);
}

std::string series_json(const CorrelationSeries& s) {
    std::string out = "[\n";
    for (std::size_t i = 0; i < s.entries.size(); ++i) {
        const auto& [N, S] = s.entries[i];
        double a = std::abs(S);
        out += "  {\"N\": " + std::to_string(N) + ", \"re_S\": " + g17(S.real()) +
               ", \"im_S\": " + g17(S.imag()) + ", \"abs_S\": " + g17(a) +
               ", \"abs_S_over_N\": " + g17(a / static_cast<double>(N)) + "}";
        out += (i + 1 < s.entries.size()) ? ",\n" : "\n";
    }
    out += "]\n";
    return out;
}

void add_manifest_output(RunManifest& m, const fs::path& p) {
    m.outputs.push_back({p.filename().string(), fnv1a64_file(p)});
}

// ---- subcommands ----------------------------------------------------------

int cmd_sieve(const ExperimentConfig& cfg) {
    RunManifest m;
    echo_config(m, cfg);
    MobiusTable t = obtain_table(cfg, m);
    auto M = mertens(t, {t.n_max});
    m.extra.emplace_back("mertens_n_max", std::to_string(M.checkpoints[0].second));
    m.precision_report = "exact integer sieve";
    fs::path tpath = cache_table_path(cfg);
    m.outputs.push_back({tpath.filename().string(), fnv1a64_file(tpath)});
    fs::path out = cfg.out.empty() ? tpath.parent_path() / (tpath.stem().string() + ".run.json")
                                   : fs::path(cfg.out);
    write_manifest(m, out);
    std::printf("table %s  M(%llu) = %s  cache_%s\n", tpath.string().c_str(),
                static_cast<unsigned long long>(t.n_max),
                std::to_string(M.checkpoints[0].second).c_str(),
                m.cache_hits ? "hit" : "miss");
    return 0;
}

int cmd_alpha(const ExperimentConfig& cfg, const std::string& variant, std::uint64_t length) {
    PartialQuotients pq = variant == "golden"   ? make_repeated_cf(1, 1, length)
                          : variant == "silver" ? make_repeated_cf(0, 2, length)
                                                : obtain_alpha(cfg);
    std::string text = cf_to_text(pq);
    if (!cfg.out.empty()) write_text_file(cfg.out, text);
    else std::fputs(text.c_str(), stdout);

    auto conv = convergents(pq, pq.size() - 1);
    std::string qs;
    for (const auto& c : conv) qs += (qs.empty() ? "" : " ") + c.q.str();
    std::printf("q: %s\n", qs.c_str());
    return 0;
}

int cmd_cf(const ExperimentConfig& cfg, const std::string& in_file, const std::string& expand_str,
           std::uint64_t golden_len, std::uint64_t K) {
    std::optional<PartialQuotients> pq;
    if (!in_file.empty()) {
        std::ifstream f(in_file);
        if (!f) throw config_error("cannot open " + in_file);
        pq = cf_from_text(f);
    } else if (!expand_str.empty()) {
        BigRat x;
        try {
            if (expand_str.find('.') != std::string::npos) {
                // decimal literal -> exact rational
                auto dot = expand_str.find('.');
                std::string digits = expand_str.substr(0, dot) + expand_str.substr(dot + 1);
                BigInt num(digits);
                BigInt den = 1;
                for (std::size_t i = dot + 1; i < expand_str.size(); ++i) den *= 10;
                x = BigRat(num, den);
            } else if (expand_str.find('/') != std::string::npos) {
                auto slash = expand_str.find('/');
                x = BigRat(BigInt(expand_str.substr(0, slash)),
                           BigInt(expand_str.substr(slash + 1)));
            } else {
                x = BigRat(BigInt(expand_str), BigInt(1));
            }
        } catch (const std::exception&) {
            throw config_error("cannot parse --expand value: " + expand_str);
        }
        auto res = expand_real(x, K, cfg.precision_bits);
        std::printf("certified_prefix %zu exact_rational %d\n", res.certified,
                    res.exact_rational ? 1 : 0);
        pq = res.pq;
    } else if (golden_len > 0) {
        pq = make_repeated_cf(1, 1, golden_len);
    } else {
        pq = obtain_alpha(cfg);
    }

    std::size_t J = pq->size() - 1;
    auto conv = convergents(*pq, J);
    std::string out = "k,a,l,q,delta,sandwich_ok\n";
    for (std::size_t k = 0; k <= J; ++k) {
        std::string drow = "na", srow = "na";
        try {
            auto d = delta(*pq, k, cfg.precision_bits);
            drow = g17(d.value.to_double());
        } catch (const precision_error&) {
        }
        if (k >= 2 && k + 1 <= J) srow = approx_inequality_check(*pq, k) ? "1" : "0";
        out += std::to_string(k) + "," + pq->at(k).str() + "," + conv[k].l.str() + "," +
               conv[k].q.str() + "," + drow + "," + srow + "\n";
    }
    if (!cfg.out.empty()) write_text_file(cfg.out, out);
    else std::fputs(out.c_str(), stdout);
    if (J >= 3)
        std::printf("diophantine_exponent_estimate %s\n",
                    g17(diophantine_exponent_estimate(*pq)).c_str());
    return 0;
}

int cmd_orbit(const ExperimentConfig& cfg, std::int64_t a, std::int64_t c, std::int64_t d,
              const std::string& h_rule, double x0, double y0, std::uint64_t N,
              const std::string& mode, const std::string& scan) {
    PartialQuotients alpha = obtain_alpha(cfg);
    std::variant<std::monostate, AnalyticFourierSeries, FurstenbergCocycle> h;
    if (h_rule == "none") h = std::monostate{};
    else {
        ExperimentConfig hc = cfg;
        hc.coeff_rule = h_rule;
        h = obtain_cocycle(hc, alpha);
    }
    auto T = SkewProductMap::make(a, c, d, alpha, std::move(h));
    PrecisionMode pm = mode == "extended" ? PrecisionMode::extended : PrecisionMode::double_prec;

    if (!scan.empty()) {
        auto comma = scan.find(',');
        if (comma == std::string::npos) throw config_error("--scan needs m1,m2");
        int m1 = std::stoi(scan.substr(0, comma));
        int m2 = std::stoi(scan.substr(comma + 1));
        auto grid = parse_grid(cfg.grid);
        auto rep = irregularity_scan(T, m1, m2, grid, {x0, y0}, pm, cfg.precision_bits);
        std::string out = averages_csv(rep.averages);
        if (!cfg.out.empty()) write_text_file(cfg.out, out);
        else std::fputs(out.c_str(), stdout);
        std::printf("oscillation %s min_abs %s max_abs %s generic_alpha %d\n",
                    g17(rep.oscillation).c_str(), g17(rep.min_abs).c_str(),
                    g17(rep.max_abs).c_str(), rep.generic_alpha ? 1 : 0);
        return 0;
    }

    auto orbit = skew_orbit(T, {x0, y0}, N, pm, cfg.precision_bits);
    std::string out = orbit_csv(orbit);
    if (!cfg.out.empty()) write_text_file(cfg.out, out);
    else std::fputs(out.c_str(), stdout);
    return 0;
}

int cmd_cocycle(const ExperimentConfig& cfg, std::uint64_t K_flag, bool check_naive) {
    PartialQuotients alpha = obtain_alpha(cfg);
    FurstenbergCocycle co = obtain_cocycle(cfg, alpha);
    auto grid = parse_grid(cfg.grid);
    std::size_t K = K_flag ? static_cast<std::size_t>(K_flag)
                           : std::min(truncation_cutoff(alpha, std::max<std::uint64_t>(grid.back(), 2)),
                                      co.K_support());

    std::string out = check_naive ? "n,re_sum,im_sum,re_naive,im_naive,abs_diff\n"
                                  : "n,re_sum,im_sum\n";
    for (std::uint64_t n : grid) {
        Cplx t = cocycle_sum_telescoped(co, n, K, cfg.precision_bits);
        out += std::to_string(n) + "," + g17(t.real()) + "," + g17(t.imag());
        if (check_naive) {
            Cplx nv = cocycle_sum_naive(co, n, K, cfg.precision_bits);
            out += "," + g17(nv.real()) + "," + g17(nv.imag()) + "," + g17(std::abs(nv - t));
        }
        out += "\n";
    }
    if (!cfg.out.empty()) write_text_file(cfg.out, out);
    else std::fputs(out.c_str(), stdout);
    return 0;
}

int cmd_correlate(const ExperimentConfig& cfg) {
    RunManifest m;
    echo_config(m, cfg);
    auto grid = parse_grid(cfg.grid);
    ExperimentConfig tcfg = cfg;
    tcfg.n_max = std::max(cfg.n_max, grid.back());
    MobiusTable table = obtain_table(tcfg, m);
    PartialQuotients alpha = obtain_alpha(cfg);
    FurstenbergCocycle co = obtain_cocycle(cfg, alpha);

    StageClock clock;
    clock.start("correlate");
    CorrelationSeries series = furstenberg_S(co, table, grid, cfg.threads, cfg.precision_bits);
    clock.stop(m);
    series.meta += " rule=" + cfg.coeff_rule;

    fs::path out = cfg.out.empty() ? fs::path("correlation." + cfg.format) : fs::path(cfg.out);
    write_text_file(out, cfg.format == "csv" ? series_csv(series) : series_json(series));
    add_manifest_output(m, out);

    clock.start("fit");
    std::optional<DecayFit> fit;
    try {
        fit = decay_fit(series);
    } catch (const config_error& e) {
        m.extra.emplace_back("fit_skipped", e.what());
    }
    clock.stop(m);
    fs::path fit_path = out;
    fit_path.replace_extension(".fit.json");
    if (fit) {
        write_text_file(fit_path, decay_fit_json(*fit));
        add_manifest_output(m, fit_path);
    }

    m.precision_report = "precision_bits=" + std::to_string(cfg.precision_bits) +
                         "; phases certified via frac(n*delta_k), eps<=1e-10; " + series.meta;
    fs::path man_path = out;
    man_path += ".manifest.json";
    write_manifest(m, man_path);

    for (const auto& [N, S] : series.entries)
        std::printf("N=%llu |S|/N=%s\n", static_cast<unsigned long long>(N),
                    g17(std::abs(S) / static_cast<double>(N)).c_str());
    if (fit) std::printf("A_hat=%s residual_rms=%s\n", g17(fit->a_hat).c_str(),
                         g17(fit->residual_rms).c_str());
    return 0;
}

int cmd_davenport(const ExperimentConfig& cfg, double theta, std::uint64_t sup_grid) {
    RunManifest m;
    echo_config(m, cfg);
    auto grid = parse_grid(cfg.grid);
    ExperimentConfig tcfg = cfg;
    tcfg.n_max = std::max(cfg.n_max, grid.back());
    MobiusTable table = obtain_table(tcfg, m);

    std::string out;
    if (sup_grid > 0) {
        out = "N,theta_star,abs_max,abs_max_over_N\n";
        for (std::uint64_t N : grid) {
            auto sup = sup_davenport(table, N, sup_grid);
            double a = std::abs(sup.value);
            out += std::to_string(N) + "," + g17(sup.theta_star) + "," + g17(a) + "," +
                   g17(a / static_cast<double>(N)) + "\n";
        }
    } else {
        out = "N,re_S,im_S,abs_S,abs_S_over_N\n";
        for (std::uint64_t N : grid) {
            Cplx S = davenport_sum(table, theta, N, cfg.threads);
            double a = std::abs(S);
            out += std::to_string(N) + "," + g17(S.real()) + "," + g17(S.imag()) + "," + g17(a) +
                   "," + g17(a / static_cast<double>(N)) + "\n";
        }
    }
    if (!cfg.out.empty()) {
        write_text_file(cfg.out, out);
        add_manifest_output(m, cfg.out);
        write_manifest(m, fs::path(cfg.out + ".manifest.json"));
    } else {
        std::fputs(out.c_str(), stdout);
    }
    return 0;
}

int cmd_phi(const ExperimentConfig& cfg, double c1, int l_max, std::uint64_t quad_nodes) {
    std::string out = "l,re_a,im_a,abs_a,quad_error,oracle_abs_err\n";
    for (int l = 0; l <= l_max; ++l) {
        auto pc = phi_fourier_coeff(c1, l, quad_nodes);
        Cplx oracle = phi_coeff_oracle(c1, l);
        out += std::to_string(l) + "," + g17(pc.value.real()) + "," + g17(pc.value.imag()) + "," +
               g17(std::abs(pc.value)) + "," + g17(pc.quad_error) + "," +
               g17(std::abs(pc.value - oracle)) + "\n";
    }
    if (!cfg.out.empty()) write_text_file(cfg.out, out);
    else std::fputs(out.c_str(), stdout);
    return 0;
}

int cmd_fit(const ExperimentConfig& cfg, const std::string& in_file) {
    CorrelationSeries s = series_from_csv(read_text_file(in_file));
    DecayFit fit = decay_fit(s);
    std::string body = decay_fit_json(fit);
    if (!cfg.out.empty()) write_text_file(cfg.out, body);
    else std::fputs(body.c_str(), stdout);
    return 0;
}

int cmd_verify(const std::string& manifest) {
    auto bad = verify_manifest(manifest);
    if (bad.empty()) {
        std::printf("all checksums ok\n");
        return 0;
    }
    for (const auto& p : bad) std::fprintf(stderr, "checksum mismatch: %s\n", p.c_str());
    return 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Moebius correlations over distal skew products"};
    app.set_config("--config", "", "flat key=value config file; command-line flags win");
    app.require_subcommand(1);

    ExperimentConfig cfg;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--n-max", cfg.n_max, "sieve range");
        sub->add_option("--grid", cfg.grid, "comma-separated ascending N grid");
        sub->add_option("--precision-bits", cfg.precision_bits, "working fractional bits (>= 64)");
        sub->add_option("--q-cap", cfg.q_cap, "largest materialized q_k (decimal)");
        sub->add_option("--coeff-rule", cfg.coeff_rule,
                        "furstenberg | constant | zero | custom-file");
        sub->add_option("--c-bound", cfg.c_bound, "coefficient bound C (constant rule value)");
        sub->add_option("--coeff-file", cfg.coeff_file, "coefficients for custom-file rule");
        sub->add_option("--threads", cfg.threads, "worker threads");
        sub->add_option("--seed", cfg.seed, "seed echoed into manifests");
        sub->add_option("--cache-dir", cfg.cache_dir, "sieve cache directory");
        sub->add_option("--out", cfg.out, "output path");
        sub->add_option("--format", cfg.format, "csv | json");
        sub->add_flag("--rebuild", cfg.rebuild, "rebuild cache even if present");
        sub->add_option("--kind", cfg.kind, "moebius | liouville");
    };

    auto* sieve_cmd = app.add_subcommand("sieve", "build or reuse the mu/lambda table cache");
    add_common(sieve_cmd);

    auto* alpha_cmd = app.add_subcommand("alpha", "emit the constructed alpha as CF text");
    add_common(alpha_cmd);
    std::string alpha_variant = "liouville";
    std::uint64_t alpha_len = 40;
    alpha_cmd->add_option("--variant", alpha_variant, "liouville | golden | silver");
    alpha_cmd->add_flag_callback("--golden", [&] { alpha_variant = "golden"; },
                                 "shorthand for --variant golden");
    alpha_cmd->add_option("--length", alpha_len, "quotient count for golden/silver");

    auto* cf_cmd = app.add_subcommand("cf", "convergents / deltas / sandwich report");
    add_common(cf_cmd);
    std::string cf_in, cf_expand;
    std::uint64_t cf_golden = 0, cf_K = 30;
    cf_cmd->add_option("--in", cf_in, "CF text file");
    cf_cmd->add_option("--expand", cf_expand, "decimal or p/q value to expand");
    cf_cmd->add_option("--golden-length", cf_golden, "use the golden ratio with this many quotients");
    cf_cmd->add_option("--k", cf_K, "expansion index cap");

    auto* orbit_cmd = app.add_subcommand("orbit", "skew-product orbit or observable scan");
    add_common(orbit_cmd);
    std::int64_t oa = 1, oc = 0, od = 1;
    double x0 = 0.0, y0 = 0.0;
    std::uint64_t oN = 1000;
    std::string h_rule = "furstenberg", orbit_mode = "double", scan;
    orbit_cmd->add_option("--a", oa);
    orbit_cmd->add_option("--c", oc);
    orbit_cmd->add_option("--d", od);
    orbit_cmd->add_option("--h-rule", h_rule, "none | furstenberg | constant | zero");
    orbit_cmd->add_option("--x0", x0);
    orbit_cmd->add_option("--y0", y0);
    orbit_cmd->add_option("--N", oN, "orbit length");
    orbit_cmd->add_option("--mode", orbit_mode, "double | extended");
    orbit_cmd->add_option("--scan", scan, "m1,m2: emit Birkhoff averages over --grid");

    auto* cocycle_cmd = app.add_subcommand("cocycle", "telescoped Birkhoff sums of h");
    add_common(cocycle_cmd);
    std::uint64_t co_K = 0;
    bool check_naive = false;
    cocycle_cmd->add_option("--K", co_K, "truncation (default: cutoff of largest grid N)");
    cocycle_cmd->add_flag("--check-naive", check_naive, "also run the direct-orbit oracle");

    auto* corr_cmd = app.add_subcommand("correlate", "S(N) series + decay fit");
    add_common(corr_cmd);

    auto* dav_cmd = app.add_subcommand("davenport", "Moebius exponential sums");
    add_common(dav_cmd);
    double theta = 0.0;
    std::uint64_t sup_grid = 0;
    dav_cmd->add_option("--theta", theta, "frequency");
    dav_cmd->add_option("--sup-grid", sup_grid, "maximize over a theta grid of this size");

    auto* phi_cmd = app.add_subcommand("phi", "phi Fourier coefficients vs the Bessel oracle");
    add_common(phi_cmd);
    double c1 = 1.0;
    int l_max = 10;
    std::uint64_t quad_nodes = 512;
    phi_cmd->add_option("--c1", c1);
    phi_cmd->add_option("--l-max", l_max);
    phi_cmd->add_option("--quad-nodes", quad_nodes);

    auto* fit_cmd = app.add_subcommand("fit", "decay fit of a series CSV");
    add_common(fit_cmd);
    std::string fit_in;
    fit_cmd->add_option("--in", fit_in, "series CSV")->required();

    auto* verify_cmd = app.add_subcommand("verify", "re-check manifest checksums");
    std::string verify_manifest_path;
    verify_cmd->add_option("--manifest", verify_manifest_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 4; // bad flags/config -> 4; --help stays 0
    }

    try {
        validate_common(cfg);
        if (sieve_cmd->parsed()) return cmd_sieve(cfg);
        if (alpha_cmd->parsed()) return cmd_alpha(cfg, alpha_variant, alpha_len);
        if (cf_cmd->parsed()) return cmd_cf(cfg, cf_in, cf_expand, cf_golden, cf_K);
        if (orbit_cmd->parsed())
            return cmd_orbit(cfg, oa, oc, od, h_rule, x0, y0, oN, orbit_mode, scan);
        if (cocycle_cmd->parsed()) return cmd_cocycle(cfg, co_K, check_naive);
        if (corr_cmd->parsed()) return cmd_correlate(cfg);
        if (dav_cmd->parsed()) return cmd_davenport(cfg, theta, sup_grid);
        if (phi_cmd->parsed()) return cmd_phi(cfg, c1, l_max, quad_nodes);
        if (fit_cmd->parsed()) return cmd_fit(cfg, fit_in);
        if (verify_cmd->parsed()) return cmd_verify(verify_manifest_path);
    } catch (const cache_corrupt& e) {
        std::fprintf(stderr, "cache-corrupt: %s\n", e.what());
        return 3;
    } catch (const config_error& e) {
        std::fprintf(stderr, "bad-config: %s\n", e.what());
        return 4;
    } catch (const precision_error& e) {
        std::fprintf(stderr, "precision-insufficient: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
