// SPDX-License-Identifier: Apache-2.0
//
// mgami: average mutual information of finite-alphabet signaling over
// mixture-gamma fading channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mgami/ami.hpp"
#include "mgami/error.hpp"
#include "mgami/json_io.hpp"
#include "mgami/mg_fading.hpp"
#include "mgami/power_alloc.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

using namespace mgami;
using nlohmann::json;

namespace {

enum exit_code { ok = 0, bad_argument = 1, numerical_failure = 2, validation_failure = 3 };

struct FadingSpec {
    std::string text;
    std::optional<FadingParams> params; // absent for raw mixture JSON
    MixtureGamma mixture;
};

struct RunConfig {
    std::vector<std::string> fading;
    std::vector<std::string> constellation{"qam4"};
    std::string snr_db = "0:5:40";
    int order = 30;
    std::size_t trials = 100000;
    std::uint64_t seed = 1;
    std::string out;
    std::string format = "csv";
    std::string method = "adaptive";
    std::string config;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw argument_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string& text, const std::string& what)
{
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw argument_error("malformed " + what + " JSON: " + e.what());
    }
}

bool ends_with(const std::string& s, const std::string& suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

double to_number(const std::string& key, const std::string& v)
{
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used == v.size())
            return x;
    } catch (const std::exception&) {
    }
    throw argument_error("parameter '" + key + "' is not a number: '" + v + "'");
}

int to_int(const std::string& key, double x)
{
    if (x != std::floor(x) || std::abs(x) > 1e6)
        throw argument_error("parameter '" + key + "' must be an integer");
    return static_cast<int>(x);
}

FadingSpec fading_from_params(const std::string& family, std::map<std::string, double> kv, const std::string& text)
{
    auto take = [&](const std::string& key, std::optional<double> fallback = std::nullopt) {
        const auto it = kv.find(key);
        if (it == kv.end()) {
            if (!fallback)
                throw argument_error(family + " needs parameter '" + key + "'");
            return *fallback;
        }
        const double v = it->second;
        kv.erase(it);
        return v;
    };
    std::optional<int> truncation;
    if (kv.count("L"))
        truncation = to_int("L", take("L"));

    FadingParams p;
    if (family == "rayleigh")
        p = Nakagami{1.0};
    else if (family == "nakagami")
        p = Nakagami{take("m")};
    else if (family == "etamu")
        p = EtaMu{to_int("format", take("format", 1.0)), take("eta"), take("mu")};
    else if (family == "kappamu")
        p = KappaMu{take("kappa"), take("mu")};
    else if (family == "rician")
        p = Rician{take("K")};
    else if (family == "kg")
        p = KG{take("k"), take("m"), to_int("N", take("N", 30.0))};
    else
        throw argument_error("unknown fading family '" + family + "'");
    if (!kv.empty())
        throw argument_error("unexpected parameter '" + kv.begin()->first + "' for " + family);
    validate(p);
    return {text, p, from_params(p, truncation)};
}

FadingSpec fading_from_json(const json& j, const std::string& text)
{
    if (!j.is_object())
        throw argument_error("fading JSON must be an object");
    if (j.contains("terms"))
        return {text, std::nullopt, mixture_from_json(j)};
    if (!j.contains("family") || !j["family"].is_string())
        throw argument_error("fading JSON needs \"terms\" or \"family\"");
    std::map<std::string, double> kv;
    for (const auto& [key, value] : j.items()) {
        if (key == "family")
            continue;
        if (!value.is_number())
            throw argument_error("fading parameter '" + key + "' must be a number");
        kv[key] = value.get<double>();
    }
    return fading_from_params(j["family"].get<std::string>(), kv, text);
}

// name:key=value,... | inline JSON | path to a .json file
FadingSpec parse_fading(const std::string& text)
{
    if (!text.empty() && text.front() == '{')
        return fading_from_json(parse_json(text, "fading"), text);
    if (ends_with(text, ".json"))
        return fading_from_json(parse_json(read_file(text), "fading"), text);

    const std::size_t colon = text.find(':');
    const std::string family = text.substr(0, colon);
    std::map<std::string, double> kv;
    if (colon != std::string::npos) {
        std::stringstream ss(text.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const std::size_t eq = item.find('=');
            if (eq == std::string::npos || eq == 0)
                throw argument_error("expected key=value in '" + text + "', got '" + item + "'");
            const std::string key = item.substr(0, eq);
            if (kv.count(key))
                throw argument_error("parameter '" + key + "' given twice");
            kv[key] = to_number(key, item.substr(eq + 1));
        }
    }
    return fading_from_params(family, kv, text);
}

Constellation parse_constellation(const std::string& text)
{
    if (!text.empty() && (text.front() == '[' || text.front() == '{'))
        return constellation_from_json(parse_json(text, "constellation"));
    if (ends_with(text, ".json"))
        return constellation_from_json(parse_json(read_file(text), "constellation"));
    return constellation_by_name(text);
}

std::vector<double> parse_grid(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':'))
        parts.push_back(item);
    if (parts.size() == 1) {
        return {to_number("snr-db", parts[0])};
    }
    if (parts.size() != 3)
        throw argument_error("--snr-db expects start:step:stop, got '" + text + "'");
    const double start = to_number("snr-db", parts[0]);
    const double step = to_number("snr-db", parts[1]);
    const double stop = to_number("snr-db", parts[2]);
    if (!(step > 0.0) || !(stop >= start))
        throw argument_error("--snr-db needs a positive step and stop >= start, got '" + text + "'");
    const double count = std::floor((stop - start) / step + 1e-9);
    if (count > 1e6)
        throw argument_error("--snr-db grid is too large");
    std::vector<double> grid;
    for (int i = 0; i <= static_cast<int>(count); ++i)
        grid.push_back(start + i * step);
    return grid;
}

double db(double v) { return std::pow(10.0, v / 10.0); }

// Evaluates f over the grid on a few threads; results come back in grid order.
template <class F>
std::vector<json> map_grid(const std::vector<double>& grid, F f)
{
    const std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
    std::vector<json> out(grid.size());
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w)
        jobs.push_back(std::async(std::launch::async, [&, w] {
            for (std::size_t i = w; i < grid.size(); i += workers)
                out[i] = f(grid[i]);
        }));
    for (auto& j : jobs)
        j.get();
    return out;
}

std::string num(double v)
{
    if (std::isnan(v))
        return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

struct Output {
    explicit Output(const std::string& path)
    {
        if (!path.empty()) {
            file.open(path);
            if (!file)
                throw argument_error("cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file.is_open() ? file : std::cout; }
    std::ofstream file;
};

std::vector<FadingSpec> fading_specs(const RunConfig& cfg, std::size_t at_least)
{
    if (cfg.fading.size() < at_least)
        throw argument_error("--fading is required");
    std::vector<FadingSpec> out;
    for (const std::string& f : cfg.fading)
        out.push_back(parse_fading(f));
    return out;
}

std::vector<Constellation> constellations_for(const RunConfig& cfg, std::size_t k)
{
    if (cfg.constellation.size() != 1 && cfg.constellation.size() != k)
        throw argument_error("give one --constellation or one per --fading");
    std::vector<Constellation> out;
    for (std::size_t i = 0; i < k; ++i)
        out.push_back(parse_constellation(cfg.constellation[cfg.constellation.size() == 1 ? 0 : i]));
    return out;
}

int cmd_ami_curve(const RunConfig& cfg)
{
    const std::vector<FadingSpec> specs = fading_specs(cfg, 1);
    if (specs.size() != 1)
        throw argument_error("ami-curve takes a single --fading");
    const MixtureGamma& mg = specs[0].mixture;
    const Constellation cons = constellations_for(cfg, 1)[0];
    const std::vector<double> grid = parse_grid(cfg.snr_db);
    if (cfg.method != "adaptive" && cfg.method != "laguerre")
        throw argument_error("--method must be adaptive or laguerre");

    const AsymptoticCharacterization ch = characterize_asymptote(mg, cons);
    const auto curve = make_info_curve(cons);
    const double bits = cons.log2_size();
    const std::vector<json> rows = map_grid(grid, [&](double d) {
        double ami = 0.0, gap = 0.0;
        if (cfg.method == "adaptive") {
            gap = ami_gap_bits(mg, *curve, db(d));
            ami = bits - gap;
        } else {
            ami = ami_quadrature(mg, cons, db(d), cfg.order);
            gap = bits - ami;
        }
        return json{{"snr_db", d}, {"ami_bits", ami}, {"gap_bits", gap},
                    {"asymptote_gap_bits", asymptotic_gap_bits(ch, db(d))}};
    });

    Output out(cfg.out);
    if (cfg.format == "json") {
        out.stream() << json{{"fading", mg.family_label()},
                             {"constellation", cons.label()},
                             {"method", cfg.method},
                             {"asymptote", to_json(ch)},
                             {"rows", rows}}
                            .dump(2)
                     << '\n';
        return ok;
    }
    out.stream() << "snr_db,ami_bits,gap_bits,asymptote_gap_bits\n";
    for (const json& r : rows)
        out.stream() << num(r["snr_db"]) << ',' << num(r["ami_bits"]) << ',' << num(r["gap_bits"]) << ','
                     << num(r["asymptote_gap_bits"]) << '\n';
    return ok;
}

int cmd_power_alloc(const RunConfig& cfg)
{
    const std::vector<FadingSpec> specs = fading_specs(cfg, 1);
    const std::vector<Constellation> cons = constellations_for(cfg, specs.size());
    const std::vector<double> grid = parse_grid(cfg.snr_db);
    ParallelChannels chs;
    for (std::size_t k = 0; k < specs.size(); ++k)
        chs.add(specs[k].mixture, cons[k]);

    const PowerPolicy lim = limiting_allocate(chs);
    const std::vector<json> rows = map_grid(grid, [&](double d) {
        return json{{"snr_db", d},
                    {"exact", to_json(exact_allocate(chs, db(d)), d)},
                    {"asymptotic", to_json(asymptotic_allocate(chs, db(d)), d)}};
    });

    Output out(cfg.out);
    if (cfg.format == "json") {
        json subs = json::array();
        for (std::size_t k = 0; k < specs.size(); ++k)
            subs.push_back({{"fading", chs[k].fading.family_label()},
                            {"constellation", chs[k].cons.label()},
                            {"asymptote", to_json(chs[k].asym)}});
        out.stream() << json{{"subchannels", subs}, {"limiting", to_json(lim, std::nan(""))}, {"rows", rows}}.dump(2)
                     << '\n';
        return ok;
    }
    const std::size_t K = specs.size();
    out.stream() << "snr_db";
    for (const char* m : {"exact", "asymptotic", "limiting"})
        for (std::size_t k = 1; k <= K; ++k)
            out.stream() << ',' << m << "_p" << k;
    out.stream() << '\n';
    for (const json& r : rows) {
        out.stream() << num(r["snr_db"]);
        for (const char* m : {"exact", "asymptotic"})
            for (const json& p : r[m]["fractions"])
                out.stream() << ',' << num(p);
        for (double p : lim.fractions)
            out.stream() << ',' << num(p);
        out.stream() << '\n';
    }
    return ok;
}

double ks_distance(const MixtureGamma& mg, std::uint64_t seed, std::size_t n)
{
    std::vector<double> x = sample(mg, seed, n);
    std::sort(x.begin(), x.end());
    double d = 0.0;
    const double size = static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cdf(mg, x[i]);
        d = std::max({d, std::abs(f - i / size), std::abs(f - (i + 1) / size)});
    }
    return d;
}

int cmd_validate(const RunConfig& cfg)
{
    const std::vector<FadingSpec> specs = fading_specs(cfg, 1);
    const std::vector<Constellation> cons = constellations_for(cfg, specs.size());
    const std::vector<double> grid = parse_grid(cfg.snr_db);
    if (cfg.trials < 1000)
        throw argument_error("--trials must be at least 1000");

    json checks = json::array();
    bool all = true;
    auto record = [&](json c) {
        all = all && c["pass"].get<bool>();
        checks.push_back(std::move(c));
    };

    for (std::size_t k = 0; k < specs.size(); ++k) {
        const MixtureGamma& mg = specs[k].mixture;
        const std::string name = mg.family_label() + " / " + cons[k].label();

        const double mass = mg.total_mass() - 1.0, mean = mg.mean() - 1.0;
        const double ks = ks_distance(mg, cfg.seed, cfg.trials);
        const double ks_critical = std::max(0.01, 1.63 / std::sqrt(static_cast<double>(cfg.trials)));
        record({{"check", "distribution"},
                {"subject", mg.family_label()},
                {"mass_residual", mass},
                {"mean_residual", mean},
                {"ks_distance", ks},
                {"ks_critical", ks_critical},
                {"pass", std::abs(mass) <= 1e-9 && std::abs(mean) <= 1e-6 && ks < ks_critical}});

        const auto curve = make_info_curve(cons[k]);
        for (double d : grid) {
            const McEstimate mc = ami_mc(mg, *curve, db(d), cfg.trials, cfg.seed);
            const double quad = ami_quadrature(mg, cons[k], db(d), cfg.order);
            const double adaptive = ami_adaptive(mg, *curve, db(d));
            const double z_quad = std::abs(quad - mc.mean) / mc.std_error;
            const double z_adaptive = std::abs(adaptive - mc.mean) / mc.std_error;
            record({{"check", "ami_vs_monte_carlo"},
                    {"subject", name},
                    {"snr_db", d},
                    {"mc_bits", mc.mean},
                    {"mc_std_error", mc.std_error},
                    {"quadrature_bits", quad},
                    {"quadrature_z", z_quad},
                    {"adaptive_bits", adaptive},
                    {"adaptive_z", z_adaptive},
                    {"pass", z_quad <= 3.0 && z_adaptive <= 3.0}});
        }

        if (specs[k].params) {
            const AsymptoticCharacterization g = characterize_asymptote(mg, cons[k]);
            const AsymptoticCharacterization c = corollary_asymptote(*specs[k].params, cons[k]);
            const double rel = std::max(std::abs(g.diversity_order - c.diversity_order) / g.diversity_order,
                                        std::abs(g.coeff - c.coeff) / g.coeff);
            record({{"check", "closed_form_asymptote"},
                    {"subject", name},
                    {"general_coeff", g.coeff},
                    {"closed_form_coeff", c.coeff},
                    {"relative_difference", rel},
                    {"pass", rel <= 1e-6}});
        }
    }

    ParallelChannels chs;
    for (std::size_t k = 0; k < specs.size(); ++k)
        chs.add(specs[k].mixture, cons[k]);
    for (double d : grid) {
        const PowerPolicy p = exact_allocate(chs, db(d));
        const double residual = kkt_residual(chs, p, db(d));
        double sum = 0.0;
        for (double x : p.fractions)
            sum += x;
        record({{"check", "kkt_certificate"},
                {"snr_db", d},
                {"fractions", p.fractions},
                {"residual", residual},
                {"pass", residual < 1e-6 && std::abs(sum - 1.0) <= 1e-9}});
    }

    Output out(cfg.out);
    out.stream() << json{{"pass", all}, {"seed", cfg.seed}, {"trials", cfg.trials}, {"checks", checks}}.dump(2)
                 << '\n';
    return all ? ok : validation_failure;
}

int cmd_fading_info(const RunConfig& cfg)
{
    const std::vector<FadingSpec> specs = fading_specs(cfg, 1);
    const std::vector<Constellation> cons = constellations_for(cfg, specs.size());
    json report = json::array();
    for (std::size_t k = 0; k < specs.size(); ++k) {
        const MixtureGamma& mg = specs[k].mixture;
        const AsymptoticCharacterization ch = characterize_asymptote(mg, cons[k]);
        json entry = to_json(mg);
        entry["truncation"] = mg.truncation();
        entry["mass_residual"] = mg.total_mass() - 1.0;
        entry["mean_residual"] = mg.mean() - 1.0;
        entry["constellation"] = cons[k].label();
        entry["diversity_order"] = ch.diversity_order;
        entry["coding_gain"] = ch.coding_gain;
        entry["asymptote"] = to_json(ch);
        report.push_back(std::move(entry));
    }
    Output out(cfg.out);
    out.stream() << (report.size() == 1 ? report[0] : report).dump(2) << '\n';
    return ok;
}

// Fills every setting that was not given on the command line from the JSON file.
void apply_config_file(RunConfig& cfg, const CLI::App& sub)
{
    const json j = parse_json(read_file(cfg.config), "config");
    if (!j.is_object())
        throw argument_error("config file must hold a JSON object");
    auto unset = [&](const char* flag) { return sub.count(flag) == 0; };
    auto strings = [&](const json& v) {
        std::vector<std::string> out;
        for (const json& e : v.is_array() ? v : json::array({v}))
            out.push_back(e.is_string() ? e.get<std::string>() : e.dump());
        return out;
    };
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "fading" && unset("--fading"))
                cfg.fading = strings(v);
            else if (key == "constellation" && unset("--constellation"))
                cfg.constellation = v.is_array() && !v.empty() && v[0].is_array() ? std::vector{v.dump()} : strings(v);
            else if (key == "snr_db" && unset("--snr-db"))
                cfg.snr_db = v.get<std::string>();
            else if (key == "order" && unset("--order"))
                cfg.order = v.get<int>();
            else if (key == "trials" && unset("--trials"))
                cfg.trials = v.get<std::size_t>();
            else if (key == "seed" && unset("--seed"))
                cfg.seed = v.get<std::uint64_t>();
            else if (key == "out" && unset("--out"))
                cfg.out = v.get<std::string>();
            else if (key == "format" && unset("--format"))
                cfg.format = v.get<std::string>();
            else if (key == "method" && unset("--method"))
                cfg.method = v.get<std::string>();
            else if (key != "fading" && key != "constellation" && key != "snr_db" && key != "order" &&
                     key != "trials" && key != "seed" && key != "out" && key != "format" && key != "method")
                throw argument_error("unknown config key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw argument_error(std::string("bad value in config file: ") + e.what());
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Average mutual information and power allocation over mixture-gamma fading channels"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--fading", cfg.fading,
                        "fading spec: name:key=value,... (rayleigh, nakagami, etamu, kappamu, rician, kg), "
                        "inline JSON or a .json file; repeat for several sub-channels")
            ->allow_extra_args(false);
        sub->add_option("--constellation", cfg.constellation,
                        "qam4, qam16, qam64, qam256, psk<M>, bpsk, qpsk, inline JSON or a .json file")
            ->allow_extra_args(false);
        sub->add_option("--snr-db", cfg.snr_db, "SNR grid in dB, start:step:stop");
        sub->add_option("--order", cfg.order, "Gauss-Laguerre order for the laguerre method")->check(CLI::Range(1, 200));
        sub->add_option("--trials", cfg.trials, "Monte Carlo trials / KS sample size");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--out", cfg.out, "output path (default stdout)");
        sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--config", cfg.config, "JSON file with the same settings; flags take precedence");
    };

    CLI::App* ami = app.add_subcommand("ami-curve", "AMI, gap to log2 M and its high-SNR asymptote over an SNR grid");
    add_common(ami);
    ami->add_option("--method", cfg.method, "adaptive (default) or laguerre")
        ->check(CLI::IsMember({"adaptive", "laguerre"}));
    CLI::App* power = app.add_subcommand("power-alloc", "exact, asymptotic and limiting power fractions");
    add_common(power);
    CLI::App* val = app.add_subcommand("validate", "cross-check the numerical paths; exits 3 on any failure");
    add_common(val);
    CLI::App* info = app.add_subcommand("fading-info", "mixture terms, residuals and asymptotic parameters");
    add_common(info);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : bad_argument;
    }

    try {
        CLI::App* sub = app.get_subcommands().front();
        if (!cfg.config.empty())
            apply_config_file(cfg, *sub);
        if (cfg.format != "csv" && cfg.format != "json")
            throw argument_error("--format must be csv or json");
        if (cfg.order < 1)
            throw argument_error("--order must be at least 1");
        if (sub == ami)
            return cmd_ami_curve(cfg);
        if (sub == power)
            return cmd_power_alloc(cfg);
        if (sub == val)
            return cmd_validate(cfg);
        return cmd_fading_info(cfg);
    } catch (const argument_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return bad_argument;
    } catch (const numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return numerical_failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return numerical_failure;
    }
}
