// qwk: correlators, Hurwitz numbers, verification suites and correlator tables.
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include "qwk/correlators.hpp"
#include "qwk/hurwitz.hpp"
#include "qwk/parallel.hpp"
#include "qwk/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace qwk;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kFailed = 1, kUsage = 2;

// Documented caps on verification and table bounds.
constexpr int kMaxGenus = 3, kMaxN = 4, kMaxSum = 16, kMaxOrder = 12, kMaxModes = 6, kMaxHurwitzDegree = 6;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check_range(const std::string& flag, int value, int lo, int hi) {
    if (value < lo || value > hi)
        throw UsageError(flag + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
}

std::vector<int> parse_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        int v = -1;
        try {
            v = std::stoi(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != item.size() || v < 0) throw UsageError("bad index '" + item + "' in '" + text + "'");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("empty index list");
    return out;
}

std::string decimal(const Rat& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "~%.15g", r.get_d());
    return buf;
}

void put_value(json& j, const std::string& field, const Rat& v, bool with_decimal) {
    j[field] = to_string(v);
    if (with_decimal) j[field + "_decimal_approx"] = decimal(v);
}

std::string monomial(const std::vector<int>& d) {
    std::map<int, int> mult;
    for (int x : d) ++mult[x];
    std::string out;
    for (auto [x, m] : mult) {
        if (!out.empty()) out += " ";
        out += "t" + std::to_string(x);
        if (m > 1) out += "^" + std::to_string(m);
    }
    return out.empty() ? "1" : out;
}

// Coefficient of the monomial in the series: correlator * multinomial / n! = correlator / prod m_d!.
Rat series_coefficient(const std::vector<int>& d, const Rat& v) {
    std::map<int, int> mult;
    for (int x : d) ++mult[x];
    Rat c = v;
    for (auto [x, m] : mult)
        for (int k = 2; k <= m; ++k) c /= k;
    return c;
}

std::string join(const std::vector<int>& d, char sep) {
    std::string s;
    for (std::size_t k = 0; k < d.size(); ++k) s += (k ? std::string(1, sep) : "") + std::to_string(d[k]);
    return s;
}

struct Options {
    int g = 0;
    std::string d;
    bool oracle = false;
    std::string mu;
    std::string suite;
    int g_max = 2, n_max = 3, sum_max = -1, order = 8, d_max = 5, modes = 5, pairs = 60, budget = 3;
    std::uint64_t seed = 20240601;
    std::string format = "json";
    bool with_constant = false;
    bool decimal = false;
    int jobs = 0;
};

int cmd_correlator(const Options& o) {
    auto d = parse_list(o.d);
    check_range("--g", o.g, 0, kMaxGenus);
    json j{{"kind", "correlator"}, {"g", o.g}, {"d", d}};
    put_value(j, "value", correlator(d, o.g), o.decimal);
    int code = kOk;
    if (o.oracle) {
        int n = static_cast<int>(d.size());
        if (2 * o.g - 3 + n < 0) throw UsageError("the Hurwitz formula needs 2g-3+n >= 0");
        Rat h = hurwitz_correlator(d, o.g);
        put_value(j, "hurwitz", h, o.decimal);
        j["equal"] = h == correlator(d, o.g);
        if (!j["equal"].get<bool>()) code = kFailed;
    }
    std::cout << j.dump(2) << "\n";
    return code;
}

int cmd_hurwitz(const Options& o) {
    Partition mu;
    try {
        mu = parse_partition(o.mu);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    check_range("--g", o.g, 0, kMaxGenus);
    json j{{"kind", "hurwitz"}, {"g", o.g}, {"mu", mu.parts}, {"r", 2 * o.g - 1 + static_cast<int>(mu.parts.size())}};
    Rat closed = one_part_number(o.g, mu);
    put_value(j, "value", closed, o.decimal);
    j["aut"] = aut_factor(mu);
    int code = kOk;
    if (o.oracle) {
        check_range("partition degree", mu.degree(), 1, kMaxHurwitzDegree);
        Rat count = factorization_count(o.g, mu);
        put_value(j, "factorization_count", count, o.decimal);
        j["equal"] = closed == Rat(aut_factor(mu)) * count;
        if (!j["equal"].get<bool>()) code = kFailed;
    }
    std::cout << j.dump(2) << "\n";
    return code;
}

int cmd_verify(const Options& o) {
    GridBounds grid{o.g_max, o.n_max, o.sum_max};
    check_range("--g-max", o.g_max, 0, kMaxGenus);
    check_range("--n-max", o.n_max, 1, kMaxN);
    check_range("--sum-max", o.sum_max, -1, kMaxSum);
    VerifyReport r;
    if (o.suite == "main-theorem") {
        r = verify_main_theorem(grid, o.jobs);
    } else if (o.suite == "string") {
        r = verify_string(grid, o.jobs);
    } else if (o.suite == "levels") {
        r = verify_levels(grid, o.jobs);
    } else if (o.suite == "identities") {
        check_range("--order", o.order, 2, kMaxOrder);
        r = verify_identities(o.order, o.jobs);
    } else if (o.suite == "hurwitz-oracle") {
        check_range("--d-max", o.d_max, 1, kMaxHurwitzDegree);
        r = verify_hurwitz_oracle(o.d_max, o.g_max);
    } else if (o.suite == "bracket-oracle") {
        check_range("--modes", o.modes, 2, kMaxModes);
        check_range("--pairs", o.pairs, 1, 1000);
        r = verify_bracket_oracle(o.seed, o.pairs, o.modes);
    } else if (o.suite == "tau-structure") {
        check_range("--d-max", o.d_max, 0, 5);
        check_range("--budget", o.budget, 0, 4);
        r = verify_tau_structure(o.d_max, o.budget);
    } else if (o.suite == "ehrhart") {
        r = verify_ehrhart(4, 6, 15, 0);
    } else if (o.suite == "hamiltonians") {
        r = verify_hamiltonians(6);
    }
    std::cout << to_json(r) << "\n";
    if (auto f = r.first_failure()) {
        std::cerr << "first failure: " << f->key << ": " << f->lhs << " vs " << f->rhs << "\n";
        return kFailed;
    }
    return kOk;
}

int cmd_table(const Options& o) {
    check_range("--g-max", o.g_max, 0, kMaxGenus);
    check_range("--n-max", o.n_max, 0, kMaxN);
    check_range("--sum-max", o.sum_max, -1, kMaxSum);
    std::vector<std::pair<int, std::vector<int>>> keys;
    for (int g = 0; g <= o.g_max; ++g) {
        if (o.with_constant && g != 1) keys.emplace_back(g, std::vector<int>{});
        if (o.n_max == 0) continue;
        for (auto& [kg, d] : grid_keys(GridBounds{g, o.n_max, o.sum_max}))
            if (kg == g) keys.emplace_back(g, d);
    }
    std::vector<Rat> values(keys.size());
    parallel_for(keys.size(), o.jobs, [&](std::size_t k) { values[k] = correlator(keys[k].second, keys[k].first); });

    if (o.format == "json") {
        json j{{"kind", "table"},
               {"bounds", {{"g_max", o.g_max}, {"n_max", o.n_max}, {"sum_max", o.sum_max}}},
               {"rows", json::array()}};
        for (std::size_t k = 0; k < keys.size(); ++k) {
            json row{{"g", keys[k].first}, {"d", keys[k].second}};
            put_value(row, "value", values[k], o.decimal);
            put_value(row, "series_coefficient", series_coefficient(keys[k].second, values[k]), o.decimal);
            j["rows"].push_back(row);
        }
        std::cout << j.dump(2) << "\n";
    } else if (o.format == "csv") {
        std::cout << "g,d,n,sum,value,series_coefficient" << (o.decimal ? ",value_decimal_approx" : "") << "\n";
        for (std::size_t k = 0; k < keys.size(); ++k) {
            const auto& d = keys[k].second;
            std::cout << keys[k].first << "," << join(d, ';') << "," << d.size() << ","
                      << std::accumulate(d.begin(), d.end(), 0) << "," << to_string(values[k]) << ","
                      << to_string(series_coefficient(d, values[k]));
            if (o.decimal) std::cout << "," << decimal(values[k]);
            std::cout << "\n";
        }
    } else {
        std::cout << "| genus | band | monomial | correlator | series coefficient |\n";
        std::cout << "|---|---|---|---|---|\n";
        for (int g = 0; g <= o.g_max; ++g)
            for (int band = 0; band <= g; ++band)
                for (std::size_t k = 0; k < keys.size(); ++k) {
                    const auto& d = keys[k].second;
                    if (keys[k].first != g || values[k] == 0) continue;
                    int n = static_cast<int>(d.size());
                    int gap = 4 * g - 3 + n - std::accumulate(d.begin(), d.end(), 0);
                    if (gap != 2 * band) continue;
                    std::cout << "| hbar^" << g << " | " << band << " | " << monomial(d) << " | " << to_string(values[k])
                              << " | " << to_string(series_coefficient(d, values[k]));
                    if (o.decimal) std::cout << " (" << decimal(values[k]) << ")";
                    std::cout << " |\n";
                }
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact correlators of the quantum KdV tau function at epsilon = 0 and one-part Hurwitz numbers"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    o.jobs = default_jobs();
    app.add_option("--jobs", o.jobs, "Worker threads (default: QWK_JOBS or hardware concurrency)")->check(CLI::PositiveNumber);
    app.add_flag("--decimal", o.decimal, "Also print clearly marked decimal approximations");

    auto* corr = app.add_subcommand("correlator", "One correlator <tau_d1 .. tau_dn>_{0,g}");
    corr->add_option("--g", o.g, "Genus")->required();
    corr->add_option("--d", o.d, "Comma separated insertion indices")->required();
    corr->add_flag("--hurwitz-oracle", o.oracle, "Compare with the Hurwitz closed form");

    auto* hur = app.add_subcommand("hurwitz", "One-part double Hurwitz number H^g_{(d),mu}");
    hur->add_option("--g", o.g, "Genus")->required();
    hur->add_option("--mu", o.mu, "Comma separated partition")->required();
    hur->add_flag("--oracle", o.oracle, "Compare with aut * factorization count");

    auto* ver = app.add_subcommand("verify", "Run a verification suite; defaults reproduce the acceptance grid");
    ver->add_option("suite", o.suite, "Suite")
        ->required()
        ->check(CLI::IsMember({"main-theorem", "string", "levels", "identities", "hurwitz-oracle", "bracket-oracle",
                               "tau-structure", "ehrhart", "hamiltonians"}));
    ver->add_option("--g-max", o.g_max, "Largest genus (<= 3)");
    ver->add_option("--n-max", o.n_max, "Largest number of insertions (<= 4)");
    ver->add_option("--sum-max", o.sum_max, "Largest sum of indices; -1 means 4g+n per key (<= 16)");
    ver->add_option("--order", o.order, "Series order for identities (<= 12)");
    ver->add_option("--d-max", o.d_max, "Largest degree for hurwitz-oracle, largest index for tau-structure");
    ver->add_option("--modes", o.modes, "Mode cutoff for bracket-oracle (<= 6)");
    ver->add_option("--pairs", o.pairs, "Random symbol pairs for bracket-oracle");
    ver->add_option("--seed", o.seed, "Seed for bracket-oracle");
    ver->add_option("--budget", o.budget, "hbar budget for tau-structure");

    auto* tab = app.add_subcommand("table", "Correlator table grouped by genus and level band");
    tab->add_option("--g-max", o.g_max, "Largest genus (<= 3)");
    tab->add_option("--n-max", o.n_max, "Largest number of insertions (<= 4)");
    tab->add_option("--sum-max", o.sum_max, "Largest sum of indices; -1 means 4g+n per key (<= 16)");
    tab->add_option("--format", o.format, "json, csv or md")->check(CLI::IsMember({"json", "csv", "md"}));
    tab->add_flag("--with-constant", o.with_constant, "Include the constant terms (g != 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    try {
        if (*corr) return cmd_correlator(o);
        if (*hur) return cmd_hurwitz(o);
        if (*ver) return cmd_verify(o);
        if (*tab) return cmd_table(o);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}
