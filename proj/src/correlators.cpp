#include "qwk/correlators.hpp"

#include "qwk/parallel.hpp"
#include "qwk/qkdv.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace qwk {

CorrelatorKey make_key(std::vector<int> d, int g) {
    std::sort(d.begin(), d.end());
    return CorrelatorKey{g, std::move(d)};
}

bool CorrelatorEngine::lookup(std::map<CorrelatorKey, Rat>& memo, const CorrelatorKey& key, Rat& out) {
    std::lock_guard lock(mutex_);
    auto it = memo.find(key);
    if (it == memo.end()) return false;
    out = it->second;
    return true;
}

void CorrelatorEngine::store(std::map<CorrelatorKey, Rat>& memo, const CorrelatorKey& key, const Rat& value) {
    std::lock_guard lock(mutex_);
    memo.try_emplace(key, value);
}

Rat CorrelatorEngine::correlator_tau0(const std::vector<int>& rest, int g) {
    if (rest.empty()) throw std::invalid_argument("correlator_tau0 needs at least one insertion besides tau_0");
    if (g < 0) throw std::invalid_argument("negative genus");
    for (int x : rest)
        if (x < 0) throw std::invalid_argument("negative insertion index");
    auto key = make_key(rest, g);
    Rat value;
    if (lookup(tau0_, key, value)) return value;
    long n = static_cast<long>(key.d.size());
    auto values = nested_bracket(key.d, g);
    GaussRat v = values[g] * GaussRat::i_pow(n - 1);
    if (g % 2) v = -v;
    if (!v.is_real()) throw std::logic_error("non-real correlator " + to_string(v));
    store(tau0_, key, v.re());
    return v.re();
}

Rat CorrelatorEngine::correlator(std::vector<int> d, int g) {
    if (g < 0) throw std::invalid_argument("negative genus");
    for (int x : d)
        if (x < 0) throw std::invalid_argument("negative insertion index");
    if (d.empty()) return constant_term(g);
    auto key = make_key(std::move(d), g);
    Rat value;
    if (lookup(general_, key, value)) return value;
    const auto& k = key.d;
    if (k.size() == 1) {
        value = correlator_tau0({k[0] + 1}, g);
    } else if (k[0] == 0) {
        value = correlator_tau0(std::vector<int>(k.begin() + 1, k.end()), g);
    } else {
        // X_d = Y_{d+e1} - sum_{i>=2} X_{d+e1-e_i} with d_1 the largest entry, which
        // stays largest, so the sum of the other entries drops each step.
        auto up = k;
        ++up.back();
        value = correlator_tau0(up, g);
        for (std::size_t i = 0; i + 1 < k.size(); ++i) {
            auto next = up;
            --next[i];
            value -= correlator(next, g);
        }
    }
    store(general_, key, value);
    return value;
}

Rat CorrelatorEngine::constant_term(int g) {
    if (g == 1) throw std::domain_error("the constant term convention is singular at g = 1");
    return correlator({1}, g) / Rat(2 * g - 2);
}

CorrelatorEngine& default_engine() {
    static CorrelatorEngine engine;
    return engine;
}

Rat correlator_tau0(const std::vector<int>& rest, int g) { return default_engine().correlator_tau0(rest, g); }
Rat correlator(const std::vector<int>& d, int g) { return default_engine().correlator(d, g); }
Rat constant_term(int g) { return default_engine().constant_term(g); }

bool vanishes_by_level(const std::vector<int>& d, int g, int l) {
    if (l > g) throw std::invalid_argument("level above genus");
    if (l < 0 || g < 0) throw std::invalid_argument("negative genus or level");
    int n = static_cast<int>(d.size());
    int sum = std::accumulate(d.begin(), d.end(), 0);
    return sum > 4 * g - 3 + n - l || (sum - (n - l)) % 2 == 0;
}

std::vector<std::vector<int>> multisets(int n_min, int n_max, int sum_max) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int lo, int left) {
        if (static_cast<int>(cur.size()) >= n_min) out.push_back(cur);
        if (static_cast<int>(cur.size()) == n_max) return;
        for (int x = lo; x <= left; ++x) {
            cur.push_back(x);
            rec(x, left - x);
            cur.pop_back();
        }
    };
    rec(0, sum_max);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        int sa = std::accumulate(a.begin(), a.end(), 0);
        int sb = std::accumulate(b.begin(), b.end(), 0);
        return std::tie(sa, a) < std::tie(sb, b);
    });
    return out;
}

CorrelatorTable correlator_table(int g_max, int n_max, int sum_max, int jobs) {
    if (g_max < 0 || n_max < 0 || sum_max < 0) throw std::invalid_argument("negative table bound");
    CorrelatorTable table{g_max, n_max, sum_max, {}};
    std::vector<CorrelatorKey> keys;
    for (int g = 0; g <= g_max; ++g)
        for (auto& d : multisets(0, n_max, sum_max))
            if (!(d.empty() && g == 1)) keys.push_back({g, d});
    std::vector<Rat> values(keys.size());
    auto& engine = default_engine();
    parallel_for(keys.size(), jobs, [&](std::size_t k) { values[k] = engine.correlator(keys[k].d, keys[k].g); });
    for (std::size_t k = 0; k < keys.size(); ++k) table.values.emplace(keys[k], values[k]);
    return table;
}

}  // namespace qwk
