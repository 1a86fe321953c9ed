#pragma once

#include "qwk/algebra.hpp"

#include <compare>
#include <map>
#include <mutex>
#include <vector>

namespace qwk {

struct CorrelatorKey {
    int g = 0;
    std::vector<int> d;  // sorted

    friend auto operator<=>(const CorrelatorKey&, const CorrelatorKey&) = default;
};

CorrelatorKey make_key(std::vector<int> d, int g);

struct CorrelatorTable {
    int g_max = 0;
    int n_max = 0;
    int sum_max = 0;
    std::map<CorrelatorKey, Rat> values;
};

// Memoized correlators <tau_d1..tau_dn>_{0,g}; safe to share between threads.
class CorrelatorEngine {
public:
    // <tau_0 tau_rest>_{0,g} from the nested bracket.
    Rat correlator_tau0(const std::vector<int>& rest, int g);
    Rat correlator(std::vector<int> d, int g);
    // 1/(2g-2) times the coefficient of t_1; g = 1 is rejected.
    Rat constant_term(int g);

private:
    std::mutex mutex_;
    std::map<CorrelatorKey, Rat> tau0_;
    std::map<CorrelatorKey, Rat> general_;

    bool lookup(std::map<CorrelatorKey, Rat>& memo, const CorrelatorKey& key, Rat& out);
    void store(std::map<CorrelatorKey, Rat>& memo, const CorrelatorKey& key, const Rat& value);
};

CorrelatorEngine& default_engine();

Rat correlator_tau0(const std::vector<int>& rest, int g);
Rat correlator(const std::vector<int>& d, int g);
Rat constant_term(int g);

// Level-structure prediction: sum d > 4g-3+n-l or sum d = n-l mod 2.
bool vanishes_by_level(const std::vector<int>& d, int g, int l);

// Sorted multisets of size 0..n_max with entries summing to at most sum_max.
std::vector<std::vector<int>> multisets(int n_min, int n_max, int sum_max);

// Every correlator with g <= g_max, n <= n_max, sum d <= sum_max (the singular
// constant term at g = 1 is left out).
CorrelatorTable correlator_table(int g_max, int n_max, int sum_max, int jobs = 1);

}  // namespace qwk
