#include "qwk/qkdv.hpp"

#include "qwk/special.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>

namespace qwk {

namespace {

FourierSymbol compute_hamiltonian(int d, int max_grade) {
    FourierSymbol out;
    out.kind = SymbolKind::Density;
    for (int g = 0; d + 2 - 2 * g >= 0; ++g) {
        if (max_grade >= 0 && g > max_grade) break;
        int m = d + 2 - 2 * g;
        auto names = slot_names(m);
        std::vector<MultiPoly> args;
        MultiPoly sum(names);
        for (const auto& a : names) {
            args.push_back(MultiPoly::variable(a, names));
            sum += args.back();
        }
        args.push_back(sum);
        MultiPoly coeff = s_product_coefficient(args, names, g);
        coeff *= GaussRat(Rat(1) / factorial(m));
        if (coeff.is_zero()) continue;
        out.terms.push_back(make_term(g, m, coeff, m ? std::vector<int>{m} : std::vector<int>{}));
    }
    return out;
}

using Terms = MultiPoly::TermMap;
constexpr int kNoLimit = 1 << 20;

void add_into(Terms& t, const Exponents& e, const GaussRat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = t.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) t.erase(it);
    }
}

int count_non_one(const Exponents& e, int from, int to) {
    int n = 0;
    for (int k = from; k < to; ++k) n += e[k] != 1;
    return n;
}

int count_ge_two(const Exponents& e) {
    int n = 0;
    for (auto x : e) n += x >= 2;
    return n;
}

Terms mul_filtered(const Terms& a, const Terms& b, int max_ge_two) {
    Terms out;
    if (a.empty() || b.empty()) return out;
    Exponents e(a.begin()->first.size());
    for (const auto& [ea, ca] : a) {
        for (const auto& [eb, cb] : b) {
            for (std::size_t k = 0; k < e.size(); ++k) e[k] = static_cast<Exponent>(ea[k] + eb[k]);
            if (count_ge_two(e) > max_ge_two) continue;
            add_into(out, e, ca * cb);
        }
    }
    return out;
}

void for_each_count(const std::vector<int>& sizes, int q, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> c(sizes.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t b, int left) {
        if (b == sizes.size()) {
            if (left == 0) f(c);
            return;
        }
        for (int x = 0; x <= std::min(left, sizes[b]); ++x) {
            c[b] = x;
            rec(b + 1, left - x);
        }
        c[b] = 0;
    };
    rec(0, q);
}

void for_each_assignment(int q, int nblocks, const std::function<void(const std::vector<int>&)>& f) {
    std::vector<int> a(q, 0);
    std::function<void(int)> rec = [&](int j) {
        if (j == q) {
            f(a);
            return;
        }
        for (int b = 0; b < nblocks; ++b) {
            a[j] = b;
            rec(j + 1);
        }
    };
    rec(0);
}

Rat falling(long n, long k) {
    Rat r(1);
    for (long j = 0; j < k; ++j) r *= n - j;
    return r;
}

std::vector<int> residual_blocks(const std::vector<int>& sizes, const std::vector<int>& taken) {
    std::vector<int> out;
    for (std::size_t b = 0; b < sizes.size(); ++b)
        if (sizes[b] - taken[b] > 0) out.push_back(sizes[b] - taken[b]);
    return out;
}

struct TermPair {
    const SymbolTerm& left;
    const SymbolTerm& right;
};

using OutputMap = std::map<std::pair<int, std::vector<int>>, Terms>;

void bracket_terms(const SymbolTerm& tL, const SymbolTerm& tR, const BracketBudget& budget, int later, OutputMap& out) {
    int mL = tL.slots;
    int mR = tR.slots;
    for (int q = 1; q <= std::min(mL, mR); ++q) {
        int grade = tL.grade + tR.grade + q - 1;
        if (grade > budget.max_hbar_grade) break;
        int F = later < 0 ? kNoLimit : later + budget.max_hbar_grade - grade;
        int mLrem = mL - q;
        int mRrem = mR - q;
        int mOut = mLrem + mRrem;
        // With no surviving right slot every composition sum is evaluated at N = 0.
        if (mRrem == 0) continue;

        for_each_count(tL.blocks, q, [&](const std::vector<int>& c) {
            Rat multL(1);
            for (std::size_t b = 0; b < c.size(); ++b) multL *= binomial(tL.blocks[b], c[b]);
            std::vector<int> kidx(mL, -1), oidx(mL, -1);
            {
                int pos = 0, kk = 0, o = 0;
                for (std::size_t b = 0; b < tL.blocks.size(); ++b)
                    for (int s = 0; s < tL.blocks[b]; ++s, ++pos) {
                        if (s < c[b])
                            kidx[pos] = kk++;
                        else
                            oidx[pos] = o++;
                    }
            }
            std::map<Exponents, Terms> phi;
            for (const auto& [e, coef] : tL.coeff.terms()) {
                Exponents alpha(q, 0), f(mOut, 0);
                int non1 = 0;
                for (int s = 0; s < mL; ++s) {
                    if (kidx[s] >= 0) {
                        alpha[kidx[s]] = e[s];
                    } else {
                        f[oidx[s]] = e[s];
                        non1 += e[s] != 1;
                    }
                }
                if (non1 > F) continue;
                add_into(phi[alpha], f, coef);
            }
            for (auto it = phi.begin(); it != phi.end();) it = it->second.empty() ? phi.erase(it) : std::next(it);
            if (phi.empty()) return;
            auto blocksL = residual_blocks(tL.blocks, c);

            int nRb = static_cast<int>(tR.blocks.size());
            for_each_assignment(q, nRb, [&](const std::vector<int>& assign) {
                std::vector<int> cr(nRb, 0);
                for (int b : assign) ++cr[b];
                for (int b = 0; b < nRb; ++b)
                    if (cr[b] > tR.blocks[b]) return;
                Rat multR(1);
                for (int b = 0; b < nRb; ++b) multR *= falling(tR.blocks[b], cr[b]);

                std::vector<int> kidxR(mR, -1), oidxR(mR, -1);
                {
                    int pos = 0, o = mLrem;
                    for (int b = 0; b < nRb; ++b) {
                        std::vector<int> ks;
                        for (int j = 0; j < q; ++j)
                            if (assign[j] == b) ks.push_back(j);
                        for (int s = 0; s < tR.blocks[b]; ++s, ++pos) {
                            if (s < cr[b])
                                kidxR[pos] = ks[s];
                            else
                                oidxR[pos] = o++;
                        }
                    }
                }
                std::map<Exponents, Terms> psi;
                std::map<Exponents, int> psi_deg;
                for (const auto& [e, coef] : tR.coeff.terms()) {
                    Exponents beta(q, 0), f(mOut, 0);
                    int deg = 0;
                    for (int s = 0; s < mR; ++s) {
                        if (kidxR[s] >= 0) {
                            beta[kidxR[s]] = e[s];
                        } else {
                            f[oidxR[s]] = e[s];
                            deg += e[s];
                        }
                    }
                    if (count_ge_two(f) > F) continue;
                    add_into(psi[beta], f, coef);
                    psi_deg[beta] = std::max(psi_deg[beta], deg);
                }
                if (psi.empty()) return;

                // Powers of Btilde, the sum of the surviving right slots.
                Terms btilde;
                for (int k = mLrem; k < mOut; ++k) {
                    Exponents e(mOut, 0);
                    e[k] = 1;
                    btilde.emplace(e, GaussRat(1));
                }
                std::vector<Terms> bpow{Terms{{Exponents(mOut, 0), GaussRat(1)}}};
                auto power = [&](std::size_t j) -> const Terms& {
                    while (bpow.size() <= j) bpow.push_back(mul_filtered(bpow.back(), btilde, F));
                    return bpow[j];
                };
                std::map<std::pair<Exponents, std::size_t>, Terms> psib;
                auto psi_times_power = [&](const Exponents& beta, const Terms& rpart, std::size_t j) -> const Terms& {
                    auto key = std::make_pair(beta, j);
                    auto it = psib.find(key);
                    if (it != psib.end()) return it->second;
                    return psib.emplace(key, mul_filtered(rpart, power(j), F)).first->second;
                };

                auto blocksR = residual_blocks(tR.blocks, cr);
                std::vector<int> blocks_out = blocksL;
                blocks_out.insert(blocks_out.end(), blocksR.begin(), blocksR.end());
                Terms& target = out[{grade, blocks_out}];
                GaussRat mult(multL * multR);

                for (const auto& [alpha, lpart] : phi) {
                    int alpha_deg = std::accumulate(alpha.begin(), alpha.end(), 0);
                    Terms qf, qr;
                    for (const auto& [beta, rpart] : psi) {
                        std::vector<int> r(q);
                        int beta_deg = 0;
                        for (int j = 0; j < q; ++j) {
                            r[j] = alpha[j] + beta[j] + 1;
                            beta_deg += beta[j];
                        }
                        const auto& ec = ehrhart_coefficients(r);
                        for (std::size_t j = 0; j < ec.size(); ++j) {
                            if (sgn(ec[j]) == 0) continue;
                            if (mRrem - (psi_deg[beta] + static_cast<int>(j)) > F) continue;
                            const Terms& prod = psi_times_power(beta, rpart, j);
                            GaussRat fwd(beta_deg % 2 ? -ec[j] : ec[j]);
                            for (const auto& [e, v] : prod) add_into(qf, e, v * fwd);
                            if (budget.check_branches) {
                                GaussRat rev(j % 2 ? -ec[j] : ec[j]);
                                for (const auto& [e, v] : prod) add_into(qr, e, v * rev);
                            }
                        }
                    }
                    if (budget.check_branches) {
                        // The reverse branch enters with sign (-1)^{|alpha|}; the
                        // commutator is a single polynomial iff fwd == -rev.
                        bool ok = true;
                        if (qf.size() != qr.size()) ok = false;
                        for (auto it = qf.begin(), jt = qr.begin(); ok && it != qf.end(); ++it, ++jt) {
                            GaussRat expected = alpha_deg % 2 ? jt->second : -jt->second;
                            ok = it->first == jt->first && it->second == expected;
                        }
                        if (!ok) throw std::logic_error("forward and reverse Ehrhart branches disagree");
                    }
                    for (const auto& [el, cl] : lpart) {
                        int nl = count_non_one(el, 0, mLrem);
                        for (const auto& [er, cr2] : qf) {
                            if (later >= 0 && nl + count_non_one(er, mLrem, mOut) > F) continue;
                            Exponents e(mOut);
                            for (int k = 0; k < mOut; ++k) e[k] = static_cast<Exponent>(el[k] + er[k]);
                            add_into(target, e, cl * cr2 * mult);
                        }
                    }
                }
            });
        });
    }
}

FourierSymbol bracket_impl(const FourierSymbol& L, const FourierSymbol& R, const BracketBudget& budget, int later) {
    if (L.kind != SymbolKind::Density) throw std::invalid_argument("bracket needs a density on the left");
    if (R.kind != SymbolKind::Integrated) throw std::invalid_argument("bracket needs an integrated symbol on the right");
    if (budget.max_hbar_grade < 0) throw std::invalid_argument("negative bracket budget");
    OutputMap out;
    for (const auto& tL : L.terms)
        for (const auto& tR : R.terms) bracket_terms(tL, tR, budget, later, out);
    FourierSymbol result;
    result.kind = SymbolKind::Density;
    for (auto& [key, terms] : out) {
        if (terms.empty()) continue;
        int m = std::accumulate(key.second.begin(), key.second.end(), 0);
        MultiPoly coeff(slot_names(m));
        for (const auto& [e, c] : terms) coeff.add_term(e, c);
        SymbolTerm t;
        t.grade = key.first;
        t.slots = m;
        t.coeff = std::move(coeff);
        t.blocks = key.second;
        result.terms.push_back(std::move(t));
    }
    return normalize(std::move(result));
}

}  // namespace

FourierSymbol hamiltonian_density(int d, int max_grade) {
    if (d < -1) throw std::invalid_argument("hamiltonian_density needs d >= -1");
    static std::mutex mutex;
    static std::map<std::pair<int, int>, FourierSymbol> cache;
    auto key = std::make_pair(d, max_grade < 0 ? -1 : std::min(max_grade, (d + 2) / 2));
    {
        std::lock_guard lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    FourierSymbol h = compute_hamiltonian(d, key.second);
    std::lock_guard lock(mutex);
    return cache.emplace(key, std::move(h)).first->second;
}

FourierSymbol integrate_hamiltonian(const FourierSymbol& h) {
    if (h.kind != SymbolKind::Density) throw std::invalid_argument("symbol is already integrated");
    FourierSymbol out = h;
    out.kind = SymbolKind::Integrated;
    return out;
}

FourierSymbol bracket(const FourierSymbol& L, const FourierSymbol& R, const BracketBudget& budget) {
    return bracket_impl(L, R, budget, -1);
}

FourierSymbol bracket_for_evaluation(const FourierSymbol& L, const FourierSymbol& R, const BracketBudget& budget,
                                     int later_brackets) {
    if (later_brackets < 0) throw std::invalid_argument("negative bracket count");
    return bracket_impl(L, R, budget, later_brackets);
}

std::map<int, GaussRat> nested_bracket(const std::vector<int>& d_list, int g) {
    if (d_list.empty()) throw std::invalid_argument("nested_bracket needs at least one index");
    if (g < 0) throw std::invalid_argument("negative genus");
    for (int d : d_list)
        if (d < 0) throw std::invalid_argument("negative insertion index");
    int n = static_cast<int>(d_list.size());
    FourierSymbol L = hamiltonian_density(d_list[0] - 1, g);
    // Every surviving slot must end with exponent one or be struck later.
    for (auto& t : L.terms) {
        int F = (n - 1) + g - t.grade;
        MultiPoly kept(t.coeff.vars());
        for (const auto& [e, c] : t.coeff.terms())
            if (count_non_one(e, 0, t.slots) <= F) kept.add_term(e, c);
        t.coeff = std::move(kept);
    }
    L = normalize(std::move(L));
    BracketBudget budget{g, true};
    for (int j = 1; j < n; ++j) {
        FourierSymbol R = integrate_hamiltonian(hamiltonian_density(d_list[j], g));
        L = bracket_for_evaluation(L, R, budget, n - 1 - j);
    }
    auto values = eval_string_point(L);
    for (int k = 0; k <= g; ++k) values.try_emplace(k, GaussRat());
    return values;
}

}  // namespace qwk
