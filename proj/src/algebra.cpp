#include "qwk/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace qwk {

Rat make_rat(long num, long den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat rat_from_string(const std::string& text) {
    Rat r;
    if (r.set_str(text, 10) != 0) throw std::invalid_argument("not a rational: " + text);
    if (sgn(r.get_den()) == 0) throw std::domain_error("rational with zero denominator");
    r.canonicalize();
    return r;
}

std::string to_string(const Rat& r) { return r.get_str(10); }

GaussRat GaussRat::i_pow(long k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return GaussRat(1);
        case 1: return GaussRat(Rat(0), Rat(1));
        case 2: return GaussRat(-1);
        default: return GaussRat(Rat(0), Rat(-1));
    }
}

GaussRat& GaussRat::operator+=(const GaussRat& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
}

GaussRat& GaussRat::operator-=(const GaussRat& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    Rat re = re_ * o.re_ - im_ * o.im_;
    Rat im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussRat& GaussRat::operator/=(const GaussRat& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    if (sgn(o.im_) == 0) {
        re_ /= o.re_;
        if (sgn(im_) != 0) im_ /= o.re_;
        return *this;
    }
    Rat n = o.re_ * o.re_ + o.im_ * o.im_;
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
}

std::string to_string(const GaussRat& g) {
    if (g.is_real()) return to_string(g.re());
    std::string im = to_string(g.im()) + "*i";
    if (sgn(g.re()) == 0) return im;
    std::string re = to_string(g.re());
    return sgn(g.im()) < 0 ? re + im : re + "+" + im;
}

GaussRat gauss_from_string(const std::string& text) {
    std::string t;
    for (char c : text)
        if (c != ' ') t.push_back(c);
    if (t.empty()) throw std::invalid_argument("empty number");
    if (t.back() != 'i') return GaussRat(rat_from_string(t));
    std::string body = t.substr(0, t.size() - 1);
    if (!body.empty() && body.back() == '*') body.pop_back();
    // Split at the last sign that is not the leading one.
    std::size_t cut = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if (body[k] == '+' || body[k] == '-') {
            cut = k;
            break;
        }
    }
    auto imag_part = [](std::string s) {
        if (s.empty() || s == "+") return Rat(1);
        if (s == "-") return Rat(-1);
        if (s[0] == '+') s = s.substr(1);
        return rat_from_string(s);
    };
    if (cut == std::string::npos) return GaussRat(Rat(0), imag_part(body));
    return GaussRat(rat_from_string(body.substr(0, cut)), imag_part(body.substr(cut)));
}

Truncation Truncation::per_variable(std::map<std::string, int> caps) {
    Truncation t;
    t.per_var = std::move(caps);
    return t;
}

Truncation Truncation::total_degree(int cap, std::vector<std::string> vars) {
    Truncation t;
    t.total = cap;
    t.total_vars = std::move(vars);
    return t;
}

MultiPoly::MultiPoly(std::vector<std::string> vars, Truncation trunc)
    : vars_(std::move(vars)), trunc_(std::move(trunc)) {
    check_truncation_vars();
}

void MultiPoly::check_truncation_vars() const {
    std::vector<std::string> sorted = vars_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("duplicate variable name");
}

MultiPoly MultiPoly::constant(const GaussRat& c, std::vector<std::string> vars, Truncation trunc) {
    MultiPoly p(std::move(vars), std::move(trunc));
    p.add_term(Exponents(p.vars_.size(), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(const std::string& name, std::vector<std::string> vars, Truncation trunc) {
    if (std::find(vars.begin(), vars.end(), name) == vars.end()) vars.push_back(name);
    MultiPoly p(std::move(vars), std::move(trunc));
    Exponents e(p.vars_.size(), 0);
    e[p.var_index(name)] = 1;
    p.add_term(e, GaussRat(1));
    return p;
}

int MultiPoly::var_index(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    return it == vars_.end() ? -1 : static_cast<int>(it - vars_.begin());
}

bool MultiPoly::admits(const Exponents& e) const {
    if (trunc_.empty()) return true;
    for (const auto& [name, cap] : trunc_.per_var) {
        int k = var_index(name);
        if (k >= 0 && e[k] > cap) return false;
    }
    if (trunc_.total) {
        int sum = 0;
        if (trunc_.total_vars.empty()) {
            for (auto x : e) sum += x;
        } else {
            for (const auto& name : trunc_.total_vars) {
                int k = var_index(name);
                if (k >= 0) sum += e[k];
            }
        }
        if (sum > *trunc_.total) return false;
    }
    return true;
}

void MultiPoly::add_term(const Exponents& e, const GaussRat& c) {
    if (e.size() != vars_.size()) throw std::invalid_argument("exponent vector length mismatch");
    if (c.is_zero() || !admits(e)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GaussRat MultiPoly::coeff(const Exponents& e) const {
    if (e.size() != vars_.size()) throw std::invalid_argument("exponent vector length mismatch");
    auto it = terms_.find(e);
    return it == terms_.end() ? GaussRat() : it->second;
}

GaussRat MultiPoly::coeff(const std::map<std::string, int>& monomial) const {
    Exponents e(vars_.size(), 0);
    for (const auto& [name, k] : monomial) {
        int idx = var_index(name);
        if (idx < 0) throw std::invalid_argument("unknown variable: " + name);
        if (k < 0) throw std::invalid_argument("negative exponent");
        e[idx] = static_cast<Exponent>(k);
    }
    return coeff(e);
}

GaussRat MultiPoly::constant_term() const { return coeff(Exponents(vars_.size(), 0)); }

MultiPoly MultiPoly::with_vars(const std::vector<std::string>& vars) const {
    if (vars == vars_) return *this;
    std::vector<int> map(vars_.size());
    for (std::size_t k = 0; k < vars_.size(); ++k) {
        auto it = std::find(vars.begin(), vars.end(), vars_[k]);
        map[k] = it == vars.end() ? -1 : static_cast<int>(it - vars.begin());
    }
    MultiPoly out(vars, trunc_);
    for (const auto& [e, c] : terms_) {
        Exponents f(vars.size(), 0);
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (map[k] < 0) throw std::invalid_argument("variable dropped while re-embedding: " + vars_[k]);
            f[map[k]] = e[k];
        }
        out.add_term(f, c);
    }
    return out;
}

MultiPoly MultiPoly::with_truncation(const Truncation& trunc) const {
    MultiPoly out(vars_, trunc);
    for (const auto& [e, c] : terms_) out.add_term(e, c);
    return out;
}

MultiPoly MultiPoly::renamed(const std::vector<std::string>& new_names) const {
    if (new_names.size() != vars_.size()) throw std::invalid_argument("rename arity mismatch");
    MultiPoly out(new_names);
    out.terms_ = terms_;
    return out;
}

int MultiPoly::degree_in(const std::string& name) const {
    int k = var_index(name);
    if (k < 0) return is_zero() ? -1 : 0;
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[k]));
    return d;
}

int MultiPoly::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

namespace {

Truncation combined_truncation(const MultiPoly& a, const MultiPoly& b) {
    if (a.truncation().empty()) return b.truncation();
    if (b.truncation().empty() || a.truncation() == b.truncation()) return a.truncation();
    throw std::invalid_argument("incompatible truncation settings");
}

}  // namespace

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    Truncation t = combined_truncation(*this, o);
    if (vars_ != o.vars_) {
        auto vars = merge_vars(vars_, o.vars_);
        *this = with_vars(vars);
        trunc_ = t;
        for (const auto& [e, c] : o.with_vars(vars).terms_) add_term(e, c);
        return *this;
    }
    if (!(t == trunc_)) *this = with_truncation(t);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) { return *this += -o; }

MultiPoly& MultiPoly::operator*=(const GaussRat& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly out = *this;
    for (auto& [e, v] : out.terms_) v = -v;
    return out;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    Truncation t = combined_truncation(a, b);
    auto vars = merge_vars(a.vars_, b.vars_);
    MultiPoly x = a.with_vars(vars);
    MultiPoly y = b.with_vars(vars);
    MultiPoly out(vars, t);
    Exponents e(vars.size());
    for (const auto& [ea, ca] : x.terms_) {
        for (const auto& [eb, cb] : y.terms_) {
            for (std::size_t k = 0; k < e.size(); ++k) e[k] = static_cast<Exponent>(ea[k] + eb[k]);
            if (!out.admits(e)) continue;
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
    auto vars = merge_vars(a.vars_, b.vars_);
    return a.with_vars(vars).with_truncation({}).terms_ == b.with_vars(vars).with_truncation({}).terms_;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string coef = qwk::to_string(c);
        bool is_const = std::all_of(e.begin(), e.end(), [](Exponent x) { return x == 0; });
        if (!c.is_real() && !is_const) coef = "(" + coef + ")";
        if (!first) os << (coef[0] == '-' ? " - " : " + ");
        if (!first && coef[0] == '-') coef = coef.substr(1);
        first = false;
        if (is_const) {
            os << coef;
            continue;
        }
        bool unit = coef == "1";
        if (!unit) os << coef;
        bool need_star = !unit;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (need_star) os << "*";
            os << vars_[k];
            if (e[k] > 1) os << "^" << e[k];
            need_star = true;
        }
    }
    return os.str();
}

std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::string> out = a;
    for (const auto& v : b)
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    return out;
}

MultiPoly poly_mul(const MultiPoly& a, const MultiPoly& b) { return a * b; }

GaussRat coeff_extract(const MultiPoly& p, const std::map<std::string, int>& monomial) {
    return p.coeff(monomial);
}

MultiPoly poly_pow(const MultiPoly& p, int k) {
    if (k < 0) throw std::invalid_argument("negative power");
    MultiPoly result = MultiPoly::constant(GaussRat(1), p.vars(), p.truncation());
    MultiPoly base = p;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

MultiPoly substitute_linear(const MultiPoly& p, const std::string& var, const LinearForm& replacement) {
    int idx = p.var_index(var);
    if (idx < 0) throw std::invalid_argument("unknown variable: " + var);
    std::vector<std::string> rest;
    for (const auto& v : p.vars())
        if (v != var) rest.push_back(v);
    for (const auto& [name, c] : replacement.terms)
        if (std::find(rest.begin(), rest.end(), name) == rest.end()) rest.push_back(name);

    MultiPoly lin = MultiPoly::constant(replacement.constant, rest);
    for (const auto& [name, c] : replacement.terms) lin += MultiPoly::variable(name, rest) * c;

    // Group p by the power of var.
    std::map<int, MultiPoly> by_power;
    for (const auto& [e, c] : p.terms()) {
        Exponents f(rest.size(), 0);
        for (std::size_t k = 0; k < p.vars().size(); ++k) {
            if (static_cast<int>(k) == idx) continue;
            auto pos = std::find(rest.begin(), rest.end(), p.vars()[k]) - rest.begin();
            f[pos] = e[k];
        }
        auto [it, ok] = by_power.try_emplace(e[idx], MultiPoly(rest));
        it->second.add_term(f, c);
    }
    MultiPoly out(rest, p.truncation());
    MultiPoly power = MultiPoly::constant(GaussRat(1), rest, p.truncation());
    lin = lin.with_truncation(p.truncation());
    int current = 0;
    for (const auto& [k, part] : by_power) {
        while (current < k) {
            power = power * lin;
            ++current;
        }
        out += part.with_truncation(p.truncation()) * power;
    }
    return out;
}

}  // namespace qwk
