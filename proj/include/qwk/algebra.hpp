#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qwk {

// Exact rational. GMP keeps it reduced with a positive denominator.
using Rat = mpq_class;

Rat make_rat(long num, long den = 1);
Rat rat_from_string(const std::string& text);
std::string to_string(const Rat& r);

// Exact Gaussian rational re + im*i.
class GaussRat {
public:
    GaussRat() = default;
    GaussRat(long v) : re_(v) {}
    GaussRat(Rat re) : re_(std::move(re)) {}
    GaussRat(Rat re, Rat im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }
    // i^k for any integer k.
    static GaussRat i_pow(long k);

    const Rat& re() const { return re_; }
    const Rat& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    GaussRat conj() const { return GaussRat(re_, -im_); }
    // |re| + |im|, an exact size measure used for discrepancy reports.
    Rat l1_norm() const { return abs(re_) + abs(im_); }

    GaussRat& operator+=(const GaussRat& o);
    GaussRat& operator-=(const GaussRat& o);
    GaussRat& operator*=(const GaussRat& o);
    GaussRat& operator/=(const GaussRat& o);

    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
    GaussRat operator-() const { return GaussRat(-re_, -im_); }

    friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }

private:
    Rat re_{0};
    Rat im_{0};
};

// Canonical text: "p/q", "p/q*i", "p/q+r/s*i".
std::string to_string(const GaussRat& g);
GaussRat gauss_from_string(const std::string& text);

using Exponent = std::uint16_t;
using Exponents = std::vector<Exponent>;

// Optional truncation: per-variable caps plus an optional cap on the total
// degree of a subset of variables (all variables when the subset is empty).
struct Truncation {
    std::map<std::string, int> per_var;
    std::optional<int> total;
    std::vector<std::string> total_vars;

    bool empty() const { return per_var.empty() && !total; }
    friend bool operator==(const Truncation&, const Truncation&) = default;

    static Truncation per_variable(std::map<std::string, int> caps);
    static Truncation total_degree(int cap, std::vector<std::string> vars = {});
};

// A linear form c0 + sum c_j * v_j used by substitute_linear.
struct LinearForm {
    GaussRat constant;
    std::vector<std::pair<std::string, GaussRat>> terms;
};

// Sparse multivariate polynomial over GaussRat with named variables.
class MultiPoly {
public:
    using TermMap = std::map<Exponents, GaussRat>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars, Truncation trunc = {});

    static MultiPoly constant(const GaussRat& c, std::vector<std::string> vars = {}, Truncation trunc = {});
    static MultiPoly variable(const std::string& name, std::vector<std::string> vars = {}, Truncation trunc = {});

    const std::vector<std::string>& vars() const { return vars_; }
    const Truncation& truncation() const { return trunc_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    // Index of a variable, or -1.
    int var_index(const std::string& name) const;

    // Adds c * x^e; drops the term if truncated away or if the sum cancels.
    void add_term(const Exponents& e, const GaussRat& c);

    GaussRat coeff(const Exponents& e) const;
    GaussRat coeff(const std::map<std::string, int>& monomial) const;
    GaussRat constant_term() const;

    // Same polynomial embedded in a larger ordered variable list.
    MultiPoly with_vars(const std::vector<std::string>& vars) const;
    MultiPoly with_truncation(const Truncation& trunc) const;
    MultiPoly renamed(const std::vector<std::string>& new_names) const;

    int degree_in(const std::string& name) const;
    int total_degree() const;

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const GaussRat& c);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(MultiPoly a, const GaussRat& c) { return a *= c; }
    friend MultiPoly operator*(const GaussRat& c, MultiPoly a) { return a *= c; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    MultiPoly operator-() const;

    // Value equality: same variable names with the same nonzero terms after alignment.
    friend bool operator==(const MultiPoly& a, const MultiPoly& b);
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    bool admits(const Exponents& e) const;
    std::string to_string() const;

private:
    std::vector<std::string> vars_;
    Truncation trunc_;
    TermMap terms_;

    void check_truncation_vars() const;
};

MultiPoly poly_mul(const MultiPoly& a, const MultiPoly& b);
GaussRat coeff_extract(const MultiPoly& p, const std::map<std::string, int>& monomial);
MultiPoly substitute_linear(const MultiPoly& p, const std::string& var, const LinearForm& replacement);
MultiPoly poly_pow(const MultiPoly& p, int k);

// Union of two ordered variable lists, keeping the order of a first.
std::vector<std::string> merge_vars(const std::vector<std::string>& a, const std::vector<std::string>& b);

}  // namespace qwk
