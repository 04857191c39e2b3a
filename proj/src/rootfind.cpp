#include "regsing/rootfind.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>

namespace regsing {

namespace {

struct GInt {
    BigInt re, im;
    bool operator<(const GInt& o) const {
        return re < o.re || (re == o.re && im < o.im);
    }
    bool operator==(const GInt& o) const { return re == o.re && im == o.im; }
    bool is_zero() const { return re == 0 && im == 0; }
    BigInt norm() const { return re * re + im * im; }
    GInt mul(const GInt& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    GInt conj() const { return {re, -im}; }
};

// exact quotient if d divides a in Z[i]
bool gdiv(const GInt& a, const GInt& d, GInt& q) {
    BigInt nd = d.norm();
    GInt num = a.mul(d.conj());
    if (num.re % nd != 0 || num.im % nd != 0) return false;
    q = {num.re / nd, num.im / nd};
    return true;
}

// Factor a positive integer by trial division.  A composite leftover beyond
// the budget that is not a perfect square aborts; desk-scale inputs never get
// there.
std::map<BigInt, int> factor_int(BigInt n) {
    std::map<BigInt, int> f;
    const long budget = 1000000;
    for (long p = 2; (BigInt)p * p <= n && p <= budget; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            f[p] += 1;
            n /= p;
        }
    }
    if (n > 1) {
        BigInt cap = (BigInt)budget * budget;
        BigInt s = boost::multiprecision::sqrt(n);
        if (n <= cap) {
            f[n] += 1;  // no factor below the budget and below budget^2: prime
        } else if (s * s == n && s <= cap) {
            f[s] += 2;  // square of a prime past the budget, same argument
        } else {
            throw std::runtime_error("root search exceeded the factoring budget");
        }
    }
    return f;
}

// Gaussian prime divisors of c with exact exponents, up to units
std::vector<std::pair<GInt, int>> gaussian_factor(GInt c) {
    if (c.is_zero()) throw std::runtime_error("factoring zero");
    std::vector<std::pair<GInt, int>> out;
    auto nf = factor_int(c.norm());
    for (const auto& [p, e] : nf) {
        std::vector<GInt> primes;
        if (p == 2) {
            primes.push_back({1, 1});
        } else if (p % 4 == 3) {
            primes.push_back({p, 0});
        } else {
            // split prime: find a^2 + b^2 = p
            BigInt a = 1;
            for (;; ++a) {
                BigInt b2 = p - a * a;
                if (b2 < a * a) break;
                BigInt b = boost::multiprecision::sqrt(b2);
                if (b * b == b2) {
                    primes.push_back({a, b});
                    primes.push_back({a, -b});
                    break;
                }
            }
            if (primes.empty()) throw std::runtime_error("prime splitting failed");
        }
        (void)e;
        for (const auto& pi : primes) {
            GInt cur = c;
            GInt q;
            int cnt = 0;
            while (gdiv(cur, pi, q)) {
                cur = q;
                ++cnt;
            }
            if (cnt > 0) out.push_back({pi, cnt});
        }
    }
    return out;
}

std::vector<GInt> divisors_up_to_units(const GInt& c) {
    auto f = gaussian_factor(c);
    std::vector<GInt> out = {{1, 0}};
    for (const auto& [p, e] : f) {
        std::vector<GInt> next;
        for (const auto& d : out) {
            GInt cur = d;
            next.push_back(cur);
            for (int k = 1; k <= e; ++k) {
                cur = cur.mul(p);
                next.push_back(cur);
            }
        }
        out = std::move(next);
    }
    return out;
}

GaussianRational eval_poly(const std::vector<GaussianRational>& c, const GaussianRational& v) {
    GaussianRational acc(0);
    for (size_t k = c.size(); k-- > 0;) acc = acc * v + c[k];
    return acc;
}

// synthetic division by (x - r); remainder must be zero
std::vector<GaussianRational> deflate(const std::vector<GaussianRational>& c,
                                      const GaussianRational& r) {
    std::vector<GaussianRational> q(c.size() - 1);
    GaussianRational carry = c.back();
    for (size_t k = c.size() - 1; k-- > 0;) {
        q[k] = carry;
        carry = c[k] + carry * r;
    }
    if (!carry.is_zero()) throw std::runtime_error("deflation by a non-root");
    return q;
}

BigInt lcm_int(const BigInt& a, const BigInt& b) {
    return a / boost::multiprecision::gcd(a, b) * b;
}

}  // namespace

RootFindResult gaussian_rational_roots(std::vector<GaussianRational> coeffs) {
    while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
    if (coeffs.empty()) throw std::runtime_error("root search on the zero polynomial");

    RootFindResult res;
    res.unsolved_degree = 0;
    if (coeffs.size() == 1) return res;

    // strip roots at zero
    int zero_mult = 0;
    while (coeffs.size() > 1 && coeffs.front().is_zero()) {
        coeffs.erase(coeffs.begin());
        ++zero_mult;
    }
    if (zero_mult > 0) res.roots.push_back({GaussianRational(0), zero_mult});
    if (coeffs.size() == 1) return res;

    // scale to Gaussian-integer coefficients
    BigInt den = 1;
    for (const auto& g : coeffs) {
        den = lcm_int(den, denominator(g.re));
        den = lcm_int(den, denominator(g.im));
    }
    std::vector<GInt> ic;
    for (const auto& g : coeffs) {
        BigRat r = g.re * den, m = g.im * den;
        ic.push_back({numerator(r), numerator(m)});
    }

    // candidate roots p/q with p | c_0 and q | c_lead in Z[i]
    auto ps = divisors_up_to_units(ic.front());
    auto qs = divisors_up_to_units(ic.back());
    static const GInt units[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

    std::set<GaussianRational> seen;
    std::vector<GaussianRational> found;
    for (const auto& p : ps)
        for (const auto& u : units)
            for (const auto& q : qs) {
                GInt pu = p.mul(u);
                GaussianRational cand(BigRat(pu.re), BigRat(pu.im));
                GaussianRational qg(BigRat(q.re), BigRat(q.im));
                cand = cand / qg;
                if (seen.count(cand)) continue;
                seen.insert(cand);
                if (eval_poly(coeffs, cand).is_zero()) found.push_back(cand);
            }

    std::sort(found.begin(), found.end());
    for (const auto& r : found) {
        int mult = 0;
        for (;;) {
            std::vector<GaussianRational> q;
            try {
                q = deflate(coeffs, r);
            } catch (const std::runtime_error&) {
                break;
            }
            coeffs = q;
            ++mult;
            if (coeffs.size() == 1) break;
        }
        res.roots.push_back({r, mult});
    }
    res.unsolved_degree = (int)coeffs.size() - 1;
    return res;
}

std::vector<long> integer_roots_at_least(const std::vector<GaussianRational>& coeffs, long lo) {
    RootFindResult all = gaussian_rational_roots(coeffs);
    std::vector<long> out;
    for (const auto& [r, mult] : all.roots) {
        if (!r.im.is_zero()) continue;
        BigRat v(r.re);
        if (denominator(v) != 1) continue;
        BigInt n = numerator(v);
        if (n < lo) continue;
        if (n > std::numeric_limits<long>::max())
            throw std::runtime_error("integer root out of range");
        out.push_back((long)n);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace regsing
