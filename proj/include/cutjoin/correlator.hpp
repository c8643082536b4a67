#pragma once

#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "lintau.hpp"

namespace cutjoin {

// Canonical key of a correlator: genus, sorted psi exponents, sorted lambda
// indices. The lambda monomial {1} means a single lambda_1 factor.
struct CorrelatorKey {
    int g = 0;
    std::vector<int> b;
    std::vector<int> lam;

    CorrelatorKey() = default;
    CorrelatorKey(int genus, std::vector<int> psi_exp, std::vector<int> lambda = {})
        : g(genus), b(std::move(psi_exp)), lam(std::move(lambda)) {
        std::sort(b.begin(), b.end());
        std::sort(lam.begin(), lam.end());
    }

    int n() const { return static_cast<int>(b.size()); }
    int psi_degree() const { return std::accumulate(b.begin(), b.end(), 0); }
    int lambda_degree() const { return std::accumulate(lam.begin(), lam.end(), 0); }
    int dimension() const { return 3 * g - 3 + n(); }
    bool stable() const { return n() >= 1 && 2 * g - 2 + n() >= 1; }
    bool dimension_ok() const { return psi_degree() + lambda_degree() == dimension(); }

    auto tie() const { return std::tie(g, b, lam); }
    bool operator<(const CorrelatorKey& o) const { return tie() < o.tie(); }
    bool operator==(const CorrelatorKey& o) const { return tie() == o.tie(); }
    bool operator!=(const CorrelatorKey& o) const { return !(*this == o); }

    // "g:b1,b2,...:l1,l2,..." with the lambda block omitted when empty.
    std::string to_string() const {
        std::string s = std::to_string(g) + ":";
        for (size_t i = 0; i < b.size(); ++i) s += (i ? "," : "") + std::to_string(b[i]);
        if (!lam.empty()) {
            s += ":";
            for (size_t i = 0; i < lam.size(); ++i) s += (i ? "," : "") + std::to_string(lam[i]);
        }
        return s;
    }
};

struct HodgeValue {
    Rational value{0};
};

// Closed genus-0 evaluation (n-3)!/prod b_i!, used as an independent oracle.
inline Rational genus0_closed(const std::vector<int>& b) {
    int n = static_cast<int>(b.size());
    int sum = std::accumulate(b.begin(), b.end(), 0);
    if (n < 3 || sum != n - 3) throw DimensionMismatch("genus-0 closed form needs sum b = n-3");
    Rational r = factorial(n - 3);
    for (int x : b) r /= factorial(x);
    return r;
}

// <tau_b lambda_1(g=1)> = c1 * (n-1)!/prod b_i!, c1 the one-point base value.
inline Rational lambda_one_correlator(const std::vector<int>& b, const Rational& c1) {
    int n = static_cast<int>(b.size());
    int sum = std::accumulate(b.begin(), b.end(), 0);
    if (n < 1 || sum != n - 1)
        throw DimensionMismatch("lambda_1 correlator needs sum b = n-1");
    Rational r = c1 * factorial(n - 1);
    for (int x : b) r /= factorial(x);
    return r;
}

// The genus-g product Lambda^v(1) Lambda^v(tau) Lambda^v(-tau-1) expanded by
// lambda degree. Full for g <= 1; for g >= 2 only the degree-0 term
// (-1)^g [tau(tau+1)]^g is available and the expansion is marked partial.
struct GammaExpansion {
    int genus = 0;
    bool partial = false;
    std::vector<std::pair<std::vector<int>, TauFun>> terms;
};

inline GammaExpansion gamma_expansion(int g) {
    if (g < 0) throw Error("negative genus");
    GammaExpansion e;
    e.genus = g;
    TauFun t = TauFun::tau();
    TauFun tt1 = t * (t + TauFun::one());
    if (g == 0) {
        e.terms.push_back({{}, TauFun::one()});
        return e;
    }
    if (g == 1) {
        // (1 - l)(tau - l)(-tau-1 - l) with l^2 = 0
        e.terms.push_back({{}, -tt1});
        e.terms.push_back({{1}, t * t + t + TauFun::one()});
        return e;
    }
    e.partial = true;
    TauFun c = tt1.pow(g);
    if (g % 2) c = -c;
    e.terms.push_back({{}, c});
    return e;
}

// Exact psi-class intersection numbers and the dispatch layer on top of
// them. Numeric mode always yields values; Symbolic mode emits interned
// atoms for the keys registered as unknowns.
class CorrelatorProvider {
public:
    enum class Mode { Numeric, Symbolic };

    CorrelatorProvider() = default;

    Mode mode() const { return mode_; }
    void set_mode(Mode m) { mode_ = m; }
    const Rational& c1() const { return c1_; }
    void set_c1(Rational v) { c1_ = std::move(v); }

    void add_unknown(CorrelatorKey k) { unknowns_.insert(std::move(k)); }
    const std::set<CorrelatorKey>& unknowns() const { return unknowns_; }
    // Pin a key to a value, shadowing computation (perturbation controls,
    // cache priming).
    void override_value(CorrelatorKey k, Rational v) {
        std::lock_guard<std::mutex> lk(mu_);
        known_[std::move(k)] = std::move(v);
    }
    std::map<CorrelatorKey, Rational> known() const {
        std::lock_guard<std::mutex> lk(mu_);
        return known_;
    }

    int atom_id(const CorrelatorKey& k) const {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = atom_ids_.find(k);
        if (it != atom_ids_.end()) return it->second;
        int id = static_cast<int>(atom_keys_.size());
        atom_ids_.emplace(k, id);
        atom_keys_.push_back(k);
        return id;
    }
    std::vector<CorrelatorKey> atom_keys() const {
        std::lock_guard<std::mutex> lk(mu_);
        return atom_keys_;
    }

    // Pure psi-class correlator by the genus-reducing recursion seeded at
    // <tau_0^3>_0 = 1, with string/dilaton reductions applied first.
    Rational psi(int g, std::vector<int> b) const {
        CorrelatorKey key(g, std::move(b));
        if (!key.stable()) throw Unstable("correlator at unstable (g,n): " + key.to_string());
        if (!key.dimension_ok()) return Rational(0);
        {
            std::lock_guard<std::mutex> lk(mu_);
            auto it = known_.find(key);
            if (it != known_.end()) return it->second;
        }
        Rational v = compute_psi(key);
        std::lock_guard<std::mutex> lk(mu_);
        known_.emplace(key, v);
        return v;
    }

    // Full dispatch: throws for unstable keys, returns 0 off dimension,
    // atoms for registered unknowns, values otherwise.
    LinTau correlator(const CorrelatorKey& key) const {
        if (!key.stable()) throw Unstable("correlator at unstable (g,n): " + key.to_string());
        if (!key.dimension_ok()) return LinTau(0);
        if (mode_ == Mode::Symbolic && unknowns_.count(key))
            return LinTau::atom(atom_id(key));
        {
            std::lock_guard<std::mutex> lk(mu_);
            auto it = known_.find(key);
            if (it != known_.end()) return LinTau(TauFun(it->second));
        }
        if (key.lam.empty()) return LinTau(TauFun(psi(key.g, key.b)));
        if (key.g == 1 && key.lam == std::vector<int>{1}) {
            Rational v = lambda_one_correlator(key.b, c1_);
            std::lock_guard<std::mutex> lk(mu_);
            known_.emplace(key, v);
            return LinTau(TauFun(v));
        }
        throw UnsupportedLambdaMonomial("no evaluation rule for " + key.to_string());
    }

private:
    Rational compute_psi(const CorrelatorKey& key) const {
        const int g = key.g;
        const std::vector<int>& b = key.b;
        const int n = key.n();
        if (g == 0 && n == 3) return Rational(1);  // the moduli space is a point
        if (g == 1 && n == 1) {
            // The recursion applied to the two-point genus-1 correlator
            // combined with the string equation pins the one-point value:
            // (2k+3)!!|k=1 * S = (3!!) * S + 1/2 * <tau_0^3>_0.
            Rational seed = psi(0, {0, 0, 0});
            Rational denom = Rational(semifactorial(5)) - Rational(semifactorial(3));
            return seed / (Rational(2) * denom);
        }
        // String equation: remove a tau_0 insertion.
        if (b.front() == 0) {
            std::vector<int> rest(b.begin() + 1, b.end());
            Rational acc(0);
            for (size_t j = 0; j < rest.size(); ++j) {
                if (rest[j] == 0) continue;
                std::vector<int> r = rest;
                --r[j];
                acc += psi(g, std::move(r));
            }
            return acc;
        }
        // Dilaton equation: remove a tau_1 insertion.
        if (b.front() == 1) {
            std::vector<int> rest(b.begin() + 1, b.end());
            return Rational(2 * g - 2 + n - 1) * psi(g, std::move(rest));
        }
        // Genus-reducing recursion on the largest exponent k+1 = max b.
        const int k = b.back() - 1;
        std::vector<int> rest(b.begin(), b.end() - 1);
        const int nr = static_cast<int>(rest.size());
        Rational acc(0);
        for (int j = 0; j < nr; ++j) {
            std::vector<int> r = rest;
            r[static_cast<size_t>(j)] += k;
            acc += Rational(semifactorial(2 * rest[static_cast<size_t>(j)] + 2 * k + 1)) /
                   Rational(semifactorial(2 * rest[static_cast<size_t>(j)] - 1)) *
                   psi(g, std::move(r));
        }
        for (int a = 0; a <= k - 1; ++a) {
            const int bb = k - 1 - a;
            Rational w = Rational(semifactorial(2 * a + 1)) * Rational(semifactorial(2 * bb + 1)) /
                         Rational(2);
            if (g >= 1) {
                std::vector<int> r = rest;
                r.push_back(a);
                r.push_back(bb);
                CorrelatorKey lower(g - 1, r);
                if (lower.stable() && lower.dimension_ok()) acc += w * psi(g - 1, std::move(r));
            }
            for (int g1 = 0; g1 <= g; ++g1) {
                const int g2 = g - g1;
                for (unsigned mask = 0; mask < (1u << nr); ++mask) {
                    std::vector<int> bi{a}, bj{bb};
                    for (int t = 0; t < nr; ++t)
                        (mask >> t & 1u ? bi : bj).push_back(rest[static_cast<size_t>(t)]);
                    CorrelatorKey k1(g1, bi), k2(g2, bj);
                    if (!k1.stable() || !k2.stable()) continue;
                    if (!k1.dimension_ok() || !k2.dimension_ok()) continue;
                    acc += w * psi(g1, std::move(bi)) * psi(g2, std::move(bj));
                }
            }
        }
        return acc / Rational(semifactorial(2 * k + 3));
    }

    mutable std::mutex mu_;
    Mode mode_ = Mode::Numeric;
    Rational c1_{1, 24};
    mutable std::map<CorrelatorKey, Rational> known_;
    std::set<CorrelatorKey> unknowns_;
    mutable std::map<CorrelatorKey, int> atom_ids_;
    mutable std::vector<CorrelatorKey> atom_keys_;
};

inline CorrelatorProvider& default_provider() {
    static CorrelatorProvider p;
    return p;
}

inline Rational psi_correlator(int g, std::vector<int> b) {
    return default_provider().psi(g, std::move(b));
}

inline LinTau hodge_correlator(const CorrelatorKey& key, const CorrelatorProvider& provider) {
    return provider.correlator(key);
}

}  // namespace cutjoin
