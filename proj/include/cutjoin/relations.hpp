#pragma once

#include <map>
#include <string>
#include <vector>

#include "identity.hpp"

namespace cutjoin {

inline QPoly qpoly_lcm(const QPoly& a, const QPoly& b) {
    if (a.is_zero() || b.is_zero()) return QPoly::zero();
    return QPoly::div_exact(a * b, QPoly::gcd(a, b));
}

struct RelationExtraction {
    std::vector<CorrelatorKey> atom_keys;  // atom id -> key
    LinearSystem system;
    LinearSolution solution;
    // Unknowns the system pins to a unique value, by key.
    std::map<CorrelatorKey, Rational> values;

    const std::vector<LinearRelation>& relations() const { return system.relations(); }
};

// Run the identity with the given correlators left symbolic and harvest the
// linear constraints the residual imposes on them. The residual's coefficient
// at each y-monomial is affine-linear in the unknowns over Q(tau); clearing
// its parts to a common denominator and matching powers of tau yields exact
// rational relations. Every lower-complexity correlator stays numeric, so no
// two unknowns ever multiply (that raises NonlinearAtomProduct and signals a
// mis-specified unknown set).
inline RelationExtraction extract_relations(int g, int m,
                                            const std::vector<CorrelatorKey>& unknowns,
                                            CorrelatorProvider& provider) {
    auto prev = provider.mode();
    provider.set_mode(CorrelatorProvider::Mode::Symbolic);
    for (const auto& k : unknowns) provider.add_unknown(k);
    LinPoly residual = LinPoly::zero(m);
    try {
        residual = identity_lhs(g, m, provider) - identity_rhs(g, m, provider);
        provider.set_mode(prev);
    } catch (...) {
        provider.set_mode(prev);
        throw;
    }

    RelationExtraction out;
    for (const auto& [mono, lin] : residual.terms()) {
        (void)mono;
        QPoly common = lin.constant_part().den();
        for (const auto& [id, v] : lin.atom_parts()) common = qpoly_lcm(common, v.den());

        auto cleared = [&](const TauFun& v) {
            return v.num() * QPoly::div_exact(common, v.den());
        };
        QPoly cnum = cleared(lin.constant_part());
        std::map<int, QPoly> anum;
        int dmax = cnum.degree();
        for (const auto& [id, v] : lin.atom_parts()) {
            anum.emplace(id, cleared(v));
            dmax = std::max(dmax, anum.at(id).degree());
        }
        for (int t = 0; t <= dmax; ++t) {
            LinearRelation row;
            for (const auto& [id, p] : anum) {
                Rational c = p.coeff(t);
                if (c != 0) row.coeff[id] = c;
            }
            row.rhs = -cnum.coeff(t);
            out.system.add_relation(std::move(row));
        }
    }

    out.atom_keys = provider.atom_keys();
    out.solution = out.system.solve();
    if (out.solution.consistent)
        for (const auto& [id, v] : out.solution.values)
            out.values.emplace(out.atom_keys.at(static_cast<size_t>(id)), v);
    return out;
}

}  // namespace cutjoin
