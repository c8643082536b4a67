#pragma once

#include <cstdlib>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "identity.hpp"
#include "io.hpp"
#include "leading.hpp"
#include "relations.hpp"
#include "version.hpp"

namespace cutjoin {

namespace detail {

// Machine output goes to `out` and must be byte-identical across identical
// invocations; everything diagnostic goes to `err`.
struct CliContext {
    std::ostream& out;
    std::ostream& err;
    std::string format = "text";
    std::string cache_path;
    int order = 0;  // 0 = use the per-command default

    int effective_order(int fallback) const { return order > 0 ? order : fallback; }
};

inline void emit_json(CliContext& ctx, const ordered_json& j) { ctx.out << j.dump(2) << "\n"; }

inline ordered_json values_to_json(const std::vector<std::pair<CorrelatorKey, Rational>>& vals) {
    ordered_json arr = ordered_json::array();
    for (const auto& [k, v] : vals)
        arr.push_back({{"key", k.to_string()}, {"value", format_rational(v)}});
    return arr;
}

inline ordered_json report_to_json(const char* command, const VerificationReport& rep) {
    ordered_json j;
    j["command"] = command;
    j["g"] = rep.g;
    j["m"] = rep.m;
    j["mode"] = rep.mode == VerifyMode::Stable ? "stable" : "closed-form";
    j["experimental"] = rep.experimental;
    j["status"] = rep.status == VerifyStatus::Zero ? "zero" : "nonzero";
    j["witness"] = rep.witness;
    j["notes"] = rep.notes;
    j["values_used"] = values_to_json(rep.values_used);
    if (rep.status != VerifyStatus::Zero) j["residual"] = text_polynomial(rep.residual);
    return j;
}

inline void emit_report(CliContext& ctx, const char* command, const VerificationReport& rep) {
    if (ctx.format == "json") {
        emit_json(ctx, report_to_json(command, rep));
        return;
    }
    ctx.out << command << " g=" << rep.g << " m=" << rep.m << " mode="
            << (rep.mode == VerifyMode::Stable ? "stable" : "closed-form") << "\n";
    ctx.out << "status: " << (rep.status == VerifyStatus::Zero ? "zero" : "nonzero") << "\n";
    if (rep.experimental) ctx.out << "experimental: yes\n";
    if (!rep.witness.empty()) ctx.out << "witness: " << rep.witness << "\n";
    for (const auto& n : rep.notes) ctx.out << "note: " << n << "\n";
    for (const auto& [k, v] : rep.values_used)
        ctx.out << "value: " << k.to_string() << " = " << format_rational(v) << "\n";
    if (rep.status != VerifyStatus::Zero)
        ctx.out << "residual: " << text_polynomial(rep.residual) << "\n";
}

inline void prime_from_cache(CliContext& ctx, CorrelatorProvider& provider) {
    if (ctx.cache_path.empty()) return;
    for (const auto& [k, v] : values_from_cache(load_cache(ctx.cache_path)))
        provider.override_value(k, v);
}

inline void save_to_cache(CliContext& ctx, const CorrelatorProvider& provider) {
    if (ctx.cache_path.empty()) return;
    save_cache(ctx.cache_path, cache_from_values(provider.known()));
}

inline int run_omega(CliContext& ctx) {
    int order = ctx.effective_order(10);
    XSeries om = omega_series(order);
    if (ctx.format == "json") {
        ordered_json j;
        j["command"] = "omega";
        j["order"] = order;
        j["coefficients"] = ordered_json::array();
        for (int n = 0; n <= order; ++n)
            j["coefficients"].push_back({{"n", n}, {"coefficient", format_taufun(om.coefficient(n))}});
        emit_json(ctx, j);
    } else if (ctx.format == "latex") {
        std::string s;
        for (int n = 1; n <= order; ++n) {
            const TauFun& c = om.coefficient(n);
            if (c.num().is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "\\left(" + latex_taufun(c) + "\\right) x^{" + std::to_string(n) + "}";
        }
        ctx.out << s << " + O\\left(x^{" << order + 1 << "}\\right)\n";
    } else {
        for (int n = 0; n <= order; ++n)
            ctx.out << "x^" << n << ": " << format_taufun(om.coefficient(n)) << "\n";
    }
    return 0;
}

inline int run_phi(CliContext& ctx, int i, const std::string& form) {
    if (form == "poly") {
        YPolynomial p = phi_poly(i);
        std::vector<std::pair<int, TauFun>> terms;
        for (const auto& [e, c] : p.terms()) terms.emplace_back(e[0], c);
        std::sort(terms.begin(), terms.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        if (ctx.format == "json") {
            ordered_json j;
            j["command"] = "phi";
            j["i"] = i;
            j["form"] = "poly";
            j["degree"] = p.total_degree();
            j["terms"] = ordered_json::array();
            for (const auto& [e, c] : terms)
                j["terms"].push_back({{"exponent", e}, {"coefficient", format_taufun(c)}});
            emit_json(ctx, j);
        } else if (ctx.format == "latex") {
            ctx.out << latex_polynomial(p) << "\n";
        } else {
            ctx.out << text_polynomial(p) << "\n";
        }
        return 0;
    }
    int order = ctx.effective_order(10);
    XSeries s = phi_series(i, order);
    if (ctx.format == "json") {
        ordered_json j;
        j["command"] = "phi";
        j["i"] = i;
        j["form"] = "series";
        j["order"] = order;
        j["coefficients"] = ordered_json::array();
        for (int n = 0; n <= order; ++n)
            j["coefficients"].push_back({{"n", n}, {"coefficient", format_taufun(s.coefficient(n))}});
        emit_json(ctx, j);
    } else if (ctx.format == "latex") {
        std::string b;
        for (int n = 1; n <= order; ++n) {
            const TauFun& c = s.coefficient(n);
            if (c.num().is_zero()) continue;
            if (!b.empty()) b += " + ";
            b += "\\left(" + latex_taufun(c) + "\\right) x^{" + std::to_string(n) + "}";
        }
        ctx.out << b << " + O\\left(x^{" << order + 1 << "}\\right)\n";
    } else {
        for (int n = 0; n <= order; ++n)
            ctx.out << "x^" << n << ": " << format_taufun(s.coefficient(n)) << "\n";
    }
    return 0;
}

inline int run_psi(CliContext& ctx, CorrelatorProvider& provider, int g,
                   const std::vector<int>& b) {
    CorrelatorKey key(g, b);
    Rational v = provider.psi(g, b);
    if (ctx.format == "json") {
        ordered_json j;
        j["command"] = "psi";
        j["key"] = key.to_string();
        j["value"] = format_rational(v);
        emit_json(ctx, j);
    } else if (ctx.format == "latex") {
        std::string mono;
        for (int e : key.b) mono += "\\tau_{" + std::to_string(e) + "}";
        ctx.out << "\\langle " << mono << " \\rangle_{" << g << "} = " << format_rational(v)
                << "\n";
    } else {
        ctx.out << format_rational(v) << "\n";
    }
    return 0;
}

inline int run_cmg(CliContext& ctx, CorrelatorProvider& provider, int g, int m) {
    CmgPolynomial c = cmg_polynomial(g, m, provider);
    YPolynomial p = c.numeric();
    if (ctx.format == "json") {
        PolynomialDocument doc = document_from_polynomial(p, g, m);
        emit_json(ctx, document_to_json(doc));
    } else if (ctx.format == "latex") {
        ctx.out << latex_polynomial(p) << "\n";
    } else {
        ctx.out << text_polynomial(p) << "\n";
        if (c.gamma_partial)
            ctx.err << "note: genus " << g
                    << " uses only the leading lambda block; lower-order terms are omitted\n";
    }
    return 0;
}

inline int run_verify(CliContext& ctx, CorrelatorProvider& provider, int g, int m,
                      const std::string& mode_name) {
    VerifyMode mode = mode_name == "closed-form" ? VerifyMode::ClosedForm : VerifyMode::Stable;
    VerificationReport rep = verify_identity(g, m, provider, mode, ctx.effective_order(8));
    emit_report(ctx, "verify", rep);
    return rep.status == VerifyStatus::Zero ? 0 : 1;
}

inline int run_dvv(CliContext& ctx, CorrelatorProvider& provider, int g, int m) {
    VerificationReport rep = dvv_leading_check(g, m, provider);
    emit_report(ctx, "dvv", rep);
    return rep.status == VerifyStatus::Zero ? 0 : 1;
}

inline int run_extract(CliContext& ctx, CorrelatorProvider& provider, int g, int m,
                       const std::string& key_list) {
    std::vector<CorrelatorKey> unknowns = parse_correlator_keys(key_list);
    RelationExtraction ex = extract_relations(g, m, unknowns, provider);
    bool unique = ex.solution.unique();
    if (ctx.format == "json") {
        ordered_json j;
        j["command"] = "extract";
        j["g"] = g;
        j["m"] = m;
        j["unknowns"] = ordered_json::array();
        for (const auto& k : unknowns) j["unknowns"].push_back(k.to_string());
        j["relation_count"] = ex.system.size();
        j["relations"] = ordered_json::array();
        for (const auto& rel : ex.system.relations()) {
            ordered_json jr;
            jr["coefficients"] = ordered_json::array();
            for (const auto& [id, c] : rel.coeff)
                jr["coefficients"].push_back(
                    {{"atom", ex.atom_keys[static_cast<size_t>(id)].to_string()},
                     {"value", format_rational(c)}});
            jr["rhs"] = format_rational(rel.rhs);
            j["relations"].push_back(std::move(jr));
        }
        j["consistent"] = ex.solution.consistent;
        j["unique"] = unique;
        ordered_json vals = ordered_json::array();
        for (const auto& [k, v] : ex.values)
            vals.push_back({{"key", k.to_string()}, {"value", format_rational(v)}});
        j["values"] = std::move(vals);
        emit_json(ctx, j);
    } else {
        ctx.out << "relations: " << ex.system.size() << "\n";
        ctx.out << "consistent: " << (ex.solution.consistent ? "yes" : "no") << "\n";
        ctx.out << "unique: " << (unique ? "yes" : "no") << "\n";
        for (const auto& [k, v] : ex.values)
            ctx.out << k.to_string() << " = " << format_rational(v) << "\n";
    }
    if (!ex.solution.consistent) {
        ctx.err << "error: extracted linear system is inconsistent (row "
                << ex.solution.witness_row << ")\n";
        return 3;
    }
    return 0;
}

inline int run_table(CliContext& ctx, CorrelatorProvider& provider, int g, int max_n) {
    std::vector<std::pair<CorrelatorKey, Rational>> rows;
    int n_min = std::max(1, 3 - 2 * g);
    for (int n = n_min; n <= max_n; ++n) {
        int dim = 3 * g - 3 + n;
        if (dim < 0) continue;
        std::vector<int> b(static_cast<size_t>(n), 0);
        // nondecreasing exponent vectors summing to dim
        std::function<void(int, int, int)> rec = [&](int idx, int left, int low) {
            if (idx == n) {
                if (left == 0) rows.emplace_back(CorrelatorKey(g, b), provider.psi(g, b));
                return;
            }
            for (int v = low; v <= left; ++v) {
                b[static_cast<size_t>(idx)] = v;
                rec(idx + 1, left - v, v);
            }
        };
        rec(0, dim, 0);
    }
    if (ctx.format == "json") {
        ordered_json j;
        j["command"] = "table";
        j["g"] = g;
        j["max_n"] = max_n;
        j["entries"] = ordered_json::array();
        for (const auto& [k, v] : rows)
            j["entries"].push_back({{"key", k.to_string()}, {"value", format_rational(v)}});
        emit_json(ctx, j);
    } else if (ctx.format == "latex") {
        for (const auto& [k, v] : rows) {
            std::string mono;
            for (int e : k.b) mono += "\\tau_{" + std::to_string(e) + "}";
            ctx.out << "\\langle " << mono << " \\rangle_{" << g << "} &= " << format_rational(v)
                    << " \\\\\n";
        }
    } else {
        for (const auto& [k, v] : rows)
            ctx.out << k.to_string() << " = " << format_rational(v) << "\n";
    }
    return 0;
}

}  // namespace detail

// Entry point shared by the binary and the tests. Exit codes: 0 on success
// (identity holds where one is checked), 1 when a checked residual is
// nonzero, 2 for invalid or unsupported input, 3 for internal assembly
// errors (failed exact division, inconsistent extracted system).
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    detail::CliContext ctx{out, err};

    CLI::App app{"exact cut-join verification toolkit", "cutjoin"};
    app.fallthrough();
    app.set_version_flag("--version", std::string(kVersion));
    app.add_option("--format", ctx.format, "output format")
        ->check(CLI::IsMember({"json", "text", "latex"}))
        ->capture_default_str();
    app.add_option("--cache", ctx.cache_path,
                   "correlator cache file (defaults to $CUTJOIN_CACHE when set)");
    app.add_option("--order", ctx.order, "series truncation order override");
    app.require_subcommand(0, 1);

    std::function<int(CorrelatorProvider&)> action;
    bool needs_provider = false;

    auto* c_omega = app.add_subcommand("omega", "series inverse of x = w(1-w)^tau");
    c_omega->callback([&] { action = [&](CorrelatorProvider&) { return detail::run_omega(ctx); }; });

    auto* c_phi = app.add_subcommand("phi", "basis function as series or polynomial");
    int phi_i = 0;
    std::string phi_form = "poly";
    c_phi->add_option("--i", phi_i, "derivative order")->required()->check(CLI::NonNegativeNumber);
    c_phi->add_option("--form", phi_form, "representation")
        ->check(CLI::IsMember({"series", "poly"}))
        ->capture_default_str();
    c_phi->callback(
        [&] { action = [&](CorrelatorProvider&) { return detail::run_phi(ctx, phi_i, phi_form); }; });

    auto* c_psi = app.add_subcommand("psi", "intersection number for one exponent list");
    int psi_g = 0;
    std::vector<int> psi_b;
    c_psi->add_option("--g", psi_g, "genus")->required()->check(CLI::NonNegativeNumber);
    c_psi->add_option("--b", psi_b, "comma-separated exponents")->required()->delimiter(',');
    c_psi->callback([&] {
        needs_provider = true;
        action = [&](CorrelatorProvider& p) { return detail::run_psi(ctx, p, psi_g, psi_b); };
    });

    auto* c_cmg = app.add_subcommand("cmg", "symmetrized generating polynomial");
    int cmg_g = 0, cmg_m = 0;
    c_cmg->add_option("--g", cmg_g, "genus")->required()->check(CLI::NonNegativeNumber);
    c_cmg->add_option("--m", cmg_m, "marked points")->required()->check(CLI::PositiveNumber);
    c_cmg->callback([&] {
        needs_provider = true;
        action = [&](CorrelatorProvider& p) { return detail::run_cmg(ctx, p, cmg_g, cmg_m); };
    });

    auto* c_verify = app.add_subcommand("verify", "assemble both sides and check the residual");
    int ver_g = 0, ver_m = 0;
    std::string ver_mode = "stable";
    c_verify->add_option("--g", ver_g, "genus")->required()->check(CLI::NonNegativeNumber);
    c_verify->add_option("--m", ver_m, "marked points")->required()->check(CLI::PositiveNumber);
    c_verify->add_option("--mode", ver_mode, "assembly mode")
        ->check(CLI::IsMember({"stable", "closed-form"}))
        ->capture_default_str();
    c_verify->callback([&] {
        needs_provider = true;
        action = [&](CorrelatorProvider& p) {
            return detail::run_verify(ctx, p, ver_g, ver_m, ver_mode);
        };
    });

    auto* c_extract = app.add_subcommand("extract", "solve for unknown correlators");
    int ext_g = 0, ext_m = 0;
    std::string ext_unknowns;
    c_extract->add_option("--g", ext_g, "genus")->required()->check(CLI::NonNegativeNumber);
    c_extract->add_option("--m", ext_m, "marked points")->required()->check(CLI::PositiveNumber);
    c_extract
        ->add_option("--unknowns", ext_unknowns,
                     "';'-separated keys, each 'g:b1,b2,...[:l1,l2,...]'")
        ->required();
    c_extract->callback([&] {
        needs_provider = true;
        action = [&](CorrelatorProvider& p) {
            return detail::run_extract(ctx, p, ext_g, ext_m, ext_unknowns);
        };
    });

    auto* c_dvv = app.add_subcommand("dvv", "top-degree comparison against the recursion");
    int dvv_g = 0, dvv_m = 0;
    c_dvv->add_option("--g", dvv_g, "genus")->required()->check(CLI::NonNegativeNumber);
    c_dvv->add_option("--m", dvv_m, "marked points")->required()->check(CLI::PositiveNumber);
    c_dvv->callback([&] {
        needs_provider = true;
        action = [&](CorrelatorProvider& p) { return detail::run_dvv(ctx, p, dvv_g, dvv_m); };
    });

    auto* c_table = app.add_subcommand("table", "all intersection numbers up to a point count");
    int tab_g = 0, tab_n = 0;
    c_table->add_option("--g", tab_g, "genus")->required()->check(CLI::NonNegativeNumber);
    c_table->add_option("--max-n", tab_n, "largest point count")->required()->check(CLI::PositiveNumber);
    c_table->callback([&] {
        needs_provider = true;
        action = [&](CorrelatorProvider& p) { return detail::run_table(ctx, p, tab_g, tab_n); };
    });

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (!action) {
        err << app.help();
        return 2;
    }

    if (ctx.cache_path.empty()) {
        if (const char* env = std::getenv("CUTJOIN_CACHE")) ctx.cache_path = env;
    }

    try {
        CorrelatorProvider provider;
        if (needs_provider) detail::prime_from_cache(ctx, provider);
        int code = action(provider);
        if (needs_provider && code != 2 && code != 3) detail::save_to_cache(ctx, provider);
        return code;
    } catch (const NotDivisible& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const NonlinearAtomProduct& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const PhaseMismatch& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const Unstable& e) {
        err << "error: " << e.what() << "\n";
        err << "hint: the unstable range is reachable with 'verify --mode closed-form' for g=0 "
               "m=3, and m=1 runs as an experimental check\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace cutjoin
