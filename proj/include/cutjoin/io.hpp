#pragma once

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cmg.hpp"
#include "version.hpp"

namespace cutjoin {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Canonical strings for tau-polynomials and their ratios.
//
// Grammar (round-tripping):  term ( (+|-) term )*
//   term  := rational | rational '*' power | power
//   power := 'tau' | 'tau^' int
// Terms are emitted in descending powers, zero coefficients skipped, the zero
// polynomial prints as "0".  Unit coefficients drop the leading "1*".
// ---------------------------------------------------------------------------

inline std::string format_qpoly(const QPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = p.degree(); k >= 0; --k) {
        Rational c = p.coeff(k);
        if (c == 0) continue;
        bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        std::string var = k == 0 ? "" : (k == 1 ? "tau" : "tau^" + std::to_string(k));
        if (var.empty())
            out += format_rational(a);
        else if (a == 1)
            out += var;
        else
            out += format_rational(a) + "*" + var;
    }
    return out;
}

namespace detail {

// Cursor over a one-line polynomial string; all errors carry the position.
struct PolyCursor {
    const std::string& s;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(what + " at position " + std::to_string(pos) + " in '" + s + "'");
    }
    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    bool lookahead(const char* word) const { return s.compare(pos, std::strlen(word), word) == 0; }

    Rational read_rational() {
        size_t start = pos;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) ++pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start || !std::isdigit(static_cast<unsigned char>(s[pos - 1]))) fail("expected number");
        if (eat('/')) {
            size_t dstart = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos == dstart) fail("expected denominator digits");
        }
        return parse_rational(s.substr(start, pos - start));
    }

    int read_exponent() {
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) fail("expected exponent digits");
        return std::stoi(s.substr(start, pos - start));
    }
};

}  // namespace detail

inline QPoly parse_qpoly(const std::string& text) {
    detail::PolyCursor cur{text};
    cur.skip_ws();
    if (cur.pos == text.size()) cur.fail("empty polynomial");
    QPoly acc = QPoly::zero();
    bool first = true;
    while (true) {
        cur.skip_ws();
        if (cur.pos == text.size()) {
            if (first) cur.fail("empty polynomial");
            break;
        }
        Rational sign = 1;
        if (cur.eat('-'))
            sign = -1;
        else if (cur.eat('+')) {
            if (first) cur.fail("leading '+' not allowed");
        } else if (!first) {
            cur.fail("expected '+' or '-'");
        }
        cur.skip_ws();
        Rational coeff = 1;
        bool saw_coeff = false;
        if (cur.pos < text.size() &&
            (std::isdigit(static_cast<unsigned char>(text[cur.pos])))) {
            coeff = cur.read_rational();
            saw_coeff = true;
            cur.skip_ws();
            if (cur.eat('*')) cur.skip_ws();
        }
        int power = 0;
        if (cur.lookahead("tau")) {
            cur.pos += 3;
            power = 1;
            if (cur.eat('^')) power = cur.read_exponent();
        } else if (!saw_coeff) {
            cur.fail("expected term");
        }
        acc += QPoly::monomial(power, sign * coeff);
        first = false;
    }
    return acc;
}

// Ratio rendering: plain numerator when the denominator is the constant 1,
// otherwise "(num)/(den)".
inline std::string format_taufun(const TauFun& v) {
    if (v.den().degree() == 0 && v.den().coeff(0) == 1) return format_qpoly(v.num());
    return "(" + format_qpoly(v.num()) + ")/(" + format_qpoly(v.den()) + ")";
}

inline TauFun parse_taufun(const std::string& text) {
    auto split = text.find(")/(");
    if (split == std::string::npos || text.empty() || text.front() != '(' || text.back() != ')')
        return TauFun(parse_qpoly(text));
    QPoly num = parse_qpoly(text.substr(1, split - 1));
    QPoly den = parse_qpoly(text.substr(split + 3, text.size() - split - 4));
    return TauFun(num, den);
}

// ---------------------------------------------------------------------------
// PolynomialDocument: the JSON round-trip form of a multivariate polynomial
// with tau-rational coefficients.  Terms are kept in graded lexicographic
// order (ascending total degree, then ascending exponent vector) so that
// rendering is deterministic byte for byte.
// ---------------------------------------------------------------------------

struct DocumentTerm {
    std::vector<int> exponents;
    std::string num;
    std::string den;

    bool operator==(const DocumentTerm& o) const {
        return exponents == o.exponents && num == o.num && den == o.den;
    }
};

struct PolynomialDocument {
    std::vector<std::string> variables;
    std::vector<DocumentTerm> terms;
    int g = 0;
    int m = 0;
    int degree = 0;
    std::string generator;

    bool operator==(const PolynomialDocument& o) const {
        return variables == o.variables && terms == o.terms && g == o.g && m == o.m &&
               degree == o.degree && generator == o.generator;
    }
};

namespace detail {

inline bool graded_lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return a < b;
}

}  // namespace detail

inline PolynomialDocument document_from_polynomial(const YPolynomial& p, int g, int m) {
    PolynomialDocument doc;
    doc.g = g;
    doc.m = m;
    doc.degree = p.total_degree();
    doc.generator = std::string("cutjoin ") + kVersion;
    for (int i = 1; i <= p.nvars(); ++i) doc.variables.push_back("y" + std::to_string(i));
    for (const auto& [e, c] : p.terms())
        doc.terms.push_back({e, format_qpoly(c.num()), format_qpoly(c.den())});
    std::sort(doc.terms.begin(), doc.terms.end(), [](const DocumentTerm& a, const DocumentTerm& b) {
        return detail::graded_lex_less(a.exponents, b.exponents);
    });
    return doc;
}

inline YPolynomial polynomial_from_document(const PolynomialDocument& doc) {
    YPolynomial p = YPolynomial::zero(static_cast<int>(doc.variables.size()));
    for (const auto& t : doc.terms)
        p.add_term(t.exponents, TauFun(parse_qpoly(t.num), parse_qpoly(t.den)));
    return p;
}

inline ordered_json document_to_json(const PolynomialDocument& doc) {
    ordered_json j;
    j["variables"] = doc.variables;
    j["terms"] = ordered_json::array();
    for (const auto& t : doc.terms) {
        ordered_json jt;
        jt["exponents"] = t.exponents;
        jt["num"] = t.num;
        jt["den"] = t.den;
        j["terms"].push_back(std::move(jt));
    }
    j["metadata"] = {{"g", doc.g}, {"m", doc.m}, {"degree", doc.degree}, {"generator", doc.generator}};
    return j;
}

inline std::string render_document(const PolynomialDocument& doc) {
    return document_to_json(doc).dump(2) + "\n";
}

inline PolynomialDocument parse_document(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("document is not valid JSON at byte " + std::to_string(e.byte) + ": " +
                         e.what());
    }
    PolynomialDocument doc;
    try {
        doc.variables = j.at("variables").get<std::vector<std::string>>();
        for (const auto& jt : j.at("terms")) {
            DocumentTerm t;
            t.exponents = jt.at("exponents").get<std::vector<int>>();
            t.num = jt.at("num").get<std::string>();
            t.den = jt.at("den").get<std::string>();
            if (t.exponents.size() != doc.variables.size())
                throw ParseError("term exponent count does not match variable count");
            doc.terms.push_back(std::move(t));
        }
        const auto& meta = j.at("metadata");
        doc.g = meta.at("g").get<int>();
        doc.m = meta.at("m").get<int>();
        doc.degree = meta.at("degree").get<int>();
        doc.generator = meta.at("generator").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("document missing or mistyped field: ") + e.what());
    }
    return doc;
}

// ---------------------------------------------------------------------------
// CacheFile: a single versioned file of correlator values.  Loading a file
// whose version differs from kCacheVersion yields an empty cache (forcing a
// rebuild); saving goes through a temporary and an atomic rename.
// ---------------------------------------------------------------------------

struct CacheEntry {
    int g = 0;
    std::vector<int> b;
    std::vector<int> lam;
    std::string num;
    std::string den;

    bool operator==(const CacheEntry& o) const {
        return g == o.g && b == o.b && lam == o.lam && num == o.num && den == o.den;
    }
};

struct CacheFile {
    int version = kCacheVersion;
    std::vector<CacheEntry> entries;

    bool operator==(const CacheFile& o) const { return version == o.version && entries == o.entries; }
};

inline CacheFile cache_from_values(const std::map<CorrelatorKey, Rational>& values) {
    CacheFile c;
    for (const auto& [k, v] : values)
        c.entries.push_back({k.g, k.b, k.lam, numerator(v).str(), denominator(v).str()});
    return c;  // map iteration order keeps entries sorted by key
}

inline std::map<CorrelatorKey, Rational> values_from_cache(const CacheFile& c) {
    std::map<CorrelatorKey, Rational> out;
    for (const auto& e : c.entries) {
        Rational den = parse_rational(e.den);
        if (den == 0) throw ParseError("zero denominator in cache entry");
        out[CorrelatorKey(e.g, e.b, e.lam)] = parse_rational(e.num) / den;
    }
    return out;
}

inline std::string render_cache(const CacheFile& c) {
    ordered_json j;
    j["version"] = c.version;
    j["entries"] = ordered_json::array();
    for (const auto& e : c.entries) {
        ordered_json je;
        je["g"] = e.g;
        je["b"] = e.b;
        je["lam"] = e.lam;
        je["num"] = e.num;
        je["den"] = e.den;
        j["entries"].push_back(std::move(je));
    }
    return j.dump(2) + "\n";
}

inline CacheFile parse_cache(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("cache is not valid JSON at byte " + std::to_string(e.byte) + ": " +
                         e.what());
    }
    CacheFile c;
    try {
        c.version = j.at("version").get<int>();
        for (const auto& je : j.at("entries")) {
            CacheEntry e;
            e.g = je.at("g").get<int>();
            e.b = je.at("b").get<std::vector<int>>();
            e.lam = je.at("lam").get<std::vector<int>>();
            e.num = je.at("num").get<std::string>();
            e.den = je.at("den").get<std::string>();
            c.entries.push_back(std::move(e));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("cache missing or mistyped field: ") + e.what());
    }
    return c;
}

// Missing file, unreadable file, or a version mismatch all produce an empty
// current-version cache: stale values are rebuilt, never reused.
inline CacheFile load_cache(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return CacheFile{};
    std::stringstream buf;
    buf << in.rdbuf();
    CacheFile c;
    try {
        c = parse_cache(buf.str());
    } catch (const ParseError&) {
        return CacheFile{};
    }
    if (c.version != kCacheVersion) return CacheFile{};
    return c;
}

inline void save_cache(const std::string& path, const CacheFile& c) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open cache file for writing: " + tmp);
        out << render_cache(c);
        if (!out) throw Error("short write to cache file: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("cannot move cache file into place: " + path);
}

// ---------------------------------------------------------------------------
// Presentation renderers (one way only; neither parses back).
// ---------------------------------------------------------------------------

inline std::string text_polynomial(const YPolynomial& p) {
    if (p.terms().empty()) return "0";
    std::vector<std::pair<std::vector<int>, TauFun>> terms(p.terms().begin(), p.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        return detail::graded_lex_less(a.first, b.first);
    });
    std::string out;
    for (const auto& [e, c] : terms) {
        if (!out.empty()) out += " + ";
        std::string mono;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "y" + std::to_string(i + 1);
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        std::string cs = format_taufun(c);
        if (mono.empty())
            out += cs;
        else if (cs == "1")
            out += mono;
        else
            out += "(" + cs + ")*" + mono;
    }
    return out;
}

inline std::string latex_qpoly(const QPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (int k = p.degree(); k >= 0; --k) {
        Rational c = p.coeff(k);
        if (c == 0) continue;
        bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        std::string var = k == 0 ? "" : (k == 1 ? "\\tau" : "\\tau^{" + std::to_string(k) + "}");
        std::string mag;
        if (denominator(a) == 1)
            mag = numerator(a).str();
        else
            mag = "\\tfrac{" + numerator(a).str() + "}{" + denominator(a).str() + "}";
        if (var.empty())
            out += mag;
        else if (a == 1)
            out += var;
        else
            out += mag + " " + var;
    }
    return out;
}

inline std::string latex_taufun(const TauFun& v) {
    if (v.den().degree() == 0 && v.den().coeff(0) == 1) return latex_qpoly(v.num());
    return "\\frac{" + latex_qpoly(v.num()) + "}{" + latex_qpoly(v.den()) + "}";
}

inline std::string latex_polynomial(const YPolynomial& p) {
    if (p.terms().empty()) return "0";
    std::vector<std::pair<std::vector<int>, TauFun>> terms(p.terms().begin(), p.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
        return detail::graded_lex_less(a.first, b.first);
    });
    std::string out;
    for (const auto& [e, c] : terms) {
        if (!out.empty()) out += " + ";
        std::string mono;
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            mono += "y_{" + std::to_string(i + 1) + "}";
            if (e[i] > 1) mono += "^{" + std::to_string(e[i]) + "}";
        }
        std::string cs = latex_taufun(c);
        if (mono.empty())
            out += cs;
        else if (cs == "1")
            out += mono;
        else
            out += "\\left(" + cs + "\\right) " + mono;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Correlator key grammar: "g:b1,b2,...[:l1,l2,...]", multiple keys joined
// with ';'.  Mirrors CorrelatorKey::to_string.
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<int> parse_int_list(const std::string& s, const std::string& where) {
    std::vector<int> out;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t next = s.find(',', pos);
        std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("bad integer '" + tok + "' in " + where);
        out.push_back(std::stoi(tok));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

}  // namespace detail

inline CorrelatorKey parse_correlator_key(const std::string& s) {
    size_t c1 = s.find(':');
    if (c1 == std::string::npos) throw ParseError("correlator key needs 'g:b1,b2,...' form: '" + s + "'");
    std::string gs = s.substr(0, c1);
    if (gs.empty() || gs.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad genus '" + gs + "' in correlator key '" + s + "'");
    size_t c2 = s.find(':', c1 + 1);
    std::vector<int> b = detail::parse_int_list(
        s.substr(c1 + 1, c2 == std::string::npos ? std::string::npos : c2 - c1 - 1),
        "correlator key '" + s + "'");
    std::vector<int> lam;
    if (c2 != std::string::npos)
        lam = detail::parse_int_list(s.substr(c2 + 1), "correlator key '" + s + "'");
    return CorrelatorKey(std::stoi(gs), std::move(b), std::move(lam));
}

inline std::vector<CorrelatorKey> parse_correlator_keys(const std::string& s) {
    std::vector<CorrelatorKey> out;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t next = s.find(';', pos);
        std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        if (!tok.empty()) out.push_back(parse_correlator_key(tok));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

}  // namespace cutjoin
