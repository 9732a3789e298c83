#pragma once

#include "report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace arrcover {

namespace detail {

// "1..15", "1,3,5", "2..4,9" -> subset mask over 1-based indices
inline SubsetMask parse_w_subset(const std::string& text, std::size_t n) {
    SubsetMask mask = 0;
    std::size_t pos = 0;
    auto read_index = [&]() -> std::size_t {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) throw Error("bad subset syntax '" + text + "'");
        std::size_t v = std::stoull(text.substr(start, pos - start));
        if (v < 1 || v > n)
            throw Error("subset index " + std::to_string(v) + " out of range 1.." +
                        std::to_string(n));
        return v;
    };
    while (pos < text.size()) {
        std::size_t lo = read_index();
        std::size_t hi = lo;
        if (pos + 1 < text.size() && text[pos] == '.' && text[pos + 1] == '.') {
            pos += 2;
            hi = read_index();
            if (hi < lo) throw Error("empty range in subset '" + text + "'");
        }
        for (std::size_t i = lo; i <= hi; ++i) mask |= SubsetMask(1) << (i - 1);
        if (pos < text.size()) {
            if (text[pos] != ',') throw Error("bad subset syntax '" + text + "'");
            ++pos;
            if (pos == text.size()) throw Error("trailing comma in subset '" + text + "'");
        }
    }
    if (mask == 0) throw Error("empty subset");
    return mask;
}

inline std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else
            cur += c;
    }
    parts.push_back(cur);
    return parts;
}

inline FieldContext parse_field_flag(const std::string& text) {
    if (text == "f2") return FieldContext::prime(2);
    if (text == "q") return FieldContext::rationals();
    if (text.rfind("fp:", 0) == 0) {
        std::uint32_t p = 0;
        const std::string body = text.substr(3);
        if (body.empty() || body.size() > 9 ||
            !std::all_of(body.begin(), body.end(),
                         [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw Error("bad field '" + text + "'");
        p = static_cast<std::uint32_t>(std::stoul(body));
        return FieldContext::prime(p);
    }
    throw Error("bad field '" + text + "': expected f2, q, or fp:<p>");
}

inline std::string poly_str(const std::vector<long long>& coeffs) {
    // coefficients by degree -> conventional highest-degree-first rendering
    std::string s;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
        long long c = coeffs[i];
        if (c == 0) continue;
        long long mag = c < 0 ? -c : c;
        if (s.empty())
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        bool unit = mag == 1 && i > 0;
        if (!unit) s += std::to_string(mag);
        if (i > 0) {
            if (!unit) s += "*";
            s += "t";
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s.empty() ? "0" : s;
}

}  // namespace detail

struct CliCommon {
    std::string file;
    std::string catalog;
    bool json = false;

    std::string source() const {
        return !catalog.empty() ? "catalog:" + catalog : "file:" + file;
    }

    Arrangement load() const {
        if (!catalog.empty()) return catalog_get(catalog);
        std::ifstream in(file);
        if (!in) throw Error("cannot open '" + file + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_arrangement(buf.str());
    }
};

namespace detail {

inline void add_common(CLI::App* cmd, CliCommon& common, bool needs_input = true) {
    if (needs_input) {
        auto* input = cmd->add_option_group("input");
        input->add_option("--file", common.file, "arrangement file");
        input->add_option("--catalog", common.catalog, "built-in arrangement name");
        input->require_option(1);
    }
    cmd->add_flag("--json", common.json, "emit a JSON report");
}

inline void emit(std::ostream& out, const CliCommon& common, const std::string& command,
                 const Arrangement& a, Json payload, const std::string& text) {
    if (common.json) {
        Json j = report_envelope(command, common.source(), a);
        j["result"] = std::move(payload);
        write_report(out, std::move(j));
    } else
        out << text;
}

inline AomotoWeights weights_from_flags(const Field& f, std::size_t n,
                                        const std::string& weights_csv,
                                        const std::string& w_subset) {
    if (!w_subset.empty())
        return weights_from_subset(f, n, parse_w_subset(w_subset, n));
    std::vector<std::string> parts = split_csv(weights_csv);
    if (parts.size() != n)
        throw Error("expected " + std::to_string(n) + " weights, got " +
                    std::to_string(parts.size()));
    AomotoWeights w{f, {}};
    for (const std::string& p : parts) w.entries.push_back(f.parse(p));
    return w;
}

}  // namespace detail

// Parses argv-style arguments (program name excluded) and runs one subcommand.
// Exit codes: 0 success, 1 usage or input error, 2 inconclusive certificate.
inline int cli_run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact topological invariants of complex hyperplane arrangements"};
    app.name("arrcover");
    app.require_subcommand(1);

    CliCommon common;
    std::string field_flag = "q";
    std::string weights_csv, w_subset;
    int range = 3;
    std::size_t deconed_index = 0;

    CLI::App* info = app.add_subcommand("info", "arrangement summary");
    detail::add_common(info, common);
    CLI::App* poset = app.add_subcommand("poset", "intersection poset and Moebius function");
    detail::add_common(poset, common);
    CLI::App* betti = app.add_subcommand("betti", "Betti numbers of the complement");
    detail::add_common(betti, common);
    CLI::App* osdim = app.add_subcommand("osdim", "cohomology ring dimensions by degree");
    detail::add_common(osdim, common);
    osdim->add_option("--field", field_flag, "coefficients: f2, q, or fp:<p>");
    CLI::App* aomoto_cmd = app.add_subcommand("aomoto", "Aomoto complex ranks for a weight");
    detail::add_common(aomoto_cmd, common);
    aomoto_cmd->add_option("--field", field_flag, "coefficients: f2, q, or fp:<p>");
    {
        auto* wgrp = aomoto_cmd->add_option_group("weight");
        wgrp->add_option("--weights", weights_csv, "comma-separated weight scalars");
        wgrp->add_option("--w-subset", w_subset, "indices of a 0/1 weight, e.g. 1..15 or 1,3");
        wgrp->require_option(1);
    }
    CLI::App* cover = app.add_subcommand("double-cover", "mod-2 Betti numbers of a double cover");
    detail::add_common(cover, common);
    cover->add_option("--w-subset", w_subset, "nonzero class as index subset")->required();
    CLI::App* milnor = app.add_subcommand("milnor", "Milnor fiber b1 via monodromy eigenspaces");
    detail::add_common(milnor, common);
    milnor->add_option("--range", range, "shift search radius for admissible weights");
    milnor->add_option("--decone", deconed_index, "1-based hyperplane sent to infinity");
    CLI::App* certify = app.add_subcommand("certify-torsion",
                                           "certificate of 2-torsion in Milnor fiber homology");
    detail::add_common(certify, common);
    certify->add_option("--range", range, "shift search radius for admissible weights");
    CLI::App* catalog_cmd = app.add_subcommand("catalog", "list built-in arrangements");
    detail::add_common(catalog_cmd, common, false);

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (catalog_cmd->parsed()) {
            if (common.json) {
                Json j;
                j["schema"] = kSchema;
                j["version"] = kVersion;
                j["command"] = "catalog";
                j["result"] = json_catalog_listing();
                write_report(out, std::move(j));
            } else {
                for (const std::string& name : catalog_roster()) out << name << "\n";
            }
            return 0;
        }

        Arrangement a = common.load();

        if (info->parsed()) {
            std::ostringstream text;
            text << "field " << a.field.context().name() << "\n"
                 << "dim " << a.dim << "\n"
                 << "n " << a.n() << "\n"
                 << "central " << (a.central() ? "yes" : "no") << "\n"
                 << "labels";
            for (const Hyperplane& h : a.planes) text << " " << h.label;
            text << "\n";
            detail::emit(out, common, "info", a, json_info(a), text.str());
        } else if (poset->parsed()) {
            IntersectionPoset p = build_poset(a);
            Rank2Census census = rank2_census(p);
            std::ostringstream text;
            std::map<std::size_t, std::size_t> per_codim;
            for (const Flat& f : p.flats) ++per_codim[f.codim];
            for (const auto& [codim, count] : per_codim)
                text << "codim " << codim << ": " << count
                     << (count == 1 ? " flat\n" : " flats\n");
            text << "census:";
            for (const auto& [mult, count] : census.table)
                text << " " << mult << "x" << count;
            text << "\n";
            detail::emit(out, common, "poset", a, json_poset(p, census), text.str());
        } else if (betti->parsed()) {
            IntersectionPoset p = build_poset(a);
            std::ostringstream text;
            text << "betti";
            for (long long b : betti_numbers(p)) text << " " << b;
            text << "\n"
                 << "chi(t) = " << detail::poly_str(characteristic_polynomial(p)) << "\n";
            detail::emit(out, common, "betti", a, json_betti(a, p), text.str());
        } else if (osdim->parsed()) {
            OSAlgebra os(a, Field(detail::parse_field_flag(field_flag)));
            std::ostringstream text;
            text << "field " << os.coeff().context().name() << "\n"
                 << "dims";
            for (long long d : os.dimensions()) text << " " << d;
            text << "\n";
            detail::emit(out, common, "osdim", a, json_osdim(os), text.str());
        } else if (aomoto_cmd->parsed()) {
            Field f(detail::parse_field_flag(field_flag));
            OSAlgebra os(a, f);
            AomotoWeights w = detail::weights_from_flags(f, a.n(), weights_csv, w_subset);
            AomotoComplex cx = aomoto(os, w);
            std::ostringstream text;
            text << "field " << f.context().name() << "\n"
                 << "weights";
            for (const Scalar& s : w.entries) text << " " << f.str(s);
            text << "\n";
            for (std::size_t k = 0; k < cx.dims.size(); ++k) {
                text << "k=" << k << " dim=" << cx.dims[k] << " rankD=";
                if (k < cx.d_ranks.size())
                    text << cx.d_ranks[k];
                else
                    text << "-";
                text << " h=" << cx.h[k] << "\n";
            }
            detail::emit(out, common, "aomoto", a, json_aomoto(os, w, cx), text.str());
        } else if (cover->parsed()) {
            SubsetMask w = detail::parse_w_subset(w_subset, a.n());
            DoubleCoverReport rep = double_cover_mod2_betti(a, w);
            std::ostringstream text;
            text << "w";
            for (int i : mask_indices(rep.w)) text << " " << i;
            text << "\n";
            for (const DoubleCoverRow& r : rep.rows)
                text << "k=" << r.k << " b=" << r.b << " h=" << r.h << " bbar=" << r.bbar
                     << "\n";
            detail::emit(out, common, "double-cover", a, json_double_cover(rep), text.str());
        } else if (milnor->parsed()) {
            MilnorReport rep = milnor_fiber_b1(a, deconed_index, range);
            std::ostringstream text;
            text << "N " << rep.N << " decone " << rep.deconed_index << "\n";
            for (const EigenRow& r : rep.rows) {
                text << "d=" << r.d;
                if (r.weights.admissible) {
                    text << " h1=" << r.h1 << (r.weights.naive ? " naive" : "") << " a=";
                    for (const BigRat& x : r.weights.a)
                        text << " " << detail::rational_str(x);
                } else
                    text << " h1=? (no admissible weights in range)";
                text << "\n";
            }
            if (rep.complete)
                text << "b1(F) = " << rep.b1 << "\n";
            else
                text << "b1(F) >= " << rep.b1_lower << " (incomplete)\n";
            detail::emit(out, common, "milnor", a, json_milnor(rep), text.str());
        } else if (certify->parsed()) {
            TorsionCertificate cert = two_torsion_certificate(a, range);
            std::ostringstream text;
            text << "verdict: " << (cert.certified ? "2-torsion certified" : "inconclusive")
                 << "\n"
                 << "N=" << cert.N << " power_of_two=" << (cert.power_of_two ? "yes" : "no")
                 << "\n"
                 << "cover_h1=" << cert.cover_h1 << "\n"
                 << "b1(complement)=" << cert.b1M << "\n";
            if (cert.b1F >= 0)
                text << "bbar1 >= " << cert.bbar1_lower << ", b1(fiber) = " << cert.b1F << "\n";
            else
                text << "bbar1 >= " << cert.bbar1_lower << ", b1(fiber) unknown\n";
            for (const std::string& fline : cert.failures) text << "failed: " << fline << "\n";
            detail::emit(out, common, "certify-torsion", a, json_certificate(cert), text.str());
            return cert.certified ? 0 : 2;
        }
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace arrcover
