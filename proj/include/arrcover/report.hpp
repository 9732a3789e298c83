#pragma once

#include "arrcover.hpp"

#include <json.hpp>

#include <cstdint>
#include <ostream>
#include <string>

namespace arrcover {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kSchema = "arrcover/1";

namespace detail {

inline std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

}  // namespace detail

using Json = nlohmann::ordered_json;

// All report builders emit keys in a fixed order and sort every set-like
// array, so serialized reports are byte-reproducible.

inline Json report_envelope(const std::string& command, const std::string& source,
                            const Arrangement& a) {
    Json j;
    j["schema"] = kSchema;
    j["version"] = kVersion;
    j["command"] = command;
    j["input"] = Json{{"source", source},
                      {"digest", detail::fnv1a_hex(serialize_arrangement(a))}};
    return j;
}

inline Json json_info(const Arrangement& a) {
    Json j;
    j["field"] = a.field.context().name();
    j["dim"] = a.dim;
    j["n"] = a.n();
    j["central"] = a.central();
    Json labels = Json::array();
    for (const Hyperplane& h : a.planes) labels.push_back(h.label);
    j["labels"] = std::move(labels);
    return j;
}

inline Json json_census(const Rank2Census& census) {
    Json rows = Json::array();
    for (const auto& [mult, count] : census.table)
        rows.push_back(Json{{"multiplicity", mult}, {"count", count}});
    return rows;
}

inline Json json_poset(const IntersectionPoset& poset, const Rank2Census& census) {
    Json j;
    Json flats = Json::array();
    for (const Flat& f : poset.flats) {
        Json row;
        row["members"] = mask_indices(f.members);
        row["codim"] = f.codim;
        row["mu"] = f.mobius;
        flats.push_back(std::move(row));
    }
    j["flats"] = std::move(flats);
    j["census"] = json_census(census);
    return j;
}

inline Json json_betti(const Arrangement& a, const IntersectionPoset& poset) {
    Json j;
    j["betti"] = betti_numbers(poset);
    j["characteristic_polynomial"] = characteristic_polynomial(poset);  // by degree
    (void)a;
    return j;
}

inline Json json_osdim(const OSAlgebra& os) {
    Json j;
    j["field"] = os.coeff().context().name();
    j["dims"] = os.dimensions();
    return j;
}

inline Json json_weights(const Field& f, const AomotoWeights& w) {
    Json arr = Json::array();
    for (const Scalar& s : w.entries) arr.push_back(f.str(s));
    return arr;
}

inline Json json_aomoto(const OSAlgebra& os, const AomotoWeights& w, const AomotoComplex& cx) {
    Json j;
    j["field"] = os.coeff().context().name();
    j["weights"] = json_weights(os.coeff(), w);
    j["dims"] = cx.dims;
    j["d_ranks"] = cx.d_ranks;
    j["h"] = cx.h;
    return j;
}

inline Json json_double_cover(const DoubleCoverReport& rep) {
    Json j;
    j["w"] = mask_indices(rep.w);
    Json rows = Json::array();
    for (const DoubleCoverRow& r : rep.rows)
        rows.push_back(Json{{"k", r.k}, {"b", r.b}, {"h", r.h}, {"bbar", r.bbar}});
    j["rows"] = std::move(rows);
    return j;
}

inline Json json_admissible(const AdmissibleWeights& aw) {
    Json j;
    j["d"] = aw.d;
    j["N"] = aw.N;
    j["admissible"] = aw.admissible;
    j["naive"] = aw.naive;
    Json a = Json::array();
    for (const BigRat& x : aw.a) a.push_back(detail::rational_str(x));
    j["a"] = std::move(a);
    Json sums = Json::array();
    for (const auto& [flat, s] : aw.flat_sums)
        sums.push_back(Json{{"flat", mask_indices(flat)}, {"sum", detail::rational_str(s)}});
    j["flat_sums"] = std::move(sums);
    if (!aw.violations.empty()) {
        Json v = Json::array();
        for (const FlatViolation& fv : aw.violations)
            v.push_back(Json{{"flat", mask_indices(fv.flat)},
                             {"sum", detail::rational_str(fv.sum)}});
        j["violations"] = std::move(v);
    }
    return j;
}

inline Json json_milnor(const MilnorReport& rep) {
    Json j;
    j["N"] = rep.N;
    j["deconed_index"] = rep.deconed_index;
    j["decone_betti"] = rep.decone_betti;
    Json rows = Json::array();
    for (const EigenRow& r : rep.rows) {
        Json row;
        row["d"] = r.d;
        row["weights"] = json_admissible(r.weights);
        if (r.h1 >= 0)
            row["h1"] = r.h1;
        else
            row["h1"] = nullptr;
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    j["complete"] = rep.complete;
    j["b1_lower"] = rep.b1_lower;
    if (rep.b1 >= 0)
        j["b1"] = rep.b1;
    else
        j["b1"] = nullptr;
    return j;
}

inline Json json_certificate(const TorsionCertificate& cert) {
    Json j;
    j["verdict"] = cert.certified ? "2-torsion certified" : "inconclusive";
    j["N"] = cert.N;
    j["power_of_two"] = cert.power_of_two;
    j["cover_h1"] = cert.cover_h1;
    j["b1_complement"] = cert.b1M;
    j["bbar1_lower"] = cert.bbar1_lower;
    if (cert.b1F >= 0)
        j["b1_fiber"] = cert.b1F;
    else
        j["b1_fiber"] = nullptr;
    j["failures"] = cert.failures;
    j["milnor"] = json_milnor(cert.milnor);
    return j;
}

inline Json json_catalog_listing() {
    Json j;
    j["patterns"] = catalog_names();
    Json names = Json::array();
    for (const std::string& name : catalog_roster()) names.push_back(name);
    j["names"] = std::move(names);
    return j;
}

inline void write_report(std::ostream& out, Json j) { out << j.dump(2) << "\n"; }

}  // namespace arrcover
