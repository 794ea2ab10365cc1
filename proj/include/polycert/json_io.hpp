#pragma once

// JSON encoding of polynomials, certificates, and run reports.  Coefficients
// travel as decimal strings so arbitrary precision survives the round trip.

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "polycert/degree_set.hpp"
#include "polycert/factor_q.hpp"
#include "polycert/format.hpp"
#include "polycert/integer_poly.hpp"
#include "polycert/irreducibility.hpp"
#include "polycert/subfield.hpp"

namespace polycert {

using json = nlohmann::json;

inline json int_poly_to_json(const IntPoly& p) {
    json coeffs = json::array();
    for (const auto& c : p.coeffs()) coeffs.push_back(c.get_str());
    return json{{"coeffs", coeffs}, {"display", format_poly(p)}};
}

inline IntPoly int_poly_from_json(const json& j) {
    std::vector<mpz_class> c;
    for (const auto& v : j.at("coeffs")) c.emplace_back(v.get<std::string>(), 10);
    return IntPoly(std::move(c));
}

inline json rat_poly_to_json(const RatPoly& p) {
    json num = json::array();
    for (const auto& c : p.num().coeffs()) num.push_back(c.get_str());
    return json{{"num", num}, {"den", p.den().get_str()}, {"display", format_poly(p)}};
}

inline RatPoly rat_poly_from_json(const json& j) {
    std::vector<mpz_class> c;
    for (const auto& v : j.at("num")) c.emplace_back(v.get<std::string>(), 10);
    return RatPoly(IntPoly(std::move(c)), mpz_class(j.at("den").get<std::string>(), 10));
}

inline json irreducibility_certificate_to_json(const IrreducibilityCertificate& c) {
    if (c.kind == IrreducibilityCertificate::Kind::SinglePrime)
        return json{{"type", "irreducibility"},
                    {"kind", "single_prime"},
                    {"prime", std::to_string(c.prime)}};
    json entries = json::array();
    for (const auto& [p, m] : c.entries) {
        json multiset = json::array();
        for (const auto& [d, cnt] : m.entries) multiset.push_back(json::array({d, cnt}));
        entries.push_back(json{{"prime", std::to_string(p)}, {"degree_multiset", multiset}});
    }
    return json{{"type", "irreducibility"}, {"kind", "subset_sum"}, {"entries", entries}};
}

inline IrreducibilityCertificate irreducibility_certificate_from_json(const json& j) {
    IrreducibilityCertificate c;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "single_prime") {
        c.kind = IrreducibilityCertificate::Kind::SinglePrime;
        c.prime = std::stoull(j.at("prime").get<std::string>());
        return c;
    }
    if (kind != "subset_sum") throw std::invalid_argument("unknown certificate kind");
    c.kind = IrreducibilityCertificate::Kind::SubsetSum;
    for (const auto& e : j.at("entries")) {
        DegreeMultiset m;
        for (const auto& pair : e.at("degree_multiset"))
            m.add(pair.at(0).get<long>(), pair.at(1).get<long>());
        c.entries.emplace_back(std::stoull(e.at("prime").get<std::string>()), std::move(m));
    }
    return c;
}

inline json imprimitivity_certificate_to_json(const ImprimitivityCertificate& c) {
    return json{{"type", "imprimitivity"},
                {"subfield_degree", c.m.degree()},
                {"m", int_poly_to_json(c.m)},
                {"h", rat_poly_to_json(c.h)}};
}

inline ImprimitivityCertificate imprimitivity_certificate_from_json(const json& j) {
    return ImprimitivityCertificate{int_poly_from_json(j.at("m")),
                                    rat_poly_from_json(j.at("h"))};
}

inline json degree_set_to_json(const DegreeSet& s) {
    json degs = json::array();
    for (long d : s.degrees()) degs.push_back(d);
    return json{{"n", s.n()}, {"degrees", degs}};
}

inline json factorization_to_json(const FactorizationResult& r) {
    json factors = json::array();
    for (const auto& [g, m] : r.factors) {
        json f = int_poly_to_json(g);
        f["multiplicity"] = m;
        factors.push_back(std::move(f));
    }
    mpq_class c = r.content;
    return json{{"content", c.get_str()}, {"factors", factors}};
}

}  // namespace polycert
