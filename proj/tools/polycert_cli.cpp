// Command-line front end: parses polynomial expressions, dispatches to the
// library pipelines, and emits one JSON report per run.
//
// Exit codes: 0 definitive, 2 inconclusive, 1 usage or input error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "polycert/adversarial.hpp"
#include "polycert/factor_q.hpp"
#include "polycert/format.hpp"
#include "polycert/irreducibility.hpp"
#include "polycert/json_io.hpp"
#include "polycert/parse.hpp"
#include "polycert/subfield.hpp"

namespace {

using namespace polycert;

std::string read_input(const std::string& arg) {
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in) throw std::runtime_error("cannot open input file " + arg.substr(1));
        std::ostringstream ss;
        ss << in.rdbuf();
        std::string s = ss.str();
        while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
        return s;
    }
    return arg;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    long long ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

json base_report(const std::string& command, const std::string& input, std::uint64_t seed) {
    return json{{"command", command},
                {"input", input},
                {"verdict", nullptr},
                {"certificate", nullptr},
                {"surviving_degrees", nullptr},
                {"primes_examined", nullptr},
                {"subsets_examined", nullptr},
                {"seed", seed},
                {"wall_ms", nullptr}};
}

int emit(json& report, const Timer& t, int code) {
    report["wall_ms"] = t.ms();
    std::cout << report.dump(2) << "\n";
    return code;
}

PrimeSource make_source(const std::string& strategy, int bits, std::uint64_t seed) {
    if (strategy == "random") return PrimeSource::random_bits(bits, seed);
    return PrimeSource::sequential();
}

IntPoly parse_int_x(const std::string& text) {
    return parse_polynomial(text).as_int_x();
}

// median of a small vector
double median(std::vector<long> v) {
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    if (n % 2 == 1) return static_cast<double>(v[n / 2]);
    return (static_cast<double>(v[n / 2 - 1]) + static_cast<double>(v[n / 2])) / 2.0;
}

IntPoly random_monic(long n, long range, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> dist(-range, range);
    std::vector<mpz_class> c(static_cast<std::size_t>(n) + 1);
    for (long i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = dist(rng);
    c[static_cast<std::size_t>(n)] = 1;
    return IntPoly(std::move(c));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"polynomial irreducibility, factorization, and subfield detection"};
    app.require_subcommand(1);

    std::string input_arg;
    std::uint64_t seed = 0;
    int jobs = 1;

    // irred
    auto* irred = app.add_subcommand("irred", "irreducibility test over Q");
    std::string mode = "hybrid";
    std::size_t max_primes = 40;
    double budget_factor = 4.0;
    std::string prime_strategy = "sequential";
    int prime_bits = 31;
    irred->add_option("input", input_arg, "polynomial in x (or @file)")->required();
    irred->add_option("--mode", mode, "standard|ppr|hybrid")
        ->check(CLI::IsMember({"standard", "ppr", "hybrid"}));
    irred->add_option("--max-primes", max_primes, "budget of good primes");
    irred->add_option("--ppr-budget-factor", budget_factor, "c in ceil(c*log2 n)");
    irred->add_option("--prime-strategy", prime_strategy, "sequential|random")
        ->check(CLI::IsMember({"sequential", "random"}));
    irred->add_option("--prime-bits", prime_bits, "bit size for random primes");
    irred->add_option("--seed", seed, "RNG seed");
    irred->add_option("--jobs", jobs, "parallel prime trials");

    // factor
    auto* factor = app.add_subcommand("factor", "factorization over Q");
    std::string warm = "on";
    factor->add_option("input", input_arg, "polynomial in x (or @file)")->required();
    factor->add_option("--warm-start", warm, "on|off")->check(CLI::IsMember({"on", "off"}));
    factor->add_option("--seed", seed, "RNG seed");
    factor->add_option("--jobs", jobs, "parallel prime trials");

    // subfields
    auto* subfields = app.add_subcommand("subfields", "imprimitivity detection");
    bool want_releq = false;
    subfields->add_option("input", input_arg, "monic polynomial in x (or @file)")->required();
    subfields->add_flag("--relative-equation", want_releq, "also emit the relative equation");
    subfields->add_option("--seed", seed, "RNG seed");
    subfields->add_option("--jobs", jobs, "parallel prime trials");

    // twin
    auto* twin = app.add_subcommand("twin", "evil-twin perturbation");
    std::uint64_t bound = 10;
    long mult_range = 3;
    twin->add_option("input", input_arg, "polynomial in x (or @file)")->required();
    twin->add_option("--bound", bound, "prime bound B (primes strictly below)");
    twin->add_option("--multiplier-range", mult_range, "perturbation coefficient range");
    twin->add_option("--seed", seed, "RNG seed");

    // construct
    auto* construct = app.add_subcommand("construct", "resultant family F = Res_u(P, Q)");
    std::string p_arg, q_arg;
    bool allow_nonlinear = false;
    construct->add_option("P", p_arg, "irreducible polynomial in u (or @file)")->required();
    construct->add_option("Q", q_arg, "bivariate in u and x, monic in x (or @file)")
        ->required();
    construct->add_flag("--allow-nonlinear-u", allow_nonlinear,
                        "lift the u-linearity restriction");

    // verify
    auto* verify = app.add_subcommand("verify", "re-check a serialized certificate");
    verify->add_option("report", input_arg, "report JSON (or @file)")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "prime-count scaling study");
    std::vector<long> degrees = {16, 32, 64, 128};
    long trials = 50;
    long coeff_range = 10;
    bench->add_option("--degrees", degrees, "degrees to sample");
    bench->add_option("--trials", trials, "polynomials per degree");
    bench->add_option("--coeff-range", coeff_range, "uniform coefficient range");
    bench->add_option("--ppr-budget-factor", budget_factor, "c in ceil(c*log2 n)");
    bench->add_option("--seed", seed, "RNG seed");
    bench->add_option("--jobs", jobs, "parallel prime trials");

    CLI11_PARSE(app, argc, argv);

    Timer timer;
    try {
        if (*irred) {
            std::string text = read_input(input_arg);
            json report = base_report("irred", text, seed);
            IntPoly f = parse_int_x(text).primitive_part();
            PrimeSource src = make_source(prime_strategy, prime_bits, seed);
            std::size_t ppr_budget = default_ppr_budget(f.degree(), budget_factor);
            TestOutcome out;
            if (mode == "standard")
                out = standard_test(f, src, max_primes, jobs);
            else if (mode == "ppr")
                out = ppr_test(f, src, max_primes, jobs);
            else
                out = hybrid_test(f, src, ppr_budget, max_primes, jobs);
            report["verdict"] = out.irreducible ? "irreducible" : "inconclusive";
            report["primes_examined"] = out.primes_examined;
            report["bad_primes_skipped"] = out.bad_primes_skipped;
            report["surviving_degrees"] = degree_set_to_json(out.surviving);
            if (out.certificate)
                report["certificate"] = irreducibility_certificate_to_json(*out.certificate);
            return emit(report, timer, out.irreducible ? 0 : 2);
        }

        if (*factor) {
            std::string text = read_input(input_arg);
            json report = base_report("factor", text, seed);
            RatPoly f = parse_polynomial(text).as_rat_x();
            if (f.is_zero()) throw std::runtime_error("cannot factor the zero polynomial");
            IntPoly fz = f.num();
            std::optional<DegreeSet> warm_set;
            std::size_t warm_primes = 0;
            if (warm == "on" && fz.degree() >= 2) {
                IntPoly fp = fz.primitive_part();
                PrimeSource src = PrimeSource::sequential();
                TestOutcome ppr = ppr_test(fp, src, default_ppr_budget(fp.degree()), jobs);
                warm_set = ppr.surviving;
                warm_primes = ppr.primes_examined;
            }
            FactorizationResult fr = factor_over_q(fz, warm_set);
            fr.content /= mpq_class(f.den());
            report["verdict"] = "factored";
            report["factorization"] = factorization_to_json(fr);
            report["primes_examined"] = warm_primes;
            report["subsets_examined"] = fr.subsets_examined;
            if (warm_set) report["surviving_degrees"] = degree_set_to_json(*warm_set);
            return emit(report, timer, 0);
        }

        if (*subfields) {
            std::string text = read_input(input_arg);
            json report = base_report("subfields", text, seed);
            IntPoly f = parse_int_x(text).primitive_part();
            if (f.degree() < 2) throw std::runtime_error("subfields needs degree >= 2");
            if (!f.is_monic()) {
                // pass to the monic model with the same root field
                f = monic_integer_model(f);
                report["original_input"] = text;
                report["input"] = format_poly(f);
            }
            PrimeSource src = PrimeSource::sequential();
            StructureFlagResult sf =
                structure_flag(f, src, default_ppr_budget(f.degree()), 40, jobs);
            report["structure_flag"] = sf.flag;
            report["primes_examined"] = sf.primes_examined;
            report["surviving_degrees"] = degree_set_to_json(sf.surviving);
            if (!sf.irreducible) {
                report["verdict"] = "reducible";
                return emit(report, timer, 1);
            }
            if (sf.vacuously_primitive) {
                report["verdict"] = "vacuously_primitive";
                return emit(report, timer, 0);
            }
            auto cert = extract_certificate(f, seed);
            if (!cert) {
                report["verdict"] = "no_certificate";
                return emit(report, timer, 2);
            }
            report["verdict"] = "certificate";
            report["certificate"] = imprimitivity_certificate_to_json(*cert);
            if (want_releq) {
                RelativeEquation rel = relative_equation(f, *cert);
                json xc = json::array();
                for (const auto& c : rel.x_coeffs) xc.push_back(rat_poly_to_json(c));
                report["relative_equation"] = json{{"x_coeffs", xc}};
            }
            return emit(report, timer, 0);
        }

        if (*twin) {
            std::string text = read_input(input_arg);
            json report = base_report("twin", text, seed);
            IntPoly f = parse_int_x(text);
            TwinResult tw = evil_twin(f, bound, seed, mult_range);
            report["verdict"] = "twin";
            report["twin"] = int_poly_to_json(tw.twin);
            report["perturbation"] = int_poly_to_json(tw.perturbation);
            report["multiplier"] = tw.multiplier.get_str();
            report["bound"] = tw.bound;
            return emit(report, timer, 0);
        }

        if (*construct) {
            std::string p_text = read_input(p_arg);
            std::string q_text = read_input(q_arg);
            json report = base_report("construct", p_text + " ; " + q_text, seed);
            IntPoly p = parse_polynomial(p_text).as_int_u();
            BiPoly q = parse_polynomial(q_text).value;
            ImprimitiveFamilyResult fam = imprimitive_family(p, q, allow_nonlinear);
            report["verdict"] = "constructed";
            report["F"] = int_poly_to_json(fam.big_f);
            report["degree"] = fam.big_f.degree();
            report["subfield_degree"] = fam.subfield_degree;
            report["F_irreducible"] = fam.irreducibility.irreducible;
            report["primes_examined"] = fam.irreducibility.primes_examined;
            return emit(report, timer, 0);
        }

        if (*verify) {
            std::string text = read_input(input_arg);
            json report = base_report("verify", "", seed);
            json in = json::parse(text);
            report["input"] = in.value("input", "");
            if (in.value("certificate", json()).is_null())
                throw std::runtime_error("report carries no certificate");
            const json& cert = in["certificate"];
            IntPoly f = parse_int_x(in.at("input").get<std::string>()).primitive_part();
            bool ok;
            std::string type = cert.at("type").get<std::string>();
            if (type == "irreducibility")
                ok = verify_irreducibility_certificate(
                    f, irreducibility_certificate_from_json(cert));
            else if (type == "imprimitivity")
                ok = verify_imprimitivity_certificate(
                    f, imprimitivity_certificate_from_json(cert));
            else
                throw std::runtime_error("unknown certificate type " + type);
            report["verdict"] = ok ? "valid" : "invalid";
            return emit(report, timer, ok ? 0 : 1);
        }

        if (*bench) {
            json report = base_report("bench", "", seed);
            json rows = json::array();
            for (long n : degrees) {
                std::size_t budget = default_ppr_budget(n, budget_factor);
                std::vector<long> counts;
                std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull * (n + 1)));
                for (long t = 0; t < trials; ++t) {
                    IntPoly f = random_monic(n, coeff_range, rng);
                    if (f.content() != 1) {
                        --t;
                        continue;
                    }
                    PrimeSource src = PrimeSource::sequential();
                    TestOutcome out = ppr_test(f, src, budget, jobs);
                    counts.push_back(out.irreducible
                                         ? static_cast<long>(out.primes_examined)
                                         : static_cast<long>(budget) + 1);
                }
                rows.push_back(json{{"degree", n},
                                    {"budget", budget},
                                    {"median_good_primes", median(counts)}});
            }
            report["verdict"] = "bench";
            report["rows"] = rows;
            return emit(report, timer, 0);
        }
    } catch (const std::exception& e) {
        json err{{"error", e.what()}};
        std::cerr << err.dump() << "\n";
        return 1;
    }
    return 1;
}
