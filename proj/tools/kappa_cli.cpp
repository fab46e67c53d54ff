// Copyright (c) 2026 the kappa developers
//
// Licensed under the Apache License, Version 2.0 (see
// LICENSE or https://www.apache.org/licenses/LICENSE-2.0).

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kappa/bound.hpp"
#include "kappa/corpus.hpp"
#include "kappa/frobenius.hpp"
#include "kappa/galois_image.hpp"
#include "kappa/local_reduction.hpp"
#include "kappa/local_torsion.hpp"

using namespace kappa;

namespace {

WeierstrassCurve parse_curve_arg(const std::string& arg, const std::vector<CurveRecord>* extra) {
    if (!arg.empty() && arg.front() == '[') {
        if (arg.back() != ']')
            throw ParseError("curve: expected [a1,a2,a3,a4,a6]");
        std::vector<Int> a;
        std::string body = arg.substr(1, arg.size() - 2);
        size_t pos = 0;
        while (pos <= body.size()) {
            size_t comma = body.find(',', pos);
            std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            try {
                a.emplace_back(tok);
            } catch (const std::invalid_argument&) {
                throw ParseError("curve: bad integer \"" + tok + "\"");
            }
            if (comma == std::string::npos)
                break;
            pos = comma + 1;
        }
        if (a.size() != 5)
            throw ParseError("curve: expected five coefficients");
        return {a[0], a[1], a[2], a[3], a[4]};
    }
    auto rec = resolve_label(arg, extra);
    if (!rec)
        throw ParseError("curve: label \"" + arg + "\" not found in the fixture corpus");
    return rec->curve();
}

WeierstrassCurve minimal_of(const WeierstrassCurve& E) {
    auto [Emin, phi] = minimal_model(E);
    if (!(Emin == E))
        std::cerr << "note: using minimal model " << Emin.display() << "\n";
    return Emin;
}

std::string tor_line(const Int& p, const TorsionVerdict& v) {
    if (v.holds()) {
        return "p=" + p.get_str() + " verdict=holds provenance=" + provenance_tag(v.provenance) +
               " witness=-";
    }
    return scan_line({p, v});
}

int run_single(const std::vector<std::string>& args, const std::vector<CurveRecord>* extra);

int run_corpus(const std::vector<std::string>& args) {
    if (args.size() < 2) {
        std::cerr << "usage: kappa corpus <file> <subcommand> [options]\n";
        return 2;
    }
    std::vector<CurveRecord> records;
    try {
        records = load_corpus(args[0]);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    int worst = 0;
    for (const auto& rec : records) {
        std::cout << "== " << rec.label << " " << rec.curve().display() << " ==\n";
        std::vector<std::string> sub;
        sub.push_back(args[1]);
        sub.push_back(rec.curve().display());
        for (size_t i = 2; i < args.size(); ++i)
            sub.push_back(args[i]);
        if (args[1] == "bound" && rec.rank) {
            bool has_rank = false;
            for (const auto& s : sub)
                if (s == "-r" || s == "--rank")
                    has_rank = true;
            if (!has_rank) {
                sub.push_back("-r");
                sub.push_back(std::to_string(*rec.rank));
            }
        }
        int code = run_single(sub, &records);
        if (code == 2)
            return 2;
        worst = std::max(worst, code);
    }
    return worst;
}

int run_single(const std::vector<std::string>& args, const std::vector<CurveRecord>* extra) {
    CLI::App app{"local certification and class-number exponent bounds for elliptic curves over Q"};
    app.name("kappa");
    app.require_subcommand(1);

    std::string curve_arg;
    std::string prime_arg, pmin_arg, pmax_arg;
    int level = 1, rank = -1;
    unsigned jobs = 1;
    size_t samples = 1000;
    bool deep = false, as_json = false;

    auto* reduction = app.add_subcommand("reduction", "local reduction data at the bad primes");
    reduction->add_option("curve", curve_arg)->required();
    reduction->add_option("-l,--prime", prime_arg, "single prime to inspect");

    auto* image = app.add_subcommand("image", "mod-p Galois image certificate");
    image->add_option("curve", curve_arg)->required();
    image->add_option("-p,--prime", prime_arg)->required();
    image->add_option("--samples", samples, "auxiliary prime budget");

    auto* tor = app.add_subcommand("tor", "condition (Tor): E(Q_p)[p] = 0");
    tor->add_option("curve", curve_arg)->required();
    tor->add_option("-p,--prime", prime_arg)->required();
    tor->add_flag("--deep", deep, "enable the Tate-parameter and small-p division-polynomial paths");

    auto* scan = app.add_subcommand("scan", "scan a prime range for local torsion primes");
    scan->add_option("curve", curve_arg)->required();
    scan->add_option("--pmin", pmin_arg)->required();
    scan->add_option("--pmax", pmax_arg)->required();
    scan->add_flag("--deep", deep);
    scan->add_option("--jobs", jobs, "worker threads");
    scan->add_flag("--json", as_json, "machine-readable output");

    auto* bound = app.add_subcommand("bound", "certified exponent bound for #Cl_p(Q(E[p^n]))");
    bound->add_option("curve", curve_arg)->required();
    bound->add_option("-p,--prime", prime_arg)->required();
    bound->add_option("-n,--level", level)->required();
    bound->add_option("-r,--rank", rank, "Mordell-Weil rank of E(Q)")->required();
    bound->add_flag("--deep", deep);
    bound->add_flag("--json", as_json);
    bound->add_option("--samples", samples);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            app.exit(e);
            return 0;
        }
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        WeierstrassCurve E = parse_curve_arg(curve_arg, extra);

        if (reduction->parsed()) {
            auto Emin = minimal_of(E);
            if (!prime_arg.empty()) {
                std::cout << report_line(tate_local_data(Emin, Int(prime_arg))) << "\n";
            } else {
                for (const Int& l : bad_primes(Emin))
                    std::cout << report_line(tate_local_data(Emin, l)) << "\n";
            }
            return 0;
        }
        if (image->parsed()) {
            auto Emin = minimal_of(E);
            std::cout << report_line(prove_surjective(Emin, Int(prime_arg), samples)) << "\n";
            return 0;
        }
        if (tor->parsed()) {
            auto Emin = minimal_of(E);
            Int p(prime_arg);
            std::cout << tor_line(p, check_tor(Emin, p, deep)) << "\n";
            return 0;
        }
        if (scan->parsed()) {
            auto Emin = minimal_of(E);
            auto hits = scan_local_torsion(Emin, Int(pmin_arg), Int(pmax_arg), deep, jobs);
            for (const auto& hit : hits) {
                if (as_json) {
                    nlohmann::ordered_json j;
                    j["p"] = hit.p.get_str();
                    j["verdict"] = hit.verdict.fails() ? "fails" : "unknown";
                    if (hit.verdict.fails())
                        j["provenance"] = provenance_tag(hit.verdict.provenance);
                    if (hit.verdict.witness)
                        j["witness"] = hit.verdict.witness->to_string();
                    if (hit.verdict.unknown())
                        j["reason"] = hit.verdict.reason;
                    std::cout << j.dump() << "\n";
                } else {
                    std::cout << scan_line(hit) << "\n";
                }
            }
            return 0;
        }
        if (bound->parsed()) {
            BoundInput input{E, Int(prime_arg), level, rank};
            BoundReport r = full_report(input, deep, samples);
            if (as_json)
                std::cout << render_json(r).dump(2) << "\n";
            else
                std::cout << render_text(r);
            return r.certified ? 0 : 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: bad integer argument\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (!args.empty() && args[0] == "corpus")
        return run_corpus({args.begin() + 1, args.end()});
    if (args.empty()) {
        std::cerr << "usage: kappa <reduction|image|tor|scan|bound|corpus> ...\n";
        return 2;
    }
    return run_single(args, nullptr);
}
