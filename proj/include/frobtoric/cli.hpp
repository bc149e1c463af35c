#pragma once

// Command-line front end. `run` is the whole program; main() only forwards
// argv. Exit codes: 0 success, 1 input or validation error, 2 broken
// internal invariant.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frobtoric/bundles.hpp"
#include "frobtoric/catalog.hpp"
#include "frobtoric/cech.hpp"
#include "frobtoric/cohomology.hpp"
#include "frobtoric/errors.hpp"
#include "frobtoric/ext.hpp"
#include "frobtoric/fan.hpp"
#include "frobtoric/frobenius.hpp"
#include "frobtoric/report.hpp"

namespace frobtoric::cli {

/// Test seam: lets an integration test tamper with a decomposition before it is certified.
struct Hooks {
    std::function<void(Decomposition&)> after_decompose;
};

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(item);
    return out;
}

inline IntVec parse_ints(const std::string& csv) {
    IntVec out;
    for (const auto& tok : split(csv, ',')) {
        std::size_t used = 0;
        std::int64_t v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            throw Error(ErrorCode::InvalidInput, "not an integer: '" + tok + "'");
        }
        if (used != tok.size()) throw Error(ErrorCode::InvalidInput, "not an integer: '" + tok + "'");
        out.push_back(v);
    }
    if (out.empty()) throw Error(ErrorCode::InvalidInput, "empty integer list");
    return out;
}

/// "0", "K", "-K" or integers aligned to the rays.
inline TorusDivisor parse_divisor(const Fan& fan, const std::string& text) {
    if (text == "0") return fan.zero_divisor();
    if (text == "K") return fan.canonical();
    if (text == "-K") return -1 * fan.canonical();
    TorusDivisor d{parse_ints(text)};
    if (d.coeffs.size() != fan.num_rays())
        throw Error(ErrorCode::InvalidInput, "divisor has " + std::to_string(d.coeffs.size()) + " entries, fan has " +
                                                 std::to_string(fan.num_rays()) + " rays");
    return d;
}

/// "c;c;..." with each c a comma list of Pic coordinates.
inline std::vector<DivisorClass> parse_collection(const Fan& fan, const std::string& text) {
    std::vector<DivisorClass> out;
    for (const auto& item : split(text, ';')) {
        DivisorClass c{parse_ints(item)};
        if (c.coords.size() != fan.pic_rank()) throw Error(ErrorCode::InvalidInput, "class has the wrong Picard rank");
        out.push_back(c);
    }
    return out;
}

inline Fan load_fan_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot open fan file " + path);
    report::Json j;
    try {
        j = report::Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidInput, std::string("fan file is not JSON: ") + e.what());
    }
    return report::fan_from_json(j);
}

struct FanSource {
    std::string fan_file;
    std::string variety;

    Fan load() const {
        if (!fan_file.empty() && !variety.empty()) throw Error(ErrorCode::InvalidInput, "give either --fan or --variety");
        if (!fan_file.empty()) return load_fan_file(fan_file);
        if (!variety.empty()) return find_entry(variety).fan;
        throw Error(ErrorCode::InvalidInput, "a fan is required (--fan FILE or --variety NAME)");
    }
};

inline void print_classes(std::ostream& out, const ClassMultiset& m) {
    for (auto it = m.rbegin(); it != m.rend(); ++it) {
        out << "  [";
        for (std::size_t i = 0; i < it->first.coords.size(); ++i) out << (i ? "," : "") << it->first.coords[i];
        out << "] x" << it->second << '\n';
    }
}

inline std::string coords(const IntVec& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks = {}) {
    CLI::App app{"Frobenius pushforwards of line bundles on smooth toric varieties", "frobtoric"};
    app.require_subcommand(1);

    detail::FanSource src;
    std::int64_t p = 2;
    int n = 1;
    bool json = false;

    auto add_fan = [&](CLI::App* c) {
        c->add_option("--fan", src.fan_file, "fan JSON file");
        c->add_option("--variety", src.variety, "builtin catalog name");
    };
    auto add_order = [&](CLI::App* c) {
        c->add_option("--p", p, "prime")->required();
        c->add_option("--n", n, "Frobenius iterate")->capture_default_str();
    };
    auto add_json = [&](CLI::App* c) { c->add_flag("--json", json, "JSON output"); };

    auto* fan_cmd = app.add_subcommand("fan", "fan utilities");
    fan_cmd->require_subcommand(1);
    auto* fan_check = fan_cmd->add_subcommand("check", "validate a fan");
    add_fan(fan_check);
    add_json(fan_check);

    std::string divisor = "0";
    auto* push = app.add_subcommand("push", "decompose F^n_* O(D)");
    add_fan(push);
    add_order(push);
    add_json(push);
    push->add_option("--divisor", divisor, "CSV, K, -K or 0")->capture_default_str();

    auto* cohom = app.add_subcommand("cohom", "h^i(O(D))");
    add_fan(cohom);
    add_json(cohom);
    cohom->add_option("--divisor", divisor, "CSV, K, -K or 0")->capture_default_str();

    std::string from = "0", to = "0";
    auto* ext = app.add_subcommand("ext", "Ext^i(F_*O(L), F_*O(M))");
    add_fan(ext);
    add_order(ext);
    add_json(ext);
    ext->add_option("--from", from, "L: CSV, K, -K or 0")->capture_default_str();
    ext->add_option("--to", to, "M: CSV, K, -K or 0")->capture_default_str();

    std::string collection;
    auto* tilting = app.add_subcommand("tilting", "tilting verdict for F^n_* O");
    add_fan(tilting);
    add_order(tilting);
    add_json(tilting);
    tilting->add_option("--collection", collection, "classes 'a,b;c,d;...' (default: builtin)");

    auto* catalog = app.add_subcommand("catalog", "builtin varieties");
    catalog->require_subcommand(1);
    auto* cat_list = catalog->add_subcommand("list", "list entries");
    add_json(cat_list);
    auto* cat_run = catalog->add_subcommand("run", "tilting verdicts on the twelve Fano 3-folds");
    add_order(cat_run);
    add_json(cat_run);
    std::string export_dir;
    auto* cat_export = catalog->add_subcommand("export", "write every entry's fan as JSON");
    cat_export->add_option("--dir", export_dir, "output directory")->required();

    auto* blowup = app.add_subcommand("blowup-check", "P^2 vs F1 corank bookkeeping");
    add_order(blowup);
    add_json(blowup);

    bool rank = false;
    auto* jets = app.add_subcommand("jets", "del Pezzo jet counts on P^2");
    add_order(jets);
    add_json(jets);
    jets->add_flag("--rank", rank, "exact F_p rank of the jet-evaluation matrix");

    std::string base;
    std::vector<std::string> twists;
    auto* pbundle = app.add_subcommand("pbundle-check", "projective bundle splitting checks for E = O + O(a) [+ O(a')]");
    pbundle->add_option("--base", base, "base variety name")->required();
    pbundle->add_option("--a", twists, "twist divisor on the base (repeat for rank 3)")->required();
    add_order(pbundle);
    add_json(pbundle);

    auto* cech = app.add_subcommand("cech", "F_p Cech computations on products of projective spaces");
    cech->require_subcommand(1);
    std::int64_t a = 0, b = 0;
    auto* incidence = cech->add_subcommand("incidence", "h^i(O_X(a,b)) on the incidence 3-fold in P^2 x P^2");
    incidence->add_option("--a", a)->required();
    incidence->add_option("--b", b)->required();
    incidence->add_option("--p", p, "prime")->required();
    add_json(incidence);
    auto* validate = cech->add_subcommand("validate", "cross-check against the toric engine");
    add_json(validate);

    std::vector<std::string> argv_store{"frobtoric"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_store) argv.push_back(s.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    auto emit = [&](const report::Json& j) { out << j.dump() << '\n'; };

    try {
        if (fan_check->parsed()) {
            const Fan f = src.load();
            if (json)
                emit(report::fan_summary(f));
            else
                out << "valid fan " << f.name() << ": dim " << f.dim() << ", " << f.num_rays() << " rays, "
                    << f.max_cones().size() << " cones, Pic rank " << f.pic_rank() << (is_fano(f) ? ", Fano" : "")
                    << '\n';
        } else if (push->parsed()) {
            const CohomologyEngine engine(src.load());
            const FrobeniusOrder order(p, n);
            const TorusDivisor d = detail::parse_divisor(engine.fan(), divisor);
            Decomposition dec = frobenius_decompose(engine, d, order, Certify::Never);
            if (hooks.after_decompose) hooks.after_decompose(dec);
            if (dec.rank() != checked::pow(order.q(), engine.fan().dim()))
                throw Error(ErrorCode::OracleMismatch, "total multiplicity differs from q^d");
            if (!verify_projection_formula(engine, d, dec))
                throw Error(ErrorCode::OracleMismatch, "projection formula certification failed");
            dec.certified = true;
            if (json) {
                emit(report::decomposition(engine.fan(), dec));
            } else {
                out << "F^" << n << "_* O(D), q = " << dec.q << ", rank " << dec.rank() << ":\n";
                detail::print_classes(out, dec.entries);
                out << "det " << detail::coords(det_class(engine.fan(), dec).coords) << ", certified\n";
            }
        } else if (cohom->parsed()) {
            const CohomologyEngine engine(src.load());
            const CohomologyVector h = engine.cohomology(detail::parse_divisor(engine.fan(), divisor));
            if (json)
                emit(report::cohomology(h));
            else
                out << "h^* = " << h << '\n';
        } else if (ext->parsed()) {
            const CohomologyEngine engine(src.load());
            const ExtReport r = ext_table(engine, FrobeniusOrder(p, n), detail::parse_divisor(engine.fan(), from),
                                          detail::parse_divisor(engine.fan(), to));
            if (json)
                emit(report::ext(r));
            else
                out << "Ext^* dims " << detail::coords(r.dims)
                    << (r.vanishing_above_zero ? ", vanishing above 0" : ", higher Ext present") << '\n';
        } else if (tilting->parsed()) {
            const Fan f = src.load();
            std::vector<DivisorClass> coll;
            if (!collection.empty())
                coll = detail::parse_collection(f, collection);
            else if (auto builtin = builtin_collection(f))
                coll = *builtin;
            else
                throw Error(ErrorCode::UnknownCollection, "no builtin collection for this fan; pass --collection");
            const CohomologyEngine engine(f);
            const TiltingVerdict v = tilting_verdict(engine, FrobeniusOrder(p, n), coll);
            if (json)
                emit(report::tilting(v));
            else
                out << "Ext^* dims " << detail::coords(v.ext.dims) << "\nstrong exceptional: "
                    << (v.strong_exceptional ? "yes" : "no")
                    << "\ncontains collection: " << (v.contains_collection ? "yes" : "no") << '\n';
        } else if (cat_list->parsed()) {
            const auto entries = builtin_catalog();
            if (json) {
                emit(report::catalog_list(entries));
            } else {
                for (const auto& e : entries)
                    out << e.name << "  dim " << e.fan.dim() << ", Pic rank " << e.fan.pic_rank()
                        << (e.fano_threefold ? ", Fano 3-fold" : "") << '\n';
            }
        } else if (cat_run->parsed()) {
            const CatalogSummary s = catalog_run(p, n);
            if (json) {
                emit(report::catalog_summary(s));
            } else {
                for (const auto& r : s.rows) {
                    out << r.name << ": ";
                    if (r.verdict)
                        out << detail::coords(r.verdict->ext.dims) << (r.failing() ? "  higher Ext" : "") << '\n';
                    else
                        out << "error: " << r.error << '\n';
                }
                out << "vanishing " << s.vanishing << ", failing " << s.failing << ", errors " << s.errors << '\n';
            }
        } else if (cat_export->parsed()) {
            for (const auto& e : builtin_catalog()) {
                std::string file = e.name;
                for (char& c : file)
                    if (c == '/' || c == '(' || c == ')' || c == '+' || c == ',') c = '_';
                std::ofstream f(export_dir + "/" + file + ".json");
                if (!f) throw Error(ErrorCode::InvalidInput, "cannot write to " + export_dir);
                report::Json j = report::fan(e.fan);
                j["name"] = e.name;
                f << j.dump(2) << '\n';
            }
            out << "wrote " << builtin_catalog().size() << " fans to " << export_dir << '\n';
        } else if (blowup->parsed()) {
            if (n != 1) throw Error(ErrorCode::InvalidInput, "blowup-check works with n = 1");
            const BlowupReport r = blowup_bookkeeping_check(p);
            if (json)
                emit(report::blowup(p, r));
            else
                out << "corank " << r.corank << " (oracle " << corank_oracle(p) << "), det discrepancy "
                    << detail::coords(r.det_discrepancy.coords) << " = " << r.exceptional_multiple
                    << " * [l], ranks " << (r.rank_ok ? "ok" : "WRONG") << '\n';
        } else if (jets->parsed()) {
            const JetCheckReport r = delpezzo_jet_check(p, n, rank);
            if (json) {
                emit(report::jets(r));
            } else {
                out << "q " << r.q << ", p1 " << r.p1 << ", p2 " << r.p2 << ", multiplicities "
                    << (r.multiplicities_match ? "match" : "DIFFER") << "\ndim H^0 " << r.dim_h0 << " (summands "
                    << r.dim_h0_summands << "), jet conditions " << r.jet_conditions << '\n';
                if (r.surjective_rank)
                    out << "evaluation rank " << *r.surjective_rank << (r.rank_deficient ? " (deficient)" : " (full)")
                        << '\n';
                out << (r.passed ? "passed" : "FAILED") << '\n';
            }
        } else if (pbundle->parsed()) {
            const Fan bf = find_entry(base).fan;
            const FrobeniusOrder order(p, n);
            std::vector<TorusDivisor> degrees{bf.zero_divisor()};
            for (const auto& t : twists) degrees.push_back(detail::parse_divisor(bf, t));
            const BundleCheckResult r = projective_bundle_compare(bf, SplitBundle{degrees}, order);
            std::optional<bool> s2d2;
            if (degrees.size() == 2) s2d2 = s2d2_identity_check(bf, degrees[1], order);
            if (json) {
                report::Json j = report::bundle_check(r);
                if (s2d2) j["s2d2"] = *s2d2;
                emit(j);
            } else {
                out << "rank " << degrees.size() << " splitting: " << (r.passed ? "passed" : "FAILED") << '\n';
                if (s2d2) out << "S^2/D^2 identity: " << (*s2d2 ? "passed" : "FAILED") << '\n';
            }
        } else if (incidence->parsed()) {
            const CohomologyVector h = incidence_cohomology(a, b, p);
            if (json)
                emit(report::Json{{"a", a}, {"b", b}, {"p", p}, {"dims", h.dims}});
            else
                out << "h^*(O_X(" << a << "," << b << ")) = " << h << '\n';
        } else if (validate->parsed()) {
            const auto vs = cech_validate_standard();
            if (json) {
                emit(report::cech_validation(vs));
            } else {
                for (const auto& v : vs)
                    out << v.space << ": " << v.checked << " multidegrees, " << v.mismatches << " mismatches\n";
            }
            for (const auto& v : vs)
                if (v.mismatches) throw Error(ErrorCode::OracleMismatch, "Cech and toric cohomology disagree");
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return is_internal(e.code()) ? 2 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

inline int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace frobtoric::cli
